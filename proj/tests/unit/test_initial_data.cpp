#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "axivisc/initial_data.hpp"
#include "axivisc/norms.hpp"

using namespace axivisc;

namespace {

// int A^p exp(-p((r - r0)^2 + z^2) / sigma^2) 2 pi r dr dz over r > 0, raised to 1/p.
double gaussian_ring_lp(double amp, double r0, double sigma, double p) {
  const double a = p / (sigma * sigma);
  const double z_part = std::sqrt(std::numbers::pi / a);
  const double r_part = std::exp(-a * r0 * r0) / (2 * a) +
                        r0 * 0.5 * std::sqrt(std::numbers::pi / a) * (1 + std::erf(std::sqrt(a) * r0));
  return std::pow(std::pow(std::abs(amp), p) * 2 * std::numbers::pi * z_part * r_part, 1.0 / p);
}

}  // namespace

TEST(InitialData, ZeroAmplitudeGivesZeroField) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 16, 32);
  for (auto kind : {InitialKind::gaussian_ring, InitialKind::yudovich_patch, InitialKind::ring_pair}) {
    InitialData d;
    d.kind = kind;
    d.amplitude = 0.0;
    const ScalarField q = build_initial(d, g);
    EXPECT_EQ(q.role(), FieldRole::q_omega_over_r);
    EXPECT_EQ(q.max_abs(), 0.0);
  }
}

TEST(InitialData, GaussianRingLebesgueNormsMatchClosedForm) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 128, 128);
  InitialData d;
  d.amplitude = 1.3;
  const ScalarField q = build_initial(d, g);
  for (double p : {1.2, 1.5, 2.0, 3.0}) {
    const double exact = gaussian_ring_lp(d.amplitude, d.r0, d.sigma, p);
    EXPECT_LE(std::abs(lebesgue_norm(q, p) - exact) / exact, 1e-3) << "p = " << p;
  }
}

TEST(InitialData, OmegaVanishesTowardsAxis) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 64, 64);
  InitialData d;
  d.r0 = 0.3;
  const ScalarField q = build_initial(d, g);
  // omega = r q; at the first node |omega| <= r_0 max|q|.
  for (int j = 0; j < g.n_z(); ++j) EXPECT_LE(std::abs(g.r(0) * q(0, j)), g.r(0) * q.max_abs());
}

TEST(InitialData, PatchMatchesIndicatorClosedForm) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 96, 192);
  InitialData d;
  d.kind = InitialKind::yudovich_patch;
  d.amplitude = -2.0;
  const ScalarField q = build_initial(d, g);
  double v = 0.0;
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_z(); ++j)
      if (q(i, j) != 0.0) v += g.cell_measure(i);
  EXPECT_NEAR(patch_measure(d, g), v, 1e-14 * v);
  // Continuum area check: the revolved disc has volume 2 pi r0 pi R^2.
  const double torus = 2 * std::numbers::pi * d.r0 * std::numbers::pi * d.patch_radius * d.patch_radius;
  EXPECT_LE(std::abs(v - torus) / torus, 0.05);
  for (auto [p, qq] : {std::pair{1.2, 1.0}, {1.5, 1.0}, {3.0, 1.0}, {1.5, kInf}}) {
    const double closed = patch_lorentz_norm(d, g, p, qq);
    EXPECT_NEAR(lorentz_norm(q, {p, qq}), closed, 1e-10 * closed);
  }
}

TEST(InitialData, RingPairIsAntisymmetric) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 24, 48);
  InitialData d;
  d.kind = InitialKind::ring_pair;
  const ScalarField q = build_initial(d, g);
  EXPECT_GT(q.max_abs(), 0.5);
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_z(); ++j) EXPECT_NEAR(q(i, j), -q(i, g.n_z() - 1 - j), 1e-14);
}

TEST(InitialData, SupportMarginIsEnforced) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 24, 48);
  InitialData d;
  d.r0 = 1.0;  // 1.0 + 4 * 0.15 = 1.6 > 1.5
  EXPECT_THROW(build_initial(d, g), std::invalid_argument);
  d = InitialData{};
  d.z0 = 0.6;  // 0.6 + 0.6 > 1.0
  EXPECT_THROW(build_initial(d, g), std::invalid_argument);
  d = InitialData{};
  d.kind = InitialKind::ring_pair;
  d.separation = 1.0;
  EXPECT_THROW(build_initial(d, g), std::invalid_argument);
  d = InitialData{};
  d.kind = InitialKind::yudovich_patch;
  d.patch_radius = 0.9;
  d.z0 = 0.2;
  EXPECT_THROW(build_initial(d, g), std::invalid_argument);
  EXPECT_NO_THROW(build_initial(InitialData{}, g));
}
