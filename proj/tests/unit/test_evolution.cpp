#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "axivisc/evolution.hpp"
#include "axivisc/norms.hpp"

using namespace axivisc;

namespace {

ScalarField gaussian_q(const GridSpec& g, double r0 = 0.5, double z0 = 0.0, double sigma = 0.2) {
  return ScalarField::from_function(g, FieldRole::q_omega_over_r, [=](double r, double z) {
    return std::exp(-((r - r0) * (r - r0) + (z - z0) * (z - z0)) / (sigma * sigma));
  });
}

VelocityField swirl_velocity(const GridSpec& g, double amp) {
  // Smooth, bounded and nonzero up to the box edges.
  return VelocityField(
      ScalarField::from_function(g, FieldRole::velocity_r,
                                 [=](double r, double z) { return amp * r * std::cos(2 * z); }),
      ScalarField::from_function(g, FieldRole::velocity_z, [=](double r, double z) {
        return amp * (std::sin(3 * r) - 0.5 * z);
      }));
}

double rel_l2(const ScalarField& a, const ScalarField& b) {
  return lebesgue_norm(a - b, 2.0) / lebesgue_norm(b, 2.0);
}

double min_value(const ScalarField& f) {
  double m = f.values()[0];
  for (double v : f.values()) m = std::min(m, v);
  return m;
}

double max_value(const ScalarField& f) {
  double m = f.values()[0];
  for (double v : f.values()) m = std::max(m, v);
  return m;
}

}  // namespace

TEST(Evolution, OmegaAndQConversions) {
  const GridSpec g = make_grid(1.0, -1.0, 1.0, 8, 8);
  const ScalarField q = gaussian_q(g);
  const ScalarField w = omega_from_q(q);
  EXPECT_EQ(w.role(), FieldRole::omega_theta);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) EXPECT_EQ(w(i, j), g.r(i) * q(i, j));
  const ScalarField back = q_from_omega(w);
  EXPECT_EQ(back.role(), FieldRole::q_omega_over_r);
  for (std::size_t k = 0; k < q.values().size(); ++k)
    EXPECT_NEAR(back.values()[k], q.values()[k], 1e-15);
}

TEST(Evolution, SimConfigValidation) {
  SimConfig c;
  EXPECT_NO_THROW(c.validate());
  c.dt_cfl_factor = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SimConfig{};
  c.eps_h = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SimConfig{};
  c.n_theta = 17;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Evolution, CflDiffusionBound) {
  SimConfig c;
  c.grid = make_grid(1.0, -1.0, 1.0, 8, 16);
  c.dt_cfl_factor = 0.5;
  const SimState s{0.0, 0, ScalarField(c.grid, FieldRole::q_omega_over_r),
                   ScalarField(c.grid, FieldRole::omega_theta), VelocityField(c.grid)};
  const double dz = c.grid.dz();
  EXPECT_DOUBLE_EQ(cfl_dt(s, c, 10.0), 0.5 * dz * dz / 2);
  EXPECT_DOUBLE_EQ(cfl_dt(s, c, 1e-6), 1e-6);
  c.eps_h = 100.0;
  EXPECT_DOUBLE_EQ(cfl_dt(s, c, 10.0), 0.5 * c.grid.dr() * c.grid.dr() / 800.0);
}

TEST(Evolution, CflAdvectiveBoundAndErrors) {
  SimConfig c;
  c.grid = make_grid(1.0, -1.0, 1.0, 8, 16);
  SimState s{0.0, 0, ScalarField(c.grid, FieldRole::q_omega_over_r),
             ScalarField(c.grid, FieldRole::omega_theta), VelocityField(c.grid)};
  s.u.u_z(2, 3) = 1e6;
  EXPECT_DOUBLE_EQ(cfl_dt(s, c, 10.0), c.grid.dz() / 1e6);
  s.u.u_r(1, 1) = std::nan("");
  EXPECT_THROW(cfl_dt(s, c, 10.0), std::runtime_error);
}

TEST(Evolution, CflQuartersWithResolution) {
  SimConfig c;
  auto dt_for = [&](int n) {
    c.grid = make_grid(2.0, -2.0, 2.0, n, 2 * n);
    const SimState s{0.0, 0, ScalarField(c.grid, FieldRole::q_omega_over_r),
                     ScalarField(c.grid, FieldRole::omega_theta), VelocityField(c.grid)};
    return cfl_dt(s, c, 10.0);
  };
  EXPECT_NEAR(dt_for(32) / dt_for(64), 4.0, 1e-12);
}

TEST(Evolution, ZIndependentInteriorUnchangedWithoutVelocity) {
  // Zero-extension ghosts make the end rows decay; the backward-Euler
  // influence falls off geometrically, so rows far from the ends are untouched.
  const GridSpec g = make_grid(1.0, -4.0, 4.0, 8, 160);
  const auto q = ScalarField::from_function(g, FieldRole::q_omega_over_r,
                                            [](double r, double) { return std::exp(-r * r); });
  const double dt = 0.5 * g.dz() * g.dz();
  const ScalarField next = advance_q(q, VelocityField(g), dt);
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 50; j < 110; ++j) EXPECT_NEAR(next(i, j), q(i, j), 1e-14);
}

TEST(Evolution, VerticalDiffusionFourierOracle) {
  const GridSpec g = make_grid(1.0, -1.0, 2.0, 6, 48);
  const double L = g.z_max() - g.z_min();
  const double dz = g.dz();
  const double dt = 0.37 * dz * dz;
  for (int m : {1, 3, 10}) {
    // Eigenvectors of the three-point Laplacian with zero ghosts at j = -1 and j = n_z.
    const double k = std::numbers::pi * m / (L + dz);
    const auto q = ScalarField::from_function(g, FieldRole::q_omega_over_r, [&](double r, double z) {
      return (1.0 + r) * std::sin(k * (z - g.z_min() + 0.5 * dz));
    });
    const double s = std::sin(0.5 * k * dz);
    const double factor = 1.0 / (1.0 + dt * 4.0 / (dz * dz) * s * s);
    const ScalarField next = diffuse_vertical(q, dt);
    for (std::size_t n = 0; n < q.values().size(); ++n)
      EXPECT_NEAR(next.values()[n], factor * q.values()[n], 1e-10);
  }
}

TEST(Evolution, AdvectionIsMonotone) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dist(-1.0, 2.0);
  const GridSpec g = make_grid(1.0, -1.0, 1.0, 20, 24);
  ScalarField q(g, FieldRole::q_omega_over_r);
  for (double& v : q.values()) v = dist(rng);
  const VelocityField u = swirl_velocity(g, 3.0);
  const ScalarField a = advect(q, u, 0.05);
  EXPECT_LE(max_value(a), max_value(q));
  // The zero extension outside the box may lower the minimum to 0 at most.
  EXPECT_GE(min_value(a), std::min(min_value(q), 0.0));
  EXPECT_THROW(advect(ScalarField(g, FieldRole::derived), u, 0.05), std::invalid_argument);
}

TEST(Evolution, AdvectionOfPositiveFieldStaysInRange) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 24, 48);
  const ScalarField q = gaussian_q(g);
  const ScalarField a = advect(q, swirl_velocity(g, 1.0), 0.02);
  EXPECT_LE(max_value(a), max_value(q));
  EXPECT_GE(min_value(a), 0.0);
}

TEST(Evolution, HorizontalOperatorConsistency) {
  // q = exp(-r^2): q'' + (3/r) q' = (4 r^2 - 8) exp(-r^2).
  auto err = [](int n) {
    const GridSpec g = make_grid(4.0, 0.0, 1.0, n, 4);
    const auto q = ScalarField::from_function(g, FieldRole::q_omega_over_r,
                                              [](double r, double) { return std::exp(-r * r); });
    const double dt = 1e-3;
    const double eps = 0.5;
    const ScalarField next = diffuse_horizontal(q, dt, eps);
    double e = 0.0;
    for (int i = 0; i < n / 2; ++i) {
      const double r = g.r(i);
      const double exact = (4 * r * r - 8) * std::exp(-r * r);
      e = std::max(e, std::abs((next(i, 0) - q(i, 0)) / (dt * eps) - exact));
    }
    return e;
  };
  const double e1 = err(32);
  const double e2 = err(64);
  EXPECT_LT(e2, 0.05);
  EXPECT_GT(e1 / e2, 3.0);
  const GridSpec g = make_grid(1.0, 0.0, 1.0, 8, 4);
  const ScalarField q = gaussian_q(g);
  const ScalarField same = diffuse_horizontal(q, 0.1, 0.0);
  for (std::size_t k = 0; k < q.values().size(); ++k) EXPECT_EQ(same.values()[k], q.values()[k]);
}

TEST(Evolution, HorizontalDiffusionKeepsMaximumPrincipleAtStabilityLimit) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 32, 16);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  ScalarField q(g, FieldRole::q_omega_over_r);
  for (double& v : q.values()) v = dist(rng);
  const double eps = 0.3;
  const double dt = g.dr() * g.dr() / (8 * eps);
  const ScalarField next = diffuse_horizontal(q, dt, eps);
  EXPECT_LE(max_value(next), max_value(q) + 1e-15);
  EXPECT_GE(min_value(next), -1e-15);
}

TEST(Evolution, DirectSchemeWithoutVelocityIsPureDiffusion) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 16, 32);
  const ScalarField w = omega_from_q(gaussian_q(g));
  const double dt = 0.01;
  const ScalarField a = advance_omega_direct(w, VelocityField(g), dt);
  const ScalarField b = diffuse_vertical(w, dt);
  for (std::size_t k = 0; k < a.values().size(); ++k) EXPECT_EQ(a.values()[k], b.values()[k]);
}

TEST(Evolution, DirectSchemePreservesSign) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 16, 32);
  const ScalarField w = omega_from_q(gaussian_q(g));
  const ScalarField a = advance_omega_direct(w, swirl_velocity(g, 2.0), 0.01, 0.1);
  EXPECT_GE(min_value(a), 0.0);
}

TEST(Evolution, ZeroDataIsStationary) {
  SimConfig c;
  c.grid = make_grid(2.0, -2.0, 2.0, 12, 24);
  c.n_theta = 16;
  const KernelTable kt(c.n_theta, c.grid);
  const SimState s0 = make_initial_state(ScalarField(c.grid, FieldRole::q_omega_over_r), kt);
  const SimState s1 = step(s0, c, kt, 1.0);
  EXPECT_EQ(s1.q.max_abs(), 0.0);
  EXPECT_EQ(s1.omega.max_abs(), 0.0);
  EXPECT_EQ(s1.u.u_r.max_abs(), 0.0);
  EXPECT_GT(s1.t, 0.0);
  EXPECT_EQ(s1.step, 1);
}

TEST(Evolution, StepKeepsOmegaEqualRTimesQAndConservesMass) {
  SimConfig c;
  c.grid = make_grid(2.0, -2.0, 2.0, 48, 96);
  c.n_theta = 32;
  const KernelTable kt(c.n_theta, c.grid);
  const SimState s0 = make_initial_state(gaussian_q(c.grid, 0.5, 0.0, 0.15), kt);
  const SimState s1 = step(s0, c, kt, 1.0);
  for (int i = 0; i < c.grid.n_r(); ++i)
    for (int j = 0; j < c.grid.n_z(); ++j)
      EXPECT_LE(std::abs(s1.omega(i, j) - c.grid.r(i) * s1.q(i, j)), 1e-14 * s0.q.max_abs());
  const double m0 = cylindrical_integral(s0.q);
  const double m1 = cylindrical_integral(s1.q);
  EXPECT_LE(std::abs(m1 - m0) / m0, 1e-3);
}

TEST(Evolution, RunWithZeroEndTimeReportsInitialStateOnly) {
  SimConfig c;
  c.grid = make_grid(2.0, -2.0, 2.0, 12, 24);
  c.n_theta = 16;
  c.t_end = 0.0;
  const KernelTable kt(c.n_theta, c.grid);
  SimState s = make_initial_state(gaussian_q(c.grid), kt);
  int outputs = 0;
  int steps = 0;
  RunObserver obs;
  obs.on_step = [&](const SimState&) { ++steps; };
  obs.on_output = [&](const SimState& st, bool snap) {
    ++outputs;
    EXPECT_TRUE(snap);
    EXPECT_EQ(st.t, 0.0);
  };
  run(s, c, kt, obs);
  EXPECT_EQ(outputs, 1);
  EXPECT_EQ(steps, 0);
}

TEST(Evolution, RunHitsSnapshotTimesAndCadence) {
  SimConfig c;
  c.grid = make_grid(2.0, -2.0, 2.0, 12, 24);
  c.n_theta = 16;
  c.t_end = 0.2;
  c.diag_every = 7;
  c.snapshot_times = {0.05, 0.1234};
  const KernelTable kt(c.n_theta, c.grid);
  SimState s = make_initial_state(gaussian_q(c.grid), kt);
  std::vector<double> snaps;
  std::vector<long> plain_steps;
  RunObserver obs;
  obs.on_output = [&](const SimState& st, bool snap) {
    if (snap) snaps.push_back(st.t);
    else plain_steps.push_back(st.step);
  };
  run(s, c, kt, obs);
  EXPECT_EQ(snaps, (std::vector<double>{0.0, 0.05, 0.1234, 0.2}));
  for (long k : plain_steps) EXPECT_EQ(k % 7, 0);
  EXPECT_EQ(s.t, 0.2);
}

TEST(Evolution, MaximumPrincipleOverShortRun) {
  SimConfig c;
  c.grid = make_grid(2.0, -2.0, 2.0, 24, 48);
  c.n_theta = 32;
  c.t_end = 0.05;
  const KernelTable kt(c.n_theta, c.grid);
  SimState s = make_initial_state(gaussian_q(c.grid, 0.5, 0.0, 0.2), kt);
  const double sup0 = s.q.max_abs();
  const double l2_0 = lebesgue_norm(s.q, 2.0);
  RunObserver obs;
  obs.on_step = [&](const SimState& st) {
    EXPECT_LE(st.q.max_abs(), sup0 + 1e-12);
    EXPECT_LE(lebesgue_norm(st.q, 2.0), l2_0 * (1 + 1e-3));
  };
  run(s, c, kt, obs);
}

TEST(Evolution, HorizontalViscosityRunStaysFinite) {
  SimConfig c;
  c.grid = make_grid(2.0, -2.0, 2.0, 24, 48);
  c.n_theta = 32;
  c.t_end = 0.05;
  c.eps_h = 0.5;
  const KernelTable kt(c.n_theta, c.grid);
  SimState s = make_initial_state(gaussian_q(c.grid, 0.5, 0.0, 0.2), kt);
  const double sup0 = s.q.max_abs();
  RunObserver obs;
  obs.on_step = [&](const SimState& st) {
    ASSERT_TRUE(st.q.all_finite());
    ASSERT_TRUE(st.u.u_r.all_finite());
    EXPECT_LE(st.q.max_abs(), sup0 + 1e-12);
  };
  run(s, c, kt, obs);
  EXPECT_EQ(s.t, 0.05);
}

TEST(Evolution, FirstOrderSelfConvergenceInTimeStep) {
  // Differences between runs with successively halved dt shrink by about 2.
  SimConfig c;
  c.grid = make_grid(2.0, -2.0, 2.0, 32, 64);
  c.n_theta = 32;
  c.t_end = 0.02;
  const KernelTable kt(c.n_theta, c.grid);
  std::vector<ScalarField> finals;
  for (double f : {1.0, 0.5, 0.25}) {
    c.dt_cfl_factor = f;
    SimState s = make_initial_state(gaussian_q(c.grid, 0.5, 0.0, 0.25), kt);
    run(s, c, kt, RunObserver{});
    finals.push_back(s.q);
  }
  const double d1 = lebesgue_norm(finals[0] - finals[1], 2.0);
  const double d2 = lebesgue_norm(finals[1] - finals[2], 2.0);
  EXPECT_GT(d1 / d2, 1.5);
  EXPECT_LT(d1 / d2, 3.0);
}
