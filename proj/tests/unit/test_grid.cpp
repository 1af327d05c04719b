#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "axivisc/grid.hpp"

using namespace axivisc;

namespace {

double max_interior_error(int n) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, n, n);
  const auto f = ScalarField::from_function(g, FieldRole::omega_theta,
                                            [](double r, double z) { return std::sin(r) * std::cos(z); });
  const ScalarField d = ddr(f);
  double err = 0.0;
  for (int i = 1; i < n - 1; ++i)
    for (int j = 0; j < n; ++j)
      err = std::max(err, std::abs(d(i, j) - std::cos(g.r(i)) * std::cos(g.z(j))));
  return err;
}

}  // namespace

TEST(Grid, CellCenteredNodes) {
  const GridSpec g = make_grid(1.0, -1.0, 1.0, 4, 4);
  EXPECT_DOUBLE_EQ(g.dr(), 0.25);
  const double expected[] = {0.125, 0.375, 0.625, 0.875};
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(g.r(i), expected[i]);
  EXPECT_DOUBLE_EQ(g.z(0), -0.75);
  EXPECT_DOUBLE_EQ(g.z(3), 0.75);
}

TEST(Grid, CellMeasure) {
  const GridSpec g = make_grid(2.0, 0.0, 1.0, 4, 4);
  EXPECT_DOUBLE_EQ(g.cell_measure(0), 2.0 * std::numbers::pi * 0.25 * 0.5 * 0.25);
}

TEST(Grid, RejectsInvalidGeometry) {
  EXPECT_THROW(make_grid(-1.0, 0.0, 1.0, 4, 4), std::invalid_argument);
  EXPECT_THROW(make_grid(1.0, 1.0, 1.0, 4, 4), std::invalid_argument);
  EXPECT_THROW(make_grid(1.0, 0.0, 1.0, 3, 4), std::invalid_argument);
  EXPECT_THROW(make_grid(1.0, 0.0, 1.0, 4, 2), std::invalid_argument);
}

TEST(Grid, FieldRejectsNonFiniteValues) {
  const GridSpec g = make_grid(1.0, 0.0, 1.0, 4, 4);
  std::vector<double> v(g.size(), 0.0);
  v[5] = std::nan("");
  EXPECT_THROW(ScalarField(g, FieldRole::derived, v), std::invalid_argument);
  EXPECT_THROW(ScalarField(g, FieldRole::derived, std::vector<double>(3)), std::invalid_argument);
}

TEST(Grid, ConstantFieldHasZeroDerivatives) {
  const GridSpec g = make_grid(1.0, -1.0, 1.0, 8, 8);
  const auto f = ScalarField::from_function(g, FieldRole::q_omega_over_r,
                                            [](double, double) { return 3.5; });
  const ScalarField d1 = ddr(f);
  for (double v : d1.values()) EXPECT_EQ(v, 0.0);
  const ScalarField d2 = ddz(f);
  for (double v : d2.values()) EXPECT_EQ(v, 0.0);
}

TEST(Grid, LinearInZIsExact) {
  const GridSpec g = make_grid(1.0, -1.0, 3.0, 8, 16);
  const auto f = ScalarField::from_function(g, FieldRole::derived, [](double, double z) { return z; });
  const ScalarField d3 = ddz(f);
  for (double v : d3.values()) EXPECT_NEAR(v, 1.0, 1e-13);
}

TEST(Grid, DdrSecondOrderUnderRefinement) {
  const double e1 = max_interior_error(32);
  const double e2 = max_interior_error(64);
  EXPECT_GT(e1 / e2, 3.5);
  EXPECT_LT(e1 / e2, 4.5);
}

TEST(Grid, AxisGhostParity) {
  const GridSpec g = make_grid(1.0, 0.0, 1.0, 4, 4);
  ScalarField f(g, FieldRole::omega_theta);
  f(0, 2) = 1.25;
  EXPECT_EQ(axis_ghost(f, 2, axis_parity(FieldRole::omega_theta)), -1.25);
  EXPECT_EQ(axis_ghost(f, 2, axis_parity(FieldRole::q_omega_over_r)), 1.25);
  EXPECT_EQ(axis_parity(FieldRole::velocity_r), AxisParity::odd);
  EXPECT_EQ(axis_parity(FieldRole::velocity_z), AxisParity::even);
  // ddr at the first node uses the ghost: (f1 - ghost) / (2 dr).
  f(1, 2) = 2.0;
  EXPECT_DOUBLE_EQ(ddr(f)(0, 2), (2.0 + 1.25) / (2.0 * g.dr()));
  f.set_role(FieldRole::q_omega_over_r);
  EXPECT_DOUBLE_EQ(ddr(f)(0, 2), (2.0 - 1.25) / (2.0 * g.dr()));
}

TEST(Grid, DerivedRoleHasNoAxisRule) {
  const GridSpec g = make_grid(1.0, 0.0, 1.0, 4, 4);
  const ScalarField f(g, FieldRole::derived);
  EXPECT_THROW(ddr(f), std::invalid_argument);
  EXPECT_NO_THROW(ddr(f, AxisParity::even));
  EXPECT_NO_THROW(ddz(f));
}

TEST(Grid, RoleNamesRoundTrip) {
  for (auto role : {FieldRole::omega_theta, FieldRole::q_omega_over_r, FieldRole::velocity_r,
                    FieldRole::velocity_z, FieldRole::derived})
    EXPECT_EQ(role_from_string(to_string(role)), role);
  EXPECT_THROW(role_from_string("vorticity"), std::invalid_argument);
}

TEST(Grid, DdrIsLinear) {
  const GridSpec g = make_grid(1.0, 0.0, 1.0, 16, 16);
  const auto f = ScalarField::from_function(g, FieldRole::omega_theta,
                                            [](double r, double z) { return r * std::exp(z); });
  const auto h = ScalarField::from_function(g, FieldRole::omega_theta,
                                            [](double r, double z) { return std::sin(3 * r) * z; });
  const ScalarField lhs = ddr(f + h);
  const ScalarField rhs = ddr(f) + ddr(h);
  for (std::size_t k = 0; k < g.size(); ++k)
    EXPECT_NEAR(lhs.values()[k], rhs.values()[k], 1e-13 * (1.0 + std::abs(rhs.values()[k])));
}

TEST(Grid, DivergenceOfZeroAndVerticalShear) {
  const GridSpec g = make_grid(1.0, -1.0, 1.0, 8, 8);
  const ScalarField d4 = divergence(VelocityField(g));
  for (double v : d4.values()) EXPECT_EQ(v, 0.0);
  VelocityField u(g);
  u.u_z = ScalarField::from_function(g, FieldRole::velocity_z,
                                     [](double r, double) { return std::cos(r); });
  // The one-sided end stencils round -3a + 4a - a to within an ulp of a.
  const ScalarField d5 = divergence(u);
  for (double v : d5.values()) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(Grid, DivergenceFreePolynomialPair) {
  // u^r = r z, u^z = -z^2: d_r u^r + u^r / r + d_z u^z = z + z - 2z = 0.
  const GridSpec g = make_grid(1.0, -1.0, 1.0, 12, 12);
  VelocityField u(
      ScalarField::from_function(g, FieldRole::velocity_r, [](double r, double z) { return r * z; }),
      ScalarField::from_function(g, FieldRole::velocity_z, [](double, double z) { return -z * z; }));
  const ScalarField d6 = divergence(u);
  for (double v : d6.values()) EXPECT_LE(std::abs(v), 1e-12);
}

TEST(Grid, CylindricalIntegralMidpointExactness) {
  const GridSpec g = make_grid(1.0, 0.0, 1.0, 7, 5);
  const auto one = ScalarField::from_function(g, FieldRole::derived, [](double, double) { return 1.0; });
  EXPECT_NEAR(cylindrical_integral(one), std::numbers::pi, 1e-14);
  EXPECT_EQ(cylindrical_integral(ScalarField(g, FieldRole::derived)), 0.0);
}

TEST(Grid, CylindricalIntegralOfR) {
  const GridSpec g = make_grid(1.0, 0.0, 1.0, 64, 64);
  const auto f = ScalarField::from_function(g, FieldRole::derived, [](double r, double) { return r; });
  const double exact = 2.0 * std::numbers::pi / 3.0;
  EXPECT_LE(std::abs(cylindrical_integral(f) - exact) / exact, 1e-3);
}

TEST(Grid, FieldArithmeticRequiresSameGrid) {
  const ScalarField a(make_grid(1.0, 0.0, 1.0, 4, 4), FieldRole::derived);
  const ScalarField b(make_grid(1.0, 0.0, 1.0, 4, 8), FieldRole::derived);
  EXPECT_THROW(a + b, std::invalid_argument);
}

TEST(Grid, BoundaryMargin) {
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 20, 40);
  EXPECT_EQ(boundary_margin(ScalarField(g, FieldRole::derived)), 0.5);
  ScalarField f(g, FieldRole::derived);
  f(4, 20) = 1.0;  // cell [0.4, 0.5] x [0, 0.1]
  EXPECT_NEAR(boundary_margin(f), std::min((2.0 - 0.5) / 2.0, (2.0 - 0.1) / 4.0), 1e-12);
  f(19, 20) = 1.0;
  EXPECT_NEAR(boundary_margin(f), 0.0, 1e-12);
}
