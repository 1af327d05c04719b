#include "axivisc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace axivisc {

GridSpec::GridSpec(double r_max, double z_min, double z_max, int n_r, int n_z)
    : r_max_(r_max), z_min_(z_min), z_max_(z_max), n_r_(n_r), n_z_(n_z) {
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::invalid_argument("grid: r_max must be positive and finite");
  if (!(z_max > z_min) || !std::isfinite(z_min) || !std::isfinite(z_max))
    throw std::invalid_argument("grid: z_max must exceed z_min");
  if (n_r < 4 || n_z < 4)
    throw std::invalid_argument("grid: n_r and n_z must be at least 4");
  dr_ = r_max / n_r;
  dz_ = (z_max - z_min) / n_z;
}

double GridSpec::cell_measure(int i) const {
  return 2.0 * std::numbers::pi * r(i) * dr_ * dz_;
}

GridSpec make_grid(double r_max, double z_min, double z_max, int n_r, int n_z) {
  return GridSpec(r_max, z_min, z_max, n_r, n_z);
}

AxisParity axis_parity(FieldRole role) {
  switch (role) {
    case FieldRole::omega_theta:
    case FieldRole::velocity_r:
      return AxisParity::odd;
    case FieldRole::q_omega_over_r:
    case FieldRole::velocity_z:
      return AxisParity::even;
    case FieldRole::derived:
      return AxisParity::none;
  }
  return AxisParity::none;
}

std::string_view to_string(FieldRole role) {
  switch (role) {
    case FieldRole::omega_theta: return "omega_theta";
    case FieldRole::q_omega_over_r: return "q_omega_over_r";
    case FieldRole::velocity_r: return "velocity_r";
    case FieldRole::velocity_z: return "velocity_z";
    case FieldRole::derived: return "derived";
  }
  return "derived";
}

FieldRole role_from_string(std::string_view name) {
  for (auto role : {FieldRole::omega_theta, FieldRole::q_omega_over_r,
                    FieldRole::velocity_r, FieldRole::velocity_z, FieldRole::derived}) {
    if (to_string(role) == name) return role;
  }
  throw std::invalid_argument("unknown field role '" + std::string(name) + "'");
}

ScalarField::ScalarField(GridSpec grid, FieldRole role)
    : grid_(grid), role_(role), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(GridSpec grid, FieldRole role, std::vector<double> values)
    : grid_(grid), role_(role), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("field: value count does not match grid");
  if (!all_finite()) throw std::invalid_argument("field: non-finite value");
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {
void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("field arithmetic on different grids");
}
}  // namespace

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double c, ScalarField a) { return a *= c; }

VelocityField::VelocityField(ScalarField ur, ScalarField uz)
    : u_r(std::move(ur)), u_z(std::move(uz)) {
  require_same_grid(u_r.grid(), u_z.grid());
}

double axis_ghost(const ScalarField& f, int j, AxisParity parity) {
  switch (parity) {
    case AxisParity::odd: return -f(0, j);
    case AxisParity::even: return f(0, j);
    case AxisParity::none: break;
  }
  throw std::invalid_argument("axis extension undefined for role '" +
                              std::string(to_string(f.role())) + "'");
}

ScalarField ddr(const ScalarField& f) { return ddr(f, axis_parity(f.role())); }

ScalarField ddr(const ScalarField& f, AxisParity parity) {
  if (parity == AxisParity::none)
    throw std::invalid_argument("ddr: axis extension undefined for role '" +
                                std::string(to_string(f.role())) + "'");
  const GridSpec& g = f.grid();
  const int nr = g.n_r();
  const int nz = g.n_z();
  const double inv2h = 1.0 / (2.0 * g.dr());
  ScalarField out(g, FieldRole::derived);
  for (int j = 0; j < nz; ++j) out(0, j) = (f(1, j) - axis_ghost(f, j, parity)) * inv2h;
  for (int i = 1; i < nr - 1; ++i)
    for (int j = 0; j < nz; ++j) out(i, j) = (f(i + 1, j) - f(i - 1, j)) * inv2h;
  for (int j = 0; j < nz; ++j)
    out(nr - 1, j) = (3.0 * f(nr - 1, j) - 4.0 * f(nr - 2, j) + f(nr - 3, j)) * inv2h;
  return out;
}

ScalarField ddz(const ScalarField& f) {
  const GridSpec& g = f.grid();
  const int nr = g.n_r();
  const int nz = g.n_z();
  const double inv2h = 1.0 / (2.0 * g.dz());
  ScalarField out(g, FieldRole::derived);
  for (int i = 0; i < nr; ++i) {
    auto in = f.row(i);
    auto o = out.row(i);
    o[0] = (-3.0 * in[0] + 4.0 * in[1] - in[2]) * inv2h;
    for (int j = 1; j < nz - 1; ++j) o[j] = (in[j + 1] - in[j - 1]) * inv2h;
    o[nz - 1] = (3.0 * in[nz - 1] - 4.0 * in[nz - 2] + in[nz - 3]) * inv2h;
  }
  return out;
}

ScalarField divergence(const VelocityField& u) {
  const GridSpec& g = u.grid();
  ScalarField out = ddr(u.u_r) + ddz(u.u_z);
  for (int i = 0; i < g.n_r(); ++i) {
    const double inv_r = 1.0 / g.r(i);
    for (int j = 0; j < g.n_z(); ++j) out(i, j) += u.u_r(i, j) * inv_r;
  }
  return out;
}

double cylindrical_integral(const ScalarField& f) {
  const GridSpec& g = f.grid();
  double total = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    double row_sum = 0.0;
    for (double v : f.row(i)) row_sum += v;
    total += row_sum * g.cell_measure(i);
  }
  return total;
}

ScalarField velocity_magnitude(const VelocityField& u) {
  ScalarField out(u.grid(), FieldRole::derived);
  auto ur = u.u_r.values();
  auto uz = u.u_z.values();
  auto o = out.values();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = std::hypot(ur[k], uz[k]);
  return out;
}

double boundary_margin(const ScalarField& f, double rel_tol) {
  const GridSpec& g = f.grid();
  const double peak = f.max_abs();
  if (peak == 0.0) return 0.5;
  const double threshold = rel_tol * peak;
  double r_hi = 0.0;
  double z_lo = g.z_max();
  double z_hi = g.z_min();
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_z(); ++j) {
      if (std::abs(f(i, j)) <= threshold) continue;
      r_hi = std::max(r_hi, g.r(i) + 0.5 * g.dr());
      z_lo = std::min(z_lo, g.z(j) - 0.5 * g.dz());
      z_hi = std::max(z_hi, g.z(j) + 0.5 * g.dz());
    }
  const double lz = g.z_max() - g.z_min();
  const double margin_r = (g.r_max() - r_hi) / g.r_max();
  const double margin_z = std::min(z_lo - g.z_min(), g.z_max() - z_hi) / lz;
  return std::min(margin_r, margin_z);
}

}  // namespace axivisc
