#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace axivisc {

/// Truncated meridional (r,z) domain, cell-centered and uniform in both
/// directions. Nodes sit at r_i = (i+1/2) dr and z_j = z_min + (j+1/2) dz,
/// so no node lies on the symmetry axis.
class GridSpec {
 public:
  GridSpec(double r_max, double z_min, double z_max, int n_r, int n_z);

  double r_max() const { return r_max_; }
  double z_min() const { return z_min_; }
  double z_max() const { return z_max_; }
  int n_r() const { return n_r_; }
  int n_z() const { return n_z_; }
  double dr() const { return dr_; }
  double dz() const { return dz_; }
  std::size_t size() const { return static_cast<std::size_t>(n_r_) * n_z_; }

  double r(int i) const { return (i + 0.5) * dr_; }
  double z(int j) const { return z_min_ + (j + 0.5) * dz_; }

  /// Volume of the revolved cell (i, *): 2 pi r_i dr dz.
  double cell_measure(int i) const;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_z_ + j;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double r_max_;
  double z_min_;
  double z_max_;
  int n_r_;
  int n_z_;
  double dr_;
  double dz_;
};

GridSpec make_grid(double r_max, double z_min, double z_max, int n_r, int n_z);

/// Tag deciding how a field is continued across the axis r = 0.
enum class FieldRole {
  omega_theta,     // odd
  q_omega_over_r,  // even
  velocity_r,      // odd
  velocity_z,      // even
  derived,         // no axis rule
};

enum class AxisParity { odd, even, none };

AxisParity axis_parity(FieldRole role);
std::string_view to_string(FieldRole role);
FieldRole role_from_string(std::string_view name);

/// One real value per node, stored row-major with r the slow index.
class ScalarField {
 public:
  ScalarField(GridSpec grid, FieldRole role);
  /// Throws std::invalid_argument on size mismatch or non-finite entries.
  ScalarField(GridSpec grid, FieldRole role, std::vector<double> values);

  template <class Fn>
  static ScalarField from_function(const GridSpec& grid, FieldRole role, Fn&& fn) {
    ScalarField f(grid, role);
    for (int i = 0; i < grid.n_r(); ++i)
      for (int j = 0; j < grid.n_z(); ++j) f(i, j) = fn(grid.r(i), grid.z(j));
    return f;
  }

  const GridSpec& grid() const { return grid_; }
  FieldRole role() const { return role_; }
  void set_role(FieldRole role) { role_ = role; }

  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::span<const double> row(int i) const {
    return std::span<const double>(values_).subspan(grid_.index(i, 0), grid_.n_z());
  }
  std::span<double> row(int i) {
    return std::span<double>(values_).subspan(grid_.index(i, 0), grid_.n_z());
  }

  bool all_finite() const;
  double max_abs() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double c);

 private:
  GridSpec grid_;
  FieldRole role_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);

struct VelocityField {
  ScalarField u_r;
  ScalarField u_z;

  explicit VelocityField(const GridSpec& grid)
      : u_r(grid, FieldRole::velocity_r), u_z(grid, FieldRole::velocity_z) {}
  VelocityField(ScalarField ur, ScalarField uz);

  const GridSpec& grid() const { return u_r.grid(); }
};

/// Value of the axis ghost node at r = -r_0 for column j.
double axis_ghost(const ScalarField& f, int j, AxisParity parity);

/// Second-order centered differences; one-sided second order at r_max and at
/// both z boundaries; axis ghost from the field's parity at the first r node.
ScalarField ddr(const ScalarField& f);
ScalarField ddr(const ScalarField& f, AxisParity parity);
ScalarField ddz(const ScalarField& f);

/// d_r u^r + u^r/r + d_z u^z with the ddr/ddz stencils.
ScalarField divergence(const VelocityField& u);

/// Sum of f(i,j) 2 pi r_i dr dz in fixed (i, j) order.
double cylindrical_integral(const ScalarField& f);

/// Pointwise |u| = sqrt(u_r^2 + u_z^2).
ScalarField velocity_magnitude(const VelocityField& u);

/// Smallest distance, as a fraction of the box extent, between nodes where
/// |f| > rel_tol * max|f| and the outer boundary (r = r_max or either z end).
/// Returns 0.5 for a zero field.
double boundary_margin(const ScalarField& f, double rel_tol = 1e-6);

/// Fraction of the box kept free of support by data builders and warned on
/// during runs.
inline constexpr double kSupportMargin = 0.25;

}  // namespace axivisc
