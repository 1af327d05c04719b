#pragma once

#include <memory>
#include <span>
#include <vector>

#include "axivisc/grid.hpp"

namespace axivisc {

namespace detail {
class ZConvolution;
}

enum class AngleSpacing {
  /// Trapezoid rule in a graded angle p with t = p - sin p. The map is smooth
  /// and periodic, so the rule stays spectrally accurate, while nodes cluster
  /// near t = 0 where the kernels of nearby source rings peak.
  graded,
  /// Plain trapezoid rule on equispaced t.
  uniform,
};

/// Quadrature on [0, 2 pi) for the azimuthal source angle, optionally bound to
/// a grid with precomputed angle-integrated kernels.
class KernelTable {
 public:
  /// n_theta must be even and at least 16.
  explicit KernelTable(int n_theta, AngleSpacing spacing = AngleSpacing::graded);
  /// Also precomputes the z-convolution cache for `grid`.
  KernelTable(int n_theta, const GridSpec& grid,
              AngleSpacing spacing = AngleSpacing::graded);

  int n_theta() const { return static_cast<int>(nodes_.size()); }
  AngleSpacing spacing() const { return spacing_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  bool has_cache_for(const GridSpec& grid) const;
  const detail::ZConvolution* cache() const { return cache_.get(); }

 private:
  AngleSpacing spacing_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::shared_ptr<const detail::ZConvolution> cache_;
};

/// Self-cell cutoff: source points closer than half the cell diagonal are skipped.
double singular_cutoff(const GridSpec& grid);

/// Velocity induced by an azimuthal vorticity ring distribution:
///
///   u^r(r,z) =  1/(4 pi) sum w_k cos(t_k) (z - z') / D^3 omega(r',z') r' dr dz
///   u^z(r,z) = -1/(4 pi) sum w_k (r cos(t_k) - r') / D^3 omega(r',z') r' dr dz
///
/// with D^2 = r^2 + r'^2 - 2 r r' cos(t_k) + (z - z')^2, summed over all source
/// nodes and angles with D >= singular_cutoff. This orientation gives
/// d_z u^r - d_r u^z = omega. Uses the table's cache when it
/// matches the field's grid and falls back to direct summation otherwise.
VelocityField velocity_from_vorticity(const ScalarField& omega, const KernelTable& kt);

/// The same sum evaluated term by term, O(N^2 n_theta).
VelocityField velocity_from_vorticity_direct(const ScalarField& omega,
                                             const KernelTable& kt);

/// u^r / r at every node.
ScalarField ur_over_r(const ScalarField& omega, const VelocityField& u);

/// sum w_k |g(r',z')| r' dr dz / D^power over the same cut-off quadrature,
/// i.e. the convolution of |g| with 1/|X| (power 1) or 1/|X|^2 (power 2).
ScalarField majorant_field(const ScalarField& g, int power, const KernelTable& kt);

}  // namespace axivisc
