#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "axivisc/grid.hpp"

namespace axivisc::detail {

/// Row-coupled convolution that is Toeplitz along z:
///
///   out_k(i, j) = sum_{i', j'} K_k(i, i', j - j') src(i', j')
///
/// Each kernel row K_k(i, i', .) is zero-padded to length 2 n_z and stored as
/// its real-to-complex spectrum, so applying the operator costs
/// O(n_r^2 n_z) per kernel plus O(n_r n_z log n_z) in transforms.
class ZConvolution {
 public:
  /// fill(i, i', out) writes n_kernels blocks of 2 n_z - 1 values into `out`;
  /// block k holds K_k(i, i', m) at position m + n_z - 1 for |m| < n_z.
  using KernelFill = std::function<void(int i, int ip, std::span<double> out)>;

  ZConvolution(const GridSpec& grid, int n_kernels, const KernelFill& fill);
  ~ZConvolution();
  ZConvolution(const ZConvolution&) = delete;
  ZConvolution& operator=(const ZConvolution&) = delete;

  const GridSpec& grid() const { return grid_; }
  int n_kernels() const { return n_kernels_; }

  /// `outs` must hold n_kernels spans of grid.size() doubles.
  void apply(std::span<const double> src, std::span<const std::span<double>> outs) const;

 private:
  struct Plans;

  GridSpec grid_;
  int n_kernels_;
  int n_fft_;
  int n_freq_;
  std::unique_ptr<Plans> plans_;
  // Interleaved (re, im) spectra, indexed [kernel][i][i'][freq].
  std::vector<double> spectra_;
};

}  // namespace axivisc::detail
