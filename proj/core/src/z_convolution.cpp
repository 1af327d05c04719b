#include "z_convolution.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

#include "axivisc/parallel.hpp"

namespace axivisc::detail {

namespace {

// The FFTW planner is not thread-safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : data(fftw_alloc_real(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~RealBuffer() { fftw_free(data); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* data;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~ComplexBuffer() { fftw_free(data); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
  fftw_complex* data;
};

}  // namespace

struct ZConvolution::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(int n) {
    RealBuffer r(n);
    ComplexBuffer c(n / 2 + 1);
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_r2c_1d(n, r.data, c.data, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(n, c.data, r.data, FFTW_ESTIMATE);
    if (!forward || !backward) throw std::runtime_error("FFTW planning failed");
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
};

ZConvolution::ZConvolution(const GridSpec& grid, int n_kernels, const KernelFill& fill)
    : grid_(grid),
      n_kernels_(n_kernels),
      n_fft_(2 * grid.n_z()),
      n_freq_(grid.n_z() + 1),
      plans_(std::make_unique<Plans>(2 * grid.n_z())) {
  if (n_kernels < 1) throw std::invalid_argument("ZConvolution: need at least one kernel");
  const int nr = grid.n_r();
  const int nz = grid.n_z();
  const int width = 2 * nz - 1;
  spectra_.assign(static_cast<std::size_t>(n_kernels) * nr * nr * n_freq_ * 2, 0.0);

  parallel_for(0, nr, [&](int i) {
    std::vector<double> block(static_cast<std::size_t>(n_kernels) * width);
    RealBuffer padded(n_fft_);
    ComplexBuffer spec(n_freq_);
    for (int ip = 0; ip < nr; ++ip) {
      fill(i, ip, block);
      for (int k = 0; k < n_kernels; ++k) {
        const double* kb = block.data() + static_cast<std::size_t>(k) * width;
        // Circular layout: offset m >= 0 at index m, m < 0 at n_fft + m.
        padded.data[nz] = 0.0;
        for (int m = 0; m < nz; ++m) padded.data[m] = kb[m + nz - 1];
        for (int m = 1; m < nz; ++m) padded.data[n_fft_ - m] = kb[nz - 1 - m];
        fftw_execute_dft_r2c(plans_->forward, padded.data, spec.data);
        double* dst = spectra_.data() +
                      ((static_cast<std::size_t>(k) * nr + i) * nr + ip) * n_freq_ * 2;
        std::memcpy(dst, spec.data, sizeof(double) * 2 * n_freq_);
      }
    }
  });
}

ZConvolution::~ZConvolution() = default;

void ZConvolution::apply(std::span<const double> src,
                         std::span<const std::span<double>> outs) const {
  const int nr = grid_.n_r();
  const int nz = grid_.n_z();
  if (src.size() != grid_.size()) throw std::invalid_argument("ZConvolution: source size");
  if (static_cast<int>(outs.size()) != n_kernels_)
    throw std::invalid_argument("ZConvolution: output count");
  for (const auto& o : outs)
    if (o.size() != grid_.size()) throw std::invalid_argument("ZConvolution: output size");

  const std::size_t row_len = static_cast<std::size_t>(n_freq_) * 2;
  std::vector<double> src_spec(static_cast<std::size_t>(nr) * row_len);
  {
    RealBuffer padded(n_fft_);
    ComplexBuffer spec(n_freq_);
    for (int ip = 0; ip < nr; ++ip) {
      std::memcpy(padded.data, src.data() + static_cast<std::size_t>(ip) * nz,
                  sizeof(double) * nz);
      std::memset(padded.data + nz, 0, sizeof(double) * (n_fft_ - nz));
      fftw_execute_dft_r2c(plans_->forward, padded.data, spec.data);
      std::memcpy(src_spec.data() + ip * row_len, spec.data, sizeof(double) * row_len);
    }
  }

  const double scale = 1.0 / n_fft_;
  parallel_for(0, nr, [&](int i) {
    ComplexBuffer acc(n_freq_);
    RealBuffer result(n_fft_);
    double* a = reinterpret_cast<double*>(acc.data);
    for (int k = 0; k < n_kernels_; ++k) {
      std::memset(a, 0, sizeof(double) * row_len);
      const double* kern =
          spectra_.data() + (static_cast<std::size_t>(k) * nr + i) * nr * row_len;
      for (int ip = 0; ip < nr; ++ip) {
        const double* kr = kern + ip * row_len;
        const double* s = src_spec.data() + ip * row_len;
        for (int f = 0; f < n_freq_; ++f) {
          const double re = kr[2 * f] * s[2 * f] - kr[2 * f + 1] * s[2 * f + 1];
          const double im = kr[2 * f] * s[2 * f + 1] + kr[2 * f + 1] * s[2 * f];
          a[2 * f] += re;
          a[2 * f + 1] += im;
        }
      }
      fftw_execute_dft_c2r(plans_->backward, acc.data, result.data);
      double* out = outs[k].data() + static_cast<std::size_t>(i) * nz;
      for (int j = 0; j < nz; ++j) out[j] = result.data[j] * scale;
    }
  });
}

}  // namespace axivisc::detail
