#include "axivisc/biot_savart.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "axivisc/parallel.hpp"
#include "z_convolution.hpp"

namespace axivisc {

namespace {

// Sources with D < cutoff are skipped. Distances that equal the cutoff up to
// rounding count as outside, so that the cached and direct sums, which form
// D^2 in a different order, agree on ties such as dr = dz with t = pi / 2.
bool within_cutoff(double d2, double cutoff2) { return d2 < cutoff2 * (1.0 - 1e-10); }

constexpr double kInvFourPi = 1.0 / (4.0 * std::numbers::pi);

void require_vorticity(const ScalarField& omega) {
  if (omega.role() != FieldRole::omega_theta)
    throw std::invalid_argument("velocity_from_vorticity: field role must be omega_theta, got '" +
                                std::string(to_string(omega.role())) + "'");
}

// Angle-integrated velocity kernels for one (target row, source row) pair.
// Nodes t_k and t_{n-k} share cos t_k, so each mirrored pair is folded.
struct PairQuadrature {
  std::vector<double> cos_t;
  std::vector<double> weight;

  explicit PairQuadrature(const KernelTable& kt) {
    const int n = kt.n_theta();
    for (int k = 0; k <= n / 2; ++k) {
      cos_t.push_back(std::cos(kt.nodes()[k]));
      const bool self_mirrored = (k == 0 || k == n / 2);
      weight.push_back(self_mirrored ? kt.weights()[k] : 2.0 * kt.weights()[k]);
    }
  }
};

void fill_velocity_kernels(const GridSpec& g, const PairQuadrature& quad, int i, int ip,
                           std::span<double> out) {
  const int nz = g.n_z();
  const int width = 2 * nz - 1;
  const double r = g.r(i);
  const double rp = g.r(ip);
  const double cutoff2 = std::pow(singular_cutoff(g), 2);
  const double source_weight = rp * g.dr() * g.dz() * kInvFourPi;
  for (int m = -(nz - 1); m <= nz - 1; ++m) {
    const double dz = m * g.dz();
    double kr = 0.0;
    double kz = 0.0;
    for (std::size_t k = 0; k < quad.cos_t.size(); ++k) {
      const double c = quad.cos_t[k];
      const double d2 = r * r + rp * rp - 2.0 * r * rp * c + dz * dz;
      if (within_cutoff(d2, cutoff2)) continue;
      const double inv_d3 = 1.0 / (d2 * std::sqrt(d2));
      kr += quad.weight[k] * c * dz * inv_d3;
      kz += quad.weight[k] * (r * c - rp) * inv_d3;
    }
    out[m + nz - 1] = source_weight * kr;
    out[width + m + nz - 1] = -source_weight * kz;
  }
}

}  // namespace

KernelTable::KernelTable(int n_theta, AngleSpacing spacing) : spacing_(spacing) {
  if (n_theta < 16 || n_theta % 2 != 0)
    throw std::invalid_argument("KernelTable: n_theta must be even and >= 16");
  const double h = 2.0 * std::numbers::pi / n_theta;
  nodes_.resize(n_theta);
  weights_.resize(n_theta);
  for (int k = 0; k < n_theta; ++k) {
    const double p = k * h;
    if (spacing == AngleSpacing::graded) {
      nodes_[k] = p - std::sin(p);
      weights_[k] = h * (1.0 - std::cos(p));
    } else {
      nodes_[k] = p;
      weights_[k] = h;
    }
  }
}

KernelTable::KernelTable(int n_theta, const GridSpec& grid, AngleSpacing spacing)
    : KernelTable(n_theta, spacing) {
  const PairQuadrature quad(*this);
  cache_ = std::make_shared<const detail::ZConvolution>(
      grid, 2, [&](int i, int ip, std::span<double> out) {
        fill_velocity_kernels(grid, quad, i, ip, out);
      });
}

bool KernelTable::has_cache_for(const GridSpec& grid) const {
  return cache_ && cache_->grid() == grid;
}

double singular_cutoff(const GridSpec& grid) {
  return 0.5 * std::hypot(grid.dr(), grid.dz());
}

VelocityField velocity_from_vorticity(const ScalarField& omega, const KernelTable& kt) {
  require_vorticity(omega);
  if (!kt.has_cache_for(omega.grid())) return velocity_from_vorticity_direct(omega, kt);
  VelocityField u(omega.grid());
  const std::span<double> outs[2] = {u.u_r.values(), u.u_z.values()};
  kt.cache()->apply(omega.values(), outs);
  return u;
}

VelocityField velocity_from_vorticity_direct(const ScalarField& omega,
                                             const KernelTable& kt) {
  require_vorticity(omega);
  const GridSpec& g = omega.grid();
  const int nr = g.n_r();
  const int nz = g.n_z();
  const int nt = kt.n_theta();
  const double cutoff2 = std::pow(singular_cutoff(g), 2);
  std::vector<double> cos_t(nt);
  for (int k = 0; k < nt; ++k) cos_t[k] = std::cos(kt.nodes()[k]);

  VelocityField u(g);
  parallel_for(0, nr, [&](int i) {
    const double r = g.r(i);
    for (int j = 0; j < nz; ++j) {
      const double z = g.z(j);
      double ur = 0.0;
      double uz = 0.0;
      for (int ip = 0; ip < nr; ++ip) {
        const double rp = g.r(ip);
        const double src_w = rp * g.dr() * g.dz();
        for (int jp = 0; jp < nz; ++jp) {
          const double w = omega(ip, jp);
          if (w == 0.0) continue;
          const double dz = z - g.z(jp);
          for (int k = 0; k < nt; ++k) {
            const double c = cos_t[k];
            const double d2 = r * r + rp * rp - 2.0 * r * rp * c + dz * dz;
            if (within_cutoff(d2, cutoff2)) continue;
            const double inv_d3 = 1.0 / (d2 * std::sqrt(d2));
            const double a = kt.weights()[k] * w * src_w * inv_d3;
            ur += a * c * dz;
            uz -= a * (r * c - rp);
          }
        }
      }
      u.u_r(i, j) = ur * kInvFourPi;
      u.u_z(i, j) = uz * kInvFourPi;
    }
  });
  return u;
}

ScalarField ur_over_r(const ScalarField& omega, const VelocityField& u) {
  if (!(omega.grid() == u.grid()))
    throw std::invalid_argument("ur_over_r: vorticity and velocity grids differ");
  const GridSpec& g = u.grid();
  ScalarField out(g, FieldRole::derived);
  for (int i = 0; i < g.n_r(); ++i) {
    const double inv_r = 1.0 / g.r(i);
    for (int j = 0; j < g.n_z(); ++j) out(i, j) = u.u_r(i, j) * inv_r;
  }
  return out;
}

ScalarField majorant_field(const ScalarField& g_field, int power, const KernelTable& kt) {
  if (power != 1 && power != 2)
    throw std::invalid_argument("majorant_field: power must be 1 or 2");
  const GridSpec& g = g_field.grid();
  const int nr = g.n_r();
  const int nz = g.n_z();
  const int width = 2 * nz - 1;
  const double cutoff2 = std::pow(singular_cutoff(g), 2);
  const PairQuadrature quad(kt);

  // Angle-integrated kernel T(i, i', m), then a direct Toeplitz sum in z.
  // Every term is non-negative, so the result is monotone in |g| exactly.
  std::vector<double> table(static_cast<std::size_t>(nr) * nr * width);
  parallel_for(0, nr, [&](int i) {
    const double r = g.r(i);
    for (int ip = 0; ip < nr; ++ip) {
      const double rp = g.r(ip);
      const double src_w = rp * g.dr() * g.dz();
      double* row = table.data() + (static_cast<std::size_t>(i) * nr + ip) * width;
      for (int m = -(nz - 1); m <= nz - 1; ++m) {
        const double dz = m * g.dz();
        double s = 0.0;
        for (std::size_t k = 0; k < quad.cos_t.size(); ++k) {
          const double d2 = r * r + rp * rp - 2.0 * r * rp * quad.cos_t[k] + dz * dz;
          if (within_cutoff(d2, cutoff2)) continue;
          s += quad.weight[k] * (power == 1 ? 1.0 / std::sqrt(d2) : 1.0 / d2);
        }
        row[m + nz - 1] = s * src_w;
      }
    }
  });

  ScalarField out(g, FieldRole::derived);
  parallel_for(0, nr, [&](int i) {
    for (int j = 0; j < nz; ++j) {
      double s = 0.0;
      for (int ip = 0; ip < nr; ++ip) {
        const double* row = table.data() + (static_cast<std::size_t>(i) * nr + ip) * width;
        for (int jp = 0; jp < nz; ++jp) s += row[j - jp + nz - 1] * std::abs(g_field(ip, jp));
      }
      out(i, j) = s;
    }
  });
  return out;
}

}  // namespace axivisc
