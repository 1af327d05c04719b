#include "axivisc/initial_data.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "axivisc/norms.hpp"

namespace axivisc {

namespace {

bool in_patch(const InitialData& d, double r, double z) {
  const double dr = r - d.r0;
  const double dz = z - d.z0;
  return dr * dr + dz * dz <= d.patch_radius * d.patch_radius;
}

double gaussian(double a, double r0, double z0, double sigma, double r, double z) {
  const double dr = r - r0;
  const double dz = z - z0;
  return a * std::exp(-(dr * dr + dz * dz) / (sigma * sigma));
}

}  // namespace

void check_support_margin(const InitialData& d, const GridSpec& g) {
  const double extent = d.kind == InitialKind::yudovich_patch ? d.patch_radius : 4.0 * d.sigma;
  const double half_gap = d.kind == InitialKind::ring_pair ? 0.5 * d.separation : 0.0;
  const double lz = g.z_max() - g.z_min();
  const double r_hi = (1.0 - kSupportMargin) * g.r_max();
  const double z_lo = g.z_min() + kSupportMargin * lz;
  const double z_hi = g.z_max() - kSupportMargin * lz;
  if (d.r0 + extent > r_hi)
    throw std::invalid_argument("initial data reaches r = " + std::to_string(d.r0 + extent) +
                                ", beyond the safe limit " + std::to_string(r_hi));
  if (d.z0 - half_gap - extent < z_lo || d.z0 + half_gap + extent > z_hi)
    throw std::invalid_argument("initial data leaves the safe z band [" + std::to_string(z_lo) +
                                ", " + std::to_string(z_hi) + "]");
}

ScalarField build_initial(const InitialData& d, const GridSpec& g) {
  check_support_margin(d, g);
  switch (d.kind) {
    case InitialKind::gaussian_ring:
      return ScalarField::from_function(g, FieldRole::q_omega_over_r, [&](double r, double z) {
        return gaussian(d.amplitude, d.r0, d.z0, d.sigma, r, z);
      });
    case InitialKind::yudovich_patch:
      return ScalarField::from_function(g, FieldRole::q_omega_over_r, [&](double r, double z) {
        return in_patch(d, r, z) ? d.amplitude : 0.0;
      });
    case InitialKind::ring_pair: {
      const double h = 0.5 * d.separation;
      return ScalarField::from_function(g, FieldRole::q_omega_over_r, [&](double r, double z) {
        return gaussian(d.amplitude, d.r0, d.z0 - h, d.sigma, r, z) -
               gaussian(d.amplitude, d.r0, d.z0 + h, d.sigma, r, z);
      });
    }
  }
  throw std::invalid_argument("unknown initial data kind");
}

double patch_measure(const InitialData& d, const GridSpec& g) {
  double v = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    int cells = 0;
    for (int j = 0; j < g.n_z(); ++j) cells += in_patch(d, g.r(i), g.z(j)) ? 1 : 0;
    v += cells * g.cell_measure(i);
  }
  return v;
}

double patch_lorentz_norm(const InitialData& d, const GridSpec& g, double p, double q) {
  LorentzIndex{p, q}.validate();
  const double v = patch_measure(d, g);
  const double a = std::abs(d.amplitude);
  if (q == kInf) return a * std::pow(v, 1.0 / p);
  return std::pow(p / q, 1.0 / q) * a * std::pow(v, 1.0 / p);
}

}  // namespace axivisc
