#include "axivisc/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace axivisc {

void LorentzIndex::validate() const {
  if (std::isnan(p) || std::isnan(q))
    throw std::invalid_argument("Lorentz index: NaN exponent");
  if (q < 1.0) throw std::invalid_argument("Lorentz index: q must be >= 1");
  if (p < 1.0 || (p == 1.0 && q != 1.0))
    throw std::invalid_argument("Lorentz index: need p > 1, or p = q = 1");
  if (p == kInf && q != kInf)
    throw std::invalid_argument("Lorentz index: p = inf requires q = inf");
}

double RearrangementProfile::at(double t) const {
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), t);
  if (it == cumulative.end()) return 0.0;
  return values[static_cast<std::size_t>(it - cumulative.begin())];
}

RearrangementProfile rearrange(const ScalarField& f) {
  const GridSpec& g = f.grid();
  const std::size_t n = g.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto vals = f.values();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(vals[a]) > std::abs(vals[b]);
  });

  RearrangementProfile prof;
  double running = 0.0;
  for (std::size_t k : order) {
    const double v = std::abs(vals[k]);
    const double mu = g.cell_measure(static_cast<int>(k / g.n_z()));
    if (!prof.values.empty() && prof.values.back() == v) {
      prof.measures.back() += mu;
    } else {
      prof.values.push_back(v);
      prof.measures.push_back(mu);
    }
  }
  prof.cumulative.resize(prof.measures.size());
  for (std::size_t k = 0; k < prof.measures.size(); ++k) {
    running += prof.measures[k];
    prof.cumulative[k] = running;
  }
  return prof;
}

double lebesgue_norm(const ScalarField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lebesgue_norm: p must be >= 1");
  if (p == kInf) return f.max_abs();
  const GridSpec& g = f.grid();
  double total = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    double row = 0.0;
    if (p == 1.0) {
      for (double v : f.row(i)) row += std::abs(v);
    } else if (p == 2.0) {
      for (double v : f.row(i)) row += v * v;
    } else {
      for (double v : f.row(i)) row += std::pow(std::abs(v), p);
    }
    total += row * g.cell_measure(i);
  }
  return std::pow(total, 1.0 / p);
}

double lorentz_norm(const ScalarField& f, LorentzIndex idx) {
  idx.validate();
  return lorentz_norm(rearrange(f), idx);
}

double lorentz_norm(const RearrangementProfile& prof, LorentzIndex idx) {
  idx.validate();
  const std::size_t n = prof.values.size();
  if (idx.p == kInf) return n == 0 ? 0.0 : prof.values.front();

  if (idx.q == kInf) {
    // t^(1/p) f*(t) increases on each step, so the sup sits at a right endpoint.
    double sup = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      sup = std::max(sup, std::pow(prof.cumulative[k], 1.0 / idx.p) * prof.values[k]);
    return sup;
  }

  // int_{c_{k-1}}^{c_k} t^(q/p - 1) dt = (p/q) (c_k^a - c_{k-1}^a), a = q/p;
  // the difference is formed as c_{k-1}^a expm1(a log1p(mu_k / c_{k-1})).
  const double a = idx.q / idx.p;
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = prof.values[k];
    if (v == 0.0) break;
    const double mu = prof.measures[k];
    double increment = 0.0;
    if (a == 1.0) {
      increment = mu;
    } else if (prev == 0.0) {
      increment = std::pow(mu, a);
    } else {
      increment = std::pow(prev, a) * std::expm1(a * std::log1p(mu / prev));
    }
    total += std::pow(v, idx.q) * increment;
    prev = prof.cumulative[k];
  }
  return std::pow(total / a, 1.0 / idx.q);
}

double mixed_norm(const ScalarField& f, double p_h, double p_v) {
  if (!(p_h >= 1.0) || !(p_v >= 1.0))
    throw std::invalid_argument("mixed_norm: exponents must be >= 1");
  const GridSpec& g = f.grid();
  const double two_pi_dr = 2.0 * std::numbers::pi * g.dr();
  double outer = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    double inner = 0.0;
    if (p_v == kInf) {
      for (double v : f.row(i)) inner = std::max(inner, std::abs(v));
    } else {
      for (double v : f.row(i)) inner += std::pow(std::abs(v), p_v);
      inner = std::pow(inner * g.dz(), 1.0 / p_v);
    }
    if (p_h == kInf) {
      outer = std::max(outer, inner);
    } else {
      outer += std::pow(inner, p_h) * g.r(i) * two_pi_dr;
    }
  }
  return p_h == kInf ? outer : std::pow(outer, 1.0 / p_h);
}

}  // namespace axivisc
