#pragma once

#include <limits>
#include <vector>

#include "axivisc/grid.hpp"

namespace axivisc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Exponent pair (p, q) of the Lorentz space L^{p,q}; either slot may be kInf.
struct LorentzIndex {
  double p;
  double q;

  /// Requires p > 1 (or p = q = 1) and q >= 1; p = inf only with q = inf.
  void validate() const;
};

/// Discrete decreasing rearrangement of |f|: the right-continuous step
/// function taking values[k] on [cumulative[k-1], cumulative[k]).
/// Cells with equal |f| are merged into one step.
struct RearrangementProfile {
  std::vector<double> values;      // strictly decreasing
  std::vector<double> measures;    // measure of each step
  std::vector<double> cumulative;  // prefix sums of measures

  double total_measure() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  /// f*(t) for t >= 0; 0 beyond the total measure.
  double at(double t) const;
};

RearrangementProfile rearrange(const ScalarField& f);

/// (sum |f|^p mu)^(1/p) with mu the cylindrical cell measure; max |f| for p = inf.
double lebesgue_norm(const ScalarField& f, double p);

/// Lorentz norm integrated exactly over each step of the rearrangement.
double lorentz_norm(const ScalarField& f, LorentzIndex idx);
double lorentz_norm(const RearrangementProfile& profile, LorentzIndex idx);

/// L^{p_h}_h(L^{p_v}_v): inner norm along z on each r-row with measure dz,
/// outer norm across rows with measure 2 pi r dr.
double mixed_norm(const ScalarField& f, double p_h, double p_v);

/// sum Phi(|f|) mu evaluated on the profile; used to cross-check equimeasurability.
template <class Phi>
double profile_integral(const RearrangementProfile& profile, Phi&& phi) {
  double s = 0.0;
  for (std::size_t k = 0; k < profile.values.size(); ++k)
    s += phi(profile.values[k]) * profile.measures[k];
  return s;
}

}  // namespace axivisc
