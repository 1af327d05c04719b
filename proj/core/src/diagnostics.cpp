#include "axivisc/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "axivisc/norms.hpp"

namespace axivisc {

namespace {

using R = DiagnosticsRecord;

constexpr std::array<DiagnosticsColumn, 38> kColumns{{
    {"t", &R::t, true},
    {"q_l32_1", &R::q_l32_1, true},
    {"q_l65", &R::q_l65, true},
    {"q_l65_1", &R::q_l65_1, true},
    {"q_l32", &R::q_l32, true},
    {"q_l2", &R::q_l2, true},
    {"q_linf", &R::q_linf, true},
    {"omega_l32_1", &R::omega_l32_1, true},
    {"omega_l31", &R::omega_l31, true},
    {"omega_l65", &R::omega_l65, true},
    {"omega_l32", &R::omega_l32, true},
    {"omega_l2", &R::omega_l2, true},
    {"omega_linf", &R::omega_linf, true},
    {"dz_omega_l32_1", &R::dz_omega_l32_1, true},
    {"dz_omega_l2", &R::dz_omega_l2, true},
    {"dz_q_l32_1", &R::dz_q_l32_1, true},
    {"dz_q_l43_1", &R::dz_q_l43_1, true},
    {"dz_q_l2", &R::dz_q_l2, true},
    {"dr_omega_l32_1", &R::dr_omega_l32_1, true},
    {"sup_u", &R::sup_u, true},
    {"sup_ur", &R::sup_ur, true},
    {"sup_ur_over_r", &R::sup_ur_over_r, true},
    {"ur_over_r_mixed_inf_4", &R::ur_over_r_mixed_inf_4, true},
    {"kinetic_energy", &R::kinetic_energy, true},
    {"dz_u_sq", &R::dz_u_sq, true},
    {"int_sup_ur_over_r", &R::int_sup_ur_over_r, false},
    {"int_2_dz_u_sq", &R::int_2_dz_u_sq, false},
    {"q_linf_running_max", &R::q_linf_running_max, false},
    {"energy_ratio", &R::energy_ratio, false},
    {"growth_ratio_l65", &R::growth_ratio_l65, false},
    {"growth_ratio_l32", &R::growth_ratio_l32, false},
    {"growth_ratio_l2", &R::growth_ratio_l2, false},
    {"growth_ratio_lorentz_32_1", &R::growth_ratio_lorentz_32_1, false},
    {"sqrt_t_ratio", &R::sqrt_t_ratio, false},
    {"biot_ratio_u_omega31", &R::biot_ratio_u_omega31, true},
    {"biot_ratio_ur_dzomega", &R::biot_ratio_ur_dzomega, true},
    {"biot_ratio_urr_dzq", &R::biot_ratio_urr_dzq, true},
    {"biot_ratio_mixed", &R::biot_ratio_mixed, true},
}};

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double l2_squared(const ScalarField& f) {
  const double n = lebesgue_norm(f, 2.0);
  return n * n;
}

BiotRatios ratios_from(const DiagnosticsRecord& r) {
  BiotRatios b;
  b.degenerate_u_omega31 = !(r.omega_l31 > 0.0);
  b.degenerate_ur_dzomega = !(r.dz_omega_l32_1 > 0.0);
  b.degenerate_urr_dzq = !(r.dz_q_l32_1 > 0.0);
  b.degenerate_mixed = !(r.dz_q_l43_1 > 0.0);
  b.u_omega31 = safe_ratio(r.sup_u, r.omega_l31);
  b.ur_dzomega = safe_ratio(r.sup_ur, r.dz_omega_l32_1);
  b.urr_dzq = safe_ratio(r.sup_ur_over_r, r.dz_q_l32_1);
  b.mixed = safe_ratio(r.ur_over_r_mixed_inf_4, r.dz_q_l43_1);
  return b;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::span<const DiagnosticsColumn> diagnostics_columns() {
  return kColumns;
}

DiagnosticsRecord measure_state(const SimState& s) {
  DiagnosticsRecord r;
  r.t = s.t;

  const RearrangementProfile q_prof = rearrange(s.q);
  r.q_l32_1 = lorentz_norm(q_prof, {1.5, 1.0});
  r.q_l65 = lebesgue_norm(s.q, 1.2);
  r.q_l65_1 = lorentz_norm(q_prof, {1.2, 1.0});
  r.q_l32 = lebesgue_norm(s.q, 1.5);
  r.q_l2 = lebesgue_norm(s.q, 2.0);
  r.q_linf = s.q.max_abs();

  const RearrangementProfile w_prof = rearrange(s.omega);
  r.omega_l32_1 = lorentz_norm(w_prof, {1.5, 1.0});
  r.omega_l31 = lorentz_norm(w_prof, {3.0, 1.0});
  r.omega_l65 = lebesgue_norm(s.omega, 1.2);
  r.omega_l32 = lebesgue_norm(s.omega, 1.5);
  r.omega_l2 = lebesgue_norm(s.omega, 2.0);
  r.omega_linf = s.omega.max_abs();

  const ScalarField dz_omega = ddz(s.omega);
  r.dz_omega_l32_1 = lorentz_norm(dz_omega, {1.5, 1.0});
  r.dz_omega_l2 = lebesgue_norm(dz_omega, 2.0);
  const ScalarField dz_q = ddz(s.q);
  const RearrangementProfile dzq_prof = rearrange(dz_q);
  r.dz_q_l32_1 = lorentz_norm(dzq_prof, {1.5, 1.0});
  r.dz_q_l43_1 = lorentz_norm(dzq_prof, {4.0 / 3.0, 1.0});
  r.dz_q_l2 = lebesgue_norm(dz_q, 2.0);
  r.dr_omega_l32_1 = lorentz_norm(ddr(s.omega), {1.5, 1.0});

  const ScalarField urr = ur_over_r(s.omega, s.u);
  r.sup_u = velocity_magnitude(s.u).max_abs();
  r.sup_ur = s.u.u_r.max_abs();
  r.sup_ur_over_r = urr.max_abs();
  // p = 4/3 in L^inf_h(L^{p/(3-2p)}_v) gives the vertical exponent 4.
  r.ur_over_r_mixed_inf_4 = mixed_norm(urr, kInf, 4.0);

  r.kinetic_energy = l2_squared(s.u.u_r) + l2_squared(s.u.u_z);
  r.dz_u_sq = l2_squared(ddz(s.u.u_r)) + l2_squared(ddz(s.u.u_z));

  const BiotRatios b = ratios_from(r);
  r.biot_ratio_u_omega31 = b.u_omega31;
  r.biot_ratio_ur_dzomega = b.ur_dzomega;
  r.biot_ratio_urr_dzq = b.urr_dzq;
  r.biot_ratio_mixed = b.mixed;
  return r;
}

void RecordAccumulator::observe_step(const SimState& state) {
  const double m = state.q.max_abs();
  running_max_ = seen_step_ ? std::max(running_max_, m) : m;
  seen_step_ = true;
}

const DiagnosticsRecord& RecordAccumulator::record(const SimState& state) {
  return append(measure_state(state));
}

const DiagnosticsRecord& RecordAccumulator::append(DiagnosticsRecord r) {
  if (rows_.empty()) {
    r.int_sup_ur_over_r = 0.0;
    r.int_2_dz_u_sq = 0.0;
  } else {
    const DiagnosticsRecord& prev = rows_.back();
    const double dt = r.t - prev.t;
    if (dt < 0.0) throw std::invalid_argument("diagnostic rows must not go back in time");
    r.int_sup_ur_over_r = prev.int_sup_ur_over_r + 0.5 * dt * (prev.sup_ur_over_r + r.sup_ur_over_r);
    r.int_2_dz_u_sq = prev.int_2_dz_u_sq + dt * (prev.dz_u_sq + r.dz_u_sq);
  }
  running_max_ = seen_step_ ? std::max(running_max_, r.q_linf) : r.q_linf;
  seen_step_ = true;
  r.q_linf_running_max = running_max_;

  const DiagnosticsRecord& first = rows_.empty() ? r : rows_.front();
  const double gronwall = std::exp(r.int_sup_ur_over_r);
  r.energy_ratio = safe_ratio(r.kinetic_energy + r.int_2_dz_u_sq, first.kinetic_energy);
  r.growth_ratio_l65 = safe_ratio(r.omega_l65, first.omega_l65 * gronwall);
  r.growth_ratio_l32 = safe_ratio(r.omega_l32, first.omega_l32 * gronwall);
  r.growth_ratio_l2 = safe_ratio(r.omega_l2, first.omega_l2 * gronwall);
  r.growth_ratio_lorentz_32_1 = safe_ratio(r.omega_l32_1, first.omega_l32_1 * gronwall);
  r.sqrt_t_ratio = r.t > 0.0 ? safe_ratio(r.int_sup_ur_over_r, std::sqrt(r.t) * first.q_l32_1)
                             : 0.0;
  rows_.push_back(r);
  return rows_.back();
}

void RecordAccumulator::restore(std::vector<DiagnosticsRecord> rows) {
  rows_ = std::move(rows);
  seen_step_ = !rows_.empty();
  running_max_ = seen_step_ ? rows_.back().q_linf_running_max : 0.0;
}

std::string format_csv(std::span<const DiagnosticsRecord> rows) {
  std::string out;
  const auto cols = diagnostics_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) out += ',';
    out += cols[c].name;
  }
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out += ',';
      out += format_double(r.*(cols[c].member));
    }
    out += '\n';
  }
  return out;
}

std::vector<DiagnosticsRecord> parse_csv(std::string_view text) {
  const auto cols = diagnostics_columns();
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("diagnostics csv: empty file");
  {
    std::string expected;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) expected += ',';
      expected += cols[c].name;
    }
    if (line != expected) throw std::runtime_error("diagnostics csv: unexpected header");
  }
  std::vector<DiagnosticsRecord> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    DiagnosticsRecord r;
    const char* p = line.c_str();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      const bool last = c + 1 == cols.size();
      if (end == p || (last ? *end != '\0' : *end != ','))
        throw std::runtime_error("diagnostics csv: malformed row at line " +
                                 std::to_string(line_no));
      r.*(cols[c].member) = v;
      p = end + (last ? 0 : 1);
    }
    rows.push_back(r);
  }
  return rows;
}

CheckResult energy_check(std::span<const DiagnosticsRecord> rows, double tol) {
  CheckResult res{"energy", true, false, 0.0, ""};
  if (rows.empty()) return res;
  const double e0 = rows.front().kinetic_energy;
  double worst = e0 > 0.0 ? -kInf : 0.0;
  for (const auto& r : rows) {
    const double lhs = r.kinetic_energy + r.int_2_dz_u_sq;
    if (!(lhs <= e0 * (1.0 + tol))) res.passed = false;
    if (e0 > 0.0) worst = std::max(worst, lhs / e0 - 1.0);
    else if (lhs > 0.0) worst = kInf;
  }
  res.worst = worst;
  res.detail = "worst (||u||^2 + 2 int ||d_z u||^2) / ||u_0||^2 - 1 = " + format_double(res.worst);
  return res;
}

CheckResult max_principle_check(std::span<const DiagnosticsRecord> rows) {
  CheckResult res{"max_principle", true, false, 0.0, ""};
  if (rows.empty()) return res;
  const DiagnosticsRecord& f = rows.front();
  const double sup_bound = f.q_linf + 1e-12;
  const double slack = 1.0 + 1e-3;
  struct Norm {
    const char* name;
    double R::*member;
  };
  const Norm norms[] = {{"L^{3/2,1}", &R::q_l32_1},
                        {"L^{6/5,1}", &R::q_l65_1},
                        {"L^{2,2}", &R::q_l2},
                        {"L^{6/5,6/5}", &R::q_l65}};
  double worst = 0.0;
  std::string failed;
  for (const auto& r : rows) {
    if (!(r.q_linf <= sup_bound) || !(r.q_linf_running_max <= sup_bound)) {
      res.passed = false;
      if (failed.empty()) failed = "sup|q| at t = " + format_double(r.t);
    }
    if (f.q_linf > 0.0)
      worst = std::max(worst, std::max(r.q_linf, r.q_linf_running_max) / f.q_linf - 1.0);
    for (const auto& n : norms) {
      const double v0 = f.*(n.member);
      const double v = r.*(n.member);
      if (!(v <= v0 * slack)) {
        res.passed = false;
        if (failed.empty()) failed = std::string(n.name) + " at t = " + format_double(r.t);
      }
      if (v0 > 0.0) worst = std::max(worst, v / v0 - 1.0);
    }
  }
  res.worst = worst;
  res.detail = "worst relative increase " + format_double(worst);
  if (!failed.empty()) res.detail += "; first violation: " + failed;
  return res;
}

CheckResult growth_check(std::span<const DiagnosticsRecord> rows, double tol) {
  CheckResult res{"gronwall_growth", true, false, 0.0, ""};
  if (rows.empty()) return res;
  const DiagnosticsRecord& f = rows.front();
  const double R::*members[] = {&R::omega_l65, &R::omega_l32, &R::omega_l2};
  double worst = 0.0;
  double lorentz_worst = 0.0;
  for (const auto& r : rows) {
    const double g = std::exp(r.int_sup_ur_over_r);
    for (auto m : members) {
      const double bound = f.*m * g;
      if (!(r.*m <= bound * (1.0 + tol))) res.passed = false;
      worst = std::max(worst, safe_ratio(r.*m, bound));
    }
    lorentz_worst = std::max(lorentz_worst, safe_ratio(r.omega_l32_1, f.omega_l32_1 * g));
  }
  res.worst = worst;
  res.detail = "worst Lebesgue ratio " + format_double(worst) +
               "; worst L^{3/2,1} ratio (report only) " + format_double(lorentz_worst);
  return res;
}

std::vector<double> sqrt_t_series(std::span<const DiagnosticsRecord> rows) {
  std::vector<double> out;
  if (rows.empty()) return out;
  const double q0 = rows.front().q_l32_1;
  for (const auto& r : rows)
    if (r.t > 0.0) out.push_back(safe_ratio(r.int_sup_ur_over_r, std::sqrt(r.t) * q0));
  return out;
}

CheckResult sqrt_t_check(std::span<const DiagnosticsRecord> rows, double t_from,
                         double factor) {
  CheckResult res{"sqrt_t", true, false, 0.0, ""};
  if (rows.empty()) {
    res.detail = "no rows";
    return res;
  }
  const double q0 = rows.front().q_l32_1;
  if (!(q0 > 0.0)) {
    res.report_only = true;
    res.detail = "degenerate: ||q_0||_{L^{3/2,1}} = 0, ratio undefined";
    return res;
  }
  double ref = -1.0;
  double worst = 0.0;
  for (const auto& r : rows) {
    if (!(r.t > 0.0) || r.t < t_from) continue;
    const double rho = r.int_sup_ur_over_r / (std::sqrt(r.t) * q0);
    if (ref < 0.0) ref = rho;
    if (!std::isfinite(rho) || rho > factor * ref) res.passed = false;
    if (ref > 0.0) worst = std::max(worst, rho / ref);
  }
  if (ref < 0.0) {
    res.detail = "no rows with t >= " + format_double(t_from);
    return res;
  }
  res.worst = worst;
  res.detail = "first rho " + format_double(ref) + ", worst rho / first rho " +
               format_double(worst);
  return res;
}

HardyReport hardy_check(const ScalarField& omega) {
  HardyReport rep;
  const ScalarField q = q_from_omega(omega);
  const ScalarField dr = ddr(omega, AxisParity::odd);
  const double d65 = lebesgue_norm(dr, 1.2);
  const double d32 = lebesgue_norm(dr, 1.5);
  rep.degenerate = !(d65 > 0.0) || !(d32 > 0.0);
  rep.ratio_65 = safe_ratio(lebesgue_norm(q, 1.2), d65);
  rep.ratio_32 = safe_ratio(lebesgue_norm(q, 1.5), d32);
  return rep;
}

LemmaLpResult lemma_lp_check(const ScalarField& f, double p, Direction direction,
                             double tol) {
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("lemma_lp_check: p must lie in (1, 2]");
  ScalarField g(f.grid(), FieldRole::derived);
  {
    auto src = f.values();
    auto dst = g.values();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = std::pow(std::abs(src[k]), 0.5 * p);
  }
  ScalarField df = direction == Direction::z ? ddz(f) : ddr(f);
  ScalarField dg = direction == Direction::z ? ddz(g) : ddr(g, AxisParity::even);
  LemmaLpResult res;
  res.lhs = lebesgue_norm(df, p);
  res.rhs = (2.0 / p) * lebesgue_norm(dg, 2.0) * std::pow(lebesgue_norm(f, p), 0.5 * (2.0 - p));
  res.passed = res.lhs <= res.rhs * (1.0 + tol);
  return res;
}

MonitorSeries dr_omega_monitor(std::span<const DiagnosticsRecord> rows) {
  MonitorSeries s;
  for (const auto& r : rows) {
    s.t.push_back(r.t);
    s.values.push_back(r.dr_omega_l32_1);
    if (!std::isfinite(r.dr_omega_l32_1)) s.all_finite = false;
  }
  return s;
}

BiotRatios biot_ratio_check(const SimState& state) { return ratios_from(measure_state(state)); }

}  // namespace axivisc
