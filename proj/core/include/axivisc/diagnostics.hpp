#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "axivisc/biot_savart.hpp"
#include "axivisc/evolution.hpp"
#include "axivisc/grid.hpp"

namespace axivisc {

/// One diagnostic output row. Naming: l32_1 is the Lorentz norm L^{3/2,1},
/// l65 the Lebesgue norm L^{6/5}, linf the sup norm; mixed_inf_4 is
/// L^inf_h(L^4_v). Fields up to and including ur_over_r_mixed_inf_4 plus the
/// energy pair are instantaneous functions of the state; the rest depend on
/// the earlier rows.
struct DiagnosticsRecord {
  double t = 0.0;

  double q_l32_1 = 0.0;
  double q_l65 = 0.0;
  double q_l65_1 = 0.0;
  double q_l32 = 0.0;
  double q_l2 = 0.0;
  double q_linf = 0.0;

  double omega_l32_1 = 0.0;
  double omega_l31 = 0.0;
  double omega_l65 = 0.0;
  double omega_l32 = 0.0;
  double omega_l2 = 0.0;
  double omega_linf = 0.0;

  double dz_omega_l32_1 = 0.0;
  double dz_omega_l2 = 0.0;
  double dz_q_l32_1 = 0.0;
  double dz_q_l43_1 = 0.0;
  double dz_q_l2 = 0.0;
  double dr_omega_l32_1 = 0.0;

  double sup_u = 0.0;
  double sup_ur = 0.0;
  double sup_ur_over_r = 0.0;
  double ur_over_r_mixed_inf_4 = 0.0;

  double kinetic_energy = 0.0;  // ||u||_{L^2}^2
  double dz_u_sq = 0.0;         // ||d_z u||_{L^2}^2

  double int_sup_ur_over_r = 0.0;  // trapezoid in t over the rows so far
  double int_2_dz_u_sq = 0.0;
  double q_linf_running_max = 0.0;  // sup |q| over every step so far

  double energy_ratio = 0.0;
  double growth_ratio_l65 = 0.0;
  double growth_ratio_l32 = 0.0;
  double growth_ratio_l2 = 0.0;
  double growth_ratio_lorentz_32_1 = 0.0;
  double sqrt_t_ratio = 0.0;

  double biot_ratio_u_omega31 = 0.0;
  double biot_ratio_ur_dzomega = 0.0;
  double biot_ratio_urr_dzq = 0.0;
  double biot_ratio_mixed = 0.0;

  friend bool operator==(const DiagnosticsRecord&, const DiagnosticsRecord&) = default;
};

struct DiagnosticsColumn {
  std::string_view name;
  double DiagnosticsRecord::*member;
  bool instantaneous;
};

/// CSV columns in output order.
std::span<const DiagnosticsColumn> diagnostics_columns();

/// Instantaneous columns of `state`; history-dependent columns are left zero
/// apart from the Biot ratios, which are instantaneous too.
DiagnosticsRecord measure_state(const SimState& state);

/// Builds rows along a run: tracks the per-step sup of |q| and the running
/// time integrals, and fills the ratio columns against the first row.
class RecordAccumulator {
 public:
  /// Call after every step (and for the initial state).
  void observe_step(const SimState& state);
  /// Measures `state` and appends the completed row.
  const DiagnosticsRecord& record(const SimState& state);
  /// Appends an already measured row; used by record() and when resuming.
  const DiagnosticsRecord& append(DiagnosticsRecord instant);
  /// Continues from rows written earlier, taking their running values as is.
  void restore(std::vector<DiagnosticsRecord> rows);

  const std::vector<DiagnosticsRecord>& rows() const { return rows_; }

 private:
  std::vector<DiagnosticsRecord> rows_;
  double running_max_ = 0.0;
  bool seen_step_ = false;
};

std::string format_csv(std::span<const DiagnosticsRecord> rows);
/// Throws std::runtime_error on a malformed header or row.
std::vector<DiagnosticsRecord> parse_csv(std::string_view text);

struct CheckResult {
  std::string name;
  bool passed = true;
  bool report_only = false;
  double worst = 0.0;  // check-specific: worst slack or worst ratio
  std::string detail;
};

/// ||u(t)||^2 + 2 int ||d_z u||^2 <= ||u_0||^2 (1 + tol) at every row.
/// `worst` is the largest value of lhs / ||u_0||^2 - 1.
CheckResult energy_check(std::span<const DiagnosticsRecord> rows, double tol = 0.02);

/// sup |q| never above its initial value plus 1e-12 (running maximum over
/// steps included), and the L^{3/2,1}, L^{6/5,1}, L^{2,2}, L^{6/5,6/5} norms of
/// q within a factor 1 + 1e-3 of their initial values. The last two use the
/// Lebesgue columns, since L^{p,p} = L^p.
CheckResult max_principle_check(std::span<const DiagnosticsRecord> rows);

/// ||omega(t)||_{L^p} <= ||omega_0||_{L^p} exp(int sup |u^r/r|) (1 + tol) for
/// p = 6/5, 3/2, 2. `detail` also reports the largest L^{3/2,1} ratio.
CheckResult growth_check(std::span<const DiagnosticsRecord> rows, double tol = 0.05);

/// rho(t) = int_0^t sup |u^r/r| / (sqrt(t) ||q_0||_{L^{3/2,1}}) stays below
/// `factor` times its value at the first row with t > 0 and t >= t_from, over
/// all rows with t >= t_from. A zero ||q_0|| yields a passing report flagged
/// as degenerate.
CheckResult sqrt_t_check(std::span<const DiagnosticsRecord> rows, double t_from,
                         double factor = 10.0);

/// rho(t) for every row with t > 0, as used by sqrt_t_check.
std::vector<double> sqrt_t_series(std::span<const DiagnosticsRecord> rows);

struct HardyReport {
  double ratio_65 = 0.0;  // ||omega/r||_{L^{6/5}} / ||d_r omega||_{L^{6/5}}
  double ratio_32 = 0.0;
  bool degenerate = false;
};

HardyReport hardy_check(const ScalarField& omega);

enum class Direction { r, z };

struct LemmaLpResult {
  double lhs = 0.0;  // ||d_i f||_{L^p}
  double rhs = 0.0;  // (2/p) ||d_i |f|^{p/2}||_{L^2} ||f||_{L^p}^{(2-p)/2}
  bool passed = true;
};

/// Checks lhs <= rhs (1 + tol). |f|^{p/2} is extended evenly across the axis.
/// Throws std::invalid_argument unless 1 < p <= 2.
LemmaLpResult lemma_lp_check(const ScalarField& f, double p, Direction direction,
                             double tol = 0.05);

struct MonitorSeries {
  std::vector<double> t;
  std::vector<double> values;
  bool all_finite = true;
};

/// ||d_r omega||_{L^{3/2,1}} over the rows.
MonitorSeries dr_omega_monitor(std::span<const DiagnosticsRecord> rows);

struct BiotRatios {
  double u_omega31 = 0.0;   // sup|u| / ||omega||_{L^{3,1}}
  double ur_dzomega = 0.0;  // sup|u^r| / ||d_z omega||_{L^{3/2,1}}
  double urr_dzq = 0.0;     // sup|u^r/r| / ||d_z q||_{L^{3/2,1}}
  double mixed = 0.0;       // ||u^r/r||_{L^inf_h(L^4_v)} / ||d_z q||_{L^{4/3,1}}
  bool degenerate_u_omega31 = false;
  bool degenerate_ur_dzomega = false;
  bool degenerate_urr_dzq = false;
  bool degenerate_mixed = false;
};

BiotRatios biot_ratio_check(const SimState& state);

}  // namespace axivisc
