#include "axivisc/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "axivisc/initial_data.hpp"
#include "axivisc/snapshot.hpp"

namespace axivisc {

namespace fs = std::filesystem;

namespace {

std::string numbered(const char* prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%04d", prefix, index);
  return buf;
}

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_index(const std::vector<SnapshotEntry>& entries) {
  std::string out = "index,step,t\n";
  for (const auto& e : entries)
    out += std::to_string(e.index) + "," + std::to_string(e.step) + "," + real(e.t) + "\n";
  return out;
}

void log_line(std::ostream* log, const std::string& line) {
  if (log) *log << line << '\n' << std::flush;
}

CheckResult replay_result(const std::string& name, const std::vector<std::string>& problems) {
  CheckResult r{name, problems.empty(), false, static_cast<double>(problems.size()), ""};
  if (problems.empty()) {
    r.detail = "bit-exact";
  } else {
    r.detail = problems.front();
    if (problems.size() > 1) r.detail += " (+" + std::to_string(problems.size() - 1) + " more)";
  }
  return r;
}

}  // namespace

fs::path RunPaths::q_snapshot(int index) const { return snapshot_dir() / numbered("q", index); }

fs::path RunPaths::omega_snapshot(int index) const {
  return snapshot_dir() / numbered("omega", index);
}

std::vector<SnapshotEntry> read_snapshot_index(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || line != "index,step,t")
    throw std::runtime_error(path.string() + ": unexpected header");
  std::vector<SnapshotEntry> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SnapshotEntry e;
    char* end = nullptr;
    const char* p = line.c_str();
    e.index = static_cast<int>(std::strtol(p, &end, 10));
    if (*end != ',') throw std::runtime_error(path.string() + ": malformed line '" + line + "'");
    e.step = std::strtol(end + 1, &end, 10);
    if (*end != ',') throw std::runtime_error(path.string() + ": malformed line '" + line + "'");
    e.t = std::strtod(end + 1, &end);
    if (*end != '\0') throw std::runtime_error(path.string() + ": malformed line '" + line + "'");
    out.push_back(e);
  }
  return out;
}

std::vector<CheckResult> evaluate_checks(std::span<const DiagnosticsRecord> rows, double t_end) {
  std::vector<CheckResult> out;
  out.push_back(energy_check(rows));
  out.push_back(max_principle_check(rows));
  out.push_back(growth_check(rows));
  out.push_back(sqrt_t_check(rows, 0.1 * t_end));

  const MonitorSeries mon = dr_omega_monitor(rows);
  CheckResult dr{"dr_omega_finite", mon.all_finite, false, 0.0, ""};
  for (double v : mon.values) dr.worst = std::max(dr.worst, v);
  dr.detail = "max ||d_r omega||_{L^{3/2,1}} " + real(dr.worst);
  out.push_back(dr);

  CheckResult biot{"biot_ratios_finite", true, false, 0.0, ""};
  for (const auto& r : rows) {
    for (double v : {r.biot_ratio_u_omega31, r.biot_ratio_ur_dzomega, r.biot_ratio_urr_dzq,
                     r.biot_ratio_mixed}) {
      if (!std::isfinite(v)) biot.passed = false;
      else biot.worst = std::max(biot.worst, v);
    }
  }
  biot.detail = "largest ratio " + real(biot.worst);
  out.push_back(biot);
  return out;
}

SimState load_state(const RunPaths& paths, const SnapshotEntry& entry, const SimConfig& config,
                    const KernelTable& kt) {
  const Snapshot q = read_snapshot(paths.q_snapshot(entry.index));
  const Snapshot w = read_snapshot(paths.omega_snapshot(entry.index));
  if (!(q.field.grid() == config.grid) || !(w.field.grid() == config.grid))
    throw std::runtime_error("snapshot grid does not match the run configuration");
  if (q.time != entry.t || w.time != entry.t)
    throw std::runtime_error("snapshot time does not match the snapshot index");
  SimState s{entry.t, entry.step, q.field, w.field, VelocityField(config.grid)};
  if (config.evolve_omega_direct) s.q = q_from_omega(s.omega);
  else s.omega = omega_from_q(s.q);
  s.u = velocity_from_vorticity(s.omega, kt);
  return s;
}

RunSummary run_experiment(const ExperimentConfig& config, const fs::path& out_dir,
                          const RunOptions& options) {
  config.sim.validate();
  const RunPaths paths{out_dir};
  fs::create_directories(paths.snapshot_dir());
  const KernelTable kt(config.sim.n_theta, config.sim.grid);

  RecordAccumulator acc;
  std::vector<SnapshotEntry> index;
  std::optional<SimState> start;
  bool report_start = true;

  if (options.resume && fs::exists(paths.snapshot_index())) {
    index = read_snapshot_index(paths.snapshot_index());
    if (index.empty()) throw std::runtime_error("resume: snapshot index is empty");
    const SnapshotEntry last = index.back();
    start = load_state(paths, last, config.sim, kt);
    std::vector<DiagnosticsRecord> rows = parse_csv(read_text(paths.diagnostics()));
    while (!rows.empty() && rows.back().t > last.t) rows.pop_back();
    if (rows.empty() || rows.back().t != last.t)
      throw std::runtime_error("resume: no diagnostic row at the last snapshot time");
    acc.restore(std::move(rows));
    report_start = false;
    log_line(options.log, "resuming at t = " + real(start->t) + ", step " +
                              std::to_string(start->step));
  } else {
    start = make_initial_state(build_initial(config.initial, config.sim.grid), kt);
    acc.observe_step(*start);
  }
  SimState& state = *start;
  write_file_atomic(paths.config(), emit_config(config));

  RunSummary summary;
  auto flush_csv = [&] { write_file_atomic(paths.diagnostics(), format_csv(acc.rows())); };
  auto write_pair = [&](const SimState& s) {
    const int n = index.empty() ? 0 : index.back().index + 1;
    write_snapshot(paths.q_snapshot(n), s.q, s.t);
    write_snapshot(paths.omega_snapshot(n), s.omega, s.t);
    index.push_back({n, s.step, s.t});
    write_file_atomic(paths.snapshot_index(), format_index(index));
  };

  RunObserver observer;
  observer.on_step = [&](const SimState& s) { acc.observe_step(s); };
  observer.on_output = [&](const SimState& s, bool snapshot) {
    acc.record(s);
    if (!summary.margin_warning && boundary_margin(s.q) < kSupportMargin) {
      summary.margin_warning = true;
      log_line(options.log, "warning: support of q within " +
                                std::to_string(static_cast<int>(kSupportMargin * 100)) +
                                "% of the outer boundary at t = " + real(s.t));
    }
    if (snapshot) {
      write_pair(s);
      flush_csv();
      log_line(options.log, "t = " + real(s.t) + "  step " + std::to_string(s.step));
    }
  };

  try {
    run(state, config.sim, kt, observer, report_start);
  } catch (const std::exception& e) {
    std::string flushed = "last consistent state at t = " + real(state.t);
    try {
      if (acc.rows().empty() || acc.rows().back().t != state.t) acc.record(state);
      if (index.empty() || index.back().t != state.t) write_pair(state);
      flush_csv();
      flushed += " written";
    } catch (const std::exception& inner) {
      flushed += " could not be written: " + std::string(inner.what());
    }
    throw RunAborted(std::string("run aborted: ") + e.what() + "; " + flushed);
  }

  flush_csv();
  summary.rows = acc.rows();
  summary.checks = evaluate_checks(summary.rows, config.sim.t_end);
  summary.final_time = state.t;
  summary.steps = state.step;
  return summary;
}

bool ReplayReport::passed() const {
  for (const auto& c : checks)
    if (!c.report_only && !c.passed) return false;
  return true;
}

ReplayReport check_run(const fs::path& out_dir) {
  const RunPaths paths{out_dir};
  const ExperimentConfig config = load_config(paths.config());
  const std::vector<DiagnosticsRecord> rows = parse_csv(read_text(paths.diagnostics()));
  const std::vector<SnapshotEntry> index = read_snapshot_index(paths.snapshot_index());
  const KernelTable kt(config.sim.n_theta, config.sim.grid);
  const auto columns = diagnostics_columns();

  ReplayReport report;
  std::vector<std::string> snapshot_problems;
  for (const auto& entry : index) {
    const SimState s = load_state(paths, entry, config.sim, kt);
    const DiagnosticsRecord fresh = measure_state(s);
    const DiagnosticsRecord* row = nullptr;
    for (const auto& r : rows)
      if (r.t == entry.t) row = &r;
    ++report.snapshots_checked;
    if (!row) {
      snapshot_problems.push_back("no diagnostic row at snapshot t = " + real(entry.t));
      continue;
    }
    for (const auto& c : columns) {
      if (!c.instantaneous) continue;
      if (fresh.*(c.member) != row->*(c.member))
        snapshot_problems.push_back(std::string(c.name) + " at t = " + real(entry.t) + ": csv " +
                                    real(row->*(c.member)) + ", recomputed " +
                                    real(fresh.*(c.member)));
    }
  }
  report.checks.push_back(replay_result("replay_snapshots", snapshot_problems));

  std::vector<std::string> series_problems;
  RecordAccumulator acc;
  double prev_max = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const DiagnosticsRecord& r = rows[k];
    DiagnosticsRecord instant = r;
    for (const auto& c : columns)
      if (!c.instantaneous) instant.*(c.member) = 0.0;
    const DiagnosticsRecord& rebuilt = acc.append(instant);
    for (const auto& c : columns) {
      if (c.instantaneous || c.member == &DiagnosticsRecord::q_linf_running_max) continue;
      if (rebuilt.*(c.member) != r.*(c.member))
        series_problems.push_back(std::string(c.name) + " at t = " + real(r.t) + ": csv " +
                                  real(r.*(c.member)) + ", recomputed " +
                                  real(rebuilt.*(c.member)));
    }
    if (r.q_linf_running_max < r.q_linf || (k > 0 && r.q_linf_running_max < prev_max))
      series_problems.push_back("q_linf_running_max decreases or lies below q_linf at t = " +
                                real(r.t));
    prev_max = r.q_linf_running_max;
  }
  report.checks.push_back(replay_result("replay_series", series_problems));

  for (auto& c : evaluate_checks(rows, config.sim.t_end)) report.checks.push_back(std::move(c));
  return report;
}

}  // namespace axivisc
