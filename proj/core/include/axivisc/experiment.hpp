#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "axivisc/config.hpp"
#include "axivisc/diagnostics.hpp"
#include "axivisc/evolution.hpp"

namespace axivisc {

/// Run directory layout:
///   config.txt              canonical copy of the configuration
///   diagnostics.csv         one row per diagnostic output
///   snapshots/index.csv     index,step,t for every snapshot pair
///   snapshots/q_NNNN.*      q at the snapshot
///   snapshots/omega_NNNN.*  omega at the snapshot
struct RunPaths {
  std::filesystem::path root;

  std::filesystem::path config() const { return root / "config.txt"; }
  std::filesystem::path diagnostics() const { return root / "diagnostics.csv"; }
  std::filesystem::path snapshot_dir() const { return root / "snapshots"; }
  std::filesystem::path snapshot_index() const { return snapshot_dir() / "index.csv"; }
  std::filesystem::path q_snapshot(int index) const;
  std::filesystem::path omega_snapshot(int index) const;
};

struct SnapshotEntry {
  int index = 0;
  long step = 0;
  double t = 0.0;
};

std::vector<SnapshotEntry> read_snapshot_index(const std::filesystem::path& path);

/// Thrown when a time step fails. The last consistent state has been written
/// as a snapshot and a diagnostic row before this is raised.
class RunAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  /// Continue from the last snapshot of an existing run directory.
  bool resume = false;
  /// Progress and warnings; may be null.
  std::ostream* log = nullptr;
};

struct RunSummary {
  std::vector<DiagnosticsRecord> rows;
  std::vector<CheckResult> checks;
  double final_time = 0.0;
  long steps = 0;
  bool margin_warning = false;
};

/// Builds the initial data, evolves to t_end, and writes the run directory.
RunSummary run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                          const RunOptions& options = {});

/// All checks applied to a finished series: energy, maximum principle,
/// Gronwall growth, sqrt(t) ratio over [0.1 t_end, t_end], and finiteness of
/// the d_r omega monitor and the Biot ratios.
std::vector<CheckResult> evaluate_checks(std::span<const DiagnosticsRecord> rows, double t_end);

/// Rebuilds the state held in snapshot `entry` of a run directory.
SimState load_state(const RunPaths& paths, const SnapshotEntry& entry,
                    const SimConfig& config, const KernelTable& kt);

struct ReplayReport {
  int snapshots_checked = 0;
  std::vector<CheckResult> checks;  // replay consistency first, then evaluate_checks
  bool passed() const;
};

/// Recomputes the instantaneous columns at every snapshot and the running
/// columns of every row, requiring bit-exact agreement with diagnostics.csv,
/// then re-evaluates all checks on the series.
ReplayReport check_run(const std::filesystem::path& out_dir);

}  // namespace axivisc
