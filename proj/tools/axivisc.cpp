// Command-line front end: run, check, norms, reconstruct, init.
//
// Exit status: 0 success, 1 a check failed, 2 usage or I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "axivisc/biot_savart.hpp"
#include "axivisc/config.hpp"
#include "axivisc/experiment.hpp"
#include "axivisc/initial_data.hpp"
#include "axivisc/norms.hpp"
#include "axivisc/snapshot.hpp"

namespace fs = std::filesystem;
using namespace axivisc;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kError = 2;

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Accepts "inf", a decimal, or a fraction "a/b".
double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInf;
  std::size_t used = 0;
  const auto slash = text.find('/');
  double value = 0.0;
  try {
    if (slash == std::string::npos) {
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string num = text.substr(0, slash);
      const std::string den = text.substr(slash + 1);
      std::size_t u1 = 0;
      std::size_t u2 = 0;
      const double a = std::stod(num, &u1);
      const double b = std::stod(den, &u2);
      if (u1 != num.size() || u2 != den.size() || b == 0.0) throw std::invalid_argument(text);
      value = a / b;
    }
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("exponent", "cannot parse '" + text + "'");
  }
  return value;
}

void print_checks(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    const char* verdict = c.report_only ? "REPORT" : (c.passed ? "PASS" : "FAIL");
    std::cout << verdict << "  " << c.name << "  " << c.detail << '\n';
  }
}

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.report_only && !c.passed) return false;
  return true;
}

int cmd_run(const std::string& config_path, const std::string& out, bool resume) {
  const ExperimentConfig config = load_config(config_path);
  const fs::path dir = out.empty() ? config.output_dir : fs::path(out);
  RunOptions options;
  options.resume = resume;
  options.log = &std::cerr;
  const RunSummary summary = run_experiment(config, dir, options);
  std::cout << "finished t = " << real(summary.final_time) << " after " << summary.steps
            << " steps, " << summary.rows.size() << " diagnostic rows in "
            << (dir / "diagnostics.csv").string() << '\n';
  print_checks(summary.checks);
  return all_passed(summary.checks) ? kOk : kCheckFailed;
}

int cmd_check(const std::string& out) {
  const ReplayReport report = check_run(out);
  std::cout << "replayed " << report.snapshots_checked << " snapshots\n";
  print_checks(report.checks);
  return report.passed() ? kOk : kCheckFailed;
}

int cmd_norms(const std::string& snapshot, const std::optional<std::string>& p_text,
              const std::optional<std::string>& q_text,
              const std::optional<std::string>& mixed_h,
              const std::optional<std::string>& mixed_v) {
  const Snapshot snap = read_snapshot(snapshot);
  const ScalarField& f = snap.field;
  std::cout << "snapshot " << snapshot_stem(snapshot).string() << "  role "
            << to_string(f.role()) << "  t = " << real(snap.time) << '\n';
  bool printed = false;
  if (p_text) {
    const double p = parse_exponent(*p_text);
    const double q = q_text ? parse_exponent(*q_text) : p;
    const LorentzIndex idx{p, q};
    idx.validate();
    std::cout << "L^{" << *p_text << "," << (q_text ? *q_text : *p_text)
              << "} = " << real(lorentz_norm(f, idx)) << '\n';
    printed = true;
  } else if (q_text) {
    throw CLI::ValidationError("--q", "requires --p");
  }
  if (mixed_h || mixed_v) {
    if (!mixed_h || !mixed_v) throw CLI::ValidationError("--mixed-h/--mixed-v", "give both");
    std::cout << "L^{" << *mixed_h << "}_h(L^{" << *mixed_v << "}_v) = "
              << real(mixed_norm(f, parse_exponent(*mixed_h), parse_exponent(*mixed_v)))
              << '\n';
    printed = true;
  }
  if (!printed) {
    const RearrangementProfile prof = rearrange(f);
    struct Row {
      const char* name;
      double p;
      double q;
    };
    const Row rows[] = {{"L^1", 1, 1},         {"L^{6/5}", 1.2, 1.2},
                        {"L^{3/2}", 1.5, 1.5}, {"L^2", 2, 2},
                        {"L^inf", kInf, kInf}, {"L^{6/5,1}", 1.2, 1},
                        {"L^{3/2,1}", 1.5, 1}, {"L^{3,1}", 3, 1},
                        {"L^{3/2,inf}", 1.5, kInf}};
    for (const auto& r : rows)
      std::cout << r.name << " = " << real(lorentz_norm(prof, {r.p, r.q})) << '\n';
  }
  return kOk;
}

int cmd_reconstruct(const std::string& snapshot, const std::string& out, int n_theta) {
  const Snapshot snap = read_snapshot(snapshot);
  ScalarField omega = snap.field;
  if (omega.role() == FieldRole::q_omega_over_r) {
    omega = omega_from_q(omega);
  } else if (omega.role() != FieldRole::omega_theta) {
    std::cerr << "error: reconstruct needs an omega_theta or q_omega_over_r snapshot, got "
              << to_string(omega.role()) << '\n';
    return kError;
  }
  const KernelTable kt(n_theta, omega.grid());
  const VelocityField u = velocity_from_vorticity(omega, kt);
  fs::create_directories(out);
  write_snapshot(fs::path(out) / "u_r", u.u_r, snap.time);
  write_snapshot(fs::path(out) / "u_z", u.u_z, snap.time);
  std::cout << "wrote " << (fs::path(out) / "u_r").string() << " and "
            << (fs::path(out) / "u_z").string() << "  sup|u| = "
            << real(velocity_magnitude(u).max_abs()) << '\n';
  return kOk;
}

int cmd_init(const std::string& config_path, const std::string& out) {
  const ExperimentConfig config = load_config(config_path);
  const ScalarField q0 = build_initial(config.initial, config.sim.grid);
  write_snapshot(out, q0, 0.0);
  std::cout << "wrote " << snapshot_stem(out).string() << " (" << to_string(config.initial.kind)
            << ")\n";
  if (config.initial.kind == InitialKind::yudovich_patch) {
    std::cout << "patch measure = " << real(patch_measure(config.initial, config.sim.grid))
              << '\n';
    for (const double p : {1.2, 1.5, 3.0})
      std::cout << "closed form L^{" << real(p) << ",1} = "
                << real(patch_lorentz_norm(config.initial, config.sim.grid, p, 1.0)) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axisymmetric vertically viscous flow: simulation and estimate checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::string snapshot;
  bool resume = false;
  int n_theta = 64;
  std::optional<std::string> p_text;
  std::optional<std::string> q_text;
  std::optional<std::string> mixed_h;
  std::optional<std::string> mixed_v;

  auto* run = app.add_subcommand("run", "Evolve a configuration and write a run directory");
  run->add_option("--config", config_path, "Configuration file")->required();
  run->add_option("--out", out, "Run directory (default: output_dir from the config)");
  run->add_flag("--resume", resume, "Continue from the last snapshot in the run directory");

  auto* check = app.add_subcommand("check", "Replay diagnostics of a finished run directory");
  check->add_option("--out", out, "Run directory")->required();

  auto* norms = app.add_subcommand("norms", "Print norms of a snapshot");
  norms->add_option("--snapshot", snapshot, "Snapshot stem, .hdr or .bin path")->required();
  norms->add_option("--p", p_text, "Lorentz p (number, a/b or inf)");
  norms->add_option("--q", q_text, "Lorentz q (defaults to p)");
  norms->add_option("--mixed-h", mixed_h, "Horizontal exponent of a mixed norm");
  norms->add_option("--mixed-v", mixed_v, "Vertical exponent of a mixed norm");

  auto* recon = app.add_subcommand("reconstruct", "Write u_r and u_z snapshots from omega");
  recon->add_option("--snapshot", snapshot, "omega (or q) snapshot")->required();
  recon->add_option("--out", out, "Output directory")->required();
  recon->add_option("--n-theta", n_theta, "Angular quadrature nodes")->check(CLI::Range(16, 1 << 16));

  auto* init = app.add_subcommand("init", "Write the initial q of a configuration");
  init->add_option("--config", config_path, "Configuration file")->required();
  init->add_option("--out", out, "Snapshot path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*run) return cmd_run(config_path, out, resume);
    if (*check) return cmd_check(out);
    if (*norms) return cmd_norms(snapshot, p_text, q_text, mixed_h, mixed_v);
    if (*recon) return cmd_reconstruct(snapshot, out, n_theta);
    if (*init) return cmd_init(config_path, out);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
