#include "axivisc/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace axivisc {

std::string_view to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::gaussian_ring: return "gaussian_ring";
    case InitialKind::yudovich_patch: return "yudovich_patch";
    case InitialKind::ring_pair: return "ring_pair";
  }
  return "gaussian_ring";
}

InitialKind initial_kind_from_string(std::string_view name) {
  for (auto k : {InitialKind::gaussian_ring, InitialKind::yudovich_patch, InitialKind::ring_pair})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown initial data kind '" + std::string(name) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Grid {
  double r_max = 2.0;
  double z_min = -2.0;
  double z_max = 2.0;
  int n_r = 96;
  int n_z = 192;
};

class Parser {
 public:
  Parser(ExperimentConfig& c, Grid& g) : c_(c), g_(g) {
    real_key("r_max", g_.r_max, [](double v) { return v > 0.0; }, "must be positive");
    real_key("z_min", g_.z_min, nullptr, "");
    real_key("z_max", g_.z_max, nullptr, "");
    int_key("n_r", g_.n_r, [](long v) { return v >= 4; }, "must be at least 4");
    int_key("n_z", g_.n_z, [](long v) { return v >= 4; }, "must be at least 4");
    real_key("dt_cfl_factor", c_.sim.dt_cfl_factor,
             [](double v) { return v > 0.0 && v <= 1.0; }, "must lie in (0, 1]");
    int_key("n_theta", c_.sim.n_theta, [](long v) { return v >= 16 && v % 2 == 0; },
            "must be even and at least 16");
    real_key("eps_h", c_.sim.eps_h, [](double v) { return v >= 0.0; }, "must be non-negative");
    real_key("t_end", c_.sim.t_end, [](double v) { return v >= 0.0; }, "must be non-negative");
    int_key("diag_every", c_.sim.diag_every, [](long v) { return v >= 1; }, "must be at least 1");
    handlers_["evolve_omega_direct"] = [this](std::string_view v) {
      if (v == "true" || v == "1") c_.sim.evolve_omega_direct = true;
      else if (v == "false" || v == "0") c_.sim.evolve_omega_direct = false;
      else fail("expected true or false");
    };
    handlers_["snapshot_times"] = [this](std::string_view v) {
      c_.sim.snapshot_times.clear();
      if (v.empty()) return;
      while (true) {
        const auto comma = v.find(',');
        const double t = to_real(trim(v.substr(0, comma)));
        if (!(t >= 0.0)) fail("times must be non-negative");
        c_.sim.snapshot_times.push_back(t);
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
      }
    };
    handlers_["initial"] = [this](std::string_view v) {
      try {
        c_.initial.kind = initial_kind_from_string(v);
      } catch (const std::invalid_argument&) {
        fail("expected gaussian_ring, yudovich_patch or ring_pair");
      }
    };
    real_key("amplitude", c_.initial.amplitude, nullptr, "");
    real_key("r0", c_.initial.r0, [](double v) { return v > 0.0; }, "must be positive");
    real_key("z0", c_.initial.z0, nullptr, "");
    real_key("sigma", c_.initial.sigma, [](double v) { return v > 0.0; }, "must be positive");
    real_key("patch_radius", c_.initial.patch_radius, [](double v) { return v > 0.0; },
             "must be positive");
    real_key("separation", c_.initial.separation, [](double v) { return v > 0.0; },
             "must be positive");
    handlers_["output_dir"] = [this](std::string_view v) {
      if (v.empty()) fail("must not be empty");
      c_.output_dir = std::string(v);
    };
    handlers_["seed"] = [this](std::string_view v) {
      std::uint64_t s = 0;
      auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
      if (ec != std::errc() || p != v.data() + v.size()) fail("expected a non-negative integer");
      c_.seed = s;
    };
  }

  void parse(std::string_view text) {
    int line_no = 0;
    while (!text.empty()) {
      const auto nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      line_ = line_no;
      key_.clear();
      if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail("expected key = value");
      key_ = std::string(trim(line.substr(0, eq)));
      const auto value = trim(line.substr(eq + 1));
      const auto it = handlers_.find(key_);
      if (it == handlers_.end()) fail("unknown key");
      if (!seen_.insert(key_).second) fail("duplicate key");
      it->second(value);
    }
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::string msg = "config line " + std::to_string(line_);
    if (!key_.empty()) msg += ", key '" + key_ + "'";
    throw ConfigError(msg + ": " + what);
  }

  double to_real(std::string_view v) const {
    double x = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
      fail("expected a finite real number, got '" + std::string(v) + "'");
    return x;
  }

  void real_key(const char* name, double& slot, std::function<bool(double)> ok,
                const char* why) {
    handlers_[name] = [this, &slot, ok, why](std::string_view v) {
      const double x = to_real(v);
      if (ok && !ok(x)) fail(why);
      slot = x;
    };
  }

  void int_key(const char* name, int& slot, std::function<bool(long)> ok, const char* why) {
    handlers_[name] = [this, &slot, ok, why](std::string_view v) {
      long x = 0;
      auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
      if (v.empty() || ec != std::errc() || p != v.data() + v.size() || x > 1'000'000'000 ||
          x < -1'000'000'000)
        fail("expected an integer, got '" + std::string(v) + "'");
      if (ok && !ok(x)) fail(why);
      slot = static_cast<int>(x);
    };
  }

  ExperimentConfig& c_;
  Grid& g_;
  std::map<std::string, std::function<void(std::string_view)>> handlers_;
  std::set<std::string> seen_;
  int line_ = 0;
  std::string key_;
};

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  Grid g;
  Parser(c, g).parse(text);
  try {
    c.sim.grid = make_grid(g.r_max, g.z_min, g.z_max, g.n_r, g.n_z);
    c.sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ExperimentConfig& c) {
  const GridSpec& g = c.sim.grid;
  std::ostringstream o;
  o << "r_max = " << real(g.r_max()) << '\n'
    << "z_min = " << real(g.z_min()) << '\n'
    << "z_max = " << real(g.z_max()) << '\n'
    << "n_r = " << g.n_r() << '\n'
    << "n_z = " << g.n_z() << '\n'
    << "dt_cfl_factor = " << real(c.sim.dt_cfl_factor) << '\n'
    << "n_theta = " << c.sim.n_theta << '\n'
    << "eps_h = " << real(c.sim.eps_h) << '\n'
    << "t_end = " << real(c.sim.t_end) << '\n'
    << "diag_every = " << c.sim.diag_every << '\n'
    << "evolve_omega_direct = " << (c.sim.evolve_omega_direct ? "true" : "false") << '\n'
    << "snapshot_times = ";
  for (std::size_t k = 0; k < c.sim.snapshot_times.size(); ++k)
    o << (k ? ", " : "") << real(c.sim.snapshot_times[k]);
  o << '\n'
    << "initial = " << to_string(c.initial.kind) << '\n'
    << "amplitude = " << real(c.initial.amplitude) << '\n'
    << "r0 = " << real(c.initial.r0) << '\n'
    << "z0 = " << real(c.initial.z0) << '\n'
    << "sigma = " << real(c.initial.sigma) << '\n'
    << "patch_radius = " << real(c.initial.patch_radius) << '\n'
    << "separation = " << real(c.initial.separation) << '\n'
    << "output_dir = " << c.output_dir.string() << '\n'
    << "seed = " << c.seed << '\n';
  return o.str();
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  const SimConfig& x = a.sim;
  const SimConfig& y = b.sim;
  return x.grid == y.grid && x.dt_cfl_factor == y.dt_cfl_factor && x.n_theta == y.n_theta &&
         x.eps_h == y.eps_h && x.t_end == y.t_end && x.diag_every == y.diag_every &&
         x.evolve_omega_direct == y.evolve_omega_direct &&
         x.snapshot_times == y.snapshot_times && a.initial == b.initial &&
         a.output_dir == b.output_dir && a.seed == b.seed;
}

}  // namespace axivisc
