#include "axivisc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "axivisc/parallel.hpp"

namespace axivisc {

void SimConfig::validate() const {
  if (!(dt_cfl_factor > 0.0 && dt_cfl_factor <= 1.0))
    throw std::invalid_argument("dt_cfl_factor must lie in (0, 1]");
  if (n_theta < 16 || n_theta % 2 != 0)
    throw std::invalid_argument("n_theta must be even and >= 16");
  if (!(eps_h >= 0.0) || !std::isfinite(eps_h))
    throw std::invalid_argument("eps_h must be a finite non-negative number");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("t_end must be a finite non-negative number");
  if (diag_every < 1) throw std::invalid_argument("diag_every must be >= 1");
  for (double ts : snapshot_times)
    if (!(ts >= 0.0) || !std::isfinite(ts))
      throw std::invalid_argument("snapshot times must be finite and non-negative");
}

ScalarField omega_from_q(const ScalarField& q) {
  const GridSpec& g = q.grid();
  ScalarField omega(g, FieldRole::omega_theta);
  for (int i = 0; i < g.n_r(); ++i) {
    const double r = g.r(i);
    for (int j = 0; j < g.n_z(); ++j) omega(i, j) = r * q(i, j);
  }
  return omega;
}

ScalarField q_from_omega(const ScalarField& omega) {
  const GridSpec& g = omega.grid();
  ScalarField q(g, FieldRole::q_omega_over_r);
  for (int i = 0; i < g.n_r(); ++i) {
    const double r = g.r(i);
    for (int j = 0; j < g.n_z(); ++j) q(i, j) = omega(i, j) / r;
  }
  return q;
}

SimState make_initial_state(const ScalarField& q0, const KernelTable& kt) {
  ScalarField q = q0;
  q.set_role(FieldRole::q_omega_over_r);
  ScalarField omega = omega_from_q(q);
  VelocityField u = velocity_from_vorticity(omega, kt);
  return SimState{0.0, 0, std::move(q), std::move(omega), std::move(u)};
}

double cfl_dt(const SimState& state, const SimConfig& config, double t_limit) {
  const GridSpec& g = state.q.grid();
  if (!state.u.u_r.all_finite() || !state.u.u_z.all_finite())
    throw std::runtime_error("cfl_dt: velocity is not finite");
  double bound = 0.5 * g.dz() * g.dz();
  const double ur = state.u.u_r.max_abs();
  const double uz = state.u.u_z.max_abs();
  if (ur > 0.0) bound = std::min(bound, g.dr() / ur);
  if (uz > 0.0) bound = std::min(bound, g.dz() / uz);
  if (config.eps_h > 0.0) bound = std::min(bound, g.dr() * g.dr() / (8.0 * config.eps_h));
  double dt = config.dt_cfl_factor * bound;
  const double remaining = t_limit - state.t;
  if (remaining < dt) dt = std::max(remaining, 0.0);
  return dt;
}

namespace {

// Node value with axis ghost (index -1) and zero beyond the outer boundary.
double extended(const ScalarField& f, AxisParity parity, int i, int j) {
  const GridSpec& g = f.grid();
  if (j < 0 || j >= g.n_z() || i >= g.n_r()) return 0.0;
  if (i < 0) return parity == AxisParity::odd ? -f(0, j) : f(0, j);
  return f(i, j);
}

// Clamped bilinear sample of a scalar at (r, z); r < 0 is reflected to |r|.
double sample_scalar(const ScalarField& f, AxisParity parity, double r, double z) {
  const GridSpec& g = f.grid();
  const double x = std::abs(r) / g.dr() - 0.5;
  const double y = (z - g.z_min()) / g.dz() - 0.5;
  const double xf = std::floor(x);
  const double yf = std::floor(y);
  if (xf >= g.n_r() || yf >= g.n_z() || yf < -1.0) return 0.0;
  const int i0 = static_cast<int>(xf);
  const int j0 = static_cast<int>(yf);
  const double fx = x - xf;
  const double fy = y - yf;
  const double v00 = extended(f, parity, i0, j0);
  const double v01 = extended(f, parity, i0, j0 + 1);
  const double v10 = extended(f, parity, i0 + 1, j0);
  const double v11 = extended(f, parity, i0 + 1, j0 + 1);
  const double v = (1.0 - fx) * ((1.0 - fy) * v00 + fy * v01) +
                   fx * ((1.0 - fy) * v10 + fy * v11);
  const double lo = std::min({v00, v01, v10, v11});
  const double hi = std::max({v00, v01, v10, v11});
  return std::clamp(v, lo, hi);
}

struct Vec2 {
  double r;
  double z;
};

// Bilinear velocity in the signed meridional plane: u^r odd and u^z even in r,
// constant extrapolation past r_max and the z ends.
Vec2 sample_velocity(const VelocityField& u, double r, double z) {
  const GridSpec& g = u.grid();
  const double sign = r < 0.0 ? -1.0 : 1.0;
  const double x = std::min(std::abs(r) / g.dr() - 0.5, g.n_r() - 1.0);
  const double y = std::clamp((z - g.z_min()) / g.dz() - 0.5, 0.0, g.n_z() - 1.0);
  int i0 = static_cast<int>(std::floor(x));
  int j0 = static_cast<int>(std::floor(y));
  i0 = std::min(i0, g.n_r() - 2);
  j0 = std::min(j0, g.n_z() - 2);
  const double fx = x - i0;
  const double fy = y - j0;
  auto node = [&](const ScalarField& f, int i, int j) {
    if (i < 0) return axis_ghost(f, j, axis_parity(f.role()));
    return f(i, j);
  };
  auto interp = [&](const ScalarField& f) {
    return (1.0 - fx) * ((1.0 - fy) * node(f, i0, j0) + fy * node(f, i0, j0 + 1)) +
           fx * ((1.0 - fy) * node(f, i0 + 1, j0) + fy * node(f, i0 + 1, j0 + 1));
  };
  return {sign * interp(u.u_r), interp(u.u_z)};
}

void check_finite(const ScalarField& f, const char* what) {
  if (!f.all_finite()) throw std::runtime_error(std::string(what) + ": non-finite value");
}

}  // namespace

ScalarField advect(const ScalarField& f, const VelocityField& u, double dt) {
  const GridSpec& g = f.grid();
  const AxisParity parity = axis_parity(f.role());
  if (parity == AxisParity::none)
    throw std::invalid_argument("advect: axis extension undefined for role 'derived'");
  ScalarField out(g, f.role());
  parallel_for(0, g.n_r(), [&](int i) {
    const double r = g.r(i);
    for (int j = 0; j < g.n_z(); ++j) {
      const double z = g.z(j);
      const Vec2 u0{u.u_r(i, j), u.u_z(i, j)};
      const Vec2 mid{r - 0.5 * dt * u0.r, z - 0.5 * dt * u0.z};
      const Vec2 um = sample_velocity(u, mid.r, mid.z);
      out(i, j) = sample_scalar(f, parity, r - dt * um.r, z - dt * um.z);
    }
  });
  return out;
}

ScalarField diffuse_vertical(const ScalarField& f, double dt) {
  const GridSpec& g = f.grid();
  const int nz = g.n_z();
  const double a = dt / (g.dz() * g.dz());
  ScalarField out(g, f.role());
  parallel_for(0, g.n_r(), [&](int i) {
    // Thomas algorithm on (1 + 2a) x_j - a x_{j-1} - a x_{j+1} = f_j with
    // zero ghosts beyond both z ends.
    std::vector<double> c(nz);
    std::vector<double> d(nz);
    auto rhs = f.row(i);
    auto x = out.row(i);
    double b = 1.0 + 2.0 * a;
    c[0] = -a / b;
    d[0] = rhs[0] / b;
    for (int j = 1; j < nz; ++j) {
      b = 1.0 + 2.0 * a + a * c[j - 1];
      c[j] = -a / b;
      d[j] = (rhs[j] + a * d[j - 1]) / b;
    }
    x[nz - 1] = d[nz - 1];
    for (int j = nz - 2; j >= 0; --j) x[j] = d[j] - c[j] * x[j + 1];
  });
  return out;
}

ScalarField diffuse_horizontal(const ScalarField& q, double dt, double eps_h) {
  if (eps_h == 0.0) return q;
  const GridSpec& g = q.grid();
  const int nr = g.n_r();
  const double c = eps_h * dt / (g.dr() * g.dr());
  ScalarField out(g, q.role());
  // (1/r^3) d_r (r^3 d_r q) as a finite volume with weight r^3: face fluxes
  // r_f^3 (q_+ - q_-) / dr over the cell volume (r_out^4 - r_in^4) / 4. The
  // face at r = 0 carries no flux. Each weight sum is at most 4.
  parallel_for(0, nr, [&](int i) {
    const double r_in = g.r(i) - 0.5 * g.dr();
    const double r_out = g.r(i) + 0.5 * g.dr();
    const double volume = (std::pow(r_out, 4) - std::pow(r_in, 4)) / (4.0 * g.dr());
    const double w_in = r_in * r_in * r_in / volume;
    const double w_out = r_out * r_out * r_out / volume;
    for (int j = 0; j < g.n_z(); ++j) {
      const double here = q(i, j);
      const double inner = i > 0 ? q(i - 1, j) : here;
      const double outer = i + 1 < nr ? q(i + 1, j) : 0.0;
      out(i, j) = here + c * (w_out * (outer - here) - w_in * (here - inner));
    }
  });
  return out;
}

ScalarField advance_q(const ScalarField& q, const VelocityField& u, double dt,
                      double eps_h) {
  ScalarField next = diffuse_vertical(advect(q, u, dt), dt);
  next = diffuse_horizontal(next, dt, eps_h);
  check_finite(next, "advance_q");
  return next;
}

ScalarField advance_omega_direct(const ScalarField& omega, const VelocityField& u,
                                 double dt, double eps_h) {
  const GridSpec& g = omega.grid();
  ScalarField next = diffuse_vertical(advect(omega, u, dt), dt);
  if (eps_h > 0.0) next = omega_from_q(diffuse_horizontal(q_from_omega(next), dt, eps_h));
  next.set_role(FieldRole::omega_theta);
  for (int i = 0; i < g.n_r(); ++i) {
    const double inv_r = 1.0 / g.r(i);
    for (int j = 0; j < g.n_z(); ++j) next(i, j) *= std::exp(dt * u.u_r(i, j) * inv_r);
  }
  check_finite(next, "advance_omega_direct");
  return next;
}

SimState step(const SimState& state, const SimConfig& config, const KernelTable& kt,
              double t_limit) {
  const double dt = cfl_dt(state, config, t_limit);
  SimState next{state.t, state.step + 1, state.q, state.omega, state.u};
  if (config.evolve_omega_direct) {
    next.omega = advance_omega_direct(state.omega, state.u, dt, config.eps_h);
    next.q = q_from_omega(next.omega);
  } else {
    next.q = advance_q(state.q, state.u, dt, config.eps_h);
    next.omega = omega_from_q(next.q);
  }
  next.u = velocity_from_vorticity(next.omega, kt);
  next.t = (state.t + dt >= t_limit) ? t_limit : state.t + dt;
  return next;
}

void run(SimState& state, const SimConfig& config, const KernelTable& kt,
         const RunObserver& observer, bool report_start) {
  config.validate();
  std::vector<double> marks = config.snapshot_times;
  marks.push_back(config.t_end);
  std::sort(marks.begin(), marks.end());

  auto is_mark = [&](double t) {
    return std::find(marks.begin(), marks.end(), t) != marks.end();
  };
  if (report_start && observer.on_output) observer.on_output(state, true);

  while (state.t < config.t_end) {
    const double t_limit = *std::upper_bound(marks.begin(), marks.end(), state.t);
    state = step(state, config, kt, t_limit);
    if (observer.on_step) observer.on_step(state);
    const bool at_mark = is_mark(state.t);
    if (at_mark || state.step % config.diag_every == 0) {
      if (observer.on_output) observer.on_output(state, at_mark);
    }
  }
}

}  // namespace axivisc
