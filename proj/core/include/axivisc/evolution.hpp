#pragma once

#include <functional>
#include <vector>

#include "axivisc/biot_savart.hpp"
#include "axivisc/grid.hpp"

namespace axivisc {

/// Solver settings. Vertical viscosity is fixed to 1.
struct SimConfig {
  GridSpec grid = make_grid(2.0, -2.0, 2.0, 96, 192);
  double dt_cfl_factor = 1.0;  // in (0, 1]
  int n_theta = 64;
  double eps_h = 0.0;          // horizontal viscosity of the regularized system
  double t_end = 1.0;
  int diag_every = 10;         // steps between diagnostic outputs
  bool evolve_omega_direct = false;
  std::vector<double> snapshot_times;

  void validate() const;
};

/// Evolved state. omega = r q holds after every step and u is the
/// reconstruction of omega.
struct SimState {
  double t = 0.0;
  long step = 0;
  ScalarField q;
  ScalarField omega;
  VelocityField u;
};

/// omega = r q with role omega_theta.
ScalarField omega_from_q(const ScalarField& q);
/// q = omega / r with role q_omega_over_r.
ScalarField q_from_omega(const ScalarField& omega);

SimState make_initial_state(const ScalarField& q0, const KernelTable& kt);

/// factor * min(dr / max|u^r|, dz / max|u^z|, dz^2 / 2, dr^2 / (8 eps_h)),
/// clipped so that t + dt does not pass t_limit.
double cfl_dt(const SimState& state, const SimConfig& config, double t_limit);

/// Semi-Lagrangian transport: RK2 characteristic foot on bilinear velocity,
/// clamped bilinear sample of f. Feet outside the box sample the zero extension.
ScalarField advect(const ScalarField& f, const VelocityField& u, double dt);

/// Backward-Euler d_z^2 with zero-extension ghosts beyond both z ends.
ScalarField diffuse_vertical(const ScalarField& f, double dt);

/// Explicit eps_h (d_r^2 + (3/r) d_r) q, the horizontal Laplacian of the
/// regularized system written for q = omega / r. Even extension at the axis,
/// zero beyond r_max.
ScalarField diffuse_horizontal(const ScalarField& q, double dt, double eps_h);

/// One split step of d_t q + u.grad q - d_z^2 q = eps_h-term.
ScalarField advance_q(const ScalarField& q, const VelocityField& u, double dt,
                      double eps_h = 0.0);

/// Same splitting applied to omega, followed by the stretching factor
/// exp(dt u^r / r) with u^r / r frozen at the start of the step.
ScalarField advance_omega_direct(const ScalarField& omega, const VelocityField& u,
                                 double dt, double eps_h = 0.0);

SimState step(const SimState& state, const SimConfig& config, const KernelTable& kt,
              double t_limit);

struct RunObserver {
  /// After every step.
  std::function<void(const SimState&)> on_step;
  /// At the initial state, every diag_every steps, every snapshot time and t_end.
  std::function<void(const SimState&, bool snapshot)> on_output;
};

/// Advances `state` to config.t_end. The starting state (unless
/// `report_start` is false, as when resuming) and the final state are always
/// reported as snapshots.
void run(SimState& state, const SimConfig& config, const KernelTable& kt,
         const RunObserver& observer, bool report_start = true);

}  // namespace axivisc
