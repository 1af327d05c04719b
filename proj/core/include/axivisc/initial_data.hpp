#pragma once

#include "axivisc/config.hpp"
#include "axivisc/grid.hpp"

namespace axivisc {

/// Throws std::invalid_argument when the data's extent (4 sigma around each
/// Gaussian centre, or the patch radius) reaches into the outer kSupportMargin
/// band of the box in r or z.
void check_support_margin(const InitialData& d, const GridSpec& g);

/// q_0 with role q_omega_over_r:
///   gaussian_ring   A exp(-((r - r0)^2 + (z - z0)^2) / sigma^2)
///   yudovich_patch  A on nodes with (r - r0)^2 + (z - z0)^2 <= radius^2, else 0
///   ring_pair       Gaussian rings of amplitude +A and -A at z0 -+ separation/2
ScalarField build_initial(const InitialData& d, const GridSpec& g);

/// Cylindrical measure of the patch's cells on `g`.
double patch_measure(const InitialData& d, const GridSpec& g);

/// Closed form of the patch's L^{p,q} norm, (p/q)^{1/q} |A| V^{1/p}, with V the
/// discrete patch measure.
double patch_lorentz_norm(const InitialData& d, const GridSpec& g, double p, double q);

}  // namespace axivisc
