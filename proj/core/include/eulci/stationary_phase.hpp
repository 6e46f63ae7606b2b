#pragma once

#include <vector>

#include "eulci/field.hpp"

namespace eulci::spectral {

// Result of a carrier-decay audit: the probed carrier factors, the measured
// C^alpha norms of the anti-divergence, and the fitted log-log slope.
struct SlopeAudit {
    std::vector<double> lambdas;
    std::vector<double> norms;
    double slope = 0.0;
};

// Least-squares slope of ln(y) against ln(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Measures how fast the anti-divergence of a modulated amplitude decays in
// the carrier frequency: for each lambda the field
//   F(x) = a(x) * c * exp(i lambda k0 . x)
// is assembled in spectral space (an exact spectrum shift, so no aliasing),
// its mean mode is removed, and || inverse_divergence(F) ||_{C^alpha} is
// recorded.  `amplitude` is a band-limited scalar on the working grid and
// must leave room for the largest shift: band(a) + max(lambda) * |k0|_inf
// has to stay below the grid Nyquist.  Throws precondition_error otherwise.
SlopeAudit stationary_phase_audit(const SpectralField& amplitude,
                                  const Vec3i& k0,
                                  const std::vector<int>& lambdas,
                                  double alpha);

}  // namespace eulci::spectral
