#pragma once

#include <functional>
#include <vector>

#include "eulci/field.hpp"

namespace eulci::spectral {

// Pointwise magnitude conventions: absolute value for scalars, Euclidean
// norm for vectors, Frobenius norm for symmetric tensors (off-diagonal
// entries counted twice).
double point_magnitude(const RealField& f, std::size_t flat);

// Supremum of the pointwise magnitude over the grid.
double sup_norm(const RealField& f);
double sup_norm(const SpectralField& f);

// Grid quadratures of |f| and |f|^2 over the full torus volume (2*pi)^3.
double l1_norm(const RealField& f);
double l1_norm(const SpectralField& f);

// L2 norm via Parseval; exact for the stored modes.
double l2_norm(const SpectralField& f);

// Sobolev norm (sum over modes of (1+|k|^2)^s |f_k|^2, scaled by the torus
// volume)^{1/2}, with the same tensor weighting as l2_norm.
double sobolev_norm(const SpectralField& f, double s);

// Space C^N norm in the summation convention: sum over all spatial
// multi-indices alpha with |alpha| <= N of sup |d^alpha f|.
double cn_space_norm(const SpectralField& f, int N);

// Space Hoelder seminorm estimator: maximum of
// sup_x |f(x+h) - f(x)| / |h|^theta over 13 lattice directions and
// power-of-two step counts with |h| <= pi.  This probes finitely many
// offsets, so it is a lower bound of the continuum seminorm; every bound
// audit in this project uses the same estimator on both sides of an
// inequality.
double holder_space_seminorm(const RealField& f, double theta);
double holder_space_norm(const RealField& f, double theta);

// Time-series fetch: tick index to field value.
using SeriesFetch = std::function<const SpectralField&(int)>;

// sup_t of the pointwise sup over ticks [first, last].
double series_sup_norm(const SeriesFetch& at, int first, int last);

// Time Hoelder seminorm estimator over ticks [first, last] with spacing dt:
// max over power-of-two tick gaps g of max_i value_norm(f(i+g) - f(i)) /
// (g dt)^delta, where value_norm is the supplied spatial norm.  Same
// lower-bound caveat as the space estimator.
double holder_time_seminorm(
    const SeriesFetch& at, int first, int last, double dt, double delta,
    const std::function<double(const SpectralField&)>& value_norm);

}  // namespace eulci::spectral
