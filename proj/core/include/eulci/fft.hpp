#pragma once

#include <vector>

#include "eulci/field.hpp"

namespace eulci {

// In-place 3D DFT on a dense cube laid out like Grid3 (x outermost).
// forward=true applies e^{-ik.x} and is unnormalized; the analyze/synthesize
// pair below carries the 1/n^3 so that synthesize(analyze(f)) == f.
// Plans are cached per grid size for the process lifetime and shared across
// buffers; creation is serialized, execution is lock-free.
void dft3_inplace(const Grid3& g, cplx* data, bool forward);

// Point values -> Fourier coefficients (includes the 1/n^3 factor).
SpectralField analyze(const RealField& f);

// Fourier coefficients -> point values.  The imaginary parts produced by the
// inverse transform are dropped; callers owning non-Hermitian data should
// symmetrize first (see ops.hpp).
RealField synthesize(const SpectralField& f);

// Single component of synthesize(), avoiding the full-field allocation.
std::vector<double> synthesize_comp(const SpectralField& f, int comp);

}  // namespace eulci
