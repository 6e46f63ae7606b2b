#pragma once

#include "eulci/fft.hpp"
#include "eulci/field.hpp"

namespace eulci {

// --- multiplier calculus on SpectralField ---

// scalar -> vector, (grad f)_a = i k_a f_k
SpectralField gradient(const SpectralField& scalar);

// vector -> scalar (i k . v) or symtensor -> vector (i k_b T_ab)
SpectralField divergence(const SpectralField& f);

// vector -> vector, i k x v
SpectralField curl(const SpectralField& vec);

// project onto divergence-free part; zero mode (the mean) is left as is
void leray_project(SpectralField& vec);

// Right inverse of divergence on mean-zero vector fields, valued in
// symmetric trace-free tensors.  Per mode m != 0, with P = m.v:
//   R_ab = -i/|m|^2 (m_a v_b + m_b v_a) + i P/(2|m|^2) delta_ab
//          + i P m_a m_b / (2|m|^4)
// which satisfies i m_b R_ab = v_a and R_aa = 0 exactly.  Throws
// precondition_error when the input has a nonzero mean.
SpectralField inverse_divergence(const SpectralField& vec);

// subtract (tr T / 3) Id in place
void make_traceless(SpectralField& sym);

// symtensor -> scalar, T_aa
SpectralField trace_of(const SpectralField& sym);

// zero modes with max(|kx|,|ky|,|kz|) > K
void truncate_linf(SpectralField& f, int K);

// zero modes with |k| > r (Euclidean, inclusive keep)
void truncate_ball(SpectralField& f, double r);

// Copy the modes representable on both grids (strictly below the Nyquist
// plane of either) into a field on dst; all other dst modes are zero.
SpectralField resampled(const SpectralField& src, const Grid3& dst);

// average each (k,-k) pair toward Hermitian symmetry, in place
void hermitian_symmetrize(SpectralField& f);

// max over modes and components of |c(k) - conj(c(-k))|
double hermitian_defect(const SpectralField& f);

// max over modes of |k . v_k| for a vector field
double divergence_defect(const SpectralField& vec);

void remove_mean(SpectralField& f);

// zero the three Nyquist planes (k_i == n/2); band discipline keeps real
// content strictly below them, so anything there is aliasing roundoff
void zero_nyquist(SpectralField& f);

// multiply every component by a scalar function of the wavevector
template <class Fn>
void apply_multiplier(SpectralField& f, Fn&& m) {
  for (int ix = 0; ix < f.grid.n; ++ix)
    for (int iy = 0; iy < f.grid.n; ++iy)
      for (int iz = 0; iz < f.grid.n; ++iz) {
        const Vec3i k = f.grid.wavevector(ix, iy, iz);
        const std::size_t i = f.grid.flat(ix, iy, iz);
        const double w = m(k);
        for (int c = 0; c < f.ncomp(); ++c) f.c[c][i] *= w;
      }
}

// copying variant with a complex-valued multiplier (e.g. derivative symbols)
template <class Fn>
SpectralField apply_complex_multiplier(SpectralField f, Fn&& m) {
  for (int ix = 0; ix < f.grid.n; ++ix)
    for (int iy = 0; iy < f.grid.n; ++iy)
      for (int iz = 0; iz < f.grid.n; ++iz) {
        const Vec3i k = f.grid.wavevector(ix, iy, iz);
        const std::size_t i = f.grid.flat(ix, iy, iz);
        const cplx w = m(k);
        for (int c = 0; c < f.ncomp(); ++c) f.c[c][i] *= w;
      }
  return f;
}

// --- pointwise algebra on RealField (factors must share a grid) ---

// vectors -> symtensor, (a_i b_j + a_j b_i) / 2
RealField sym_outer(const RealField& a, const RealField& b);

// vectors -> scalar, a . b
RealField dot_field(const RealField& a, const RealField& b);

// scalar*scalar, or scalar*vector / scalar*symtensor (componentwise)
RealField multiply(const RealField& scalar, const RealField& b);

// --- grid transfer helpers (the dealiasing discipline) ---

// resample to target band and return point values there
RealField to_grid_real(const SpectralField& f, const Grid3& target);

// analyze point values and keep only what the store grid represents
SpectralField project_to_grid(const RealField& f, const Grid3& store);

}  // namespace eulci
