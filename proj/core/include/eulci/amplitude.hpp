#pragma once

#include <string>
#include <vector>

#include "eulci/field.hpp"
#include "eulci/mollify.hpp"
#include "eulci/phases.hpp"
#include "eulci/schedule.hpp"
#include "eulci/waves.hpp"

// Modulation amplitudes for the carrier waves: the energy gap rate zeta, the
// stress-absorbing scalar rho, and per-wavevector complex amplitude fields
// a_k = h_k * (transported phase), together with norm audits of their
// derivative growth.
namespace eulci::amplitude {

// --- complex scalar fields -------------------------------------------------
// The amplitudes are complex-valued functions of space, so the Hermitian
// conventions of fft.hpp do not apply.  A SpectralField with scalar kind is
// used as a plain coefficient cube; these helpers transform and measure it
// without any symmetry assumption.

// Coefficients -> complex point values (inverse transform of component 0).
std::vector<cplx> complex_values(const SpectralField& f);

// Complex point values -> coefficients (forward transform with 1/n^3).
SpectralField complex_analyze(const Grid3& g, const std::vector<cplx>& vals);

// sup over the grid of the pointwise modulus.
double complex_sup(const SpectralField& f);

// C^N in the summation convention: sum over multi-indices |alpha| <= N of
// sup |d^alpha f|, derivatives taken spectrally.  Requires 0 <= N <= 3.
double complex_cn_norm(const SpectralField& f, int N);

// --- energy gap rate -------------------------------------------------------

// zeta = [e (1 - delta_next) - mean_energy] / (3 (2 pi)^3).
double zeta_formula(double e_s, double delta_next, double mean_energy);

struct ZetaSeries {
    std::vector<double> times;
    std::vector<double> value;
    // Admissible window implied by the inductive energy gap at this level:
    // [ (3/4 delta_cur - delta_next) e, (5/4 delta_cur - delta_next) e ]
    // scaled by 1/(3 (2 pi)^3).  Reported, not enforced.
    std::vector<double> window_lo, window_hi;
    std::vector<char> in_window;
    int negative_count = 0;  // ticks where zeta < 0 (hypothesis violation)
};

// Ensemble version: l2sq_paths[p][i] is the squared L2 norm of v + z for
// path p at times[i]; the expectation is their plain average.
ZetaSeries compute_zeta(const schedule::EnergyProfile& e,
                        const std::vector<double>& times,
                        const std::vector<std::vector<double>>& l2sq_paths,
                        double delta_cur, double delta_next);

// Backward-in-time mollification of a tick series (extended below tick 0 by
// its initial value, matching TimeMollifier).
std::vector<double> mollify_series(const std::vector<double>& v,
                                   const spectral::TimeMollifier& tm);

// --- stress-absorbing scalar ----------------------------------------------

enum class RhoMode { stationary, cauchy };

// rho = sqrt(ell^2 + |R|^2) + offset with offset = r0 * zeta_ell in
// stationary mode and r0 * sigma_next / (2 pi)^3 in cauchy mode.  The
// returned field is pointwise positive and keeps the matrix argument
// Id - r0 R / rho strictly inside the solver ball; if the offset drives
// rho <= |R| anywhere (possible only when zeta_ell < 0) the construction
// has failed and a construction_error is thrown -- the value is never
// clamped.  R must be trace-free symmetric.
RealField compute_rho(const RealField& R_ell, double ell, RhoMode mode,
                      double zeta_or_sigma, double r0);

// --- amplitude fields ------------------------------------------------------

struct AmplitudeContext {
    const waves::WaveFamilies* fam = nullptr;
    phases::PhaseSystem ps;            // cell frequency mu = previous carrier
    const RealField* rho = nullptr;    // scalar, from compute_rho
    const RealField* R_ell = nullptr;  // symtensor, same mollification
    const RealField* u = nullptr;      // vector3, transport velocity v + z
    double tau = 0.0;                  // fast time, carrier * t
    double lambda_next = 0.0;          // carrier frequency (positive integer)
    double r_R = 0.0;                  // stress budget fraction, < fam->r0
};

// Dense pointwise evaluation at one fast time.  For every wavevector k of
// the family system (both signs):
//   h[k]       = sqrt(rho / r0) * gamma_k(Id - r0 R / rho)   (positive)
//   a[k]       = h[k] * weight_j * exp(-i (k . cell_j / mu) tau)
//   a_tau[k]   = analytic d/dtau of a[k]
//   material[k]= a_tau[k] + i (k . u) a[k], computed in the factored form
//                i (k . u - k . cell_j / mu) a[k] so the cancellation is
//                exact rather than a numerical difference.
// Mirrors satisfy a[-k] = conj(a[k]) exactly, pointwise.
struct PointAmplitudes {
    std::vector<Vec3i> ks;
    std::vector<int> family;
    std::vector<std::vector<double>> h;
    std::vector<std::vector<cplx>> a, a_tau, material;
    std::size_t index_of(const Vec3i& k) const;  // throws domain_error
};
PointAmplitudes evaluate_pointwise(const AmplitudeContext& ctx);

// Band-limited amplitude set ready for carrier modulation.  Each spectrum
// is cut to the largest L-inf band that still fits on the grid after the
// shift by lambda_next * k; the worst relative L2 mass removed by that cut
// is recorded.  Throws construction_error when a shifted band does not fit.
struct AmplitudeSet {
    std::vector<Vec3i> ks;
    std::vector<int> family;
    std::vector<int> band;               // per-k L-inf budget
    std::vector<RealField> h;            // pointwise positive factors
    std::vector<SpectralField> a_hat;    // band-cut complex spectra
    std::vector<SpectralField> a_tau_hat;
    double r0 = 0.0, r_R = 0.0;
    double projection_share = 0.0;       // worst relative mass removed
    std::size_t index_of(const Vec3i& k) const;  // throws domain_error
};
AmplitudeSet compute_a_k(const AmplitudeContext& ctx);

// --- norm audits -----------------------------------------------------------

struct BoundAuditRow {
    std::string bound_id;
    int N = 0;
    double measured = 0.0;  // worst norm across the wavevectors
    double rhs = 0.0;       // bound form evaluated at the supplied norms
    double implied = 0.0;   // measured / rhs
};

// Window C0 norms of the unmollified inputs plus the schedule values that
// enter the bound forms.
struct AuditInputs {
    double ell = 0.0;
    double delta_cur = 0.0;   // amplitude budget at the next level
    double lambda_cur = 0.0;  // cell frequency of the phase system
    double norm_v = 0.0, norm_z = 0.0, norm_R = 0.0;
};

struct BoundAuditReport {
    std::vector<BoundAuditRow> rows;
    // sup-norm ratio of the material derivative to the amplitude itself;
    // collecting this across a frequency decade fits the 1/lambda gain.
    double c0_ratio = 0.0;
    std::string csv() const;  // bound_id,N,measured_norm,rhs_value,implied_constant
};
BoundAuditReport bound_audit(const AmplitudeContext& ctx, const AuditInputs& in,
                             const std::vector<int>& Ns);

struct MaterialGainFit {
    double slope = 0.0;
    bool pass = false;  // slope within [-1.15, -0.85]
};
MaterialGainFit material_gain_fit(const std::vector<double>& lambdas,
                                  const std::vector<double>& ratios);

}  // namespace eulci::amplitude
