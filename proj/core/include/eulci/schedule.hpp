#pragma once

#include <vector>

#include "eulci/exact.hpp"
#include "eulci/util.hpp"

// Parameter schedules for the two iteration schemes and the prescribed
// energy profile.  Desk mode keeps every quantity representable in doubles
// and asserts only structural facts; paper mode defers to the exact rational
// validator and never evaluates fields.
namespace eulci::schedule {

enum class Mode { paper, desk };

// Smooth positive energy target e(t) on a window, tabulated at uniform knots
// with a natural cubic spline through them.  Evaluation clamps to the window.
class EnergyProfile {
  public:
    EnergyProfile(std::vector<double> knots, double t0, double t1);
    static EnergyProfile cosine(double base, double osc, double t0, double t1, int slots = 33);
    static EnergyProfile constant(double value, double t0, double t1);

    double value(double t) const;
    double slope(double t) const;
    double e_low() const { return elow_; }
    double e_high() const { return ehigh_; }
    double e_slope() const { return eslope_; }
    double t0() const { return t0_; }
    double t1() const { return t1_; }

    // Multiply the whole profile by factor > 0 (used by the init override
    // that lifts e_low to a measured noise energy).
    void scale(double factor);

  private:
    void rebuild();
    std::vector<double> v_;   // knot values
    std::vector<double> m_;   // spline second derivatives
    double t0_, t1_, dx_;
    double elow_, ehigh_, eslope_;
};

// Stationary-scheme schedule: frequencies lambda_q = a^(b^q), amplitudes
// delta_1 = 6 L^2 and delta_q = (1/2) lambda_2^(2 beta) lambda_q^(-2 beta),
// mollification length lambda_q^(-4) (desk floor: 4 dt), carrier cut
// f(q) = lambda_(q+1)^(gamma/8) (desk: rounded up to an integer).
struct ParamSchedule {
    Mode mode = Mode::desk;
    long a = 2;
    long b = 2;
    double beta = 0.3;
    double gamma = 1.0;
    double alpha = 0.05;     // audit Holder exponent
    double r_moment = 1.25;  // 2r-th moment order, r in (1, 3/2)
    double r_R = 0.0;        // stress budget fraction, set to < r0 once waves exist
    double L = 1.0;          // moment constant entering delta_1
    int q_max = 2;

    double lambda(int q) const;
    double delta(int q) const;
    double ell(int q, double dt) const;
    long f_cut(int q) const;
    double dt() const;  // min(0.05 / lambda(q_max + 1), 1e-3)

    // Throws precondition_error when the desk structural invariants fail:
    // lambda growth finite and increasing through q_max+1, f(q) >= 1,
    // delta decreasing, r_moment in range.
    void require_desk_valid() const;
};

// Time-zero-scheme schedule.  Desk mode decouples the window exponent
// (beta_tau, driving delta/tau) from the pumping exponent (beta_sigma,
// driving sigma) so the pre-pump levels stay small on coarse grids; paper
// mode uses a single beta and the exact validator.
struct CauchyParams {
    Mode mode = Mode::desk;
    long a = 2;
    long b = 2;
    int m = 2;             // inner growth exponent (paper default 10)
    double beta_tau = 0.3;
    double beta_sigma = 3.0;
    double K = 1.0;        // pumped energy increment, sigma_2 = K
    long L = 1;
    long N = 1;
    double C_S = 0.0;      // measured Sobolev embedding constant
    double ell_scale = 1.0;  // desk-only shrink factor on lambda_q^(-4)
    int q_max = 2;

    double lambda(int q) const;
    double M_L() const;        // (L+N)^2 + L + N
    double L_level(int q) const;  // M_L^(m^q)
    double delta(int q) const;    // delta_1 = M_L, delta_q = lambda_q^(-2 beta_tau)
    double tau(int q) const;      // lambda_(q+1)^(-2 beta_tau)
    double sigma(int q) const;    // sigma_2 = K, else lambda_q^(-2 beta_sigma)
    double M0() const;            // K + sum_r delta_r^(1/2)
    double ell(int q, double dt) const;
    long f_cut(int q) const;

    // Structural checks: tau strictly decreasing with 2 tau_r <= tau_(r-1),
    // lambda growth, f(q) >= 1, K >= minimum, m >= 2.
    void require_desk_valid() const;
};

// Paper-inequality reports for the stored (dyadic) parameter values.  Desk
// schedules get the same report with failures expected; nothing throws.
exact::Report inequality_report(const ParamSchedule& ps, const exact::Rat& kappa, long j);
exact::Report inequality_report(const CauchyParams& cp, const exact::Rat& kappa, long j,
                                const exact::Rat& wave_constant);

}  // namespace eulci::schedule
