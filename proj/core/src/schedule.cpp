#include "eulci/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eulci::schedule {

namespace {

// b^q as a double exponent; callers check finiteness of the final power.
double tower(long a, long b, int q) {
    double e = 1.0;
    for (int i = 0; i < q; ++i) e *= double(b);
    return std::pow(double(a), e);
}

void fail_if(std::ostringstream& msg, bool bad, const char* what) {
    if (bad) msg << "  - " << what << "\n";
}

}  // namespace

// ---------------------------------------------------------------------------
// EnergyProfile

EnergyProfile::EnergyProfile(std::vector<double> knots, double t0, double t1)
    : v_(std::move(knots)), t0_(t0), t1_(t1) {
    if (v_.size() < 2) throw precondition_error("EnergyProfile: need at least 2 knots");
    if (!(t1 > t0)) throw precondition_error("EnergyProfile: need t1 > t0");
    dx_ = (t1_ - t0_) / double(v_.size() - 1);
    rebuild();
}

EnergyProfile EnergyProfile::cosine(double base, double osc, double t0, double t1, int slots) {
    if (slots < 2) throw precondition_error("EnergyProfile::cosine: need slots >= 2");
    std::vector<double> v((std::size_t)slots);
    const double dx = (t1 - t0) / double(slots - 1);
    for (int i = 0; i < slots; ++i) v[std::size_t(i)] = base * (1.0 + osc * std::cos(t0 + i * dx));
    return EnergyProfile(std::move(v), t0, t1);
}

EnergyProfile EnergyProfile::constant(double value, double t0, double t1) {
    return EnergyProfile({value, value}, t0, t1);
}

void EnergyProfile::rebuild() {
    const std::size_t n = v_.size() - 1;
    m_.assign(n + 1, 0.0);
    auto rhs_at = [&](std::size_t i) {
        return 6.0 * (v_[i - 1] - 2.0 * v_[i] + v_[i + 1]) / (dx_ * dx_);
    };
    // cubic spline with not-a-knot ends; on a uniform grid the third-derivative
    // continuity at the second and second-to-last knots pins those M directly
    if (n == 2) {
        m_[0] = m_[1] = m_[2] = rhs_at(1) / 6.0;
    } else if (n >= 3) {
        m_[1] = rhs_at(1) / 6.0;
        m_[n - 1] = rhs_at(n - 1) / 6.0;
        if (n >= 4) {
            const std::size_t cnt = n - 3;  // unknowns M_2 .. M_(n-2)
            std::vector<double> diag(cnt, 4.0), rhs(cnt, 0.0);
            for (std::size_t k = 0; k < cnt; ++k) rhs[k] = rhs_at(k + 2);
            rhs[0] -= m_[1];
            rhs[cnt - 1] -= m_[n - 1];
            for (std::size_t k = 1; k < cnt; ++k) {
                const double w = 1.0 / diag[k - 1];
                diag[k] -= w;
                rhs[k] -= w * rhs[k - 1];
            }
            m_[n - 2] = rhs[cnt - 1] / diag[cnt - 1];
            for (std::size_t k = cnt - 1; k-- > 0;)
                m_[k + 2] = (rhs[k] - m_[k + 3]) / diag[k];
        }
        m_[0] = 2.0 * m_[1] - m_[2];
        m_[n] = 2.0 * m_[n - 1] - m_[n - 2];
    }
    elow_ = ehigh_ = v_[0];
    eslope_ = 0.0;
    const int fine = 32;
    for (std::size_t i = 0; i < n; ++i) {
        for (int s = 0; s <= fine; ++s) {
            const double t = t0_ + (double(i) + double(s) / fine) * dx_;
            elow_ = std::min(elow_, value(t));
            ehigh_ = std::max(ehigh_, value(t));
            eslope_ = std::max(eslope_, std::abs(slope(t)));
        }
    }
    if (!(elow_ > 0.0)) throw precondition_error("EnergyProfile: profile must stay positive");
}

double EnergyProfile::value(double t) const {
    const double tc = std::clamp(t, t0_, t1_);
    const std::size_t n = v_.size() - 1;
    const std::size_t i = std::min(n - 1, std::size_t(std::max(0.0, (tc - t0_) / dx_)));
    const double xl = t0_ + double(i) * dx_;
    const double u = tc - xl, w = dx_ - u;
    return m_[i] * w * w * w / (6.0 * dx_) + m_[i + 1] * u * u * u / (6.0 * dx_) +
           (v_[i] / dx_ - m_[i] * dx_ / 6.0) * w + (v_[i + 1] / dx_ - m_[i + 1] * dx_ / 6.0) * u;
}

double EnergyProfile::slope(double t) const {
    const double tc = std::clamp(t, t0_, t1_);
    const std::size_t n = v_.size() - 1;
    const std::size_t i = std::min(n - 1, std::size_t(std::max(0.0, (tc - t0_) / dx_)));
    const double xl = t0_ + double(i) * dx_;
    const double u = tc - xl, w = dx_ - u;
    return -m_[i] * w * w / (2.0 * dx_) + m_[i + 1] * u * u / (2.0 * dx_) -
           (v_[i] / dx_ - m_[i] * dx_ / 6.0) + (v_[i + 1] / dx_ - m_[i + 1] * dx_ / 6.0);
}

void EnergyProfile::scale(double factor) {
    if (!(factor > 0.0)) throw precondition_error("EnergyProfile::scale: factor must be > 0");
    for (double& v : v_) v *= factor;
    rebuild();
}

// ---------------------------------------------------------------------------
// ParamSchedule

double ParamSchedule::lambda(int q) const {
    if (q < 0) throw precondition_error("lambda: level must be >= 0");
    return tower(a, b, q);
}

double ParamSchedule::delta(int q) const {
    if (q < 1) throw precondition_error("delta: level must be >= 1");
    if (q == 1) return 6.0 * L * L;
    return 0.5 * std::pow(lambda(2), 2.0 * beta) * std::pow(lambda(q), -2.0 * beta);
}

double ParamSchedule::ell(int q, double dt_step) const {
    return std::max(std::pow(lambda(q), -4.0), 4.0 * dt_step);
}

long ParamSchedule::f_cut(int q) const {
    const double raw = std::pow(lambda(q + 1), gamma / 8.0);
    if (!std::isfinite(raw) || raw >= 9.0e18)
        throw domain_error("f_cut: carrier cut overflows integer range");
    return (long)std::ceil(raw - 1e-12);
}

double ParamSchedule::dt() const {
    return std::min(0.05 / lambda(q_max + 1), 1.0e-3);
}

void ParamSchedule::require_desk_valid() const {
    std::ostringstream msg;
    fail_if(msg, a < 2, "base a must be >= 2");
    fail_if(msg, b < 2, "exponent b must be >= 2");
    fail_if(msg, !(beta > 0.0), "beta must be > 0");
    fail_if(msg, !(gamma > 0.0), "gamma must be > 0");
    fail_if(msg, !(L > 0.0), "L must be > 0");
    fail_if(msg, !(r_moment > 1.0 && r_moment < 1.5), "r_moment must lie in (1, 3/2)");
    fail_if(msg, q_max < 0, "q_max must be >= 0");
    bool growth_ok = true;
    if (a >= 2 && b >= 2 && q_max >= 0) {
        for (int q = 0; q <= q_max + 1; ++q) {
            const double l0 = lambda(q), l1 = lambda(q + 1);
            if (!std::isfinite(l1) || !(l1 > l0)) growth_ok = false;
        }
        fail_if(msg, !growth_ok, "lambda must be finite and strictly increasing through q_max+1");
        if (growth_ok) {
            bool dec = true;
            for (int q = 1; q <= q_max + 1; ++q)
                if (!(delta(q) > delta(q + 1))) dec = false;
            fail_if(msg, !dec, "delta must be strictly decreasing");
            bool fok = true;
            for (int q = 0; q <= q_max; ++q)
                if (f_cut(q) < 1) fok = false;
            fail_if(msg, !fok, "carrier cut f(q) must be >= 1");
        }
    }
    const std::string s = msg.str();
    if (!s.empty()) throw precondition_error("ParamSchedule invalid:\n" + s);
}

// ---------------------------------------------------------------------------
// CauchyParams

double CauchyParams::lambda(int q) const {
    if (q < 0) throw precondition_error("lambda: level must be >= 0");
    return tower(a, b, q);
}

double CauchyParams::M_L() const {
    const double s = double(L + N);
    return s * s + s;
}

double CauchyParams::L_level(int q) const {
    if (q < 0) throw precondition_error("L_level: level must be >= 0");
    double e = 1.0;
    for (int i = 0; i < q; ++i) e *= double(m);
    return std::pow(M_L(), e);
}

double CauchyParams::delta(int q) const {
    if (q < 1) throw precondition_error("delta: level must be >= 1");
    if (q == 1) return M_L();
    return std::pow(lambda(q), -2.0 * beta_tau);
}

double CauchyParams::tau(int q) const {
    if (q < 0) throw precondition_error("tau: level must be >= 0");
    return std::pow(lambda(q + 1), -2.0 * beta_tau);
}

double CauchyParams::sigma(int q) const {
    if (q < 1) throw precondition_error("sigma: level must be >= 1");
    if (q == 2) return K;
    return std::pow(lambda(q), -2.0 * beta_sigma);
}

double CauchyParams::M0() const {
    double s = K;
    for (int r = 1; r <= 200; ++r) {
        const double term = std::sqrt(delta(r));
        s += term;
        if (r >= 2 && term < 1e-18) break;
    }
    return s;
}

double CauchyParams::ell(int q, double dt_step) const {
    return std::max(ell_scale * std::pow(lambda(q), -4.0), 4.0 * dt_step);
}

long CauchyParams::f_cut(int q) const {
    const double gamma = 1.0 / double(b);
    const double raw = std::pow(lambda(q + 1), gamma / 8.0);
    if (!std::isfinite(raw) || raw >= 9.0e18)
        throw domain_error("f_cut: carrier cut overflows integer range");
    return (long)std::ceil(raw - 1e-12);
}

void CauchyParams::require_desk_valid() const {
    std::ostringstream msg;
    fail_if(msg, a < 2, "base a must be >= 2");
    fail_if(msg, b < 2, "exponent b must be >= 2");
    fail_if(msg, m < 2, "inner exponent m must be >= 2");
    fail_if(msg, !(beta_tau > 0.0), "beta_tau must be > 0");
    fail_if(msg, !(beta_sigma > 0.0), "beta_sigma must be > 0");
    fail_if(msg, !(K > 0.0), "K must be > 0");
    fail_if(msg, L < 1, "L must be >= 1");
    fail_if(msg, N < 1, "N must be >= 1");
    fail_if(msg, !(ell_scale > 0.0), "ell_scale must be > 0");
    fail_if(msg, q_max < 0, "q_max must be >= 0");
    if (a >= 2 && b >= 2 && q_max >= 0 && beta_tau > 0.0) {
        bool growth_ok = true;
        for (int q = 0; q <= q_max + 1; ++q) {
            const double l1 = lambda(q + 1);
            if (!std::isfinite(l1) || !(l1 > lambda(q))) growth_ok = false;
        }
        fail_if(msg, !growth_ok, "lambda must be finite and strictly increasing through q_max+1");
        if (growth_ok) {
            bool dec = true, halving = true;
            for (int r = 1; r <= q_max + 1; ++r) {
                if (!(tau(r) < tau(r - 1))) dec = false;
                if (!(2.0 * tau(r) <= tau(r - 1))) halving = false;
            }
            fail_if(msg, !dec, "tau must be strictly decreasing");
            fail_if(msg, !halving, "successive windows must satisfy 2 tau_r <= tau_(r-1)");
            bool fok = true;
            for (int q = 0; q <= q_max; ++q)
                if (f_cut(q) < 1) fok = false;
            fail_if(msg, !fok, "carrier cut f(q) must be >= 1");
        }
    }
    const std::string s = msg.str();
    if (!s.empty()) throw precondition_error("CauchyParams invalid:\n" + s);
}

// ---------------------------------------------------------------------------
// Paper-inequality reports

exact::Report inequality_report(const ParamSchedule& ps, const exact::Rat& kappa, long j) {
    exact::StationaryExactParams p;
    p.b = ps.b;
    p.beta = exact::rat_of_double(ps.beta);
    p.kappa = kappa;
    p.j = j;
    const double lc = std::ceil(ps.L - 1e-12);
    p.L = exact::Int((long long)std::max(1.0, lc));
    exact::Report rep = exact::validate_stationary_exact(p);
    // the schedule carries its own gamma; the validator's carrier fraction is 1/(4b)
    exact::Check g;
    g.name = "carrier-fraction-schedule";
    g.holds = ps.gamma == 1.0 / (4.0 * double(ps.b));
    g.detail = "stored gamma equals the rounding of 1/(4b)";
    rep.checks.insert(rep.checks.begin(), g);
    return rep;
}

exact::Report inequality_report(const CauchyParams& cp, const exact::Rat& kappa, long j,
                                const exact::Rat& wave_constant) {
    exact::CauchyExactParams p;
    p.b = cp.b;
    p.m = cp.m;
    p.beta = exact::rat_of_double(cp.beta_tau);
    p.kappa = kappa;
    p.j = j;
    p.K = exact::rat_of_double(cp.K);
    p.Mbar = wave_constant;
    p.L = exact::Int((long long)cp.L);
    p.N = exact::Int((long long)cp.N);
    exact::Report rep = exact::validate_cauchy_exact(p);
    exact::Check c;
    c.name = "sigma-exponent-coupled";
    c.holds = cp.beta_sigma == cp.beta_tau;
    c.detail = "pumping exponent beta_sigma equals beta";
    rep.checks.insert(rep.checks.begin(), c);
    return rep;
}

}  // namespace eulci::schedule
