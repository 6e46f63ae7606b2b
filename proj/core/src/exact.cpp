#include "eulci/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eulci::exact {

namespace {

Int ipow(const Int& base, unsigned long e) {
    return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

Rat rat_pow(const Rat& r, unsigned long e) {
    return Rat(ipow(r.numerator(), e), ipow(r.denominator(), e));
}

Int ceil_of(const Rat& r) {
    Int q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
    return q;
}

Int floor_of(const Rat& r) {
    Int q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

long ceil_long(const Rat& r) {
    return ceil_of(r).convert_to<long>();
}

std::string describe(const Rat& lhs, const char* rel, const Rat& rhs) {
    return to_string(lhs) + " " + rel + " " + to_string(rhs);
}

}  // namespace

Rat rat_of_double(double x) {
    if (!std::isfinite(x)) throw precondition_error("rat_of_double: non-finite value");
    if (x == 0.0) return Rat(Int(0));
    int e = 0;
    const double m = std::frexp(x, &e);
    // m * 2^53 is integral for any finite double
    const auto scaled = static_cast<long long>(std::ldexp(m, 53));
    Int num(scaled);
    const int shift = e - 53;
    if (shift >= 0) return Rat(num << shift);
    return Rat(num, Int(1) << (-shift));
}

long bit_length(const Int& v) {
    if (v < 0) throw precondition_error("bit_length: negative value");
    if (v == 0) return 0;
    return static_cast<long>(boost::multiprecision::msb(v)) + 1;
}

double to_double(const Rat& r) {
    return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

Tri pow2_exceeds(const Rat& e, const Rat& K) {
    if (K <= Rat(Int(0))) return Tri::yes;
    const Int p = e.numerator();
    const Int q = e.denominator();  // > 0 by rational normalization
    const Int u = K.numerator();
    const Int v = K.denominator();

    // Exact route while the integer blow-up stays modest.
    const Int abs_p = p < 0 ? Int(-p) : p;
    const Int cost = abs_p + q * Int(bit_length(u) + bit_length(v));
    if (cost <= Int(1) << 20) {
        const auto qe = q.convert_to<unsigned long>();
        const Int uq = ipow(u, qe);
        const Int vq = ipow(v, qe);
        if (p >= 0) return (ipow(Int(2), abs_p.convert_to<unsigned long>()) * vq > uq) ? Tri::yes : Tri::no;
        return (vq > ipow(Int(2), abs_p.convert_to<unsigned long>()) * uq) ? Tri::yes : Tri::no;
    }

    if (K >= Rat(Int(1))) {
        // K <= ceil(K) <= 2^bitlen(ceil K) - 1, so e >= bitlen certifies strictly greater.
        const long lc = bit_length(ceil_of(K));
        if (e >= Rat(Int(lc))) return Tri::yes;
        // 2^(bitlen(floor K)-1) <= floor(K) <= K certifies less-or-equal.
        const long lf = bit_length(floor_of(K));
        if (e <= Rat(Int(lf - 1))) return Tri::no;
        return Tri::unknown;
    }
    if (p >= 0) return Tri::yes;  // 2^e >= 1 > K
    return Tri::unknown;
}

bool Report::all_hold() const {
    for (const auto& c : checks)
        if (!c.holds) return false;
    return true;
}

const Check& Report::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw precondition_error("Report::find: no check named " + name);
}

std::string Report::summary() const {
    std::ostringstream os;
    for (const auto& c : checks)
        os << (c.holds ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
    return os.str();
}

Rat theta_window_stationary(const Rat& kappa) {
    const Int b3 = ipow(Int(62), 3);
    const Rat w1 = kappa / Rat(Int(73) * b3);
    const Rat w2 = Rat(Int(1), Int(7) * b3);
    return w1 < w2 ? w1 : w2;
}

Rat theta_window_cauchy(const Rat& kappa, long p_moment) {
    if (p_moment < 1) throw precondition_error("theta_window_cauchy: p_moment >= 1 required");
    const Int b3 = ipow(Int(30), 3);
    const Rat w1 = kappa / Rat(Int(12) * b3 * Int(p_moment));
    const Rat w2 = Rat(Int(1), Int(3) * b3 * Int(p_moment));
    return w1 < w2 ? w1 : w2;
}

Rat theta_window_accumulate(const Rat& beta, long p_moment, long b) {
    if (p_moment < 1 || b < 2) throw precondition_error("theta_window_accumulate: p_moment >= 1, b >= 2 required");
    const Rat w1 = Rat(Int(2), Int(3)) * beta;
    const Rat w2 = Rat(Int(4), Int(3) * Int(p_moment) * Int(b)) * beta;
    return w1 < w2 ? w1 : w2;
}

Rat beta_window_stationary(const Rat& kappa, long b) {
    const Int b3 = ipow(Int(b), 3);
    const Rat w1 = kappa / Rat(Int(72) * b3);
    const Rat w2 = Rat(Int(1), Int(6) * b3);
    return w1 < w2 ? w1 : w2;
}

Rat beta_window_cauchy(const Rat& kappa, long b) {
    const Int b2 = ipow(Int(b), 2);
    const Rat w1 = kappa / Rat(Int(16) * b2);
    const Rat w2 = Rat(Int(1), Int(4) * b2);
    return w1 < w2 ? w1 : w2;
}

Rat sqrt_upper(const Int& x) {
    if (x < 0) throw precondition_error("sqrt_upper: negative argument");
    if (x == 0) return Rat(Int(0));
    const Int s = boost::multiprecision::sqrt(x);
    if (s * s == x) return Rat(s);
    // sqrt(x) <= s + (x - s^2) / (2 s) by concavity
    return Rat(s) + Rat(x - s * s, 2 * s);
}

namespace {

// Upper bound on sum_{r>=2} 2^(-E_1 * b^r) where E_1 = log2(a) * beta.
// Terms collapse double-exponentially; the loop stops once 64 bits below the
// leading term and appends a geometric tail bound.
Rat tail_sum_upper(const Rat& log2a_beta, long b) {
    const long cap = 1 << 20;
    auto clamped_floor = [&](const Rat& r) {
        const Int f = floor_of(r);
        return f > Int(cap) ? cap : f.convert_to<long>();
    };
    Rat e = log2a_beta * rat_pow(Rat(Int(b)), 2);  // exponent at r = 2
    const long lead = clamped_floor(e);
    if (lead < 1) return Rat(Int(-1));  // first term not even 2^-1, caller reports failure
    Rat sum(Int(0));
    for (int r = 0; r < 64; ++r) {
        const long fe = clamped_floor(e);
        sum += Rat(Int(1), Int(1) << fe);
        if (fe >= std::min(lead + 64, cap)) break;
        e *= Rat(Int(b));
    }
    // remaining terms at most 2^-(lead+64) each with successive ratios <= 1/2
    sum += Rat(Int(1), Int(1) << std::min(lead + 63, cap));
    return sum;
}

void push(Report& rep, std::string name, bool holds, std::string detail) {
    rep.checks.push_back({std::move(name), holds, std::move(detail)});
}

}  // namespace

Report validate_stationary_exact(const StationaryExactParams& p) {
    if (p.j < 1) throw precondition_error("validate_stationary_exact: j >= 1 required");
    Report rep;
    const Rat zero(Int(0)), one(Int(1));
    const Int b(p.b);
    const Rat gamma(Int(1), Int(4) * b);
    const Rat log2a = Rat(Int(32) * b * Int(p.j));  // a = 2^(32 b j)

    push(rep, "beta-positive", p.beta > zero, to_string(p.beta) + " > 0");
    push(rep, "kappa-positive", p.kappa > zero, to_string(p.kappa) + " > 0");
    push(rep, "growth-floor", p.b >= 62, std::to_string(p.b) + " >= 62");
    push(rep, "carrier-fraction", gamma == Rat(Int(1), Int(4) * b),
         "gamma = " + to_string(gamma));

    const Rat bwin = beta_window_stationary(p.kappa, p.b);
    push(rep, "beta-window", p.beta < bwin, describe(p.beta, "<", bwin));

    const Rat b3 = rat_pow(Rat(b), 3);
    const Rat lhs_slope = Rat(Int(3)) * b3 * p.beta + Rat(Int(2)) * Rat(b) * gamma;
    push(rep, "slope-sum", lhs_slope < one, describe(lhs_slope, "<", one));

    const Rat b2 = rat_pow(Rat(b), 2);
    const Rat lhs_interp = Rat(Int(2)) * b2 * p.beta + p.beta;
    const Rat rhs_interp = gamma * p.kappa / Rat(Int(8));
    push(rep, "interpolation-margin", lhs_interp < rhs_interp, describe(lhs_interp, "<", rhs_interp));

    // log2 f(q) = log2(a) * gamma/8 * b^(q+1) = j * b^(q+1): integral by construction
    const Rat f_unit = log2a * gamma / Rat(Int(8));
    push(rep, "carrier-integrality", f_unit.denominator() == 1,
         "log2 f(q) = " + to_string(f_unit) + " * b^(q+1)");

    // a^((b-61) beta n) > (8n)^3 L^6 for n = 1..64
    const Rat e1 = log2a * Rat(Int(p.b - 61)) * p.beta;
    bool orders_ok = true;
    std::string first_fail;
    for (long n = 1; n <= 64; ++n) {
        const Int rhs = ipow(Int(8) * Int(n), 3) * ipow(p.L, 6);
        if (pow2_exceeds(e1 * Rat(Int(n)), Rat(rhs)) != Tri::yes) {
            orders_ok = false;
            if (first_fail.empty()) first_fail = "n = " + std::to_string(n);
        }
    }
    push(rep, "largeness-orders", orders_ok,
         orders_ok ? "certified for n = 1..64" : "first failure at " + first_fail);

    // Beyond n = 64 the left side gains log2 a^((b-61) beta) per unit n while the
    // right side gains at most 3 log2(65/64) < 3/44 (certified by 65^44 < 2*64^44).
    const bool cert = ipow(Int(65), 44) < Int(2) * ipow(Int(64), 44);
    const bool incr = cert && e1 >= Rat(Int(3), Int(44));
    push(rep, "largeness-increment", incr, describe(e1, ">=", Rat(Int(3), Int(44))));

    return rep;
}

long suggest_j_stationary(const StationaryExactParams& p) {
    if (p.beta <= Rat(Int(0))) throw precondition_error("suggest_j_stationary: beta > 0 required");
    const Rat e1_unit = Rat(Int(32) * Int(p.b)) * Rat(Int(p.b - 61)) * p.beta;  // per unit j, n
    long j = 1;
    for (long n = 1; n <= 64; ++n) {
        const Int rhs = ipow(Int(8) * Int(n), 3) * ipow(p.L, 6);
        const Rat need = Rat(Int(bit_length(rhs))) / (e1_unit * Rat(Int(n)));
        j = std::max(j, ceil_long(need));
    }
    j = std::max(j, ceil_long(Rat(Int(3), Int(44)) / e1_unit));
    return j;
}

Report validate_cauchy_exact(const CauchyExactParams& p) {
    if (p.j < 1) throw precondition_error("validate_cauchy_exact: j >= 1 required");
    Report rep;
    const Rat zero(Int(0)), one(Int(1));
    const Int b(p.b);
    const Rat gamma(Int(1), b);
    const Rat log2a = Rat(Int(8) * b * Int(p.j));  // a = 2^(8 b j)
    const Rat b2 = rat_pow(Rat(b), 2);

    push(rep, "beta-positive", p.beta > zero, to_string(p.beta) + " > 0");
    push(rep, "kappa-positive", p.kappa > zero, to_string(p.kappa) + " > 0");
    push(rep, "growth-floor", p.b >= 30, std::to_string(p.b) + " >= 30");
    push(rep, "inner-exponent", p.m >= 2 && p.m < p.b,
         std::to_string(p.m) + " in [2, " + std::to_string(p.b) + ")");
    push(rep, "carrier-fraction", gamma == Rat(Int(1), b), "gamma = " + to_string(gamma));
    push(rep, "pump-positive", p.K > zero, to_string(p.K) + " > 0");
    push(rep, "wave-constant", p.Mbar > one, to_string(p.Mbar) + " > 1");

    const Rat bwin = beta_window_cauchy(p.kappa, p.b);
    push(rep, "beta-window", p.beta < bwin, describe(p.beta, "<", bwin));

    const Rat lhs_quartic = Rat(Int(4)) * b2 * p.beta;
    push(rep, "quartic-budget", lhs_quartic < one, describe(lhs_quartic, "<", one));

    const Rat lhs_smooth = b2 * p.beta;
    push(rep, "smoothness-budget", lhs_smooth < p.kappa, describe(lhs_smooth, "<", p.kappa));

    const Rat lhs_phase = Rat(Int(16)) * Rat(b) * p.beta;
    const Rat rhs_phase = gamma * p.kappa;
    push(rep, "phase-gain", lhs_phase < rhs_phase, describe(lhs_phase, "<", rhs_phase));

    const Rat lhs_moll = Rat(Int(2)) * b2 * p.beta + Rat(b) * gamma / Rat(Int(8));
    push(rep, "mollification-budget", lhs_moll < one, describe(lhs_moll, "<", one));

    // 2 tau_r <= tau_(r-1): weakest at r = 1, i.e. 2 beta b (b-1) log2(a) >= 1
    const Rat cascade = Rat(Int(2)) * p.beta * Rat(b) * Rat(Int(p.b - 1)) * log2a;
    push(rep, "window-cascade", cascade >= one, describe(cascade, ">=", one));

    const Rat f_unit = log2a * gamma / Rat(Int(8));
    push(rep, "carrier-integrality", f_unit.denominator() == 1,
         "log2 f(q) = " + to_string(f_unit) + " * b^(q+1)");

    // M0 = K + sum_r delta_r^(1/2) with delta_1 = M_L = (L+N)^2 + L + N
    const Int ml = ipow(p.L + p.N, 2) + p.L + p.N;
    const Rat tail = tail_sum_upper(log2a * p.beta, p.b);
    const bool tail_ok = tail >= zero;
    const Rat m0 = p.K + sqrt_upper(ml) + (tail_ok ? tail : zero);
    push(rep, "m0-bound", tail_ok, "M0 <= " + to_string(m0) +
         " (M_L = " + ml.convert_to<std::string>() + ")");

    // 30 (7 Mbar M0 + 1) < min{a^(4 kappa - 2 b^2 beta), a^(1 - 2 b^2 beta - b gamma/8), a^(b kappa gamma/8 - 2 b^2 beta)}
    const Rat rhs1 = Rat(Int(30)) * (Rat(Int(7)) * p.Mbar * m0 + one);
    const Rat exps1[] = {
        Rat(Int(4)) * p.kappa - Rat(Int(2)) * b2 * p.beta,
        one - Rat(Int(2)) * b2 * p.beta - Rat(b) * gamma / Rat(Int(8)),
        Rat(b) * p.kappa * gamma / Rat(Int(8)) - Rat(Int(2)) * b2 * p.beta,
    };
    bool lin_ok = tail_ok;
    for (const auto& ex : exps1)
        lin_ok = lin_ok && ex > zero && pow2_exceeds(log2a * ex, rhs1) == Tri::yes;
    push(rep, "largeness-linear", lin_ok, "30(7 Mbar M0 + 1) = " + to_string(rhs1));

    // 30 (2 + 7 Mbar M0)^4 (1 + M0^2)^5 < min{a^(b - 28 - 4 b^2 beta), a^(b/2 - 10 - b beta)}
    const Rat rhs2 = Rat(Int(30)) * rat_pow(Rat(Int(2)) + Rat(Int(7)) * p.Mbar * m0, 4) *
                     rat_pow(one + m0 * m0, 5);
    const Rat exps2[] = {
        Rat(b) - Rat(Int(28)) - Rat(Int(4)) * b2 * p.beta,
        Rat(b, Int(2)) - Rat(Int(10)) - Rat(b) * p.beta,
    };
    bool quart_ok = tail_ok;
    for (const auto& ex : exps2)
        quart_ok = quart_ok && ex > zero && pow2_exceeds(log2a * ex, rhs2) == Tri::yes;
    push(rep, "largeness-quartic", quart_ok, "bound value approx 2^" +
         std::to_string(bit_length(ceil_of(rhs2))));

    return rep;
}

}  // namespace eulci::exact
