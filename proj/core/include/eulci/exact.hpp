#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "eulci/util.hpp"

// Exact rational verification of the parameter inequality systems behind the
// iteration schedules.  Every comparison is decided on arbitrary-precision
// rationals; doubles enter only through their exact dyadic representation.
namespace eulci::exact {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

// Exact value of a finite double (doubles are dyadic rationals).
Rat rat_of_double(double x);

// Smallest L >= 0 with v < 2^L.  Requires v >= 0.
long bit_length(const Int& v);

double to_double(const Rat& r);
std::string to_string(const Rat& r);

enum class Tri { yes, no, unknown };

// Decides whether 2^e > K for rational e and rational K > 0.  Uses exact
// exponentiation while the integer blow-up stays small and falls back to
// bit-length bounds (K < 2^bitlen(ceil K), K >= 2^(bitlen(floor K)-1)),
// which is what makes astronomically scaled comparisons tractable.
Tri pow2_exceeds(const Rat& e, const Rat& K);

struct Check {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct Report {
    std::vector<Check> checks;
    bool all_hold() const;
    const Check& find(const std::string& name) const;  // throws if absent
    std::string summary() const;                        // one line per check
};

// Inequality system for the stationary scheme at growth exponent b >= 62,
// carrier-fraction exponent gamma = 1/(4b), base frequency a = 2^(32 b j).
struct StationaryExactParams {
    long b = 62;
    Rat beta;       // regularity budget, 0 < beta < min{kappa/(72 b^3), 1/(6 b^3)}
    Rat kappa;      // noise smoothness margin, > 0
    long j = 1;     // a = 2^(32 b j)
    Int L = Int(1); // moment constant entering the largeness condition
};

Report validate_stationary_exact(const StationaryExactParams& p);

// Smallest j for which the largeness conditions of the stationary system are
// certified by the bit-length criterion at orders n = 1..64 plus the
// increment argument for n > 64.
long suggest_j_stationary(const StationaryExactParams& p);

// Inequality system for the time-zero scheme at growth exponent b >= 30,
// inner exponent m < b, gamma = 1/b, base frequency a = 2^(8 b j).
struct CauchyExactParams {
    long b = 30;
    long m = 10;
    Rat beta;
    Rat kappa;
    long j = 1;
    Rat K = Rat(Int(1));    // pumped energy increment
    Rat Mbar = Rat(Int(0)); // wave-system constant upper bound (required > 1)
    Int L = Int(1);         // path bound constant
    Int N = Int(1);         // initial-condition bound constant
};

Report validate_cauchy_exact(const CauchyExactParams& p);

// Admissible Holder-exponent windows as exact fractions.
Rat theta_window_stationary(const Rat& kappa);             // min{kappa/(73*62^3), 1/(7*62^3)}
Rat theta_window_cauchy(const Rat& kappa, long p_moment);  // min{kappa/(12*30^3 p), 1/(3*30^3 p)}
Rat theta_window_accumulate(const Rat& beta, long p_moment, long b);  // min{2 beta/3, 4 beta/(3 p b)}

// Upper edges of the beta windows.
Rat beta_window_stationary(const Rat& kappa, long b);  // min{kappa/(72 b^3), 1/(6 b^3)}
Rat beta_window_cauchy(const Rat& kappa, long b);      // min{kappa/(16 b^2), 1/(4 b^2)}

// Rational upper bound on sqrt(x) for integer x >= 0, tight at squares.
Rat sqrt_upper(const Int& x);

}  // namespace eulci::exact
