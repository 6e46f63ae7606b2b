#pragma once

#include <array>

#include "eulci/util.hpp"

namespace eulci::phases {

// Transport phase functions built from a lattice partition of unity: a radial
// C-infinity bump, its translates phi_k(y) = phi(y - k) over Z^3, the
// normalizer psi = sum phi_k^2, and per-parity-class phase sums.  Class index
// runs 0..7 over Z^3/(2Z)^3.
struct PhaseSystem {
    double c1 = 0.90;  // bump is exactly 1 inside radius c1
    double c2 = 0.95;  // bump is exactly 0 outside radius c2
    double mu = 1.0;   // transport frequency (the active carrier level)

    PhaseSystem() = default;
    PhaseSystem(double c1_in, double c2_in, double mu_in);

    static int class_of(const Vec3i& l);
};

// Radial profile: 1 on [0, c1], 0 on [c2, inf), smooth monotone join between.
double bump(const PhaseSystem& ps, double r);

// alpha_k(y) = phi(y - k) / sqrt(psi(y)) in unscaled lattice coordinates.
double alpha(const PhaseSystem& ps, const Vec3i& k, const Vec3d& y);

// Per-class contribution of the scaled lattice at one point: for each class j
// the unique cell l with alpha_l(mu y) != 0, if any.  weight = alpha_l(mu y);
// classes with no contributing cell carry weight 0.
struct PhasePointEval {
    std::array<bool, 8> present;
    std::array<Vec3i, 8> cell;
    std::array<double, 8> weight;
};
PhasePointEval eval_point(const PhaseSystem& ps, const Vec3d& y);

// phi_k^(j)(tau, y) = sum over cells l of class j of alpha_l(mu y) e^{-i (k.l/mu) tau}.
cplx phi_kj(const PhaseSystem& ps, const Vec3i& k, int j, double tau, const Vec3d& y);

// Analytic tau derivative of phi_kj.
cplx phi_kj_dtau(const PhaseSystem& ps, const Vec3i& k, int j, double tau, const Vec3d& y);

// d_tau phi + i (k.y) phi, evaluated analytically.  Requires exactly one
// contributing cell of class j at y (throws domain_error on zero or two); in
// that region the value equals i k.(y - l/mu) phi, so its magnitude is at most
// |k|/mu times |phi|.
cplx material_phase_defect(const PhaseSystem& ps, const Vec3i& k, int j, double tau,
                           const Vec3d& y);

}  // namespace eulci::phases
