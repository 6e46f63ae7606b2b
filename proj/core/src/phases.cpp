#include "eulci/phases.hpp"

#include <cmath>

namespace eulci::phases {

namespace {

double ramp(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// C-infinity monotone step: 0 at u <= 0, 1 at u >= 1.
double smoothstep(double u) {
    const double a = ramp(u);
    const double b = ramp(1.0 - u);
    return a / (a + b);
}

long nearest_int(double x) { return std::lround(x); }

}  // namespace

PhaseSystem::PhaseSystem(double c1_in, double c2_in, double mu_in) {
    const double floor_c = std::sqrt(3.0) / 2.0;
    if (!(floor_c < c1_in && c1_in < c2_in && c2_in < 1.0))
        throw precondition_error("phase system: need sqrt(3)/2 < c1 < c2 < 1");
    if (!(mu_in > 0.0)) throw precondition_error("phase system: mu must be positive");
    c1 = c1_in;
    c2 = c2_in;
    mu = mu_in;
}

int PhaseSystem::class_of(const Vec3i& l) {
    const int bx = ((l.x % 2) + 2) % 2;
    const int by = ((l.y % 2) + 2) % 2;
    const int bz = ((l.z % 2) + 2) % 2;
    return bx + 2 * by + 4 * bz;
}

double bump(const PhaseSystem& ps, double r) {
    if (r <= ps.c1) return 1.0;
    if (r >= ps.c2) return 0.0;
    return smoothstep((ps.c2 - r) / (ps.c2 - ps.c1));
}

namespace {

// phi(y - k) over the 27 cells nearest to y; support radius < 1 makes the
// neighborhood exhaustive.
double psi_at(const PhaseSystem& ps, const Vec3d& y) {
    const long cx = nearest_int(y.x), cy = nearest_int(y.y), cz = nearest_int(y.z);
    double acc = 0.0;
    for (long dx = -1; dx <= 1; ++dx)
        for (long dy = -1; dy <= 1; ++dy)
            for (long dz = -1; dz <= 1; ++dz) {
                const double rx = y.x - double(cx + dx);
                const double ry = y.y - double(cy + dy);
                const double rz = y.z - double(cz + dz);
                const double b = bump(ps, std::sqrt(rx * rx + ry * ry + rz * rz));
                acc += b * b;
            }
    return acc;
}

}  // namespace

double alpha(const PhaseSystem& ps, const Vec3i& k, const Vec3d& y) {
    const double rx = y.x - double(k.x);
    const double ry = y.y - double(k.y);
    const double rz = y.z - double(k.z);
    const double b = bump(ps, std::sqrt(rx * rx + ry * ry + rz * rz));
    if (b == 0.0) return 0.0;
    return b / std::sqrt(psi_at(ps, y));
}

PhasePointEval eval_point(const PhaseSystem& ps, const Vec3d& y) {
    PhasePointEval out;
    out.present.fill(false);
    out.weight.fill(0.0);
    const Vec3d z{ps.mu * y.x, ps.mu * y.y, ps.mu * y.z};
    const long cx = nearest_int(z.x), cy = nearest_int(z.y), cz = nearest_int(z.z);
    const double inv_sqrt_psi = 1.0 / std::sqrt(psi_at(ps, z));
    for (long dx = -1; dx <= 1; ++dx)
        for (long dy = -1; dy <= 1; ++dy)
            for (long dz = -1; dz <= 1; ++dz) {
                const Vec3i l{int(cx + dx), int(cy + dy), int(cz + dz)};
                const double rx = z.x - double(l.x);
                const double ry = z.y - double(l.y);
                const double rz = z.z - double(l.z);
                const double b = bump(ps, std::sqrt(rx * rx + ry * ry + rz * rz));
                if (b == 0.0) continue;
                const int j = PhaseSystem::class_of(l);
                if (out.present[std::size_t(j)])
                    throw construction_error(
                        "phase evaluation: two cells of one class overlap");
                out.present[std::size_t(j)] = true;
                out.cell[std::size_t(j)] = l;
                out.weight[std::size_t(j)] = b * inv_sqrt_psi;
            }
    return out;
}

cplx phi_kj(const PhaseSystem& ps, const Vec3i& k, int j, double tau, const Vec3d& y) {
    if (j < 0 || j >= 8) throw precondition_error("phi_kj: class index out of range");
    const PhasePointEval ev = eval_point(ps, y);
    if (!ev.present[std::size_t(j)]) return cplx(0, 0);
    const Vec3i& l = ev.cell[std::size_t(j)];
    const double freq = (double(k.x) * double(l.x) + double(k.y) * double(l.y) +
                         double(k.z) * double(l.z)) /
                        ps.mu;
    return ev.weight[std::size_t(j)] * std::exp(cplx(0, -freq * tau));
}

cplx phi_kj_dtau(const PhaseSystem& ps, const Vec3i& k, int j, double tau, const Vec3d& y) {
    if (j < 0 || j >= 8) throw precondition_error("phi_kj_dtau: class index out of range");
    const PhasePointEval ev = eval_point(ps, y);
    if (!ev.present[std::size_t(j)]) return cplx(0, 0);
    const Vec3i& l = ev.cell[std::size_t(j)];
    const double freq = (double(k.x) * double(l.x) + double(k.y) * double(l.y) +
                         double(k.z) * double(l.z)) /
                        ps.mu;
    return ev.weight[std::size_t(j)] * cplx(0, -freq) * std::exp(cplx(0, -freq * tau));
}

cplx material_phase_defect(const PhaseSystem& ps, const Vec3i& k, int j, double tau,
                           const Vec3d& y) {
    if (j < 0 || j >= 8) throw precondition_error("material_phase_defect: class index");
    const PhasePointEval ev = eval_point(ps, y);
    if (!ev.present[std::size_t(j)])
        throw domain_error("material_phase_defect: no contributing cell at this point");
    const cplx phi = phi_kj(ps, k, j, tau, y);
    const cplx dtau = phi_kj_dtau(ps, k, j, tau, y);
    const double ky = double(k.x) * y.x + double(k.y) * y.y + double(k.z) * y.z;
    return dtau + cplx(0, ky) * phi;
}

}  // namespace eulci::phases
