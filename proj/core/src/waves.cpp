#include "eulci/waves.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eulci::waves {

namespace {

bool lex_positive(const Vec3i& k) {
    return k.x > 0 || (k.x == 0 && (k.y > 0 || (k.y == 0 && k.z > 0)));
}

bool lex_less(const Vec3i& a, const Vec3i& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

Vec3i negate(const Vec3i& k) { return {-k.x, -k.y, -k.z}; }

// Stable tangent frame: A is orthogonal to k with |A| = 1/sqrt(2), shared by
// the +- pair (computed from the lexicographically positive representative).
Vec3d frame_a(const Vec3i& k_in) {
    const Vec3i k = lex_positive(k_in) ? k_in : negate(k_in);
    const int ax = std::abs(k.x), ay = std::abs(k.y), az = std::abs(k.z);
    Vec3d axis{1, 0, 0};
    if (ay < ax || az < ax) axis = (ay <= az) ? Vec3d{0, 1, 0} : Vec3d{0, 0, 1};
    const Vec3d u = to_vec3d(k).cross(axis).normalized();
    return {u.x / std::sqrt(2.0), u.y / std::sqrt(2.0), u.z / std::sqrt(2.0)};
}

std::array<cplx, 3> make_b(const Vec3i& k, const Vec3d& a) {
    const Vec3d khat = to_vec3d(k).normalized();
    const Vec3d c = khat.cross(a);
    return {cplx(a.x, c.x), cplx(a.y, c.y), cplx(a.z, c.z)};
}

// Internal Frobenius-isometric coordinates for symmetric matrices:
// (S00, S11, S22, r2*S01, r2*S02, r2*S12) with r2 = sqrt(2).
using Vec6 = Eigen::Matrix<double, 6, 1>;

Vec6 vec_of_sym3(const Sym3& s) {
    const double r2 = std::sqrt(2.0);
    Vec6 v;
    v << s[0], s[3], s[5], r2 * s[1], r2 * s[2], r2 * s[4];
    return v;
}

Vec6 vec_of_projector(const Vec3i& k) {
    const Vec3d h = to_vec3d(k).normalized();
    const double r2 = std::sqrt(2.0);
    Vec6 v;
    v << 1.0 - h.x * h.x, 1.0 - h.y * h.y, 1.0 - h.z * h.z, -r2 * h.x * h.y,
        -r2 * h.x * h.z, -r2 * h.y * h.z;
    return v;
}

FamilySolver make_solver(const std::vector<Vec3i>& reps, int family_index) {
    const int m = int(reps.size());
    Eigen::MatrixXd G(6, m);
    for (int p = 0; p < m; ++p) G.col(p) = vec_of_projector(reps[std::size_t(p)]);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double sigma_min = sv(sv.size() - 1);
    if (sv.size() < 6 || sigma_min < 1e-8)
        throw construction_error("wave family " + std::to_string(family_index) +
                                 ": projector span is rank-deficient");

    Eigen::MatrixXd pinv = svd.matrixV() * sv.cwiseInverse().asDiagonal() *
                           svd.matrixU().transpose();  // m x 6
    Vec6 id_v;
    id_v << 1, 1, 1, 0, 0, 0;
    const Eigen::VectorXd c_id = pinv * id_v;
    if ((G * c_id - id_v).norm() > 1e-10)
        throw construction_error("wave family " + std::to_string(family_index) +
                                 ": identity is not reproduced by the span");

    FamilySolver fs;
    fs.reps = reps;
    fs.sigma_min = sigma_min;
    fs.cond = sv(0) / sigma_min;
    fs.c_id.resize(std::size_t(m));
    fs.pinv_rows.resize(std::size_t(m));
    double r0 = std::numeric_limits<double>::infinity();
    for (int p = 0; p < m; ++p) {
        const double c = c_id(p);
        if (c <= 0.0)
            throw construction_error("wave family " + std::to_string(family_index) +
                                     ": nonpositive coefficient at the identity");
        fs.c_id[std::size_t(p)] = c;
        double row_norm_sq = 0.0;
        for (int i = 0; i < 6; ++i) {
            fs.pinv_rows[std::size_t(p)][std::size_t(i)] = pinv(p, i);
            row_norm_sq += pinv(p, i) * pinv(p, i);
        }
        const double row_norm = std::sqrt(row_norm_sq);
        if (row_norm > 1e-15) r0 = std::min(r0, c / row_norm);
    }
    fs.r0_local = 0.9 * r0;
    return fs;
}

double solver_row_norm(const FamilySolver& fs, std::size_t p) {
    double s = 0.0;
    for (double x : fs.pinv_rows[p]) s += x * x;
    return std::sqrt(s);
}

// Coefficient bound per (sum over derivative orders 0..3 of the C^l norms of
// gamma = sqrt(affine) over the ball of radius r0): the affine coefficient
// attains its extremes on the boundary, so the bound is closed-form.
double measure_m(const WaveFamilies& fam) {
    double m_max = 0.0;
    for (const auto& fs : fam.solvers) {
        for (std::size_t p = 0; p < fs.reps.size(); ++p) {
            const double row = solver_row_norm(fs, p);
            const double c_lo = fs.c_id[p] - fam.r0 * row;
            const double c_hi = fs.c_id[p] + fam.r0 * row;
            const double g_lo = std::sqrt(c_lo);
            double m = std::sqrt(c_hi);
            m += row / (2.0 * g_lo);
            m += row * row / (4.0 * g_lo * g_lo * g_lo);
            m += 3.0 * row * row * row / (8.0 * std::pow(g_lo, 5));
            m_max = std::max(m_max, m);
        }
    }
    return m_max;
}

void finish_families(WaveFamilies& fam) {
    fam.r0 = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 8; ++j) {
        auto& list = fam.families[std::size_t(j)];
        list.clear();
        for (const Vec3i& k : fam.solvers[std::size_t(j)].reps) {
            list.push_back(k);
            list.push_back(negate(k));
        }
        std::sort(list.begin(), list.end(), lex_less);
        if (!list.empty()) fam.r0 = std::min(fam.r0, fam.solvers[std::size_t(j)].r0_local);
    }
    if (!std::isfinite(fam.r0))
        throw construction_error("wave families: no nonempty family constructed");
    fam.M = measure_m(fam);
}

}  // namespace

const BeltramiEntry& BeltramiBasis::at(const Vec3i& k) const {
    for (const auto& e : entries)
        if (e.k.x == k.x && e.k.y == k.y && e.k.z == k.z) return e;
    throw domain_error("beltrami basis: wave vector not on the sphere");
}

bool BeltramiBasis::contains(const Vec3i& k) const {
    return k.norm2() == lambda0_sq;
}

BeltramiBasis build_basis_sq(int lambda0_sq) {
    if (lambda0_sq < 1) throw domain_error("beltrami basis: sphere radius must be positive");
    BeltramiBasis b;
    b.lambda0_sq = lambda0_sq;
    b.lambda0 = std::sqrt(double(lambda0_sq));
    const int r = int(std::floor(std::sqrt(double(lambda0_sq)) + 0.5)) + 1;
    for (int kx = -r; kx <= r; ++kx)
        for (int ky = -r; ky <= r; ++ky)
            for (int kz = -r; kz <= r; ++kz) {
                const Vec3i k{kx, ky, kz};
                if (k.norm2() != lambda0_sq) continue;
                const Vec3d a = frame_a(k);
                b.entries.push_back({k, a, make_b(k, a)});
            }
    if (b.entries.empty())
        throw domain_error("beltrami basis: empty sphere at |k|^2 = " +
                           std::to_string(lambda0_sq));
    std::sort(b.entries.begin(), b.entries.end(),
              [](const BeltramiEntry& x, const BeltramiEntry& y) { return lex_less(x.k, y.k); });
    return b;
}

BeltramiBasis build_basis(int lambda0) {
    if (lambda0 < 1) throw domain_error("beltrami basis: radius must be a positive integer");
    return build_basis_sq(lambda0 * lambda0);
}

SpectralField wave_field(const BeltramiBasis& basis,
                         const std::vector<std::pair<Vec3i, cplx>>& coeffs,
                         const Grid3& grid) {
    SpectralField w(grid, FieldKind::vector3);
    for (const auto& [k, a] : coeffs) {
        if (!basis.contains(k)) throw domain_error("wave_field: coefficient off the sphere");
        if (!grid.representable(k))
            throw precondition_error("wave_field: wave vector exceeds the grid band");
        bool partner_found = false;
        for (const auto& [k2, a2] : coeffs)
            if (k2.x == -k.x && k2.y == -k.y && k2.z == -k.z) {
                if (std::abs(a2 - std::conj(a)) > 1e-14 * std::max(1.0, std::abs(a)))
                    throw precondition_error(
                        "wave_field: coefficients are not conjugate-symmetric");
                partner_found = true;
            }
        if (!partner_found)
            throw precondition_error("wave_field: missing conjugate partner coefficient");
        const auto& e = basis.at(k);
        for (int comp = 0; comp < 3; ++comp) {
            cplx& slot = w.at(comp, k);
            if (slot != cplx(0, 0))
                throw precondition_error("wave_field: duplicate coefficient for one vector");
            slot = a * e.B[std::size_t(comp)];
        }
    }
    return w;
}

double sym3_dist(const Sym3& a, const Sym3& b) {
    Sym3 d;
    for (int i = 0; i < 6; ++i) d[std::size_t(i)] = a[std::size_t(i)] - b[std::size_t(i)];
    return vec_of_sym3(d).norm();
}

WaveFamilies build_families() {
    // First sphere in the |k|^2 = 5^j ladder carrying at least 7 pairs per family.
    int sphere = 1;
    BeltramiBasis basis = build_basis_sq(sphere);
    while (basis.entries.size() < 2 * 8 * 7) {
        sphere *= 5;
        basis = build_basis_sq(sphere);
    }

    std::vector<Vec3i> pool;
    for (const auto& e : basis.entries)
        if (lex_positive(e.k)) pool.push_back(e.k);
    const std::size_t per_family = pool.size() / 8;

    // Round-robin greedy: each family in turn takes the remaining pair that
    // maximizes the smallest singular value of its projector matrix.
    std::array<std::vector<Vec3i>, 8> picked;
    std::vector<bool> used(pool.size(), false);
    for (std::size_t round = 0; round < per_family; ++round) {
        for (int j = 0; j < 8; ++j) {
            auto& mine = picked[std::size_t(j)];
            const int cur = int(mine.size());
            Eigen::MatrixXd G(6, cur + 1);
            for (int p = 0; p < cur; ++p) G.col(p) = vec_of_projector(mine[std::size_t(p)]);
            double best = -1.0;
            std::size_t best_i = pool.size();
            for (std::size_t i = 0; i < pool.size(); ++i) {
                if (used[i]) continue;
                G.col(cur) = vec_of_projector(pool[i]);
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
                const auto& sv = svd.singularValues();
                const double smin = sv(sv.size() - 1);
                if (smin > best + 1e-12) {
                    best = smin;
                    best_i = i;
                }
            }
            if (best_i == pool.size())
                throw construction_error("wave families: candidate pool exhausted");
            used[best_i] = true;
            mine.push_back(pool[best_i]);
        }
    }

    WaveFamilies fam;
    fam.basis = std::move(basis);
    for (int j = 0; j < 8; ++j)
        fam.solvers[std::size_t(j)] = make_solver(picked[std::size_t(j)], j);
    finish_families(fam);
    return fam;
}

WaveFamilies build_families_desk() {
    WaveFamilies fam;
    fam.basis = build_basis_sq(2);
    std::vector<Vec3i> reps;
    for (const auto& e : fam.basis.entries)
        if (lex_positive(e.k)) reps.push_back(e.k);
    fam.solvers[0] = make_solver(reps, 0);
    finish_families(fam);
    return fam;
}

void gamma_eval_into(const WaveFamilies& fam, int j, const Sym3& R, double* out) {
    if (j < 0 || j >= 8) throw domain_error("gamma_eval: family index out of range");
    const FamilySolver& fs = fam.solvers[std::size_t(j)];
    if (fs.reps.empty()) throw domain_error("gamma_eval: family is empty");
    Sym3 d = R;
    d[0] -= 1.0;
    d[3] -= 1.0;
    d[5] -= 1.0;
    const Vec6 dv = vec_of_sym3(d);
    if (dv.norm() >= fam.r0)
        throw domain_error("gamma_eval: matrix outside the validity ball");
    for (std::size_t p = 0; p < fs.reps.size(); ++p) {
        double c = fs.c_id[p];
        for (int i = 0; i < 6; ++i) c += fs.pinv_rows[p][std::size_t(i)] * dv(i);
        if (c <= 0.0)
            throw domain_error("gamma_eval: nonpositive squared coefficient");
        out[p] = std::sqrt(c);
    }
}

std::vector<std::pair<Vec3i, double>> gamma_eval(const WaveFamilies& fam, int j,
                                                 const Sym3& R) {
    if (j < 0 || j >= 8) throw domain_error("gamma_eval: family index out of range");
    const FamilySolver& fs = fam.solvers[std::size_t(j)];
    std::vector<double> g(fs.reps.size());
    gamma_eval_into(fam, j, R, g.data());
    std::vector<std::pair<Vec3i, double>> out;
    out.reserve(2 * fs.reps.size());
    for (std::size_t p = 0; p < fs.reps.size(); ++p) {
        out.emplace_back(fs.reps[p], g[p]);
        out.emplace_back(negate(fs.reps[p]), g[p]);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
    return out;
}

std::string families_report(const WaveFamilies& fam) {
    std::ostringstream os;
    os.precision(15);
    os << "wave system: |k|^2 = " << fam.basis.lambda0_sq << ", radius " << fam.basis.lambda0
       << "\n";
    os << "r0 = " << fam.r0 << "\nM = " << fam.M << "\n";
    for (int j = 0; j < 8; ++j) {
        const auto& fs = fam.solvers[std::size_t(j)];
        os << "family " << j << ": " << fs.reps.size() << " pairs";
        if (fs.reps.empty()) {
            os << " (empty)\n";
            continue;
        }
        os << ", sigma_min = " << fs.sigma_min << ", cond = " << fs.cond
           << ", r0_local = " << fs.r0_local << "\n  vectors:";
        for (const auto& k : fam.families[std::size_t(j)])
            os << " (" << k.x << "," << k.y << "," << k.z << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace eulci::waves
