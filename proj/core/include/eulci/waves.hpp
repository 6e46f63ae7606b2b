#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "eulci/field.hpp"
#include "eulci/util.hpp"

namespace eulci::waves {

// One lattice direction on the carrier sphere together with its real frame
// vector A and the complex curl eigenvector B = A + i k^ x A.
struct BeltramiEntry {
    Vec3i k;
    Vec3d A;
    std::array<cplx, 3> B;
};

// All waves on one integer sphere |k|^2 = lambda0_sq.  The radius lambda0 is
// the curl eigenvalue; it is an integer only for perfect-square spheres.
struct BeltramiBasis {
    int lambda0_sq = 0;
    double lambda0 = 0.0;
    std::vector<BeltramiEntry> entries;  // fixed order: lexicographic in k

    const BeltramiEntry& at(const Vec3i& k) const;  // throws domain_error if absent
    bool contains(const Vec3i& k) const;
};

// Sphere of integer radius lambda0 (|k|^2 = lambda0^2), never empty.
BeltramiBasis build_basis(int lambda0);

// Sphere with integer |k|^2 = lambda0_sq; throws domain_error when the sphere
// is empty (lambda0_sq of the form 4^a(8b+7), or nonpositive).
BeltramiBasis build_basis_sq(int lambda0_sq);

// W(x) = sum a_k B_k e^{ik.x} for conjugate-symmetric coefficients given on a
// subset of basis directions (absent directions carry zero).  The result is a
// real divergence-free curl eigenfield at eigenvalue lambda0.
SpectralField wave_field(const BeltramiBasis& basis,
                         const std::vector<std::pair<Vec3i, cplx>>& coeffs,
                         const Grid3& grid);

// Symmetric 3x3 matrix in the symtensor component order (xx, xy, xz, yy, yz, zz).
using Sym3 = std::array<double, 6>;

inline constexpr Sym3 sym3_identity() { return {1, 0, 0, 1, 0, 1}; }

double sym3_dist(const Sym3& a, const Sym3& b);  // Frobenius distance

// Coefficient solver for one wave family: gamma^2 is affine in R, realized by
// the minimum-norm solution of R = sum_p c_p (Id - k^ o k^) over +- pairs.
struct FamilySolver {
    std::vector<Vec3i> reps;            // one representative per +- pair
    std::vector<double> c_id;           // c_p at R = Id, all positive
    std::vector<std::array<double, 6>> pinv_rows;  // row p maps vec(R - Id) to c_p - c_p(Id)
    double sigma_min = 0.0;             // smallest singular value of the pair matrix
    double cond = 0.0;                  // sigma_max / sigma_min
    double r0_local = 0.0;              // positivity radius certified by this family
};

// Eight pairwise-disjoint wave families on one sphere with their coefficient
// solvers.  Families may be empty in reduced systems; gamma_eval rejects them.
struct WaveFamilies {
    BeltramiBasis basis;
    std::array<std::vector<Vec3i>, 8> families;  // full +- closed vector lists
    std::array<FamilySolver, 8> solvers;
    double r0 = 0.0;  // min over nonempty families of the certified radius
    double M = 0.0;   // sum-over-derivative-orders coefficient bound, measured
};

// Full eight-family system on the first candidate sphere holding at least
// seven +- pairs per family; deterministic greedy assignment maximizing the
// smallest singular value of each family.  Throws construction_error if any
// family fails to span or yields a nonpositive coefficient at Id.
WaveFamilies build_families();

// Reduced system for small grids: the twelve |k|^2 = 2 waves as one family
// (index 0), the other seven empty.  Same certification path as above.
WaveFamilies build_families_desk();

// gamma_k(R) for every k in family j (values shared within +- pairs).
// Preconditions: family nonempty, R symmetric with |R - Id|_F < r0.  A
// nonpositive squared coefficient raises domain_error rather than clamping.
std::vector<std::pair<Vec3i, double>> gamma_eval(const WaveFamilies& fam, int j,
                                                 const Sym3& R);

// Fast path: writes gamma per representative (order solvers[j].reps) without
// allocation; same validation as gamma_eval.
void gamma_eval_into(const WaveFamilies& fam, int j, const Sym3& R, double* out);

// Structured-text report: per-family vectors, conditioning, r0 and M.
std::string families_report(const WaveFamilies& fam);

}  // namespace eulci::waves
