#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "eulci/field.hpp"
#include "eulci/grid.hpp"

// Ornstein-Uhlenbeck forcing: the stochastic convolution z solving
// dz + z dt = dB for divergence-free, spatially smooth noise, its spectral
// truncations, Monte Carlo moment estimation, the initial-condition
// decomposition, and pathwise stopping times.
namespace eulci::noise {

// Diagonal covariance over Fourier modes: each divergence-free mode of
// wavevector k gets amplitude g(k) = c0 |k|^(-(3+2 kappa)/2 - extra_decay).
// extra_decay = 1 (default) keeps the trace sum convergent with a margin;
// extra_decay = 0 sits at the critical decay where the sup-norm spectral
// tail scales like f^(-kappa).
struct CovarianceSpec {
    double kappa = 0.5;
    double c0 = 1.0;
    int k_max = 4;
    double extra_decay = 1.0;

    double amplitude(const Vec3i& k) const;  // g(k); zero at k = 0 and |k| > k_max
    // sum over 0 < |k| <= k_max of 2 |k|^(3+2 kappa) g(k)^2 (two modes per k)
    double trace() const;
};

// Canonical mode list: one representative per +-k pair (lexicographically
// positive), each with a deterministic orthonormal tangent frame (e1, e2)
// spanning the divergence-free directions and the covariance amplitude.
struct ModeSet {
    std::vector<Vec3i> k;
    std::vector<Vec3d> e1, e2;
    std::vector<double> g;

    std::size_t size() const { return k.size(); }
    static ModeSet build(const CovarianceSpec& cov);
};

// Deterministic standard normals: Box-Muller pairs over explicitly mapped
// 53-bit uniforms, so streams are reproducible independent of the standard
// library's distribution internals.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}
    void pair(double& a, double& b);

  private:
    std::mt19937_64 eng_;
};

// Markov state of the per-mode OU system: two complex amplitudes per
// canonical mode plus the generator.  Copies are cheap (the mode table is
// shared), which is what checkpointed lazy regeneration relies on.
struct OuState {
    std::shared_ptr<const ModeSet> modes;
    std::vector<cplx> zhat;  // [2*m], [2*m+1] for mode m
    GaussianStream rng;
    double t = 0.0;

    // stationary: zhat ~ N(0, g^2/2) per real component; otherwise zero
    static OuState initial(std::shared_ptr<const ModeSet> modes, std::uint64_t seed,
                           bool stationary);
    // one exact update zhat <- e^(-dt) zhat + g eta sqrt((1 - e^(-2dt))/2)
    void advance(double dt);
    // divergence-free mean-zero vector field holding the current state
    SpectralField synthesize(const Grid3& grid) const;
};

enum class InitKind { stationary, zero, field };

struct NoisePath {
    Grid3 grid;
    TimeGrid tg;
    std::vector<SpectralField> z;  // tg.steps + 1 snapshots
    std::uint64_t seed = 0;
    CovarianceSpec cov;
    InitKind init = InitKind::stationary;

    const SpectralField& at_tick(long j) const { return z.at(std::size_t(j)); }
};

// Materialize a path on [0, tg.t_end()].  `field` initialization projects
// init_field onto the covariance's mode set.
NoisePath sample_path(const CovarianceSpec& cov, const Grid3& grid, const TimeGrid& tg,
                      std::uint64_t seed, InitKind init = InitKind::stationary,
                      const SpectralField* init_field = nullptr);

// Zero all modes with |k| > f_q in every snapshot.  Idempotent;
// truncating twice equals truncating at the smaller cut.
NoisePath truncate_modes(const NoisePath& path, int f_q);

// z(t) = e^(-t) u0 + Z(t); exact equality z(0) = u0 at the first tick.
// Z must be sampled with zero initial state; u0 must be divergence-free and
// mean-zero on the same grid.
NoisePath with_initial_condition(const SpectralField& u0, const NoisePath& Z);

struct MomentEstimate {
    std::string norm_name;
    double p = 2.0;
    double value = 0.0;
    double stderr_ = 0.0;
    int n_samples = 0;
};

// Monte Carlo moments over independent replicas.  Norm names:
//   "C0"   sup-in-space norm, window flavor: sup_t E[ sup_{s in [t,t+1]} |z(s)|^p ]
//   "L2"   L2 norm, window flavor as above
//   "H"    Sobolev H^(3/2+kappa) norm, window flavor as above
//   "L2@t" L2 norm, instantaneous flavor: sup_t E[ |z(t)|^p ]
//   "CtH"  whole-window time-Hoelder norm of the H^(3/2+kappa) values with
//          exponent 1/2 - delta (sup part plus seminorm)
// Requires tg.t_end() >= 1 for the window flavors.
std::vector<MomentEstimate> estimate_moments(const CovarianceSpec& cov, const Grid3& grid,
                                             const TimeGrid& tg,
                                             const std::vector<std::string>& norm_names,
                                             const std::vector<double>& p_list, int n_samples,
                                             std::uint64_t seed, double delta = 1.0 / 24.0);

// Largest value^(1/p) / sqrt(p-1) over the estimates with p > 1: the
// measured stand-in for the Gaussian-moment growth constant.
double empirical_L(const std::vector<MomentEstimate>& moments);

// First grid time at which the running C_t^(1/2-delta) H^(3/2+kappa) norm
// of Z reaches L / C_S, capped at L.  The running norm uses all grid-pair
// quotients with lag <= 1 time unit plus the running sup.  Requires
// delta in (0, 1/12), a zero-initial path covering [0, L].
double stopping_time(const NoisePath& Z, long L, double C_S, double delta);

// Fitted log-log slope of the replica-averaged sup-norm tail
// E || z - P_{<= f} z ||_{C0} against f, over the given cuts.  With the
// critical spectrum (extra_decay = 0) the slope approaches -kappa.
double tail_decay_fit(const CovarianceSpec& cov, const Grid3& grid,
                      const std::vector<int>& f_list, int replicas, std::uint64_t seed);

}  // namespace eulci::noise
