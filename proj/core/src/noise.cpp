#include "eulci/noise.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "eulci/norms.hpp"
#include "eulci/ops.hpp"
#include "eulci/stationary_phase.hpp"

namespace eulci::noise {

double CovarianceSpec::amplitude(const Vec3i& k) const {
    const long long n2 = k.norm2();
    if (n2 == 0 || n2 > (long long)k_max * k_max) return 0.0;
    const double exponent = -(3.0 + 2.0 * kappa) / 2.0 - extra_decay;
    return c0 * std::pow(std::sqrt(double(n2)), exponent);
}

double CovarianceSpec::trace() const {
    double acc = 0.0;
    for (int kx = -k_max; kx <= k_max; ++kx)
        for (int ky = -k_max; ky <= k_max; ++ky)
            for (int kz = -k_max; kz <= k_max; ++kz) {
                const Vec3i k{kx, ky, kz};
                const double g = amplitude(k);
                if (g == 0.0) continue;
                acc += 2.0 * std::pow(double(k.norm2()), (3.0 + 2.0 * kappa) / 2.0) * g * g;
            }
    return acc;
}

ModeSet ModeSet::build(const CovarianceSpec& cov) {
    if (cov.k_max < 1) throw precondition_error("ModeSet: k_max >= 1 required");
    ModeSet ms;
    for (int kx = -cov.k_max; kx <= cov.k_max; ++kx)
        for (int ky = -cov.k_max; ky <= cov.k_max; ++ky)
            for (int kz = -cov.k_max; kz <= cov.k_max; ++kz) {
                const Vec3i k{kx, ky, kz};
                if (k.norm2() == 0 || k.norm2() > (long long)cov.k_max * cov.k_max) continue;
                const bool canonical = kx > 0 || (kx == 0 && (ky > 0 || (ky == 0 && kz > 0)));
                if (!canonical) continue;
                // least-aligned axis gives a stable, never-degenerate frame
                int axis = 0;
                for (int i = 1; i < 3; ++i)
                    if (std::abs(k[i]) < std::abs(k[axis])) axis = i;
                Vec3d a{0, 0, 0};
                a[axis] = 1.0;
                const Vec3d kd = to_vec3d(k);
                const Vec3d u = kd.cross(a).normalized();
                const Vec3d v = kd.normalized().cross(u);
                ms.k.push_back(k);
                ms.e1.push_back(u);
                ms.e2.push_back(v);
                ms.g.push_back(cov.amplitude(k));
            }
    return ms;
}

void GaussianStream::pair(double& a, double& b) {
    const double u1 = double((eng_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = double(eng_() >> 11) * 0x1.0p-53;        // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    a = r * std::cos(TWO_PI * u2);
    b = r * std::sin(TWO_PI * u2);
}

OuState OuState::initial(std::shared_ptr<const ModeSet> modes, std::uint64_t seed,
                         bool stationary) {
    if (!modes) throw precondition_error("OuState: null mode set");
    OuState st{std::move(modes), {}, GaussianStream(seed), 0.0};
    st.zhat.assign(2 * st.modes->size(), cplx(0, 0));
    if (stationary) {
        for (std::size_t m = 0; m < st.modes->size(); ++m) {
            const double s = st.modes->g[m] / std::sqrt(2.0);
            for (int i = 0; i < 2; ++i) {
                double n1, n2;
                st.rng.pair(n1, n2);
                st.zhat[2 * m + i] = s * cplx(n1, n2);
            }
        }
    }
    return st;
}

void OuState::advance(double dt) {
    if (!(dt > 0.0)) throw precondition_error("OuState::advance: dt > 0 required");
    const double a = std::exp(-dt);
    const double s = std::sqrt((1.0 - a * a) / 2.0);
    for (std::size_t m = 0; m < modes->size(); ++m) {
        const double gs = modes->g[m] * s;
        for (int i = 0; i < 2; ++i) {
            double n1, n2;
            rng.pair(n1, n2);
            zhat[2 * m + i] = a * zhat[2 * m + i] + gs * cplx(n1, n2);
        }
    }
    t += dt;
}

SpectralField OuState::synthesize(const Grid3& grid) const {
    SpectralField f(grid, FieldKind::vector3);
    for (std::size_t m = 0; m < modes->size(); ++m) {
        const Vec3i& k = modes->k[m];
        if (!grid.representable(k) || !grid.representable(-k))
            throw precondition_error("OuState::synthesize: grid too small for mode set");
        const cplx z1 = zhat[2 * m], z2 = zhat[2 * m + 1];
        for (int comp = 0; comp < 3; ++comp) {
            const cplx val = z1 * modes->e1[m][comp] + z2 * modes->e2[m][comp];
            f.at(comp, k) = val;
            f.at(comp, -k) = std::conj(val);
        }
    }
    return f;
}

NoisePath sample_path(const CovarianceSpec& cov, const Grid3& grid, const TimeGrid& tg,
                      std::uint64_t seed, InitKind init, const SpectralField* init_field) {
    auto modes = std::make_shared<const ModeSet>(ModeSet::build(cov));
    OuState st = OuState::initial(modes, seed, init == InitKind::stationary);
    if (init == InitKind::field) {
        if (!init_field) throw precondition_error("sample_path: field init needs a field");
        for (std::size_t m = 0; m < modes->size(); ++m) {
            const Vec3i& k = modes->k[m];
            if (!init_field->grid.representable(k))
                throw precondition_error("sample_path: initial field grid too small");
            cplx z1(0, 0), z2(0, 0);
            for (int comp = 0; comp < 3; ++comp) {
                const cplx c = init_field->at(comp, k);
                z1 += c * modes->e1[m][comp];
                z2 += c * modes->e2[m][comp];
            }
            st.zhat[2 * m] = z1;
            st.zhat[2 * m + 1] = z2;
        }
    }
    NoisePath path;
    path.grid = grid;
    path.tg = tg;
    path.seed = seed;
    path.cov = cov;
    path.init = init;
    path.z.reserve(std::size_t(tg.steps) + 1);
    path.z.push_back(st.synthesize(grid));
    for (long j = 1; j <= tg.steps; ++j) {
        st.advance(tg.dt);
        path.z.push_back(st.synthesize(grid));
    }
    return path;
}

NoisePath truncate_modes(const NoisePath& path, int f_q) {
    if (f_q < 0 || f_q > path.cov.k_max)
        throw precondition_error("truncate_modes: need 0 <= f_q <= k_max");
    NoisePath out = path;
    for (auto& snap : out.z) truncate_ball(snap, double(f_q));
    return out;
}

NoisePath with_initial_condition(const SpectralField& u0, const NoisePath& Z) {
    if (Z.init != InitKind::zero)
        throw precondition_error("with_initial_condition: Z must be sampled with zero initial");
    if (!(u0.grid == Z.grid) || u0.kind != FieldKind::vector3)
        throw precondition_error("with_initial_condition: u0 must be a vector field on Z's grid");
    const double scale = 1.0 + spectral::l2_norm(u0);
    if (divergence_defect(u0) > 1e-9 * scale)
        throw precondition_error("with_initial_condition: u0 is not divergence-free");
    for (int comp = 0; comp < 3; ++comp)
        if (std::abs(u0.at(comp, {0, 0, 0})) > 1e-12 * scale)
            throw precondition_error("with_initial_condition: u0 must be mean-zero");
    NoisePath out = Z;
    out.init = InitKind::field;
    for (long j = 0; j <= Z.tg.steps; ++j) {
        const double decay = std::exp(-Z.tg.time(j));
        out.z[std::size_t(j)] += decay * u0;
    }
    return out;
}

namespace {

struct Welford {
    double sum = 0.0, sumsq = 0.0;
    long n = 0;
    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++n;
    }
    double mean() const { return n ? sum / double(n) : 0.0; }
    double stderr_of_mean() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double var = std::max(0.0, (sumsq - double(n) * m * m) / double(n - 1));
        return std::sqrt(var / double(n));
    }
};

// sliding max of width w over series x, output[t] = max(x[t..t+w])
std::vector<double> sliding_max(const std::vector<double>& x, long w) {
    const long n = long(x.size());
    std::vector<double> out;
    if (n - w <= 0) return out;
    out.resize(std::size_t(n - w));
    std::deque<long> dq;
    for (long i = 0; i < n; ++i) {
        while (!dq.empty() && x[std::size_t(dq.back())] <= x[std::size_t(i)]) dq.pop_back();
        dq.push_back(i);
        if (dq.front() < i - w) dq.pop_front();
        if (i >= w) out[std::size_t(i - w)] = x[std::size_t(dq.front())];
    }
    return out;
}

}  // namespace

std::vector<MomentEstimate> estimate_moments(const CovarianceSpec& cov, const Grid3& grid,
                                             const TimeGrid& tg,
                                             const std::vector<std::string>& norm_names,
                                             const std::vector<double>& p_list, int n_samples,
                                             std::uint64_t seed, double delta) {
    if (n_samples < 2) throw precondition_error("estimate_moments: n_samples >= 2 required");
    bool window_flavor = false;
    for (const auto& nm : norm_names)
        if (nm == "C0" || nm == "L2" || nm == "H") window_flavor = true;
    if (window_flavor && tg.t_end() < 1.0 - 1e-12)
        throw precondition_error("estimate_moments: window flavors need t_end >= 1");

    auto modes = std::make_shared<const ModeSet>(ModeSet::build(cov));
    const std::size_t M = modes->size();
    const double s_exp = 1.5 + cov.kappa;
    const double vol = TWO_PI * TWO_PI * TWO_PI;
    std::vector<double> w_l2(M), w_h(M);
    for (std::size_t m = 0; m < M; ++m) {
        const double k2 = double(modes->k[m].norm2());
        w_l2[m] = 2.0 * vol;
        w_h[m] = 2.0 * vol * std::pow(1.0 + k2, s_exp);
    }

    bool need_c0 = false, need_cth = false;
    for (const auto& nm : norm_names) {
        if (nm == "C0") need_c0 = true;
        if (nm == "CtH") need_cth = true;
    }

    const long J = tg.steps + 1;
    const long W = std::lround(1.0 / tg.dt);  // ticks per unit window
    const long lagmax = std::min(W, tg.steps);

    // accumulators: per (norm, p) and per window start where applicable
    struct Series {
        std::vector<Welford> per_t;  // window or instantaneous starts
        Welford whole;               // CtH
    };
    std::vector<std::vector<Series>> acc(norm_names.size(),
                                         std::vector<Series>(p_list.size()));

    std::vector<double> n_c0((std::size_t)J), n_l2((std::size_t)J), n_h((std::size_t)J);
    std::vector<std::vector<cplx>> coef;  // per tick, copy of zhat (for CtH)
    if (need_cth) coef.assign(std::size_t(J), {});

    for (int r = 0; r < n_samples; ++r) {
        OuState st = OuState::initial(modes, replica_seed(seed, std::uint64_t(r)), true);
        for (long j = 0; j < J; ++j) {
            if (j > 0) st.advance(tg.dt);
            double a_l2 = 0.0, a_h = 0.0;
            for (std::size_t m = 0; m < M; ++m) {
                const double mag =
                    std::norm(st.zhat[2 * m]) + std::norm(st.zhat[2 * m + 1]);
                a_l2 += w_l2[m] * mag;
                a_h += w_h[m] * mag;
            }
            n_l2[std::size_t(j)] = std::sqrt(a_l2);
            n_h[std::size_t(j)] = std::sqrt(a_h);
            if (need_c0) n_c0[std::size_t(j)] = spectral::sup_norm(st.synthesize(grid));
            if (need_cth) coef[std::size_t(j)] = st.zhat;
        }
        double cth_val = 0.0;
        if (need_cth) {
            // sup of H-values plus the lag-limited time-Hoelder seminorm
            for (long j = 0; j < J; ++j) cth_val = std::max(cth_val, n_h[std::size_t(j)]);
            for (long l = 1; l <= lagmax; ++l) {
                const double denom = std::pow(l * tg.dt, 0.5 - delta);
                for (long j = l; j < J; ++j) {
                    double d2 = 0.0;
                    for (std::size_t m = 0; m < M; ++m)
                        for (int i = 0; i < 2; ++i)
                            d2 += w_h[m] * std::norm(coef[std::size_t(j)][2 * m + i] -
                                                     coef[std::size_t(j - l)][2 * m + i]);
                    cth_val = std::max(cth_val, std::sqrt(d2) / denom);
                }
            }
        }
        for (std::size_t ni = 0; ni < norm_names.size(); ++ni) {
            const std::string& nm = norm_names[ni];
            const std::vector<double>* series = nullptr;
            bool window = false;
            if (nm == "C0") series = &n_c0, window = true;
            else if (nm == "L2") series = &n_l2, window = true;
            else if (nm == "H") series = &n_h, window = true;
            else if (nm == "L2@t") series = &n_l2;
            else if (nm == "CtH") series = nullptr;
            else throw precondition_error("estimate_moments: unknown norm " + nm);

            for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
                const double p = p_list[pi];
                Series& slot = acc[ni][pi];
                if (nm == "CtH") {
                    slot.whole.add(std::pow(cth_val, p));
                } else if (window) {
                    const std::vector<double> wmax = sliding_max(*series, W);
                    if (slot.per_t.empty()) slot.per_t.resize(wmax.size());
                    for (std::size_t t = 0; t < wmax.size(); ++t)
                        slot.per_t[t].add(std::pow(wmax[t], p));
                } else {
                    if (slot.per_t.empty()) slot.per_t.resize(series->size());
                    for (std::size_t t = 0; t < series->size(); ++t)
                        slot.per_t[t].add(std::pow((*series)[t], p));
                }
            }
        }
    }

    std::vector<MomentEstimate> out;
    for (std::size_t ni = 0; ni < norm_names.size(); ++ni)
        for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
            MomentEstimate e;
            e.norm_name = norm_names[ni];
            e.p = p_list[pi];
            e.n_samples = n_samples;
            const Series& slot = acc[ni][pi];
            if (norm_names[ni] == "CtH") {
                e.value = slot.whole.mean();
                e.stderr_ = slot.whole.stderr_of_mean();
            } else {
                std::size_t best = 0;
                for (std::size_t t = 1; t < slot.per_t.size(); ++t)
                    if (slot.per_t[t].mean() > slot.per_t[best].mean()) best = t;
                if (!slot.per_t.empty()) {
                    e.value = slot.per_t[best].mean();
                    e.stderr_ = slot.per_t[best].stderr_of_mean();
                }
            }
            out.push_back(e);
        }
    return out;
}

double empirical_L(const std::vector<MomentEstimate>& moments) {
    double best = 0.0;
    for (const auto& e : moments)
        if (e.p > 1.0 && e.value > 0.0)
            best = std::max(best, std::pow(e.value, 1.0 / e.p) / std::sqrt(e.p - 1.0));
    return best;
}

double stopping_time(const NoisePath& Z, long L, double C_S, double delta) {
    if (!(delta > 0.0 && delta < 1.0 / 12.0))
        throw precondition_error("stopping_time: delta in (0, 1/12) required");
    if (!(C_S > 0.0)) throw precondition_error("stopping_time: C_S > 0 required");
    if (L < 1) throw precondition_error("stopping_time: L >= 1 required");
    if (Z.tg.t_end() < double(L) - 1e-12)
        throw precondition_error("stopping_time: path must cover [0, L]");
    if (Z.init != InitKind::zero)
        throw precondition_error("stopping_time: defined for the zero-initial convolution");

    const ModeSet modes = ModeSet::build(Z.cov);
    const std::size_t M = modes.size();
    const double s_exp = 1.5 + Z.cov.kappa;
    const double vol = TWO_PI * TWO_PI * TWO_PI;
    std::vector<double> w_h(M);
    for (std::size_t m = 0; m < M; ++m)
        w_h[m] = 2.0 * vol * std::pow(1.0 + double(modes.k[m].norm2()), s_exp);

    const long Jend = Z.tg.nearest_tick(double(L));
    std::vector<std::vector<cplx>> coef(std::size_t(Jend) + 1,
                                        std::vector<cplx>(3 * M, cplx(0, 0)));
    for (long j = 0; j <= Jend; ++j) {
        const SpectralField& f = Z.at_tick(j);
        for (std::size_t m = 0; m < M; ++m)
            for (int comp = 0; comp < 3; ++comp)
                coef[std::size_t(j)][3 * m + comp] = f.at(comp, modes.k[m]);
    }
    auto h_between = [&](long a, long b) {
        double d2 = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            double mag = 0.0;
            for (int comp = 0; comp < 3; ++comp)
                mag += std::norm(coef[std::size_t(a)][3 * m + comp] -
                                 coef[std::size_t(b)][3 * m + comp]);
            d2 += w_h[m] * mag;
        }
        return std::sqrt(d2);
    };
    auto h_at = [&](long a) {
        double d2 = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            double mag = 0.0;
            for (int comp = 0; comp < 3; ++comp)
                mag += std::norm(coef[std::size_t(a)][3 * m + comp]);
            d2 += w_h[m] * mag;
        }
        return std::sqrt(d2);
    };

    const long lag1 = std::lround(1.0 / Z.tg.dt);
    const double threshold = double(L) / C_S;
    double runmax = 0.0;
    for (long j = 0; j <= Jend; ++j) {
        runmax = std::max(runmax, h_at(j));
        const long lmax = std::min(j, lag1);
        for (long l = 1; l <= lmax; ++l)
            runmax = std::max(runmax,
                              h_between(j, j - l) / std::pow(l * Z.tg.dt, 0.5 - delta));
        if (runmax >= threshold) return Z.tg.time(j);
    }
    return double(L);
}

double tail_decay_fit(const CovarianceSpec& cov, const Grid3& grid,
                      const std::vector<int>& f_list, int replicas, std::uint64_t seed) {
    if (f_list.size() < 2) throw precondition_error("tail_decay_fit: need >= 2 cuts");
    if (replicas < 1) throw precondition_error("tail_decay_fit: replicas >= 1");
    for (int f : f_list)
        if (f < 1 || f >= cov.k_max)
            throw precondition_error("tail_decay_fit: cuts must lie in [1, k_max)");
    auto modes = std::make_shared<const ModeSet>(ModeSet::build(cov));
    std::vector<double> mean(f_list.size(), 0.0);
    for (int r = 0; r < replicas; ++r) {
        const OuState st = OuState::initial(modes, replica_seed(seed, std::uint64_t(r)), true);
        const SpectralField z = st.synthesize(grid);
        for (std::size_t i = 0; i < f_list.size(); ++i) {
            SpectralField tail = z;
            const double f2 = double(f_list[i]) * double(f_list[i]);
            apply_multiplier(tail, [&](const Vec3i& k) {
                return double(k.norm2()) > f2 ? 1.0 : 0.0;
            });
            mean[i] += spectral::sup_norm(tail);
        }
    }
    for (double& v : mean) v /= double(replicas);
    std::vector<double> fs(f_list.begin(), f_list.end());
    return spectral::loglog_slope(fs, mean);
}

}  // namespace eulci::noise
