#include "eulci/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "eulci/fft.hpp"
#include "eulci/norms.hpp"
#include "eulci/ops.hpp"
#include "eulci/stationary_phase.hpp"

namespace eulci::amplitude {

namespace {

const double VOL3 = TWO_PI * TWO_PI * TWO_PI;

cplx ipow(cplx base, int e) {
    cplx out(1.0, 0.0);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

double sup_modulus(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

double coeff_mass(const SpectralField& f) {
    double m = 0.0;
    for (const cplx& x : f.c[0]) m += std::norm(x);
    return m;
}

void require_scalar(const SpectralField& f, const char* who) {
    if (f.kind != FieldKind::scalar)
        throw precondition_error(std::string(who) + ": scalar field expected");
}

}  // namespace

std::vector<cplx> complex_values(const SpectralField& f) {
    require_scalar(f, "complex_values");
    std::vector<cplx> data = f.c[0];
    dft3_inplace(f.grid, data.data(), false);
    return data;
}

SpectralField complex_analyze(const Grid3& g, const std::vector<cplx>& vals) {
    if (vals.size() != g.size())
        throw precondition_error("complex_analyze: value count does not match grid");
    SpectralField f(g, FieldKind::scalar);
    f.c[0] = vals;
    dft3_inplace(g, f.c[0].data(), true);
    const double inv = 1.0 / double(g.size());
    for (cplx& x : f.c[0]) x *= inv;
    return f;
}

double complex_sup(const SpectralField& f) { return sup_modulus(complex_values(f)); }

double complex_cn_norm(const SpectralField& f, int N) {
    require_scalar(f, "complex_cn_norm");
    if (N < 0 || N > 3)
        throw precondition_error("complex_cn_norm: N must lie in [0, 3]");
    double total = 0.0;
    std::vector<cplx> buf(f.grid.size());
    for (int ax = 0; ax <= N; ++ax)
        for (int ay = 0; ay + ax <= N; ++ay)
            for (int az = 0; az + ay + ax <= N; ++az) {
                buf = f.c[0];
                f.for_each_mode([&](const Vec3i& k, std::size_t i) {
                    buf[i] *= ipow(cplx(0.0, double(k.x)), ax) *
                              ipow(cplx(0.0, double(k.y)), ay) *
                              ipow(cplx(0.0, double(k.z)), az);
                });
                dft3_inplace(f.grid, buf.data(), false);
                total += sup_modulus(buf);
            }
    return total;
}

double zeta_formula(double e_s, double delta_next, double mean_energy) {
    return (e_s * (1.0 - delta_next) - mean_energy) / (3.0 * VOL3);
}

ZetaSeries compute_zeta(const schedule::EnergyProfile& e,
                        const std::vector<double>& times,
                        const std::vector<std::vector<double>>& l2sq_paths,
                        double delta_cur, double delta_next) {
    if (times.empty()) throw precondition_error("compute_zeta: empty time grid");
    if (l2sq_paths.empty()) throw precondition_error("compute_zeta: empty ensemble");
    for (const auto& p : l2sq_paths)
        if (p.size() != times.size())
            throw precondition_error("compute_zeta: path length mismatch");

    ZetaSeries out;
    out.times = times;
    const double inv_paths = 1.0 / double(l2sq_paths.size());
    const double scale = 1.0 / (3.0 * VOL3);
    for (std::size_t i = 0; i < times.size(); ++i) {
        double mean = 0.0;
        for (const auto& p : l2sq_paths) mean += p[i];
        mean *= inv_paths;
        const double es = e.value(times[i]);
        const double v = zeta_formula(es, delta_next, mean);
        out.value.push_back(v);
        out.window_lo.push_back((0.75 * delta_cur - delta_next) * es * scale);
        out.window_hi.push_back((1.25 * delta_cur - delta_next) * es * scale);
        out.in_window.push_back(char(v >= out.window_lo.back() && v <= out.window_hi.back()));
        if (v < 0.0) ++out.negative_count;
    }
    return out;
}

std::vector<double> mollify_series(const std::vector<double>& v,
                                   const spectral::TimeMollifier& tm) {
    if (v.empty()) throw precondition_error("mollify_series: empty series");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = tm.apply_at([&](int t) { return v[std::size_t(t)]; }, int(i));
    return out;
}

RealField compute_rho(const RealField& R_ell, double ell, RhoMode mode,
                      double zeta_or_sigma, double r0) {
    if (R_ell.kind != FieldKind::symtensor)
        throw precondition_error("compute_rho: symmetric tensor field expected");
    if (!(ell > 0.0)) throw precondition_error("compute_rho: ell must be positive");
    if (!(r0 > 0.0)) throw precondition_error("compute_rho: r0 must be positive");
    if (mode == RhoMode::cauchy && !(zeta_or_sigma >= 0.0))
        throw precondition_error("compute_rho: sigma must be nonnegative");

    const double offset = mode == RhoMode::stationary ? r0 * zeta_or_sigma
                                                      : r0 * zeta_or_sigma / VOL3;
    RealField rho(R_ell.grid, FieldKind::scalar);
    for (std::size_t i = 0; i < R_ell.grid.size(); ++i) {
        const double mag = spectral::point_magnitude(R_ell, i);
        const double tr = R_ell.at(0, i) + R_ell.at(3, i) + R_ell.at(5, i);
        if (std::abs(tr) > 1e-8 * (1.0 + mag))
            throw precondition_error("compute_rho: stress input is not trace-free");
        const double v = std::sqrt(ell * ell + mag * mag) + offset;
        // the matrix argument Id - r0 R / rho must stay strictly inside the
        // solver ball, i.e. |R| < rho; a negative zeta offset can break this
        if (!(v > 0.0) || mag >= v)
            throw construction_error(
                "compute_rho: solver-ball escape (negative energy gap rate)");
        rho.at(0, i) = v;
    }
    return rho;
}

namespace {

void validate_context(const AmplitudeContext& ctx) {
    if (ctx.fam == nullptr || ctx.rho == nullptr || ctx.R_ell == nullptr ||
        ctx.u == nullptr)
        throw precondition_error("amplitude context: missing field");
    if (ctx.rho->kind != FieldKind::scalar ||
        ctx.R_ell->kind != FieldKind::symtensor || ctx.u->kind != FieldKind::vector3)
        throw precondition_error("amplitude context: wrong field kinds");
    if (!(ctx.rho->grid == ctx.R_ell->grid) || !(ctx.rho->grid == ctx.u->grid))
        throw precondition_error("amplitude context: fields on different grids");
    if (!(ctx.r_R >= 0.0) || ctx.r_R >= ctx.fam->r0)
        throw precondition_error("amplitude context: r_R must lie in [0, r0)");
}

}  // namespace

std::size_t PointAmplitudes::index_of(const Vec3i& k) const {
    for (std::size_t i = 0; i < ks.size(); ++i)
        if (ks[i] == k) return i;
    throw domain_error("PointAmplitudes: wavevector not in the family system");
}

std::size_t AmplitudeSet::index_of(const Vec3i& k) const {
    for (std::size_t i = 0; i < ks.size(); ++i)
        if (ks[i] == k) return i;
    throw domain_error("AmplitudeSet: wavevector not in the family system");
}

PointAmplitudes evaluate_pointwise(const AmplitudeContext& ctx) {
    validate_context(ctx);
    const waves::WaveFamilies& fam = *ctx.fam;
    const Grid3& g = ctx.rho->grid;
    const std::size_t npts = g.size();
    const double mu = ctx.ps.mu;
    const double r0 = fam.r0;

    PointAmplitudes pa;
    std::array<std::size_t, 8> base{};  // slot of each family's first rep
    for (int j = 0; j < 8; ++j) {
        base[std::size_t(j)] = pa.ks.size();
        for (const Vec3i& rep : fam.solvers[std::size_t(j)].reps) {
            pa.ks.push_back(rep);
            pa.family.push_back(j);
            pa.ks.push_back(-rep);
            pa.family.push_back(j);
        }
    }
    const std::size_t nk = pa.ks.size();
    pa.h.assign(nk, std::vector<double>(npts, 0.0));
    pa.a.assign(nk, std::vector<cplx>(npts, cplx(0, 0)));
    pa.a_tau.assign(nk, std::vector<cplx>(npts, cplx(0, 0)));
    pa.material.assign(nk, std::vector<cplx>(npts, cplx(0, 0)));

    std::vector<double> gbuf;
    for (std::size_t i = 0; i < npts; ++i) {
        const double rho_v = ctx.rho->at(0, i);
        if (!(rho_v > 0.0))
            throw construction_error("evaluate_pointwise: nonpositive rho");
        waves::Sym3 M;
        for (int c = 0; c < 6; ++c) {
            const double id = (c == 0 || c == 3 || c == 5) ? 1.0 : 0.0;
            M[std::size_t(c)] = id - r0 * ctx.R_ell->at(c, i) / rho_v;
        }
        const double root = std::sqrt(rho_v / r0);
        const Vec3d ux{ctx.u->at(0, i), ctx.u->at(1, i), ctx.u->at(2, i)};
        const phases::PhasePointEval ev = phases::eval_point(ctx.ps, ux);

        for (int j = 0; j < 8; ++j) {
            const auto& reps = fam.solvers[std::size_t(j)].reps;
            if (reps.empty()) continue;
            gbuf.resize(reps.size());
            waves::gamma_eval_into(fam, j, M, gbuf.data());
            const bool present = ev.present[std::size_t(j)];
            const Vec3i cell = ev.cell[std::size_t(j)];
            const double w = ev.weight[std::size_t(j)];
            for (std::size_t p = 0; p < reps.size(); ++p) {
                const std::size_t s = base[std::size_t(j)] + 2 * p;
                const double hv = root * gbuf[p];
                pa.h[s][i] = hv;
                pa.h[s + 1][i] = hv;
                if (!present) continue;
                const Vec3i& k = reps[p];
                const double freq =
                    (double(k.x) * cell.x + double(k.y) * cell.y + double(k.z) * cell.z) / mu;
                const double ang = freq * ctx.tau;
                const cplx av = hv * w * cplx(std::cos(ang), -std::sin(ang));
                const cplx at = av * cplx(0.0, -freq);
                const double kdotu = to_vec3d(k).dot(ux);
                const cplx mt = av * cplx(0.0, kdotu - freq);
                pa.a[s][i] = av;
                pa.a[s + 1][i] = std::conj(av);
                pa.a_tau[s][i] = at;
                pa.a_tau[s + 1][i] = std::conj(at);
                pa.material[s][i] = mt;
                pa.material[s + 1][i] = std::conj(mt);
            }
        }
    }
    return pa;
}

AmplitudeSet compute_a_k(const AmplitudeContext& ctx) {
    validate_context(ctx);
    if (!(ctx.lambda_next >= 1.0) || std::floor(ctx.lambda_next) != ctx.lambda_next)
        throw precondition_error("compute_a_k: carrier frequency must be a positive integer");
    const Grid3& g = ctx.rho->grid;
    const long lam = long(ctx.lambda_next);

    PointAmplitudes pa = evaluate_pointwise(ctx);
    AmplitudeSet set;
    set.ks = pa.ks;
    set.family = pa.family;
    set.r0 = ctx.fam->r0;
    set.r_R = ctx.r_R;
    for (std::size_t i = 0; i < pa.ks.size(); ++i) {
        const Vec3i& k = pa.ks[i];
        const long linf = std::max({std::labs(k.x), std::labs(k.y), std::labs(k.z)});
        const long band = long(g.max_wave()) - lam * linf;
        if (band < 0)
            throw construction_error("compute_a_k: shifted band exceeds the grid");
        set.band.push_back(int(band));

        RealField hf(g, FieldKind::scalar);
        hf.r[0] = std::move(pa.h[i]);
        set.h.push_back(std::move(hf));

        SpectralField ah = complex_analyze(g, pa.a[i]);
        SpectralField th = complex_analyze(g, pa.a_tau[i]);
        const double before = coeff_mass(ah);
        truncate_linf(ah, int(band));
        truncate_linf(th, int(band));
        if (before > 0.0) {
            const double share = (before - coeff_mass(ah)) / before;
            set.projection_share = std::max(set.projection_share, share);
        }
        set.a_hat.push_back(std::move(ah));
        set.a_tau_hat.push_back(std::move(th));
    }
    return set;
}

std::string BoundAuditReport::csv() const {
    std::string out = "bound_id,N,measured_norm,rhs_value,implied_constant\n";
    char line[192];
    for (const BoundAuditRow& r : rows) {
        std::snprintf(line, sizeof line, "%s,%d,%.12g,%.12g,%.12g\n",
                      r.bound_id.c_str(), r.N, r.measured, r.rhs, r.implied);
        out += line;
    }
    return out;
}

BoundAuditReport bound_audit(const AmplitudeContext& ctx, const AuditInputs& in,
                             const std::vector<int>& Ns) {
    for (int N : Ns)
        if (N < 0 || N > 3)
            throw precondition_error("bound_audit: N must lie in [0, 3]");
    if (!(in.ell > 0.0) || !(in.lambda_cur > 0.0))
        throw precondition_error("bound_audit: ell and lambda_cur must be positive");

    const PointAmplitudes pa = evaluate_pointwise(ctx);
    const Grid3& g = ctx.rho->grid;
    const std::size_t nk = pa.ks.size();

    double sup_a = 0.0, sup_t = 0.0, sup_m = 0.0;
    for (std::size_t i = 0; i < nk; ++i) {
        sup_a = std::max(sup_a, sup_modulus(pa.a[i]));
        sup_t = std::max(sup_t, sup_modulus(pa.a_tau[i]));
        sup_m = std::max(sup_m, sup_modulus(pa.material[i]));
    }

    const double gap = std::sqrt(in.norm_R) + std::sqrt(in.ell) + std::sqrt(in.delta_cur);
    const double vel = 1.0 + in.norm_v + in.norm_z;
    const double stress = 1.0 + in.norm_R;

    BoundAuditReport rep;
    rep.c0_ratio = sup_a > 0.0 ? sup_m / sup_a : 0.0;
    auto push = [&rep](const char* id, int N, double measured, double rhs) {
        rep.rows.push_back({id, N, measured, rhs, rhs > 0.0 ? measured / rhs : 0.0});
    };

    for (int N : Ns) {
        if (N == 0) {
            push("amplitude", 0, sup_a, gap);
            push("tau_derivative", 0, sup_t, (1.0 + std::sqrt(in.norm_R)) * vel);
            push("material_derivative", 0, sup_m, gap / in.lambda_cur);
            continue;
        }
        const double base = std::pow(in.ell, -2.0 * N - 0.5);
        double cn_a = 0.0, cn_t = 0.0, cn_m = 0.0;
        for (std::size_t i = 0; i < nk; ++i) {
            cn_a = std::max(cn_a, complex_cn_norm(complex_analyze(g, pa.a[i]), N));
            cn_t = std::max(cn_t, complex_cn_norm(complex_analyze(g, pa.a_tau[i]), N));
            cn_m = std::max(cn_m, complex_cn_norm(complex_analyze(g, pa.material[i]), N));
        }
        push("amplitude", N, cn_a, base * std::pow(vel, N) * std::pow(stress, N + 1));
        push("tau_derivative", N, cn_t,
             base * std::pow(vel, N + 1) * std::pow(stress, N + 1));
        push("material_derivative", N, cn_m,
             base * std::pow(vel, N) * std::pow(stress, N + 1));
    }
    return rep;
}

MaterialGainFit material_gain_fit(const std::vector<double>& lambdas,
                                  const std::vector<double>& ratios) {
    MaterialGainFit fit;
    fit.slope = spectral::loglog_slope(lambdas, ratios);
    fit.pass = fit.slope >= -1.15 && fit.slope <= -0.85;
    return fit;
}

}  // namespace eulci::amplitude
