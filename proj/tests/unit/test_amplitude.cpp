#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "eulci/amplitude.hpp"
#include "eulci/fft.hpp"
#include "eulci/norms.hpp"
#include "eulci/ops.hpp"
#include "eulci/util.hpp"

using namespace eulci;
using namespace eulci::amplitude;

namespace {

const double VOL3 = TWO_PI * TWO_PI * TWO_PI;

std::uint64_t rng_state = 0x5eedbeef0012ull;
double uniform01() {
    rng_state = splitmix64(rng_state);
    return double(rng_state >> 11) * 0x1.0p-53;
}
double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

// Smooth synthetic inputs on a shared grid: a velocity of amplitude `uamp`
// and an exactly trace-free stress of amplitude `ramp`.
struct Scene {
    Grid3 grid;
    RealField u, R, rho;
    explicit Scene(int n, double uamp, double ramp, double ell, double zeta,
                   double r0)
        : grid(n),
          u(grid, FieldKind::vector3),
          R(grid, FieldKind::symtensor),
          rho(grid, FieldKind::scalar) {
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz) {
                    const std::size_t f = grid.flat(ix, iy, iz);
                    const double x = TWO_PI * ix / n, y = TWO_PI * iy / n,
                                 z = TWO_PI * iz / n;
                    u.at(0, f) = uamp * std::sin(y);
                    u.at(1, f) = uamp * std::sin(z);
                    u.at(2, f) = uamp * std::cos(x);
                    R.at(0, f) = ramp * std::sin(x);        // xx
                    R.at(3, f) = -ramp * std::sin(x);       // yy
                    R.at(5, f) = 0.0;                       // zz
                    R.at(1, f) = 0.3 * ramp * std::cos(y);  // xy
                    R.at(2, f) = 0.2 * ramp * std::sin(z);  // xz
                    R.at(4, f) = 0.1 * ramp * std::cos(z);  // yz
                }
        rho = compute_rho(R, ell, RhoMode::stationary, zeta, r0);
    }
};

}  // namespace

TEST_CASE("complex transforms: roundtrip and single-mode norms") {
    const Grid3 g(16);
    std::vector<cplx> vals(g.size());
    for (auto& v : vals) v = cplx(uniform(-1, 1), uniform(-1, 1));
    const SpectralField f = complex_analyze(g, vals);
    const std::vector<cplx> back = complex_values(f);
    for (std::size_t i = 0; i < vals.size(); ++i)
        CHECK(std::abs(back[i] - vals[i]) < 1e-12);

    // pure mode e^{i k.x} with k = (1,2,0): the C^N sums are integer valued
    SpectralField mode(g, FieldKind::scalar);
    mode.at(0, {1, 2, 0}) = cplx(1, 0);
    CHECK(complex_sup(mode) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(complex_cn_norm(mode, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(complex_cn_norm(mode, 1) == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(complex_cn_norm(mode, 2) == doctest::Approx(11.0).epsilon(1e-10));
    CHECK_THROWS_AS(complex_cn_norm(mode, 4), precondition_error);
    CHECK_THROWS_AS(complex_cn_norm(mode, -1), precondition_error);
}

TEST_CASE("energy gap rate: closed forms, idempotent averaging, window report") {
    const double ebar = 12.0;
    const auto e = schedule::EnergyProfile::constant(ebar, 0.0, 1.0);
    const double d1 = 0.5, d2 = 0.09;
    const std::vector<double> times = {0.0, 0.25, 0.5};

    // zero fields
    const std::vector<std::vector<double>> zero1 = {{0, 0, 0}};
    const ZetaSeries zs = compute_zeta(e, times, zero1, d1, d2);
    for (double v : zs.value)
        CHECK(v == doctest::Approx(ebar * (1.0 - d2) / (3.0 * VOL3)).epsilon(1e-14));
    CHECK(zs.negative_count == 0);

    // two identical paths average to the single-path value exactly
    const std::vector<std::vector<double>> one = {{1.5, 2.0, 2.5}};
    const std::vector<std::vector<double>> two = {{1.5, 2.0, 2.5}, {1.5, 2.0, 2.5}};
    const ZetaSeries za = compute_zeta(e, times, one, d1, d2);
    const ZetaSeries zb = compute_zeta(e, times, two, d1, d2);
    for (std::size_t i = 0; i < times.size(); ++i) CHECK(za.value[i] == zb.value[i]);

    // inductive window membership: gap = delta_cur * e sits inside
    // [3/4, 5/4] * delta_cur * e, gap = delta_cur * e / 2 falls below
    const std::vector<std::vector<double>> mid = {
        std::vector<double>(3, ebar * (1.0 - d1))};
    const std::vector<std::vector<double>> low = {
        std::vector<double>(3, ebar * (1.0 - 0.5 * d1))};
    CHECK(compute_zeta(e, times, mid, d1, d2).in_window[0] == 1);
    CHECK(compute_zeta(e, times, low, d1, d2).in_window[0] == 0);

    // exceeding the available energy turns the rate negative
    const std::vector<std::vector<double>> over = {std::vector<double>(3, 2.0 * ebar)};
    CHECK(compute_zeta(e, times, over, d1, d2).negative_count == 3);

    CHECK_THROWS_AS(compute_zeta(e, {}, one, d1, d2), precondition_error);
    CHECK_THROWS_AS(compute_zeta(e, times, {}, d1, d2), precondition_error);
    CHECK_THROWS_AS(compute_zeta(e, times, {{1.0}}, d1, d2), precondition_error);
}

TEST_CASE("series mollification: mass, causality, linear lag") {
    const spectral::TimeMollifier tm(0.4, 0.05);
    const std::vector<double> c(20, 3.25);
    for (double v : mollify_series(c, tm)) CHECK(v == doctest::Approx(3.25).epsilon(1e-15));

    // backward taps only: a future jump is invisible at the jump tick
    std::vector<double> step(20, 0.0);
    for (std::size_t i = 12; i < step.size(); ++i) step[i] = 1.0;
    const std::vector<double> sm = mollify_series(step, tm);
    CHECK(sm[12] == 0.0);
    CHECK(sm[19] == doctest::Approx(1.0).epsilon(1e-15));

    std::vector<double> lin(20);
    for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = double(i) * 0.05;
    const std::vector<double> ml = mollify_series(lin, tm);
    for (std::size_t i = 3 * std::size_t(tm.stride()); i < lin.size(); ++i)
        CHECK(ml[i] == doctest::Approx(lin[i] - tm.lag()).epsilon(1e-12));

    CHECK_THROWS_AS(mollify_series({}, tm), precondition_error);
}

TEST_CASE("stress-absorbing scalar: closed forms and the solver-ball guard") {
    const Grid3 g(8);
    RealField zero(g, FieldKind::symtensor);
    const double ell = 0.03, r0 = 0.2;

    const RealField r1 = compute_rho(zero, ell, RhoMode::stationary, 0.0, r0);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(r1.at(0, i) == ell);

    const double sig = 0.7;
    const RealField r2 = compute_rho(zero, ell, RhoMode::cauchy, sig, r0);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(r2.at(0, i) == doctest::Approx(ell + r0 * sig / VOL3).epsilon(1e-15));

    // random trace-free stress: rho dominates |R| pointwise and carries the
    // zeta floor
    RealField R(g, FieldKind::symtensor);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double a = uniform(-1, 1), b = uniform(-1, 1);
        R.at(0, i) = a;
        R.at(3, i) = b;
        R.at(5, i) = -a - b;
        R.at(1, i) = uniform(-1, 1);
        R.at(2, i) = uniform(-1, 1);
        R.at(4, i) = uniform(-1, 1);
    }
    const double zeta = 0.4;
    const RealField r3 = compute_rho(R, ell, RhoMode::stationary, zeta, r0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double mag = spectral::point_magnitude(R, i);
        CHECK(r3.at(0, i) > mag);
        CHECK(r3.at(0, i) >= r0 * zeta);
    }

    // a negative gap rate large enough to close the ball is fatal, never clamped
    CHECK_THROWS_AS(compute_rho(zero, ell, RhoMode::stationary, -2.0 * ell / r0, r0),
                    construction_error);
    CHECK_THROWS_AS(compute_rho(zero, ell, RhoMode::cauchy, -0.1, r0), precondition_error);
    CHECK_THROWS_AS(compute_rho(zero, 0.0, RhoMode::stationary, 0.0, r0),
                    precondition_error);
    RealField bad(g, FieldKind::symtensor);
    for (std::size_t i = 0; i < g.size(); ++i) bad.at(0, i) = 1.0;  // trace 1
    CHECK_THROWS_AS(compute_rho(bad, ell, RhoMode::stationary, 0.0, r0),
                    precondition_error);
    CHECK_THROWS_AS(compute_rho(RealField(g, FieldKind::vector3), ell,
                                RhoMode::stationary, 0.0, r0),
                    precondition_error);
}

TEST_CASE("amplitude fields: closed form at rest, conjugate mirror, identities") {
    const waves::WaveFamilies fam = waves::build_families_desk();
    const Grid3 g(16);
    const double ell = 0.01;

    // frozen scene: no stress, no velocity
    RealField zeroR(g, FieldKind::symtensor);
    RealField zeroU(g, FieldKind::vector3);
    const RealField rho0 = compute_rho(zeroR, ell, RhoMode::stationary, 0.0, fam.r0);
    AmplitudeContext ctx;
    ctx.fam = &fam;
    ctx.ps = phases::PhaseSystem(0.90, 0.95, 4.0);
    ctx.rho = &rho0;
    ctx.R_ell = &zeroR;
    ctx.u = &zeroU;
    ctx.tau = 0.8;
    ctx.lambda_next = 2.0;
    ctx.r_R = 0.5 * fam.r0;

    const PointAmplitudes pa = evaluate_pointwise(ctx);
    CHECK(pa.ks.size() == 12);
    const double h_expect = std::sqrt(ell / fam.r0) * 0.5;  // gamma(Id) = 1/2
    for (std::size_t k = 0; k < pa.ks.size(); ++k)
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(pa.h[k][i] == doctest::Approx(h_expect).epsilon(1e-13));
            // at rest the phase collapses to the central cell with weight one
            CHECK(std::abs(pa.a[k][i] - cplx(h_expect, 0)) < 1e-13);
            CHECK(std::abs(pa.a_tau[k][i]) == 0.0);
            CHECK(std::abs(pa.material[k][i]) == 0.0);
        }

    const AmplitudeSet set = compute_a_k(ctx);
    CHECK(set.ks.size() == 12);
    for (std::size_t k = 0; k < set.ks.size(); ++k) {
        CHECK(set.band[k] == g.max_wave() - 2);
        CHECK(std::abs(set.a_hat[k].at(0, {0, 0, 0}) - cplx(h_expect, 0)) < 1e-13);
        CHECK(std::abs(set.a_hat[k].at(0, {1, 0, 0})) < 1e-13);
    }
    CHECK(set.projection_share < 1e-20);
    CHECK(set.index_of(Vec3i{1, 1, 0}) < 12);
    CHECK_THROWS_AS(set.index_of(Vec3i{5, 0, 0}), domain_error);

    // moving scene: mirrors conjugate exactly, h positive, identities hold
    const Scene sc(16, 0.35, 0.04, ell, 0.3, fam.r0);
    AmplitudeContext mv = ctx;
    mv.rho = &sc.rho;
    mv.R_ell = &sc.R;
    mv.u = &sc.u;
    const PointAmplitudes pm = evaluate_pointwise(mv);
    for (const Vec3i& k : pm.ks) {
        const std::size_t s = pm.index_of(k), sm = pm.index_of(-k);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(pm.h[s][i] > 0.0);
            CHECK(pm.h[s][i] == pm.h[sm][i]);
            CHECK(pm.a[sm][i] == std::conj(pm.a[s][i]));
            CHECK(pm.a_tau[sm][i] == std::conj(pm.a_tau[s][i]));
            CHECK(pm.material[sm][i] == std::conj(pm.material[s][i]));
        }
    }

    // transport identity: the factored material derivative equals the
    // subtraction form a_tau + i (k.u) a
    double worst = 0.0;
    for (std::size_t s = 0; s < pm.ks.size(); ++s)
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double ku = to_vec3d(pm.ks[s]).dot(
                Vec3d{sc.u.at(0, i), sc.u.at(1, i), sc.u.at(2, i)});
            const cplx sub = pm.a_tau[s][i] + cplx(0.0, ku) * pm.a[s][i];
            worst = std::max(worst, std::abs(sub - pm.material[s][i]));
        }
    CHECK(worst < 1e-8);

    // Richardson-extrapolated finite difference in tau matches the analytic
    // derivative
    AmplitudeContext tp = mv, tm_ = mv, tp2 = mv, tm2 = mv;
    const double hh = 2e-3;
    tp.tau += hh;
    tm_.tau -= hh;
    tp2.tau += 0.5 * hh;
    tm2.tau -= 0.5 * hh;
    const PointAmplitudes pp = evaluate_pointwise(tp), qq = evaluate_pointwise(tm_),
                          pp2 = evaluate_pointwise(tp2), qq2 = evaluate_pointwise(tm2);
    double worst_fd = 0.0, seen = 0.0;
    for (std::size_t s = 0; s < pm.ks.size(); ++s)
        for (std::size_t i = 0; i < g.size(); i += 7) {
            const cplx f1 = (pp.a[s][i] - qq.a[s][i]) / (2.0 * hh);
            const cplx f2 = (pp2.a[s][i] - qq2.a[s][i]) / hh;
            const cplx rich = (4.0 * f2 - f1) / 3.0;
            worst_fd = std::max(worst_fd, std::abs(rich - pm.a_tau[s][i]));
            seen = std::max(seen, std::abs(pm.a_tau[s][i]));
        }
    CHECK(seen > 1e-4);  // the probe saw genuinely moving phases
    CHECK(worst_fd < 1e-8);

    // modulus is tau-invariant
    for (std::size_t i = 0; i < g.size(); i += 11)
        CHECK(std::abs(std::abs(pp.a[0][i]) - std::abs(pm.a[0][i])) < 1e-13);

    // pointwise kernel agrees with the reference phase functions
    for (std::size_t s = 0; s < pm.ks.size(); ++s)
        for (std::size_t i = 0; i < g.size(); i += 13) {
            const cplx ref =
                pm.h[s][i] * phases::phi_kj(mv.ps, pm.ks[s], pm.family[s], mv.tau,
                                            Vec3d{sc.u.at(0, i), sc.u.at(1, i),
                                                  sc.u.at(2, i)});
            CHECK(std::abs(ref - pm.a[s][i]) < 1e-13);
        }

    // guards
    AmplitudeContext badl = mv;
    badl.lambda_next = 2.5;
    CHECK_THROWS_AS(compute_a_k(badl), precondition_error);
    badl.lambda_next = 8.0;  // band 7 - 8 < 0 on a 16-grid
    CHECK_THROWS_AS(compute_a_k(badl), construction_error);
    AmplitudeContext badr = mv;
    badr.r_R = fam.r0;
    CHECK_THROWS_AS(evaluate_pointwise(badr), precondition_error);
}

TEST_CASE("bound audit: square-root stress response and the 1/lambda gain") {
    const waves::WaveFamilies fam = waves::build_families_desk();
    const double ell = 0.02;

    // square-root dependence: with the stress dominating ell and a zero gap
    // rate, scaling the stress by 4 doubles the amplitude sup
    const Scene s1(16, 0.3, 10.0 * ell, ell, 0.0, fam.r0);
    const Scene s4(16, 0.3, 40.0 * ell, ell, 0.0, fam.r0);
    AmplitudeContext c1;
    c1.fam = &fam;
    c1.ps = phases::PhaseSystem(0.90, 0.95, 4.0);
    c1.rho = &s1.rho;
    c1.R_ell = &s1.R;
    c1.u = &s1.u;
    c1.tau = 0.7;
    c1.lambda_next = 2.0;
    c1.r_R = 0.5 * fam.r0;
    AmplitudeContext c4 = c1;
    c4.rho = &s4.rho;
    c4.R_ell = &s4.R;
    auto sup_amp = [](const PointAmplitudes& pa) {
        double m = 0.0;
        for (const auto& vec : pa.a)
            for (const cplx& v : vec) m = std::max(m, std::abs(v));
        return m;
    };
    const double ratio = sup_amp(evaluate_pointwise(c4)) / sup_amp(evaluate_pointwise(c1));
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.4);

    // norm rows: finite implied constants, C0 row bounded by a stable factor
    AuditInputs in;
    in.ell = ell;
    in.delta_cur = 0.5;
    in.lambda_cur = 4.0;
    in.norm_v = 0.3;
    in.norm_z = 0.0;
    in.norm_R = 10.0 * ell;
    const BoundAuditReport rep = bound_audit(c1, in, {0, 1});
    CHECK(rep.rows.size() == 6);
    for (const BoundAuditRow& r : rep.rows) {
        CHECK(r.rhs > 0.0);
        CHECK(r.implied > 0.0);
        CHECK(r.implied < 100.0);
    }
    const std::string csv = rep.csv();
    CHECK(csv.find("bound_id,N,measured_norm,rhs_value,implied_constant") !=
          std::string::npos);
    CHECK(csv.find("amplitude,0,") != std::string::npos);
    CHECK(csv.find("material_derivative,1,") != std::string::npos);
    CHECK_THROWS_AS(bound_audit(c1, in, {4}), precondition_error);

    // material gain across a frequency decade: the sup ratio decays like
    // 1/lambda
    const std::vector<double> lambdas = {4, 8, 16, 32};
    std::vector<double> ratios;
    const Scene sg(32, 0.4, 0.05, ell, 0.3, fam.r0);
    for (double lam : lambdas) {
        AmplitudeContext cg;
        cg.fam = &fam;
        cg.ps = phases::PhaseSystem(0.90, 0.95, lam);
        cg.rho = &sg.rho;
        cg.R_ell = &sg.R;
        cg.u = &sg.u;
        cg.tau = 0.7;
        cg.lambda_next = 2.0;
        cg.r_R = 0.5 * fam.r0;
        AuditInputs ig = in;
        ig.lambda_cur = lam;
        ratios.push_back(bound_audit(cg, ig, {0}).c0_ratio);
    }
    const MaterialGainFit fit = material_gain_fit(lambdas, ratios);
    CHECK(fit.slope > -1.15);
    CHECK(fit.slope < -0.85);
    CHECK(fit.pass);

    // fit rejects a flat series
    const MaterialGainFit flat = material_gain_fit(lambdas, {1, 1, 1, 1});
    CHECK_FALSE(flat.pass);
}
