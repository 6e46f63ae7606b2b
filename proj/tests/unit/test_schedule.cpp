#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eulci/schedule.hpp"

using namespace eulci;
using namespace eulci::schedule;

namespace {

ParamSchedule desk_stationary() {
    ParamSchedule ps;
    ps.mode = Mode::desk;
    ps.a = 2;
    ps.b = 2;
    ps.beta = 0.3;
    ps.gamma = 1.0;
    ps.q_max = 2;
    return ps;
}

CauchyParams desk_cauchy() {
    CauchyParams cp;
    cp.mode = Mode::desk;
    cp.a = 2;
    cp.b = 2;
    cp.m = 2;
    cp.beta_tau = 0.3;
    cp.beta_sigma = 3.0;
    cp.K = 1.0;
    cp.q_max = 2;
    return cp;
}

}  // namespace

TEST_CASE("stationary schedule: frequencies, amplitudes, steps") {
    const ParamSchedule ps = desk_stationary();
    ps.require_desk_valid();

    CHECK(ps.lambda(0) == 2.0);
    CHECK(ps.lambda(1) == 4.0);
    CHECK(ps.lambda(2) == 16.0);
    CHECK(ps.lambda(3) == 256.0);

    CHECK(ps.delta(1) == 6.0);
    CHECK(ps.delta(2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ps.delta(3) == doctest::Approx(0.0947322854068999).epsilon(1e-12));

    CHECK(ps.dt() == doctest::Approx(1.953125e-4).epsilon(1e-14));
    const double dt = ps.dt();
    CHECK(ps.ell(0, dt) == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(ps.ell(1, dt) == doctest::Approx(0.00390625).epsilon(1e-14));
    // at the finest level the four-tick mollification floor binds
    CHECK(ps.ell(2, dt) == doctest::Approx(0.00078125).epsilon(1e-14));
    CHECK(ps.ell(2, dt) > std::pow(ps.lambda(2), -4.0));

    for (int q = 0; q <= 2; ++q) CHECK(ps.f_cut(q) == 2);

    CHECK_THROWS_AS(ps.delta(0), precondition_error);
    CHECK_THROWS_AS(ps.lambda(-1), precondition_error);
}

TEST_CASE("stationary schedule: desk validation rejects bad parameters") {
    ParamSchedule ps = desk_stationary();
    ps.b = 1;
    CHECK_THROWS_AS(ps.require_desk_valid(), precondition_error);

    ps = desk_stationary();
    ps.r_moment = 1.6;
    CHECK_THROWS_AS(ps.require_desk_valid(), precondition_error);

    ps = desk_stationary();
    ps.L = 0.0;
    CHECK_THROWS_AS(ps.require_desk_valid(), precondition_error);

    // delta_1 = 6 L^2 must exceed delta_2 = 1/2
    ps = desk_stationary();
    ps.L = 0.2;
    CHECK_THROWS_AS(ps.require_desk_valid(), precondition_error);
}

TEST_CASE("cauchy schedule: levels, windows, pumping") {
    const CauchyParams cp = desk_cauchy();
    cp.require_desk_valid();

    CHECK(cp.M_L() == 6.0);
    CHECK(cp.L_level(0) == 6.0);
    CHECK(cp.L_level(1) == 36.0);
    CHECK(cp.L_level(2) == 1296.0);

    CHECK(cp.delta(1) == 6.0);
    CHECK(cp.delta(2) == doctest::Approx(0.189464570813800).epsilon(1e-12));

    CHECK(cp.tau(0) == doctest::Approx(0.435275281648062).epsilon(1e-12));
    CHECK(cp.tau(1) == doctest::Approx(0.189464570813800).epsilon(1e-12));
    CHECK(cp.tau(2) == doctest::Approx(0.0358968235936573).epsilon(1e-12));
    for (int r = 1; r <= 3; ++r) CHECK(2.0 * cp.tau(r) <= cp.tau(r - 1));

    CHECK(cp.sigma(2) == 1.0);
    CHECK(cp.sigma(1) == doctest::Approx(2.44140625e-4).epsilon(1e-14));
    CHECK(cp.sigma(3) < 1e-12);

    CHECK(cp.M0() == doctest::Approx(4.11141666122899).epsilon(1e-10));

    // desk mollification override: shrink factor, then the dt floor
    const double dt = 1e-7;
    CauchyParams small = cp;
    small.ell_scale = 6.4e-6;
    CHECK(small.ell(0, dt) == doctest::Approx(4.0e-7).epsilon(1e-12));
    CHECK(small.ell(1, dt) == doctest::Approx(4.0e-7).epsilon(1e-12));

    for (int q = 0; q <= 2; ++q) CHECK(cp.f_cut(q) == 2);
}

TEST_CASE("cauchy schedule: window cascade enforced in all modes") {
    CauchyParams cp = desk_cauchy();
    cp.beta_tau = 0.2;  // 2 tau_1 = 0.6597 > tau_0 = 0.5743
    CHECK_THROWS_AS(cp.require_desk_valid(), precondition_error);

    cp = desk_cauchy();
    cp.m = 1;
    CHECK_THROWS_AS(cp.require_desk_valid(), precondition_error);

    cp = desk_cauchy();
    cp.K = 0.0;
    CHECK_THROWS_AS(cp.require_desk_valid(), precondition_error);
}

TEST_CASE("energy profile: cosine table reproduces the analytic curve") {
    const EnergyProfile e = EnergyProfile::cosine(800.0, 0.15, 0.0, 2.0, 33);

    CHECK(e.value(0.0) == doctest::Approx(920.0).epsilon(1e-12));
    CHECK(e.value(2.0) == doctest::Approx(750.062379614343).epsilon(1e-10));
    CHECK(e.value(1.0) == doctest::Approx(864.836276704177).epsilon(1e-6));
    // off-knot accuracy of the interpolant
    for (double t : {0.171, 0.55, 1.03, 1.617, 1.93})
        CHECK(e.value(t) == doctest::Approx(800.0 * (1.0 + 0.15 * std::cos(t))).epsilon(1e-6));

    CHECK(e.e_high() == doctest::Approx(920.0).epsilon(1e-8));
    CHECK(e.e_low() == doctest::Approx(750.062379614343).epsilon(1e-8));
    CHECK(e.e_slope() == doctest::Approx(120.0).epsilon(1e-3));
    CHECK(e.e_low() > 0.0);

    // slope agrees with a centered difference of value()
    const double h = 1e-5;
    const double fd = (e.value(1.0 + h) - e.value(1.0 - h)) / (2.0 * h);
    CHECK(e.slope(1.0) == doctest::Approx(fd).epsilon(1e-6));

    // evaluation clamps to the window
    CHECK(e.value(-3.0) == e.value(0.0));
    CHECK(e.value(7.0) == e.value(2.0));
}

TEST_CASE("energy profile: scaling and degenerate inputs") {
    EnergyProfile e = EnergyProfile::cosine(800.0, 0.15, 0.0, 2.0, 33);
    const double lo = e.e_low(), hi = e.e_high();
    e.scale(2.0);
    CHECK(e.e_low() == doctest::Approx(2.0 * lo).epsilon(1e-12));
    CHECK(e.e_high() == doctest::Approx(2.0 * hi).epsilon(1e-12));

    const EnergyProfile c = EnergyProfile::constant(5.0, 0.0, 1.0);
    CHECK(c.value(0.5) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(c.slope(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(c.e_slope() == doctest::Approx(0.0).epsilon(1e-12));

    // profile dipping to zero is rejected
    CHECK_THROWS_AS(EnergyProfile::cosine(1.0, 2.5, 0.0, 2.0, 33), precondition_error);
    CHECK_THROWS_AS(EnergyProfile({1.0}, 0.0, 1.0), precondition_error);
}

TEST_CASE("inequality report: desk schedules fail the asymptotic checks honestly") {
    ParamSchedule ps = desk_stationary();
    exact::Report rep = inequality_report(ps, exact::Rat(exact::Int(1), exact::Int(2)), 1);
    CHECK_FALSE(rep.all_hold());
    CHECK_FALSE(rep.find("growth-floor").holds);       // b = 2 < 62
    CHECK_FALSE(rep.find("carrier-fraction-schedule").holds);  // gamma = 1 vs 1/8
    CHECK(rep.find("beta-positive").holds);

    ps.b = 2;
    ps.gamma = 0.125;  // now exactly 1/(4b)
    rep = inequality_report(ps, exact::Rat(exact::Int(1), exact::Int(2)), 1);
    CHECK(rep.find("carrier-fraction-schedule").holds);

    CauchyParams cp = desk_cauchy();
    exact::Report crep =
        inequality_report(cp, exact::Rat(exact::Int(1), exact::Int(2)), 1, exact::Rat(exact::Int(200)));
    CHECK_FALSE(crep.all_hold());
    CHECK_FALSE(crep.find("growth-floor").holds);      // b = 2 < 30
    CHECK_FALSE(crep.find("inner-exponent").holds);    // m = b
    CHECK_FALSE(crep.find("sigma-exponent-coupled").holds);  // desk decoupling
}

TEST_CASE("inequality report: asymptotic-regime parameters pass") {
    ParamSchedule ps;
    ps.mode = Mode::paper;
    ps.a = 2;  // stands in for 2^(32 b j); the report only uses b, beta, j
    ps.b = 62;
    ps.beta = 1.0 / 68638464.0;
    ps.gamma = 1.0 / 248.0;
    exact::StationaryExactParams sp;
    sp.b = ps.b;
    sp.beta = exact::rat_of_double(ps.beta);
    sp.kappa = exact::Rat(exact::Int(1), exact::Int(2));
    const long j = exact::suggest_j_stationary(sp);
    exact::Report rep = inequality_report(ps, sp.kappa, j);
    CHECK(rep.all_hold());

    CauchyParams cp;
    cp.mode = Mode::paper;
    cp.b = 30;
    cp.m = 10;
    cp.beta_tau = 1.0 / 57600.0;
    cp.beta_sigma = 1.0 / 57600.0;
    cp.K = 1.0;
    cp.L = 1;
    cp.N = 1;
    exact::Report crep =
        inequality_report(cp, exact::Rat(exact::Int(1), exact::Int(2)), 3, exact::Rat(exact::Int(200)));
    CHECK(crep.all_hold());
}
