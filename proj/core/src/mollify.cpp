#include "eulci/mollify.hpp"

#include <cmath>

namespace eulci::spectral {

namespace {

// Unit-radius radial bump, identically zero outside [0, 1).
double bump(double r) {
    const double r2 = r * r;
    if (r2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2));
}

// sin(x)/x with the series branch near zero.
double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// Composite Simpson quadrature of f over [0, 1].
template <class F>
double simpson01(F&& f, int panels) {
    const double h = 1.0 / panels;
    double acc = f(0.0) + f(1.0);
    for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return acc * h / 3.0;
}

constexpr int kPanels = 512;

double bump_mass() {
    static const double mass =
        simpson01([](double r) { return bump(r) * r * r; }, kPanels);
    return mass;
}

}  // namespace

double bump_transform(double kappa) {
    if (kappa == 0.0) return 1.0;
    const double num = simpson01(
        [kappa](double r) { return bump(r) * r * r * sinc(kappa * r); },
        kPanels);
    return num / bump_mass();
}

SpaceMollifier::SpaceMollifier(double ell) : ell_(ell) {
    if (!(ell > 0.0)) throw precondition_error("space mollifier needs ell > 0");
}

double SpaceMollifier::multiplier(long long k2) const {
    if (k2 == 0) return 1.0;
    auto it = cache_.find(k2);
    if (it != cache_.end()) return it->second;
    const double value = bump_transform(ell_ * std::sqrt(double(k2)));
    cache_.emplace(k2, value);
    return value;
}

SpectralField SpaceMollifier::apply(const SpectralField& f) const {
    SpectralField out = f;
    f.for_each_mode([&](const Vec3i& k, std::size_t flat) {
        const double m = multiplier(k.norm2());
        for (int comp = 0; comp < out.ncomp(); ++comp) out.c[comp][flat] *= m;
    });
    return out;
}

TimeMollifier::TimeMollifier(double ell, double dt) : dt_(dt) {
    if (!(dt > 0.0)) throw precondition_error("time mollifier needs dt > 0");
    if (!(ell >= 4.0 * dt))
        throw precondition_error("time mollifier needs ell >= 4*dt");
    stride_ = int(std::floor(ell / (4.0 * dt)));
    const double b1 = std::exp(-16.0 / 3.0);  // bump at u = 1/4 and u = 3/4
    const double b2 = std::exp(-4.0);         // bump at u = 1/2
    const double z = 2.0 * b1 + b2;
    w_ = {b1 / z, b2 / z, b1 / z};
}

std::array<int, 3> TimeMollifier::ticks_at(int i) const {
    auto clamp0 = [](int t) { return t < 0 ? 0 : t; };
    return {clamp0(i - 3 * stride_), clamp0(i - 2 * stride_),
            clamp0(i - stride_)};
}

double TimeMollifier::lag() const {
    // Offsets are {3s, 2s, s} against weights {w0, w1, w2}.
    return dt_ * stride_ * (3.0 * w_[0] + 2.0 * w_[1] + 1.0 * w_[2]);
}

}  // namespace eulci::spectral
