#pragma once

#include <array>
#include <map>

#include "eulci/field.hpp"

namespace eulci::spectral {

// Spatial mollifier: convolution with a radial C-infinity bump of radius
// `ell`, applied as a Fourier multiplier.  The bump is
//   phi(x) = B(|x|/ell) / Z,   B(r) = exp(-1/(1-r^2)) on [0,1),
// normalised so that the multiplier equals exactly 1 at k = 0.  The
// multiplier is radial, so values are cached per integer |k|^2.
class SpaceMollifier {
public:
    explicit SpaceMollifier(double ell);

    double ell() const { return ell_; }

    // Multiplier value for an integer wavevector with squared norm k2.
    double multiplier(long long k2) const;

    // Applies the multiplier to every mode of every component.
    SpectralField apply(const SpectralField& f) const;

private:
    double ell_;
    mutable std::map<long long, double> cache_;
};

// Transform of the unit-radius bump, m(kappa) = the radial Fourier
// transform of B normalised to m(0) = 1.  Exposed for tests.
double bump_transform(double kappa);

// Discrete backward-looking time mollifier.  The continuum kernel is the
// bump b(u) = exp(-1/(u(1-u))) on (0,1) scaled to width ell; here it is
// sampled at the three interior quarter-points and renormalised, giving a
// three-tap kernel at tick offsets {s, 2s, 3s} strictly in the past.  The
// effective width 4*s*dt never exceeds the requested ell, and the
// construction requires ell >= 4*dt.
class TimeMollifier {
public:
    TimeMollifier(double ell, double dt);

    double dt() const { return dt_; }
    double ell_effective() const { return 4.0 * stride_ * dt_; }
    int stride() const { return stride_; }
    int max_offset() const { return 3 * stride_; }
    const std::array<double, 3>& weights() const { return w_; }

    // Ticks touched when evaluating at tick i, oldest first, clamped at 0
    // (series are extended below tick 0 by their initial value).
    std::array<int, 3> ticks_at(int i) const;

    // Mollifies a time series of values accessed through `at_tick`.
    // ValueFetch is any callable int -> T where T supports w*T and T+T.
    template <class ValueFetch>
    auto apply_at(ValueFetch&& at_tick, int i) const {
        const auto t = ticks_at(i);
        auto acc = w_[0] * at_tick(t[0]);
        acc += w_[1] * at_tick(t[1]);
        acc += w_[2] * at_tick(t[2]);
        return acc;
    }

    // Centre of mass of the kernel, in seconds before the evaluation time.
    // A series linear in t is mollified to exactly its own value lagged by
    // this amount.
    double lag() const;

private:
    double dt_;
    int stride_;
    std::array<double, 3> w_;
};

}  // namespace eulci::spectral
