#include "eulci/stationary_phase.hpp"

#include <cmath>

#include "eulci/fft.hpp"
#include "eulci/norms.hpp"
#include "eulci/ops.hpp"

namespace eulci::spectral {

namespace {

// Largest |k|_inf over modes carrying more than a relative spectral floor.
int amplitude_band(const SpectralField& a) {
    double peak = 0.0;
    for (const cplx& v : a.c[0]) peak = std::max(peak, std::abs(v));
    int band = 0;
    a.for_each_mode([&](const Vec3i& k, std::size_t flat) {
        if (std::abs(a.c[0][flat]) > 1e-14 * peak)
            band = std::max({band, std::abs(k.x), std::abs(k.y), std::abs(k.z)});
    });
    return band;
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw precondition_error("loglog_slope needs matching lists, size >= 2");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw precondition_error("loglog_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

SlopeAudit stationary_phase_audit(const SpectralField& amplitude,
                                  const Vec3i& k0,
                                  const std::vector<int>& lambdas,
                                  double alpha) {
    if (amplitude.kind != FieldKind::scalar)
        throw precondition_error("stationary_phase_audit expects a scalar amplitude");
    if (k0.norm2() == 0)
        throw precondition_error("stationary_phase_audit needs a nonzero direction");
    if (lambdas.size() < 2)
        throw precondition_error("stationary_phase_audit needs at least two carriers");

    const Grid3& g = amplitude.grid;
    const int band = amplitude_band(amplitude);
    const int kinf = std::max({std::abs(k0.x), std::abs(k0.y), std::abs(k0.z)});
    for (int lam : lambdas) {
        if (lam <= 0) throw precondition_error("carrier factors must be positive");
        if (band + lam * kinf > g.max_wave())
            throw precondition_error(
                "stationary_phase_audit: carrier shift leaves the grid band");
    }

    // A fixed unit vector away from k0 so the field is not purely longitudinal.
    Vec3d c{1.0, 0.5, 0.25};
    c = (1.0 / c.norm()) * c;

    SlopeAudit audit;
    for (int lam : lambdas) {
        const Vec3i shift{lam * k0.x, lam * k0.y, lam * k0.z};
        SpectralField f(g, FieldKind::vector3);
        amplitude.for_each_mode([&](const Vec3i& k, std::size_t flat) {
            const cplx v = amplitude.c[0][flat];
            if (v == cplx(0.0, 0.0)) return;
            const Vec3i m = k + shift;
            if (!g.representable(m)) return;
            for (int comp = 0; comp < 3; ++comp)
                f.at(comp, m) += c[comp] * v;
        });
        // The modulated field is not Hermitian (a one-sided carrier); the
        // anti-divergence acts mode by mode, so measure the real part by
        // symmetrising, which halves nothing structurally: add the mirror.
        SpectralField mirror(g, FieldKind::vector3);
        f.for_each_mode([&](const Vec3i& k, std::size_t flat) {
            for (int comp = 0; comp < 3; ++comp) {
                const cplx v = f.c[comp][flat];
                if (v != cplx(0.0, 0.0)) mirror.at(comp, -k) += std::conj(v);
            }
        });
        f += mirror;
        f *= 0.5;
        remove_mean(f);
        const SpectralField r = inverse_divergence(f);
        // Measuring sups on the working grid biases high carriers low: when
        // the carrier divides the grid size only a handful of distinct phases
        // are ever sampled.  Move to a measurement grid of size 2 (mod 4),
        // which shares no odd factor with power-of-two carriers, and sweep a
        // few sub-grid offsets along the carrier line (an exact per-mode
        // phase shift) before reading the norm.
        const int bmax = band + lam * kinf + 1;
        int nm = 2 * bmax + 4;
        while (nm % 4 != 2) ++nm;
        const Grid3 meas{nm};
        const SpectralField rm = resampled(r, meas);
        const Vec3d khat = to_vec3d(k0).normalized();
        constexpr int kOffsets = 4;
        double norm = 0.0;
        for (int j = 0; j < kOffsets; ++j) {
            const Vec3d delta = (double(j) / kOffsets * meas.dx()) * khat;
            SpectralField shifted = apply_complex_multiplier(rm, [&](const Vec3i& m) {
                const double phase = to_vec3d(m).dot(delta);
                return cplx(std::cos(phase), std::sin(phase));
            });
            const RealField rr = synthesize(shifted);
            const double v = alpha == 0.0
                                 ? sup_norm(rr)
                                 : sup_norm(rr) + holder_space_seminorm(rr, alpha);
            norm = std::max(norm, v);
        }
        audit.lambdas.push_back(double(lam));
        audit.norms.push_back(norm);
    }
    audit.slope = loglog_slope(audit.lambdas, audit.norms);
    return audit;
}

}  // namespace eulci::spectral
