#include "eulci/norms.hpp"

#include <algorithm>
#include <cmath>

#include "eulci/fft.hpp"
#include "eulci/ops.hpp"

namespace eulci::spectral {

namespace {

// Squared magnitude at one grid point under the per-kind convention.
double point_mag2(const RealField& f, std::size_t flat) {
    switch (f.kind) {
        case FieldKind::scalar: {
            const double v = f.r[0][flat];
            return v * v;
        }
        case FieldKind::vector3: {
            double acc = 0.0;
            for (int c = 0; c < 3; ++c) acc += f.r[c][flat] * f.r[c][flat];
            return acc;
        }
        case FieldKind::symtensor: {
            double acc = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    const double v = f.r[sym_index(a, b)][flat];
                    acc += v * v;
                }
            return acc;
        }
    }
    return 0.0;
}

// Off-diagonal components of a symmetric tensor appear twice in the
// Frobenius sum; diagonal components once.
double component_weight(FieldKind kind, int comp) {
    if (kind != FieldKind::symtensor) return 1.0;
    return (comp == sym_index(0, 0) || comp == sym_index(1, 1) ||
            comp == sym_index(2, 2))
               ? 1.0
               : 2.0;
}

const Vec3i kHolderDirections[13] = {
    {1, 0, 0}, {0, 1, 0}, {0, 0, 1},  {1, 1, 0},  {1, -1, 0},
    {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}, {1, 1, 1},
    {1, 1, -1}, {1, -1, 1}, {1, -1, -1}};

}  // namespace

double point_magnitude(const RealField& f, std::size_t flat) {
    return std::sqrt(point_mag2(f, flat));
}

double sup_norm(const RealField& f) {
    double best = 0.0;
    for (std::size_t i = 0; i < f.r[0].size(); ++i)
        best = std::max(best, point_mag2(f, i));
    return std::sqrt(best);
}

double sup_norm(const SpectralField& f) { return sup_norm(synthesize(f)); }

double l1_norm(const RealField& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.r[0].size(); ++i)
        acc += std::sqrt(point_mag2(f, i));
    return acc / double(f.grid.size()) * TWO_PI * TWO_PI * TWO_PI;
}

double l1_norm(const SpectralField& f) { return l1_norm(synthesize(f)); }

double l2_norm(const SpectralField& f) {
    double acc = 0.0;
    for (int comp = 0; comp < f.ncomp(); ++comp) {
        const double w = component_weight(f.kind, comp);
        for (const cplx& v : f.c[comp]) acc += w * std::norm(v);
    }
    return std::sqrt(acc * TWO_PI * TWO_PI * TWO_PI);
}

double sobolev_norm(const SpectralField& f, double s) {
    double acc = 0.0;
    f.for_each_mode([&](const Vec3i& k, std::size_t flat) {
        const double factor = std::pow(1.0 + double(k.norm2()), s);
        for (int comp = 0; comp < f.ncomp(); ++comp)
            acc += component_weight(f.kind, comp) * factor *
                   std::norm(f.c[comp][flat]);
    });
    return std::sqrt(acc * TWO_PI * TWO_PI * TWO_PI);
}

double cn_space_norm(const SpectralField& f, int N) {
    if (N < 0) throw precondition_error("cn_space_norm needs N >= 0");
    double total = 0.0;
    for (int ax = 0; ax <= N; ++ax)
        for (int ay = 0; ay + ax <= N; ++ay)
            for (int az = 0; az + ay + ax <= N; ++az) {
                SpectralField d = apply_complex_multiplier(f, [&](const Vec3i& k) {
                    cplx m(1.0, 0.0);
                    const cplx ikx(0.0, double(k[0]));
                    const cplx iky(0.0, double(k[1]));
                    const cplx ikz(0.0, double(k[2]));
                    for (int i = 0; i < ax; ++i) m *= ikx;
                    for (int i = 0; i < ay; ++i) m *= iky;
                    for (int i = 0; i < az; ++i) m *= ikz;
                    return m;
                });
                total += sup_norm(d);
            }
    return total;
}

double holder_space_seminorm(const RealField& f, double theta) {
    const int n = f.grid.n;
    const double dx = TWO_PI / n;
    double best = 0.0;
    for (const Vec3i& dir : kHolderDirections) {
        const double dir_len =
            std::sqrt(double(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]));
        for (int m = 1; m <= n / 2; m *= 2) {
            const double h = m * dx * dir_len;
            if (h > PI_D) break;
            double diff2 = 0.0;
            for (int ix = 0; ix < n; ++ix) {
                const int jx = ((ix + m * dir[0]) % n + n) % n;
                for (int iy = 0; iy < n; ++iy) {
                    const int jy = ((iy + m * dir[1]) % n + n) % n;
                    for (int iz = 0; iz < n; ++iz) {
                        const int jz = ((iz + m * dir[2]) % n + n) % n;
                        const std::size_t a = f.grid.flat(ix, iy, iz);
                        const std::size_t b = f.grid.flat(jx, jy, jz);
                        double acc = 0.0;
                        for (int comp = 0; comp < f.ncomp(); ++comp) {
                            const double w = component_weight(f.kind, comp);
                            const double d = f.r[comp][b] - f.r[comp][a];
                            acc += w * d * d;
                        }
                        diff2 = std::max(diff2, acc);
                    }
                }
            }
            best = std::max(best, std::sqrt(diff2) / std::pow(h, theta));
        }
    }
    return best;
}

double holder_space_norm(const RealField& f, double theta) {
    return sup_norm(f) + holder_space_seminorm(f, theta);
}

double series_sup_norm(const SeriesFetch& at, int first, int last) {
    double best = 0.0;
    for (int i = first; i <= last; ++i) best = std::max(best, sup_norm(at(i)));
    return best;
}

double holder_time_seminorm(
    const SeriesFetch& at, int first, int last, double dt, double delta,
    const std::function<double(const SpectralField&)>& value_norm) {
    double best = 0.0;
    for (int gap = 1; gap <= last - first; gap *= 2) {
        for (int i = first; i + gap <= last; ++i) {
            SpectralField d = at(i + gap);
            d -= at(i);
            best = std::max(best, value_norm(d) / std::pow(gap * dt, delta));
        }
    }
    return best;
}

}  // namespace eulci::spectral
