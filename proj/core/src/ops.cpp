#include "eulci/ops.hpp"

#include <algorithm>
#include <cmath>

namespace eulci {

namespace {
const cplx I(0.0, 1.0);

double maxabs(const SpectralField& f) {
  double m = 0;
  for (const auto& comp : f.c)
    for (const auto& v : comp) m = std::max(m, std::abs(v));
  return m;
}
}  // namespace

SpectralField gradient(const SpectralField& scalar) {
  if (scalar.kind != FieldKind::scalar)
    throw precondition_error("gradient: scalar input required");
  SpectralField out(scalar.grid, FieldKind::vector3);
  scalar.for_each_mode([&](const Vec3i& k, std::size_t i) {
    const cplx v = I * scalar.c[0][i];
    out.c[0][i] = double(k.x) * v;
    out.c[1][i] = double(k.y) * v;
    out.c[2][i] = double(k.z) * v;
  });
  return out;
}

SpectralField divergence(const SpectralField& f) {
  if (f.kind == FieldKind::vector3) {
    SpectralField out(f.grid, FieldKind::scalar);
    f.for_each_mode([&](const Vec3i& k, std::size_t i) {
      out.c[0][i] = I * (double(k.x) * f.c[0][i] + double(k.y) * f.c[1][i] +
                         double(k.z) * f.c[2][i]);
    });
    return out;
  }
  if (f.kind == FieldKind::symtensor) {
    SpectralField out(f.grid, FieldKind::vector3);
    f.for_each_mode([&](const Vec3i& k, std::size_t i) {
      const double kd[3] = {double(k.x), double(k.y), double(k.z)};
      for (int a = 0; a < 3; ++a) {
        cplx s(0, 0);
        for (int b = 0; b < 3; ++b) s += kd[b] * f.c[sym_index(a, b)][i];
        out.c[a][i] = I * s;
      }
    });
    return out;
  }
  throw precondition_error("divergence: vector or symtensor input required");
}

SpectralField curl(const SpectralField& vec) {
  if (vec.kind != FieldKind::vector3)
    throw precondition_error("curl: vector input required");
  SpectralField out(vec.grid, FieldKind::vector3);
  vec.for_each_mode([&](const Vec3i& k, std::size_t i) {
    const cplx vx = vec.c[0][i], vy = vec.c[1][i], vz = vec.c[2][i];
    out.c[0][i] = I * (double(k.y) * vz - double(k.z) * vy);
    out.c[1][i] = I * (double(k.z) * vx - double(k.x) * vz);
    out.c[2][i] = I * (double(k.x) * vy - double(k.y) * vx);
  });
  return out;
}

void leray_project(SpectralField& vec) {
  if (vec.kind != FieldKind::vector3)
    throw precondition_error("leray_project: vector input required");
  vec.for_each_mode([&](const Vec3i& k, std::size_t i) {
    const double n2 = double(k.norm2());
    if (n2 == 0.0) return;
    const cplx kdotv = double(k.x) * vec.c[0][i] + double(k.y) * vec.c[1][i] +
                       double(k.z) * vec.c[2][i];
    const cplx s = kdotv / n2;
    vec.c[0][i] -= double(k.x) * s;
    vec.c[1][i] -= double(k.y) * s;
    vec.c[2][i] -= double(k.z) * s;
  });
}

SpectralField inverse_divergence(const SpectralField& vec) {
  if (vec.kind != FieldKind::vector3)
    throw precondition_error("inverse_divergence: vector input required");
  const double scale = maxabs(vec);
  const cplx mean[3] = {vec.c[0][0], vec.c[1][0], vec.c[2][0]};
  const double mean_mag =
      std::max({std::abs(mean[0]), std::abs(mean[1]), std::abs(mean[2])});
  if (mean_mag > 1e-12 * scale && mean_mag > 0)
    throw precondition_error("inverse_divergence: input has nonzero mean");

  SpectralField out(vec.grid, FieldKind::symtensor);
  vec.for_each_mode([&](const Vec3i& k, std::size_t i) {
    const double n2 = double(k.norm2());
    if (n2 == 0.0) return;
    const double kd[3] = {double(k.x), double(k.y), double(k.z)};
    const cplx v[3] = {vec.c[0][i], vec.c[1][i], vec.c[2][i]};
    const cplx P = kd[0] * v[0] + kd[1] * v[1] + kd[2] * v[2];
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) {
        cplx r = (-I / n2) * (kd[a] * v[b] + kd[b] * v[a]);
        if (a == b) r += I * P / (2.0 * n2);
        r += I * P * kd[a] * kd[b] / (2.0 * n2 * n2);
        out.c[sym_index(a, b)][i] = r;
      }
  });
  return out;
}

void make_traceless(SpectralField& sym) {
  if (sym.kind != FieldKind::symtensor)
    throw precondition_error("make_traceless: symtensor input required");
  const std::size_t sz = sym.grid.size();
  for (std::size_t i = 0; i < sz; ++i) {
    const cplx tr3 = (sym.c[0][i] + sym.c[3][i] + sym.c[5][i]) / 3.0;
    sym.c[0][i] -= tr3;
    sym.c[3][i] -= tr3;
    sym.c[5][i] -= tr3;
  }
}

SpectralField trace_of(const SpectralField& sym) {
  if (sym.kind != FieldKind::symtensor)
    throw precondition_error("trace_of: symtensor input required");
  SpectralField out(sym.grid, FieldKind::scalar);
  const std::size_t sz = sym.grid.size();
  for (std::size_t i = 0; i < sz; ++i)
    out.c[0][i] = sym.c[0][i] + sym.c[3][i] + sym.c[5][i];
  return out;
}

void truncate_linf(SpectralField& f, int K) {
  f.for_each_mode([&](const Vec3i& k, std::size_t i) {
    if (std::max({std::abs(k.x), std::abs(k.y), std::abs(k.z)}) > K)
      for (int c = 0; c < f.ncomp(); ++c) f.c[c][i] = cplx(0, 0);
  });
}

void truncate_ball(SpectralField& f, double r) {
  const double r2 = r * r * (1.0 + 1e-12);
  f.for_each_mode([&](const Vec3i& k, std::size_t i) {
    if (double(k.norm2()) > r2)
      for (int c = 0; c < f.ncomp(); ++c) f.c[c][i] = cplx(0, 0);
  });
}

SpectralField resampled(const SpectralField& src, const Grid3& dst) {
  if (src.grid == dst) return src;
  SpectralField out(dst, src.kind);
  const int K = std::min(src.grid.n, dst.n) / 2 - 1;
  for (int kx = -K; kx <= K; ++kx)
    for (int ky = -K; ky <= K; ++ky)
      for (int kz = -K; kz <= K; ++kz) {
        const Vec3i k{kx, ky, kz};
        const std::size_t si = src.grid.flat_of_wave(k);
        const std::size_t di = dst.flat_of_wave(k);
        for (int c = 0; c < src.ncomp(); ++c) out.c[c][di] = src.c[c][si];
      }
  return out;
}

void hermitian_symmetrize(SpectralField& f) {
  const int n = f.grid.n;
  auto neg = [n](int i) { return (n - i) % n; };
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        const std::size_t i = f.grid.flat(ix, iy, iz);
        const std::size_t j = f.grid.flat(neg(ix), neg(iy), neg(iz));
        if (j < i) continue;
        for (int c = 0; c < f.ncomp(); ++c) {
          if (i == j) {
            f.c[c][i] = cplx(f.c[c][i].real(), 0.0);
          } else {
            const cplx avg = 0.5 * (f.c[c][i] + std::conj(f.c[c][j]));
            f.c[c][i] = avg;
            f.c[c][j] = std::conj(avg);
          }
        }
      }
}

double hermitian_defect(const SpectralField& f) {
  const int n = f.grid.n;
  auto neg = [n](int i) { return (n - i) % n; };
  double worst = 0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        const std::size_t i = f.grid.flat(ix, iy, iz);
        const std::size_t j = f.grid.flat(neg(ix), neg(iy), neg(iz));
        for (int c = 0; c < f.ncomp(); ++c)
          worst = std::max(worst, std::abs(f.c[c][i] - std::conj(f.c[c][j])));
      }
  return worst;
}

double divergence_defect(const SpectralField& vec) {
  if (vec.kind != FieldKind::vector3)
    throw precondition_error("divergence_defect: vector input required");
  double worst = 0;
  vec.for_each_mode([&](const Vec3i& k, std::size_t i) {
    const cplx kdotv = double(k.x) * vec.c[0][i] + double(k.y) * vec.c[1][i] +
                       double(k.z) * vec.c[2][i];
    worst = std::max(worst, std::abs(kdotv));
  });
  return worst;
}

void remove_mean(SpectralField& f) {
  for (int c = 0; c < f.ncomp(); ++c) f.c[c][0] = cplx(0, 0);
}

void zero_nyquist(SpectralField& f) {
  const int n = f.grid.n;
  const int ny = n / 2;
  f.for_each_mode([&](const Vec3i& k, std::size_t i) {
    if (k.x == ny || k.y == ny || k.z == ny)
      for (int c = 0; c < f.ncomp(); ++c) f.c[c][i] = cplx(0, 0);
  });
}

RealField sym_outer(const RealField& a, const RealField& b) {
  if (!(a.grid == b.grid) || a.kind != FieldKind::vector3 ||
      b.kind != FieldKind::vector3)
    throw precondition_error("sym_outer: two vectors on one grid required");
  RealField out(a.grid, FieldKind::symtensor);
  const std::size_t sz = a.grid.size();
  for (int i3 = 0; i3 < 3; ++i3)
    for (int j3 = i3; j3 < 3; ++j3) {
      auto& dst = out.r[sym_index(i3, j3)];
      const auto& ai = a.r[i3];
      const auto& aj = a.r[j3];
      const auto& bi = b.r[i3];
      const auto& bj = b.r[j3];
      for (std::size_t i = 0; i < sz; ++i)
        dst[i] = 0.5 * (ai[i] * bj[i] + aj[i] * bi[i]);
    }
  return out;
}

RealField dot_field(const RealField& a, const RealField& b) {
  if (!(a.grid == b.grid) || a.kind != FieldKind::vector3 ||
      b.kind != FieldKind::vector3)
    throw precondition_error("dot_field: two vectors on one grid required");
  RealField out(a.grid, FieldKind::scalar);
  const std::size_t sz = a.grid.size();
  for (std::size_t i = 0; i < sz; ++i)
    out.r[0][i] = a.r[0][i] * b.r[0][i] + a.r[1][i] * b.r[1][i] +
                  a.r[2][i] * b.r[2][i];
  return out;
}

RealField multiply(const RealField& scalar, const RealField& b) {
  if (!(scalar.grid == b.grid) || scalar.kind != FieldKind::scalar)
    throw precondition_error("multiply: scalar first factor required");
  RealField out(b.grid, b.kind);
  const std::size_t sz = b.grid.size();
  for (int c = 0; c < b.ncomp(); ++c)
    for (std::size_t i = 0; i < sz; ++i)
      out.r[c][i] = scalar.r[0][i] * b.r[c][i];
  return out;
}

RealField to_grid_real(const SpectralField& f, const Grid3& target) {
  return synthesize(resampled(f, target));
}

SpectralField project_to_grid(const RealField& f, const Grid3& store) {
  SpectralField spec = analyze(f);
  SpectralField out = resampled(spec, store);
  zero_nyquist(out);
  return out;
}

}  // namespace eulci
