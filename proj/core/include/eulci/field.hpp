#pragma once

#include <vector>

#include "eulci/grid.hpp"
#include "eulci/util.hpp"

namespace eulci {

// Component count doubles as the kind tag.
enum class FieldKind : int { scalar = 1, vector3 = 3, symtensor = 6 };

// Row-major index into the six stored components of a symmetric 3x3 tensor,
// order (xx, xy, xz, yy, yz, zz).
inline constexpr int sym_index(int a, int b) {
  if (a > b) { int t = a; a = b; b = t; }
  return a == 0 ? b : (a == 1 ? 2 + b : 5);
}

// Fourier coefficients of a periodic field on a Grid3, one dense cube per
// component, laid out like the grid (kx outermost).  A field representing a
// real-valued function keeps Hermitian symmetry c(-k) = conj(c(k)); helpers
// in ops.hpp enforce and verify this.
struct SpectralField {
  Grid3 grid;
  FieldKind kind = FieldKind::scalar;
  std::vector<std::vector<cplx>> c;

  SpectralField() = default;
  SpectralField(const Grid3& g, FieldKind k) : grid(g), kind(k) {
    c.assign(ncomp(), std::vector<cplx>(g.size(), cplx(0, 0)));
  }

  int ncomp() const { return int(kind); }

  cplx& at(int comp, const Vec3i& k) { return c[comp][grid.flat_of_wave(k)]; }
  cplx at(int comp, const Vec3i& k) const { return c[comp][grid.flat_of_wave(k)]; }

  void set_zero() {
    for (auto& comp : c) std::fill(comp.begin(), comp.end(), cplx(0, 0));
  }

  SpectralField& operator+=(const SpectralField& o) {
    require_same_shape(o);
    for (int m = 0; m < ncomp(); ++m)
      for (std::size_t i = 0; i < c[m].size(); ++i) c[m][i] += o.c[m][i];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    require_same_shape(o);
    for (int m = 0; m < ncomp(); ++m)
      for (std::size_t i = 0; i < c[m].size(); ++i) c[m][i] -= o.c[m][i];
    return *this;
  }
  SpectralField& operator*=(double s) {
    for (auto& comp : c)
      for (auto& v : comp) v *= s;
    return *this;
  }

  void require_same_shape(const SpectralField& o) const {
    if (!(grid == o.grid) || kind != o.kind)
      throw precondition_error("spectral fields have mismatched shape");
  }

  template <class F>
  void for_each_mode(F&& f) const {
    for (int ix = 0; ix < grid.n; ++ix)
      for (int iy = 0; iy < grid.n; ++iy)
        for (int iz = 0; iz < grid.n; ++iz)
          f(grid.wavevector(ix, iy, iz), grid.flat(ix, iy, iz));
  }
};

// Point values of a periodic field on the same grid, one dense cube of
// doubles per component.
struct RealField {
  Grid3 grid;
  FieldKind kind = FieldKind::scalar;
  std::vector<std::vector<double>> r;

  RealField() = default;
  RealField(const Grid3& g, FieldKind k) : grid(g), kind(k) {
    r.assign(ncomp(), std::vector<double>(g.size(), 0.0));
  }

  int ncomp() const { return int(kind); }

  double& at(int comp, std::size_t flat) { return r[comp][flat]; }
  double at(int comp, std::size_t flat) const { return r[comp][flat]; }

  RealField& operator+=(const RealField& o) {
    if (!(grid == o.grid) || kind != o.kind)
      throw precondition_error("real fields have mismatched shape");
    for (int m = 0; m < ncomp(); ++m)
      for (std::size_t i = 0; i < r[m].size(); ++i) r[m][i] += o.r[m][i];
    return *this;
  }
  RealField& operator-=(const RealField& o) {
    if (!(grid == o.grid) || kind != o.kind)
      throw precondition_error("real fields have mismatched shape");
    for (int m = 0; m < ncomp(); ++m)
      for (std::size_t i = 0; i < r[m].size(); ++i) r[m][i] -= o.r[m][i];
    return *this;
  }
  RealField& operator*=(double s) {
    for (auto& comp : r)
      for (auto& v : comp) v *= s;
    return *this;
  }
};

inline SpectralField operator*(double s, SpectralField f) { f *= s; return f; }
inline SpectralField operator+(SpectralField a, const SpectralField& b) { a += b; return a; }
inline SpectralField operator-(SpectralField a, const SpectralField& b) { a -= b; return a; }
inline RealField operator*(double s, RealField f) { f *= s; return f; }
inline RealField operator+(RealField a, const RealField& b) { a += b; return a; }
inline RealField operator-(RealField a, const RealField& b) { a -= b; return a; }

}  // namespace eulci
