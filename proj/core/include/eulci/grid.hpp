#pragma once

#include <cstddef>
#include <vector>

#include "eulci/util.hpp"

namespace eulci {

// Uniform periodic grid on [0,2*pi)^3 with n points per axis.
// Physical index i along an axis maps to wavenumber i <= n/2 ? i : i - n,
// matching the layout of an unshifted complex-to-complex DFT.
struct Grid3 {
  int n = 0;

  Grid3() = default;
  explicit Grid3(int n_per_axis) : n(n_per_axis) {
    if (n <= 0 || n % 2 != 0)
      throw precondition_error("Grid3: n must be positive and even");
  }

  std::size_t size() const { return std::size_t(n) * n * n; }
  double dx() const { return TWO_PI / n; }

  int wavenumber(int idx) const { return idx <= n / 2 ? idx : idx - n; }
  // inverse of wavenumber(); valid for -n/2+1 <= k <= n/2
  int index_of(int k) const { return k >= 0 ? k : k + n; }

  Vec3i wavevector(int ix, int iy, int iz) const {
    return {wavenumber(ix), wavenumber(iy), wavenumber(iz)};
  }
  std::size_t flat(int ix, int iy, int iz) const {
    return (std::size_t(ix) * n + iy) * n + iz;
  }
  std::size_t flat_of_wave(const Vec3i& k) const {
    return flat(index_of(k.x), index_of(k.y), index_of(k.z));
  }
  Vec3d point(int ix, int iy, int iz) const {
    return {ix * dx(), iy * dx(), iz * dx()};
  }
  // largest wavenumber representable without ambiguity (Nyquist excluded)
  int max_wave() const { return n / 2 - 1; }
  bool representable(const Vec3i& k) const {
    auto ok = [this](int c) { return c > -n / 2 && c <= n / 2; };
    return ok(k.x) && ok(k.y) && ok(k.z);
  }
  friend bool operator==(const Grid3& a, const Grid3& b) { return a.n == b.n; }
};

// Uniform time lattice t_j = j * dt, j = 0..steps covering [0, t_end].
struct TimeGrid {
  double dt = 0;
  long steps = 0;

  TimeGrid() = default;
  TimeGrid(double dt_, long steps_) : dt(dt_), steps(steps_) {
    if (dt <= 0 || steps <= 0) throw precondition_error("TimeGrid: dt, steps > 0");
  }
  double t_end() const { return dt * steps; }
  double time(long j) const { return dt * j; }
  long nearest_tick(double t) const {
    long j = std::lround(t / dt);
    return j < 0 ? 0 : (j > steps ? steps : j);
  }
};

}  // namespace eulci
