#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace eulci {

using cplx = std::complex<double>;
inline constexpr double TWO_PI = 6.283185307179586476925286766559;
inline constexpr double PI_D = 3.1415926535897932384626433832795;

// Thrown when a data structure is malformed (bad sizes, missing symmetry).
struct structural_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a caller violates a documented precondition.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when requested parameters leave the validity region of a formula.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a runtime regime assumption of the construction fails mid-run.
struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec3i {
  int x = 0, y = 0, z = 0;

  constexpr int& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr int operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  friend constexpr bool operator==(const Vec3i& a, const Vec3i& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend constexpr Vec3i operator-(const Vec3i& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3i operator+(const Vec3i& a, const Vec3i& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Vec3i operator-(const Vec3i& a, const Vec3i& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  constexpr long long norm2() const {
    return (long long)x * x + (long long)y * y + (long long)z * z;
  }
};

struct Vec3d {
  double x = 0, y = 0, z = 0;

  constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  friend constexpr Vec3d operator+(const Vec3d& a, const Vec3d& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Vec3d operator-(const Vec3d& a, const Vec3d& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Vec3d operator*(double s, const Vec3d& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend constexpr Vec3d operator-(const Vec3d& a) { return {-a.x, -a.y, -a.z}; }
  constexpr double dot(const Vec3d& b) const { return x * b.x + y * b.y + z * b.z; }
  constexpr Vec3d cross(const Vec3d& b) const {
    return {y * b.z - z * b.y, z * b.x - x * b.z, x * b.y - y * b.x};
  }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  Vec3d normalized() const {
    double n = norm();
    if (n == 0.0) throw precondition_error("normalized(): zero vector");
    return {x / n, y / n, z / n};
  }
};

inline Vec3d to_vec3d(const Vec3i& k) {
  return {double(k.x), double(k.y), double(k.z)};
}

struct Vec3iHash {
  std::size_t operator()(const Vec3i& k) const noexcept {
    // pack into 21-bit lanes; wavevectors are far below 2^20 in magnitude
    auto enc = [](int v) { return std::uint64_t(std::uint32_t(v + (1 << 20))) & 0x1FFFFF; };
    std::uint64_t h = (enc(k.x) << 42) | (enc(k.y) << 21) | enc(k.z);
    h ^= h >> 33;
    h *= 0xFF51AFD7ED558CCDULL;
    h ^= h >> 33;
    return std::size_t(h);
  }
};

// SplitMix64 step, used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed for replica `replica` of a campaign seeded with `seed`.
inline std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica) {
  return splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (replica + 1)));
}

}  // namespace eulci
