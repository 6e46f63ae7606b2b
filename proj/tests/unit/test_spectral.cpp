#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eulci/fft.hpp"
#include "eulci/ops.hpp"

using namespace eulci;

namespace {

RealField random_real(const Grid3& g, FieldKind kind, unsigned seed) {
  RealField f(g, kind);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& comp : f.r)
    for (auto& v : comp) v = u(rng);
  return f;
}

// Hermitian band-limited field with independent Gaussian modes.
SpectralField random_band_limited(const Grid3& g, FieldKind kind, int K,
                                  unsigned seed) {
  SpectralField f(g, kind);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto& comp : f.c)
    for (auto& v : comp) v = cplx(gauss(rng), gauss(rng));
  truncate_linf(f, K);
  zero_nyquist(f);
  hermitian_symmetrize(f);
  return f;
}

double max_pointwise_diff(const RealField& a, const RealField& b) {
  double m = 0;
  for (int c = 0; c < a.ncomp(); ++c)
    for (std::size_t i = 0; i < a.r[c].size(); ++i)
      m = std::max(m, std::abs(a.r[c][i] - b.r[c][i]));
  return m;
}

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0;
  for (int c = 0; c < a.ncomp(); ++c)
    for (std::size_t i = 0; i < a.c[c].size(); ++i)
      m = std::max(m, std::abs(a.c[c][i] - b.c[c][i]));
  return m;
}

double max_coeff(const SpectralField& a) {
  double m = 0;
  for (const auto& comp : a.c)
    for (const auto& v : comp) m = std::max(m, std::abs(v));
  return m;
}

double l2sq(const SpectralField& a) {
  double s = 0;
  for (const auto& comp : a.c)
    for (const auto& v : comp) s += std::norm(v);
  return s;
}

}  // namespace

TEST_CASE("analyze then synthesize is the identity on point values") {
  Grid3 g(24);
  RealField f = random_real(g, FieldKind::vector3, 7);
  RealField back = synthesize(analyze(f));
  CHECK(max_pointwise_diff(f, back) < 1e-12);
}

TEST_CASE("gradient matches hand-derived derivative") {
  Grid3 g(32);
  RealField f(g, FieldKind::scalar);
  RealField expect(g, FieldKind::vector3);
  for (int ix = 0; ix < g.n; ++ix)
    for (int iy = 0; iy < g.n; ++iy)
      for (int iz = 0; iz < g.n; ++iz) {
        const Vec3d p = g.point(ix, iy, iz);
        const std::size_t i = g.flat(ix, iy, iz);
        f.r[0][i] = std::sin(2 * p.x) * std::cos(p.y) + std::cos(3 * p.z);
        expect.r[0][i] = 2 * std::cos(2 * p.x) * std::cos(p.y);
        expect.r[1][i] = -std::sin(2 * p.x) * std::sin(p.y);
        expect.r[2][i] = -3 * std::sin(3 * p.z);
      }
  RealField got = synthesize(gradient(analyze(f)));
  CHECK(max_pointwise_diff(got, expect) < 1e-10);
}

TEST_CASE("curl and divergence match hand-derived fields") {
  Grid3 g(32);
  RealField v(g, FieldKind::vector3);
  RealField w(g, FieldKind::vector3);
  RealField curl_expect(g, FieldKind::vector3);
  RealField divw_expect(g, FieldKind::scalar);
  for (int ix = 0; ix < g.n; ++ix)
    for (int iy = 0; iy < g.n; ++iy)
      for (int iz = 0; iz < g.n; ++iz) {
        const Vec3d p = g.point(ix, iy, iz);
        const std::size_t i = g.flat(ix, iy, iz);
        v.r[0][i] = std::sin(p.z);
        v.r[1][i] = std::sin(p.x);
        v.r[2][i] = std::sin(p.y);
        curl_expect.r[0][i] = std::cos(p.y);
        curl_expect.r[1][i] = std::cos(p.z);
        curl_expect.r[2][i] = std::cos(p.x);
        w.r[0][i] = std::sin(p.x);
        w.r[1][i] = std::sin(2 * p.y);
        w.r[2][i] = std::cos(p.z);
        divw_expect.r[0][i] =
            std::cos(p.x) + 2 * std::cos(2 * p.y) - std::sin(p.z);
      }
  CHECK(max_pointwise_diff(synthesize(curl(analyze(v))), curl_expect) < 1e-10);
  CHECK(max_pointwise_diff(synthesize(divergence(analyze(w))), divw_expect) <
        1e-10);
  // v above has zero divergence
  CHECK(divergence_defect(analyze(v)) < 1e-12);
}

TEST_CASE("divergence of a symmetric tensor") {
  // T_xy = T_yx = sin x, all else zero: div T = (0, cos x, 0)
  Grid3 g(16);
  RealField T(g, FieldKind::symtensor);
  RealField expect(g, FieldKind::vector3);
  for (int ix = 0; ix < g.n; ++ix)
    for (int iy = 0; iy < g.n; ++iy)
      for (int iz = 0; iz < g.n; ++iz) {
        const Vec3d p = g.point(ix, iy, iz);
        const std::size_t i = g.flat(ix, iy, iz);
        T.r[sym_index(0, 1)][i] = std::sin(p.x);
        expect.r[1][i] = std::cos(p.x);
      }
  CHECK(max_pointwise_diff(synthesize(divergence(analyze(T))), expect) < 1e-11);
}

TEST_CASE("Leray projection kills divergence, is idempotent, is orthogonal") {
  Grid3 g(32);
  SpectralField v = random_band_limited(g, FieldKind::vector3, 6, 11);
  SpectralField pv = v;
  leray_project(pv);
  CHECK(divergence_defect(pv) < 1e-12 * max_coeff(v));

  SpectralField ppv = pv;
  leray_project(ppv);
  CHECK(max_coeff_diff(ppv, pv) < 1e-13 * max_coeff(v));

  SpectralField rest = v;
  rest -= pv;
  const double total = l2sq(v);
  CHECK(std::abs(total - l2sq(pv) - l2sq(rest)) < 1e-10 * total);

  // the zero mode is untouched
  SpectralField m(g, FieldKind::vector3);
  m.c[0][0] = cplx(2.5, 0);
  leray_project(m);
  CHECK(m.c[0][0] == cplx(2.5, 0));
}

TEST_CASE("inverse divergence satisfies its three defining identities") {
  Grid3 g(32);
  SpectralField v = random_band_limited(g, FieldKind::vector3, 7, 23);
  remove_mean(v);
  const double scale = max_coeff(v);

  SpectralField R = inverse_divergence(v);
  CHECK(max_coeff_diff(divergence(R), v) < 1e-12 * scale);

  SpectralField tr = trace_of(R);
  CHECK(max_coeff(tr) < 1e-13 * scale);

  CHECK(hermitian_defect(R) < 1e-12 * scale);
}

TEST_CASE("inverse divergence reproduces frozen per-mode values") {
  // independent evaluation of the multiplier at k=(1,2,2),
  // v = (1+2i, -3+0.5i, 0.25-i)
  Grid3 g(16);
  SpectralField v(g, FieldKind::vector3);
  const Vec3i k{1, 2, 2};
  const cplx vk[3] = {{1, 2}, {-3, 0.5}, {0.25, -1}};
  for (int c = 0; c < 3; ++c) {
    v.at(c, k) = vk[c];
    v.at(c, -k) = std::conj(vk[c]);
  }
  SpectralField R = inverse_divergence(v);
  const cplx expect[6] = {
      {0.38271604938271597, -0.5},
      {0.48765432098765432, 0.055555555555555552},
      {0.32098765432098764, -0.30555555555555558},
      {0.1419753086419753, 0.9722222222222221},
      {-0.13580246913580246, 0.49999999999999994},
      {-0.52469135802469136, -0.47222222222222221}};
  for (int c = 0; c < 6; ++c)
    CHECK(std::abs(R.at(c, k) - expect[c]) < 1e-14);
}

TEST_CASE("inverse divergence rejects a nonzero mean") {
  Grid3 g(8);
  SpectralField v(g, FieldKind::vector3);
  v.at(1, {0, 0, 0}) = cplx(1.0, 0);
  v.at(0, {1, 0, 0}) = cplx(0.5, 0.5);
  v.at(0, {-1, 0, 0}) = cplx(0.5, -0.5);
  CHECK_THROWS_AS((void)inverse_divergence(v), precondition_error);
}

TEST_CASE("dealiased product equals the direct convolution") {
  Grid3 g(12);
  const int K = 2;  // 2K = 4 <= n/2 - 1 = 5, so the product band fits
  SpectralField a = random_band_limited(g, FieldKind::scalar, K, 31);
  SpectralField b = random_band_limited(g, FieldKind::scalar, K, 37);

  RealField prod = multiply(synthesize(a), synthesize(b));
  SpectralField got = project_to_grid(prod, g);

  SpectralField want(g, FieldKind::scalar);
  for (int x1 = -K; x1 <= K; ++x1)
    for (int y1 = -K; y1 <= K; ++y1)
      for (int z1 = -K; z1 <= K; ++z1)
        for (int x2 = -K; x2 <= K; ++x2)
          for (int y2 = -K; y2 <= K; ++y2)
            for (int z2 = -K; z2 <= K; ++z2) {
              const Vec3i k1{x1, y1, z1}, k2{x2, y2, z2};
              want.at(0, k1 + k2) += a.at(0, k1) * b.at(0, k2);
            }
  CHECK(max_coeff_diff(got, want) < 1e-13);
}

TEST_CASE("pointwise tensor algebra on constant fields") {
  Grid3 g(8);
  RealField a(g, FieldKind::vector3), b(g, FieldKind::vector3);
  const double av[3] = {1, 2, 3}, bv[3] = {4, 5, 6};
  for (int c = 0; c < 3; ++c) {
    std::fill(a.r[c].begin(), a.r[c].end(), av[c]);
    std::fill(b.r[c].begin(), b.r[c].end(), bv[c]);
  }
  RealField S = sym_outer(a, b);
  const double expect[6] = {4.0, 6.5, 9.0, 10.0, 13.5, 18.0};
  for (int c = 0; c < 6; ++c) CHECK(S.r[c][0] == doctest::Approx(expect[c]));
  RealField d = dot_field(a, b);
  CHECK(d.r[0][0] == doctest::Approx(32.0));
}

TEST_CASE("resampling preserves the common band exactly") {
  Grid3 small(16), big(32);
  SpectralField f = random_band_limited(small, FieldKind::vector3, 5, 41);
  SpectralField up = resampled(f, big);
  SpectralField back = resampled(up, small);
  CHECK(max_coeff_diff(back, f) == 0.0);
}

TEST_CASE("ball and box truncations use the right norms") {
  Grid3 g(16);
  SpectralField f(g, FieldKind::scalar);
  const Vec3i k{3, 4, 0};  // |k| = 5, |k|_inf = 4
  f.at(0, k) = cplx(1, 0);

  SpectralField ball = f;
  truncate_ball(ball, 5.0);
  CHECK(ball.at(0, k) == cplx(1, 0));
  truncate_ball(ball, 4.9);
  CHECK(ball.at(0, k) == cplx(0, 0));

  SpectralField box = f;
  truncate_linf(box, 4);
  CHECK(box.at(0, k) == cplx(1, 0));
  truncate_linf(box, 3);
  CHECK(box.at(0, k) == cplx(0, 0));
}

TEST_CASE("hermitian defect measures the broken pair and symmetrize fixes it") {
  Grid3 g(8);
  SpectralField f(g, FieldKind::scalar);
  f.at(0, {1, 2, 0}) = cplx(1, 1);
  f.at(0, {-1, -2, 0}) = cplx(1, -1);
  CHECK(hermitian_defect(f) < 1e-16);

  f.at(0, {-1, -2, 0}) = cplx(1, -1.5);
  CHECK(hermitian_defect(f) == doctest::Approx(0.5));

  hermitian_symmetrize(f);
  CHECK(hermitian_defect(f) < 1e-16);
  CHECK(f.at(0, {1, 2, 0}) == cplx(1, 1.25));
}
