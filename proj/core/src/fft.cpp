#include "eulci/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace eulci {

namespace {

std::mutex g_plan_mutex;
std::map<std::pair<int, bool>, fftw_plan> g_plans;

// FFTW_ESTIMATE keeps planning deterministic (no timing-dependent algorithm
// choice); FFTW_UNALIGNED lets one in-place plan serve every buffer.
fftw_plan plan_for(int n, bool forward) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_pair(n, forward);
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second;

  std::vector<cplx> scratch(std::size_t(n) * n * n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p = fftw_plan_dft_3d(n, n, n, buf, buf,
                                 forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw structural_error("fftw_plan_dft_3d failed");
  g_plans.emplace(key, p);
  return p;
}

}  // namespace

void dft3_inplace(const Grid3& g, cplx* data, bool forward) {
  fftw_plan p = plan_for(g.n, forward);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, buf, buf);
}

SpectralField analyze(const RealField& f) {
  SpectralField out(f.grid, f.kind);
  const double scale = 1.0 / double(f.grid.size());
  std::vector<cplx> buf(f.grid.size());
  for (int m = 0; m < f.ncomp(); ++m) {
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = cplx(f.r[m][i], 0.0);
    dft3_inplace(f.grid, buf.data(), true);
    for (std::size_t i = 0; i < buf.size(); ++i) out.c[m][i] = buf[i] * scale;
  }
  return out;
}

std::vector<double> synthesize_comp(const SpectralField& f, int comp) {
  std::vector<cplx> buf(f.c[comp]);
  dft3_inplace(f.grid, buf.data(), false);
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

RealField synthesize(const SpectralField& f) {
  RealField out(f.grid, f.kind);
  for (int m = 0; m < f.ncomp(); ++m) out.r[m] = synthesize_comp(f, m);
  return out;
}

}  // namespace eulci
