#include "qpsf/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "qpsf/errors.hpp"

namespace qpsf {
namespace {

// FFTW planning is not thread safe; execution with the new-array interface is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, FftDirection direction) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, direction == FftDirection::forward);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<complex> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                      direction == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void fft(std::span<complex> data, FftDirection direction) {
  if (data.empty()) return;
  fftw_plan plan = plan_cache().get(data.size(), direction);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

MomentumField forward_fourier(const WaveField& psi) {
  const PositionGrid& g = psi.grid();
  const std::size_t n = g.n();
  std::vector<complex> work(psi.values().begin(), psi.values().end());
  for (std::size_t i = 1; i < n; i += 2) work[i] = -work[i];
  fft(work, FftDirection::forward);
  for (std::size_t j = 0; j < n; ++j) {
    work[j] *= std::polar(g.dq(), -g.p(j) * g.q_min() / g.hbar());
  }
  return MomentumField(g, std::move(work));
}

WaveField inverse_fourier(const MomentumField& phi) {
  const PositionGrid& g = phi.grid();
  const std::size_t n = g.n();
  std::vector<complex> work(n);
  for (std::size_t j = 0; j < n; ++j) {
    work[j] = phi[j] * std::polar(1.0, g.p(j) * g.q_min() / g.hbar());
  }
  fft(work, FftDirection::backward);
  const double scale = g.dp() / (2.0 * kPi * g.hbar());
  for (std::size_t i = 0; i < n; ++i) work[i] *= (i % 2 == 0 ? scale : -scale);
  return WaveField(g, std::move(work), Normalize::no);
}

}  // namespace qpsf
