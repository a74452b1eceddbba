#include "qpsf/distributions.hpp"

#include <cmath>
#include <sstream>

#include "qpsf/errors.hpp"
#include "qpsf/fourier.hpp"
#include "qpsf/log.hpp"
#include "qpsf/parallel.hpp"

namespace qpsf {
namespace {

constexpr double kKernelTolerance = 1e-12;
constexpr double kEdgeWarning = 1e-6;

struct MomentumWindow {
  std::size_t first = 0;
  std::size_t count = 0;
};

MomentumWindow momentum_window(const PositionGrid& g, const PhaseGrid& pg) {
  return {conjugate_window_start(g, pg), pg.p.count};
}

PhaseField slice_columns(const PhaseGrid& pg, const std::vector<complex>& full, std::size_t n, MomentumWindow w,
                         FieldTag tag) {
  std::vector<complex> out(pg.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < w.count; ++j) out[i * w.count + j] = full[i * n + w.first + j];
  }
  return PhaseField(pg, std::move(out), std::move(tag));
}

// Psi on the 2x lattice: even entries Psi(q_i), odd entries Psi(q_i + dq/2).
std::vector<complex> interleaved(const WaveField& psi) {
  const auto half = half_step_samples(psi);
  std::vector<complex> out(2 * psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    out[2 * i] = psi[i];
    out[2 * i + 1] = half[i];
  }
  return out;
}

// Product conj(psi2[m - k]) psi2[m + k] on the half-step lattice, zero outside it.
void lag_product(const std::vector<complex>& psi2, long k, std::vector<complex>& out) {
  const long len = static_cast<long>(psi2.size());
  for (long m = 0; m < len; ++m) {
    const long lo = m - k;
    const long hi = m + k;
    out[m] = (lo >= 0 && lo < len && hi >= 0 && hi < len) ? std::conj(psi2[lo]) * psi2[hi] : complex{};
  }
}

// Kernel value at the l-th momentum lag; the Nyquist bin l = -n is averaged
// with its alias l = +n so that conj(Phi_sigma) = Phi_-sigma holds on the lattice.
complex kernel_at(const CohenKernel& kernel, double q_lag, long l, long n, double dp, double hbar) {
  if (l == -n) {
    return 0.5 * (kernel(q_lag, -static_cast<double>(n) * dp, hbar) + kernel(q_lag, static_cast<double>(n) * dp, hbar));
  }
  return kernel(q_lag, static_cast<double>(l) * dp, hbar);
}

// Full Cohen field on the conjugate lattice (n x n, q-major).
//   R(q_i, q'_k) = (1/2 pi hbar) sum_l exp(i p'_l q_i / hbar) Phi A(q'_k, p'_l) dp
//   P(q_i, p_j)  = (1/2 pi hbar) sum_k exp(-i q'_k p_j / hbar) R(q_i, q'_k) dq
std::vector<complex> cohen_full(const WaveField& psi, const CohenKernel* kernel) {
  const PositionGrid& g = psi.grid();
  const std::size_t n = g.n();
  const long ln = static_cast<long>(n);
  const std::size_t width = 2 * n;
  const auto psi2 = interleaved(psi);
  const double dq = g.dq();
  const double dp = g.dp();
  const double hbar = g.hbar();

  // R stored as n rows (q_i) by 2n lag columns (k + n).
  std::vector<complex> lagged(n * width, complex{});
  parallel_for(width - 1, [&](std::size_t idx) {
    const long k = static_cast<long>(idx) + 1 - ln;
    std::vector<complex> r(width);
    lag_product(psi2, k, r);
    if (kernel != nullptr) {
      fft(r, FftDirection::forward);
      const double q_lag = static_cast<double>(k) * dq;
      for (std::size_t L = 0; L < width; ++L) {
        const long l = L < n ? static_cast<long>(L) : static_cast<long>(L) - static_cast<long>(width);
        r[L] *= kernel_at(*kernel, q_lag, l, ln, dp, hbar);
      }
      fft(r, FftDirection::backward);
      const double scale = 1.0 / static_cast<double>(width);
      for (auto& v : r) v *= scale;
    }
    const std::size_t col = static_cast<std::size_t>(k + ln);
    for (std::size_t i = 0; i < n; ++i) lagged[i * width + col] = r[2 * i];
  });

  std::vector<complex> full(n * n);
  const double prefactor = dq / (2.0 * kPi * hbar);
  parallel_for(n, [&](std::size_t i) {
    std::vector<complex> folded(n, complex{});
    for (long k = 1 - ln; k < ln; ++k) {
      const complex v = lagged[i * width + static_cast<std::size_t>(k + ln)];
      const std::size_t bin = static_cast<std::size_t>(((k % ln) + ln) % ln);
      folded[bin] += (k % 2 == 0) ? v : -v;
    }
    fft(folded, FftDirection::forward);
    for (std::size_t j = 0; j < n; ++j) full[i * n + j] = prefactor * folded[j];
  });

  // A kernel can move weight outside the state's own support (sigma > 1 puts
  // interference beyond both components); the q axis is periodic here, so
  // anything reaching the edge is overlapping its image.
  if (kernel != nullptr && n > 1) {
    double peak = 0.0;
    double edge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double v = std::abs(full[i * n + j]);
        peak = std::max(peak, v);
        if (i == 0 || i == n - 1) edge = std::max(edge, v);
      }
    }
    if (peak > 0.0 && edge / peak > kEdgeWarning) {
      std::ostringstream msg;
      msg << kernel->name() << " field not negligible at the q edges (ratio " << edge / peak
          << "); periodic images overlap, widen the grid";
      warn(msg.str());
    }
  }
  return full;
}

FieldTag cohen_tag(const CohenKernel& kernel) {
  FieldTag tag;
  tag.kind = DistributionKind::cohen;
  tag.label = kernel.name();
  return tag;
}

}  // namespace

CohenKernel::CohenKernel(std::string name, Evaluator evaluator) : name_(std::move(name)), evaluator_(std::move(evaluator)) {
  if (!evaluator_) throw ConfigurationError("Cohen kernel needs an evaluator");
}

void CohenKernel::validate(const Axis& q_lags, const Axis& p_lags, double hbar) const {
  auto fail = [&](double ql, double pl, complex v) {
    std::ostringstream msg;
    msg << "kernel '" << name_ << "' violates Phi(q',0) = 1 = Phi(0,p') at (" << ql << ", " << pl << "): " << v;
    throw ValidationError(msg.str());
  };
  for (std::size_t k = 0; k < q_lags.count; ++k) {
    const double ql = q_lags.at(k);
    const complex v = (*this)(ql, 0.0, hbar);
    if (std::abs(v - 1.0) > kKernelTolerance) fail(ql, 0.0, v);
  }
  for (std::size_t l = 0; l < p_lags.count; ++l) {
    const double pl = p_lags.at(l);
    const complex v = (*this)(0.0, pl, hbar);
    if (std::abs(v - 1.0) > kKernelTolerance) fail(0.0, pl, v);
  }
}

CohenKernel CohenKernel::unit() {
  return CohenKernel("unit", [](double, double, double) { return complex{1.0, 0.0}; });
}

CohenKernel CohenKernel::kirkwood_rihaczek() {
  return CohenKernel("kr", [](double ql, double pl, double hbar) { return std::polar(1.0, -pl * ql / (2.0 * hbar)); });
}

CohenKernel CohenKernel::margenau_hill() {
  return CohenKernel("mh", [](double ql, double pl, double hbar) { return complex{std::cos(pl * ql / (2.0 * hbar)), 0.0}; });
}

CohenKernel sigma_kernel(double sigma) {
  if (!std::isfinite(sigma)) throw ConfigurationError("sigma must be finite");
  std::ostringstream name;
  name << "sigma=" << sigma;
  return CohenKernel(name.str(), [sigma](double ql, double pl, double hbar) {
    return std::polar(1.0, -sigma * ql * pl / (2.0 * hbar));
  });
}

AmbiguityField::AmbiguityField(PhaseGrid lags, std::vector<complex> values) : grid_(lags), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ConfigurationError("ambiguity field size does not match its lag grid");
}

std::vector<complex> half_step_samples(const WaveField& psi) {
  const PositionGrid& g = psi.grid();
  const MomentumField phi = forward_fourier(psi);
  std::vector<complex> shifted(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) shifted[j] = phi[j] * std::polar(1.0, g.p(j) * g.dq() / (2.0 * g.hbar()));
  const WaveField half = inverse_fourier(MomentumField(g, std::move(shifted)));
  return {half.values().begin(), half.values().end()};
}

PhaseField kirkwood_rihaczek(const WaveField& psi, const PhaseGrid& grid) {
  const MomentumWindow w = momentum_window(psi.grid(), grid);
  const PositionGrid& g = psi.grid();
  const MomentumField phi = forward_fourier(psi);
  const double prefactor = 1.0 / (2.0 * kPi * g.hbar());
  std::vector<complex> out(grid.size());
  parallel_for(g.n(), [&](std::size_t i) {
    const double q = g.q(i);
    for (std::size_t j = 0; j < w.count; ++j) {
      const std::size_t jj = w.first + j;
      out[i * w.count + j] = prefactor * psi[i] * std::polar(1.0, -g.p(jj) * q / g.hbar()) * std::conj(phi[jj]);
    }
  });
  return PhaseField(grid, std::move(out), FieldTag{DistributionKind::kr, 0.0, {}});
}

PhaseField margenau_hill(const WaveField& psi, const PhaseGrid& grid) {
  PhaseField kr = kirkwood_rihaczek(psi, grid);
  std::vector<complex> out(kr.values().begin(), kr.values().end());
  for (auto& v : out) v = complex{v.real(), 0.0};
  return PhaseField(grid, std::move(out), FieldTag{DistributionKind::mh, 0.0, {}});
}

PhaseField wigner(const WaveField& psi, const PhaseGrid& grid) {
  const MomentumWindow w = momentum_window(psi.grid(), grid);
  const auto full = cohen_full(psi, nullptr);
  return slice_columns(grid, full, psi.size(), w, FieldTag{DistributionKind::wigner, 0.0, {}});
}

AmbiguityField ambiguity(const WaveField& psi) {
  const PositionGrid& g = psi.grid();
  const std::size_t n = g.n();
  const long ln = static_cast<long>(n);
  const std::size_t width = 2 * n;
  const auto psi2 = interleaved(psi);
  const PhaseGrid lags(Axis{-static_cast<double>(n) * g.dq(), g.dq(), width},
                       Axis{-static_cast<double>(n) * g.dp(), g.dp(), width}, g.hbar());
  std::vector<complex> values(width * width, complex{});
  parallel_for(width, [&](std::size_t row) {
    const long k = static_cast<long>(row) - ln;
    std::vector<complex> r(width);
    lag_product(psi2, k, r);
    fft(r, FftDirection::forward);
    for (std::size_t L = 0; L < width; ++L) {
      const long l = L < n ? static_cast<long>(L) : static_cast<long>(L) - static_cast<long>(width);
      const double p_lag = static_cast<double>(l) * g.dp();
      const complex phase = std::polar(0.5 * g.dq(), -p_lag * g.q_min() / g.hbar());
      values[row * width + static_cast<std::size_t>(l + ln)] = r[L] * phase;
    }
  });
  return AmbiguityField(lags, std::move(values));
}

PhaseField cohen(const WaveField& psi, const CohenKernel& kernel, const PhaseGrid& grid, KernelCheck check) {
  const MomentumWindow w = momentum_window(psi.grid(), grid);
  const PositionGrid& g = psi.grid();
  if (check == KernelCheck::enforce) {
    const std::size_t width = 2 * g.n();
    kernel.validate(Axis{-static_cast<double>(g.n()) * g.dq(), g.dq(), width},
                    Axis{-static_cast<double>(g.n()) * g.dp(), g.dp(), width}, g.hbar());
  }
  const auto full = cohen_full(psi, &kernel);
  return slice_columns(grid, full, g.n(), w, cohen_tag(kernel));
}

PhaseField sigma_kirkwood_rihaczek(const WaveField& psi, double sigma, const PhaseGrid& grid) {
  PhaseField field = cohen(psi, sigma_kernel(sigma), grid);
  std::vector<complex> values(field.values().begin(), field.values().end());
  return PhaseField(grid, std::move(values), FieldTag{DistributionKind::sigma_kr, sigma, {}});
}

PhaseField product_distribution(const WaveField& psi, const PhaseGrid& grid) {
  const MomentumWindow w = momentum_window(psi.grid(), grid);
  const PositionGrid& g = psi.grid();
  const MomentumField phi = forward_fourier(psi);
  const double prefactor = 1.0 / (2.0 * kPi * g.hbar());
  std::vector<complex> out(grid.size());
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = 0; j < w.count; ++j) {
      out[i * w.count + j] = prefactor * std::norm(psi[i]) * std::norm(phi[w.first + j]);
    }
  }
  return PhaseField(grid, std::move(out), FieldTag{DistributionKind::product, 0.0, {}});
}

}  // namespace qpsf
