#include "qpsf/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "qpsf/errors.hpp"
#include "qpsf/fourier.hpp"

namespace qpsf {
namespace {

// Edge amplitude (relative to peak) above which a state counts as truncated.
constexpr double kTruncationRatio = 1e-3;

double momentum_edge_ratio(const WaveField& psi) {
  const MomentumField phi = forward_fourier(psi);
  double peak = 0.0;
  for (const auto& v : phi.values()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(phi.values().front()), std::abs(phi.values().back())) / peak;
}

WaveField finish(const PositionGrid& grid, std::vector<complex> values, const char* what,
                 bool check_position_edges = true) {
  WaveField psi(grid, std::move(values));
  if (check_position_edges && psi.edge_ratio() > kTruncationRatio) {
    std::ostringstream msg;
    msg << what << " does not fit on the position grid (edge ratio " << psi.edge_ratio() << ")";
    throw TruncationError(msg.str());
  }
  if (const double r = momentum_edge_ratio(psi); r > kTruncationRatio) {
    std::ostringstream msg;
    msg << what << " is not resolved by the grid spacing (momentum edge ratio " << r << ")";
    throw TruncationError(msg.str());
  }
  return psi;
}

// <q|alpha> for the coherent state, including the exp(-|alpha|^2/2) factor.
complex coherent_amplitude(complex alpha, double q, double hbar) {
  const double x = q / std::sqrt(hbar);
  const complex exponent = -0.5 * x * x + std::sqrt(2.0) * alpha * x - 0.5 * alpha * alpha - 0.5 * std::norm(alpha);
  return std::pow(kPi * hbar, -0.25) * std::exp(exponent);
}

// <q| D(alpha) S(r) |0> for real signed squeeze r.
complex squeezed_amplitude(complex alpha, double r, double q, double hbar) {
  const double w = std::sqrt(hbar);
  const double q0 = std::sqrt(2.0) * w * alpha.real();
  const double p0 = std::sqrt(2.0) * (hbar / w) * alpha.imag();
  const double x = (q - q0) / w;
  const double envelope = std::pow(kPi * hbar, -0.25) * std::exp(0.5 * r - 0.5 * std::exp(2.0 * r) * x * x);
  return std::polar(envelope, (p0 * q - 0.5 * q0 * p0) / hbar);
}

double signed_squeeze(const SqueezeParams& s) {
  const double phi = std::remainder(s.phi_xi(), 2.0 * kPi);
  if (std::abs(phi) < 1e-12) return s.xi_abs();
  if (std::abs(std::abs(phi) - kPi) < 1e-12) return -s.xi_abs();
  throw ConfigurationError("wavefunction squeezing supports phi_xi in {0, pi} only");
}

}  // namespace

SqueezeParams::SqueezeParams(double xi_abs, double phi_xi) : xi_abs_(xi_abs), phi_xi_(phi_xi) {
  if (!(xi_abs >= 0.0) || !std::isfinite(xi_abs)) throw ConfigurationError("|xi| must be finite and >= 0");
  if (!std::isfinite(phi_xi)) throw ConfigurationError("phi_xi must be finite");
}

double SqueezeParams::mu() const { return std::cosh(xi_abs_); }

complex SqueezeParams::nu() const { return std::polar(std::sinh(xi_abs_), phi_xi_); }

WaveField coherent_wave(const CoherentParams& params, const PositionGrid& grid) {
  if (!std::isfinite(std::abs(params.alpha0))) throw ConfigurationError("alpha0 must be finite");
  std::vector<complex> v(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i) v[i] = coherent_amplitude(params.alpha0, grid.q(i), grid.hbar());
  return finish(grid, std::move(v), "coherent state");
}

WaveField fock_wave(int n, const PositionGrid& grid) {
  if (n < 0 || n > 50) throw ConfigurationError("Fock index must lie in [0, 50]");
  const double w = std::sqrt(grid.hbar());
  std::vector<complex> v(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i) {
    const double x = grid.q(i) / w;
    // psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1}
    double prev = 0.0;
    double cur = std::pow(kPi * grid.hbar(), -0.25) * std::exp(-0.5 * x * x);
    for (int k = 0; k < n; ++k) {
      const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
    }
    v[i] = cur;
  }
  return finish(grid, std::move(v), "Fock state");
}

double cat_normalization(complex alpha0) { return 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0 * std::norm(alpha0))); }

WaveField cat_wave(const CoherentParams& params, const PositionGrid& grid) {
  const double norm = cat_normalization(params.alpha0);
  std::vector<complex> v(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i) {
    v[i] = norm * (coherent_amplitude(params.alpha0, grid.q(i), grid.hbar()) +
                   coherent_amplitude(-params.alpha0, grid.q(i), grid.hbar()));
  }
  return finish(grid, std::move(v), "cat state");
}

WaveField plane_wave_pair(const PlaneWavePairParams& params, const PositionGrid& grid) {
  const double dp = params.p2 - params.p1;
  if (dp == 0.0) throw ConfigurationError("plane-wave pair needs p1 != p2");
  if (!(params.window_width > 0.0)) throw ConfigurationError("window width must be positive");
  const double fringe = 2.0 * kPi * grid.hbar() / std::abs(dp);
  if (params.window_width < 5.0 * fringe) {
    throw ConfigurationError("window width must be at least 5 * 2 pi hbar / |p2 - p1| to resolve the fringes");
  }
  if (grid.span() < 4.0 * params.window_width) {
    throw ConfigurationError("grid must span at least 4 window widths");
  }
  const double L2 = params.window_width * params.window_width;
  std::vector<complex> v(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i) {
    const double q = grid.q(i);
    v[i] = (std::polar(1.0, params.p1 * q / grid.hbar()) + std::polar(1.0, params.p2 * q / grid.hbar())) *
           std::exp(-0.5 * q * q / L2);
  }
  return finish(grid, std::move(v), "plane-wave pair", false);
}

WaveField squeezed_coherent_wave(const CoherentParams& coherent, const SqueezeParams& squeeze,
                                 const PositionGrid& grid) {
  if (squeeze.xi_abs() > 3.0) throw ConfigurationError("wavefunction squeezing limited to |xi| <= 3");
  const double r = signed_squeeze(squeeze);
  std::vector<complex> v(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i) v[i] = squeezed_amplitude(coherent.alpha0, r, grid.q(i), grid.hbar());
  return finish(grid, std::move(v), "squeezed state");
}

WaveField squeezed_cat_wave(const SqueezeParams& squeeze, const PositionGrid& grid) {
  if (squeeze.xi_abs() > 3.0) throw ConfigurationError("wavefunction squeezing limited to |xi| <= 3");
  signed_squeeze(squeeze);
  const double r = squeeze.xi_abs();
  std::vector<complex> v(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i) {
    v[i] = squeezed_amplitude(0.0, r, grid.q(i), grid.hbar()) + squeezed_amplitude(0.0, -r, grid.q(i), grid.hbar());
  }
  return finish(grid, std::move(v), "squeezed cat");
}

}  // namespace qpsf
