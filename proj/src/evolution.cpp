#include "qpsf/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpsf/errors.hpp"
#include "qpsf/fourier.hpp"
#include "qpsf/parallel.hpp"

namespace qpsf {
namespace {

constexpr double kEdgeRatio = 1e-3;

bool is_kr(const FieldTag& tag) {
  return tag.kind == DistributionKind::kr || (tag.kind == DistributionKind::sigma_kr && std::abs(tag.parameter - 1.0) < 1e-12);
}

// Per-column q-spectrum bookkeeping for a field whose p axis is a window of the
// conjugate lattice of its q axis.
struct ColumnLayout {
  PositionGrid position;
  std::size_t first;

  explicit ColumnLayout(const PhaseGrid& g)
      : position(position_grid_of(g)), first(conjugate_window_start(position, g)) {}

  // Angular q-frequency of FFT bin b in column j: (p' - p_j) / hbar with
  // p' = p_j + kappa dp on the lattice, kappa in [-g, n - g).
  double frequency(std::size_t j, std::size_t b) const {
    const std::size_t n = position.n();
    const std::size_t g = first + j;
    const long kappa = b < n - g ? static_cast<long>(b) : static_cast<long>(b) - static_cast<long>(n);
    return static_cast<double>(kappa) * position.dp() / position.hbar();
  }
};

std::vector<complex> column(const PhaseField& f, std::size_t j) {
  std::vector<complex> out(f.rows());
  for (std::size_t i = 0; i < f.rows(); ++i) out[i] = f(i, j);
  return out;
}

// Applies multiplier(k) to the q-spectrum of column j of f.
template <typename Multiplier>
std::vector<complex> filter_column(const PhaseField& f, const ColumnLayout& layout, std::size_t j, Multiplier&& mult) {
  std::vector<complex> c = column(f, j);
  fft(c, FftDirection::forward);
  for (std::size_t b = 0; b < c.size(); ++b) c[b] *= mult(layout.frequency(j, b));
  fft(c, FftDirection::backward);
  const double scale = 1.0 / static_cast<double>(c.size());
  for (auto& v : c) v *= scale;
  return c;
}

double q_edge_ratio(const PhaseField& f) {
  double peak = 0.0;
  double edge = 0.0;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const double v = std::abs(f(i, j));
      peak = std::max(peak, v);
      if (i == 0 || i + 1 == f.rows()) edge = std::max(edge, v);
    }
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

}  // namespace

void FreeEvolutionParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigurationError("mass must be positive and finite");
  if (!std::isfinite(t)) throw ConfigurationError("time must be finite");
}

WaveField evolve_wave(const WaveField& psi, const FreeEvolutionParams& params) {
  params.validate();
  const PositionGrid& g = psi.grid();
  const MomentumField phi = forward_fourier(psi);
  std::vector<complex> out(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double p = g.p(j);
    out[j] = phi[j] * std::polar(1.0, -p * p * params.t / (2.0 * params.mass * g.hbar()));
  }
  WaveField evolved = inverse_fourier(MomentumField(g, std::move(out)));
  if (evolved.edge_ratio() > kEdgeRatio) {
    std::ostringstream msg;
    msg << "evolved state reaches the grid edge (edge ratio " << evolved.edge_ratio() << ")";
    throw TruncationError(msg.str());
  }
  return evolved;
}

PhaseField evolve_kr_field(const PhaseField& k0, const FreeEvolutionParams& params) {
  params.validate();
  if (!is_kr(k0.tag())) throw DomainError("field evolution needs a K-R field, got " + k0.tag().to_string());
  const ColumnLayout layout(k0.grid());
  const double hbar = k0.grid().hbar;
  const double m = params.mass;
  const double t = params.t;

  PhaseField out(k0.grid(), std::vector<complex>(k0.grid().size()), k0.tag());
  parallel_for(k0.cols(), [&](std::size_t j) {
    const double p = k0.grid().p.at(j);
    const auto c = filter_column(k0, layout, j, [&](double k) {
      return std::polar(1.0, -t * (hbar * k * k / (2.0 * m) + k * p / m));
    });
    for (std::size_t i = 0; i < c.size(); ++i) out(i, j) = c[i];
  });
  if (const double r = q_edge_ratio(out); r > kEdgeRatio) {
    std::ostringstream msg;
    msg << "evolved K-R field wraps around the q boundary (edge ratio " << r << ")";
    throw TruncationError(msg.str());
  }
  return out;
}

double residual_of_pde(const PhaseField& earlier, const PhaseField& middle, const PhaseField& later, double dt,
                       double mass, DiffusionSign sign) {
  if (!(dt > 0.0)) throw ConfigurationError("time step must be positive");
  if (!(mass > 0.0)) throw ConfigurationError("mass must be positive");
  auto same = [](const PhaseGrid& a, const PhaseGrid& b) {
    return a.q.count == b.q.count && a.p.count == b.p.count && a.q.min == b.q.min && a.q.step == b.q.step &&
           a.p.min == b.p.min && a.p.step == b.p.step && a.hbar == b.hbar;
  };
  if (!same(earlier.grid(), middle.grid()) || !same(later.grid(), middle.grid())) {
    throw ConfigurationError("PDE residual needs three snapshots on one grid");
  }
  const ColumnLayout layout(middle.grid());
  const double hbar = middle.grid().hbar;
  const double diffusion = (sign == DiffusionSign::physical ? 1.0 : -1.0) * hbar / (2.0 * mass);

  std::vector<double> column_max(middle.cols(), 0.0);
  parallel_for(middle.cols(), [&](std::size_t j) {
    const double p = middle.grid().p.at(j);
    // (p/m) d_q - i (hbar/2m) d_q^2  ->  i k p / m + i (hbar / 2m) k^2
    const auto spatial = filter_column(middle, layout, j, [&](double k) {
      return complex{0.0, k * p / mass + diffusion * k * k};
    });
    double worst = 0.0;
    for (std::size_t i = 0; i < middle.rows(); ++i) {
      const complex dt_term = (later(i, j) - earlier(i, j)) / (2.0 * dt);
      worst = std::max(worst, std::abs(dt_term + spatial[i]));
    }
    column_max[j] = worst;
  });
  return *std::max_element(column_max.begin(), column_max.end());
}

}  // namespace qpsf
