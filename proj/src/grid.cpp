#include "qpsf/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qpsf/errors.hpp"
#include "qpsf/log.hpp"

namespace qpsf {
namespace {

constexpr std::size_t kMaxTagLength = 15;
constexpr double kCoverageThreshold = 1e-6;

bool axis_valid(const Axis& a) { return a.count >= 1 && a.step > 0.0 && std::isfinite(a.min); }

std::string format_parameter(double value, std::size_t room) {
  char buf[64];
  for (int precision = 17; precision >= 1; --precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    std::string s(buf);
    if (s.size() <= room) return s;
  }
  return "?";
}

const char* kind_name(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::wigner: return "wigner";
    case DistributionKind::kr: return "kr";
    case DistributionKind::mh: return "mh";
    case DistributionKind::cohen: return "cohen";
    case DistributionKind::sigma_kr: return "sigma-kr";
    case DistributionKind::s_ordered: return "s-ordered";
    case DistributionKind::product: return "product";
  }
  return "unknown";
}

}  // namespace

PositionGrid::PositionGrid(double q_min, double dq, std::size_t n, double hbar)
    : q_min_(q_min), dq_(dq), n_(n), hbar_(hbar) {
  if (n < 8 || n % 2 != 0) {
    throw ConfigurationError("position grid needs an even sample count >= 8, got " + std::to_string(n));
  }
  if (!(dq > 0.0) || !std::isfinite(dq)) throw ConfigurationError("position grid spacing must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigurationError("hbar must be positive");
  if (!std::isfinite(q_min)) throw ConfigurationError("q_min must be finite");
}

PositionGrid PositionGrid::spanning(double q_min, double q_max, std::size_t n, double hbar) {
  if (!(q_max > q_min)) throw ConfigurationError("q_max must exceed q_min");
  if (n == 0) throw ConfigurationError("position grid needs samples");
  return PositionGrid(q_min, (q_max - q_min) / static_cast<double>(n), n, hbar);
}

double PositionGrid::dp() const { return 2.0 * kPi * hbar_ / (static_cast<double>(n_) * dq_); }

double PositionGrid::p(std::size_t j) const {
  return (static_cast<double>(j) - static_cast<double>(n_ / 2)) * dp();
}

Axis PositionGrid::momentum_axis() const { return {p(0), dp(), n_}; }

WaveField::WaveField(PositionGrid grid, std::vector<complex> values, Normalize normalize)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n()) throw ConfigurationError("wavefunction sample count does not match grid");
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ConfigurationError("wavefunction has non-finite samples");
    }
  }
  if (normalize == Normalize::yes) {
    const double nrm = norm();
    if (!(nrm > 0.0)) throw ConfigurationError("cannot normalize a zero wavefunction");
    const double scale = 1.0 / std::sqrt(nrm);
    for (auto& v : values_) v *= scale;
  }
  const double ratio = edge_ratio();
  if (ratio > kCoverageThreshold) {
    std::ostringstream msg;
    msg << "wavefunction not negligible at grid edge (|psi_edge|/max = " << ratio << ")";
    warn(msg.str());
  }
}

double WaveField::norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return s * grid_.dq();
}

double WaveField::edge_ratio() const {
  double peak = 0.0;
  for (const auto& v : values_) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(values_.front()), std::abs(values_.back())) / peak;
}

MomentumField::MomentumField(PositionGrid grid, std::vector<complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n()) throw ConfigurationError("momentum sample count does not match grid");
}

double MomentumField::norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return s * grid_.dp() / (2.0 * kPi * grid_.hbar());
}

PhaseGrid::PhaseGrid(Axis q_axis, Axis p_axis, double hbar_value) : q(q_axis), p(p_axis), hbar(hbar_value) {
  if (!axis_valid(q) || !axis_valid(p)) throw ConfigurationError("phase grid axes must be uniform and increasing");
  if (!(hbar > 0.0)) throw ConfigurationError("hbar must be positive");
}

PhaseGrid PhaseGrid::conjugate(const PositionGrid& grid) {
  return PhaseGrid(grid.position_axis(), grid.momentum_axis(), grid.hbar());
}

PhaseGrid PhaseGrid::conjugate(const PositionGrid& grid, double p_lo, double p_hi) {
  const double dp = grid.dp();
  const double tol = 1e-9 * dp;
  std::size_t first = grid.n();
  std::size_t last = 0;
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double p = grid.p(j);
    if (p >= p_lo - tol && p <= p_hi + tol) {
      first = std::min(first, j);
      last = std::max(last, j);
    }
  }
  if (first > last) throw ConfigurationError("momentum window contains no conjugate grid nodes");
  return PhaseGrid(grid.position_axis(), Axis{grid.p(first), dp, last - first + 1}, grid.hbar());
}

std::string FieldTag::to_string() const {
  std::string out = kind_name(kind);
  if (kind == DistributionKind::sigma_kr || kind == DistributionKind::s_ordered) {
    out += ':';
    out += format_parameter(parameter, kMaxTagLength - out.size());
  } else if (kind == DistributionKind::cohen && !label.empty()) {
    out += ':';
    out += label;
  }
  if (out.size() > kMaxTagLength) out.resize(kMaxTagLength);
  return out;
}

FieldTag FieldTag::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? std::string{} : text.substr(colon + 1);
  FieldTag tag;
  if (head == "wigner") tag.kind = DistributionKind::wigner;
  else if (head == "kr") tag.kind = DistributionKind::kr;
  else if (head == "mh") tag.kind = DistributionKind::mh;
  else if (head == "cohen") tag.kind = DistributionKind::cohen;
  else if (head == "sigma-kr") tag.kind = DistributionKind::sigma_kr;
  else if (head == "s-ordered") tag.kind = DistributionKind::s_ordered;
  else if (head == "product") tag.kind = DistributionKind::product;
  else throw ConfigurationError("unknown field tag '" + text + "'");

  if (tag.kind == DistributionKind::sigma_kr || tag.kind == DistributionKind::s_ordered) {
    if (tail.empty()) throw ConfigurationError("field tag '" + text + "' lacks its parameter");
    try {
      tag.parameter = std::stod(tail);
    } catch (const std::exception&) {
      throw ConfigurationError("bad parameter in field tag '" + text + "'");
    }
  } else if (tag.kind == DistributionKind::cohen) {
    tag.label = tail;
  }
  return tag;
}

PhaseField::PhaseField(PhaseGrid grid, std::vector<complex> values, FieldTag tag)
    : grid_(grid), values_(std::move(values)), tag_(std::move(tag)) {
  if (values_.size() != grid_.size()) throw ConfigurationError("phase field size does not match its grid");
}

complex integrate_2d(const PhaseField& field) {
  complex s{0.0, 0.0};
  for (const auto& v : field.values()) s += v;
  return s * field.grid().q.step * field.grid().p.step;
}

std::vector<complex> q_marginal(const PhaseField& field) {
  std::vector<complex> out(field.rows(), complex{});
  const double dp = field.grid().p.step;
  for (std::size_t i = 0; i < field.rows(); ++i) {
    complex s{};
    for (std::size_t j = 0; j < field.cols(); ++j) s += field(i, j);
    out[i] = s * dp;
  }
  return out;
}

std::vector<complex> p_marginal(const PhaseField& field) {
  std::vector<complex> out(field.cols(), complex{});
  for (std::size_t i = 0; i < field.rows(); ++i) {
    for (std::size_t j = 0; j < field.cols(); ++j) out[j] += field(i, j);
  }
  const double dq = field.grid().q.step;
  for (auto& v : out) v *= dq;
  return out;
}

complex alpha_of(double q, double p, double hbar) { return complex{q, p} / std::sqrt(2.0 * hbar); }

double alpha_density_scale(double hbar) { return 2.0 * hbar; }

PositionGrid position_grid_of(const PhaseGrid& grid) {
  return PositionGrid(grid.q.min, grid.q.step, grid.q.count, grid.hbar);
}

std::size_t conjugate_window_start(const PositionGrid& position, const PhaseGrid& grid) {
  const Axis qa = position.position_axis();
  if (grid.q.count != qa.count || std::abs(grid.q.min - qa.min) > 1e-9 * qa.step ||
      std::abs(grid.q.step - qa.step) > 1e-12 * qa.step) {
    throw ConfigurationError("phase grid q axis differs from the wavefunction grid");
  }
  if (std::abs(grid.hbar - position.hbar()) > 1e-12 * position.hbar()) {
    throw ConfigurationError("phase grid hbar differs from the wavefunction grid");
  }
  const double dp = position.dp();
  if (std::abs(grid.p.step - dp) > 1e-9 * dp) {
    throw ConfigurationError("phase grid dp must equal the conjugate spacing 2 pi hbar / (n dq)");
  }
  const double offset = (grid.p.min - position.p(0)) / dp;
  const double rounded = std::round(offset);
  if (std::abs(offset - rounded) > 1e-6 || rounded < 0.0) {
    throw ConfigurationError("phase grid p axis is not aligned with the conjugate grid");
  }
  const auto first = static_cast<std::size_t>(rounded);
  if (first + grid.p.count > position.n()) throw ConfigurationError("phase grid p axis exceeds the conjugate range");
  return first;
}

}  // namespace qpsf
