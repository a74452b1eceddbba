#include "qpsf/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qpsf/distributions.hpp"
#include "qpsf/errors.hpp"
#include "qpsf/fourier.hpp"

namespace qpsf {
namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

bool real_kind(const FieldTag& tag) {
  switch (tag.kind) {
    case DistributionKind::wigner:
    case DistributionKind::mh:
    case DistributionKind::s_ordered:
    case DistributionKind::product:
      return true;
    case DistributionKind::sigma_kr:
      return tag.parameter == 0.0;
    case DistributionKind::cohen:
      return tag.label == "unit" || tag.label == "mh" || tag.label == "sigma=0";
    case DistributionKind::kr:
      return false;
  }
  return false;
}

}  // namespace

CheckReport make_report(std::string name, double measured, double expected, double tolerance, std::string context) {
  CheckReport r;
  r.name = std::move(name);
  r.measured = measured;
  r.expected = expected;
  r.tolerance = tolerance;
  r.passed = std::abs(measured - expected) <= tolerance;
  r.context = std::move(context);
  return r;
}

std::array<CheckReport, 2> check_marginals(const PhaseField& field, const WaveField& psi) {
  const PositionGrid& g = psi.grid();
  const std::size_t first = conjugate_window_start(g, field.grid());
  const MomentumField phi = forward_fourier(psi);

  const auto qm = q_marginal(field);
  double q_dev = 0.0;
  for (std::size_t i = 0; i < field.rows(); ++i) q_dev = std::max(q_dev, std::abs(qm[i] - std::norm(psi[i])));

  const auto pm = p_marginal(field);
  const double measure = 1.0 / (2.0 * kPi * g.hbar());
  double p_dev = 0.0;
  for (std::size_t j = 0; j < field.cols(); ++j) {
    p_dev = std::max(p_dev, std::abs(pm[j] - std::norm(phi[first + j]) * measure));
  }
  const std::string ctx = field.tag().to_string();
  return {make_report("marginal-q", q_dev, 0.0, tolerance::marginal, ctx),
          make_report("marginal-p", p_dev, 0.0, tolerance::marginal, ctx)};
}

std::array<CheckReport, 3> check_kr_identities(const WaveField& psi, const PhaseGrid& grid) {
  const PhaseField k = kirkwood_rihaczek(psi, grid);
  const PhaseField prod = product_distribution(psi, grid);
  const double h = 2.0 * kPi * psi.grid().hbar();
  const double cell = grid.q.step * grid.p.step;

  double modulus_dev = 0.0;
  double square = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double k2 = std::norm(k.values()[idx]);
    // product = |Psi|^2 |Psi~|^2 / (2 pi hbar)
    modulus_dev = std::max(modulus_dev, std::abs(h * h * k2 - h * prod.values()[idx].real()));
    square += k2;
  }
  square *= cell;
  const complex total = integrate_2d(k);
  return {make_report("kr-modulus-identity", modulus_dev, 0.0, tolerance::kr_modulus),
          make_report("kr-square-integral", square, 1.0 / h, tolerance::kr_square_integral),
          make_report("kr-normalization", std::abs(total - 1.0), 0.0, tolerance::normalization,
                      "integral = " + number(total.real()) + " + " + number(total.imag()) + "i")};
}

CheckReport check_reality_wigner(const PhaseField& field) {
  double max_imag = 0.0;
  for (const auto& v : field.values()) max_imag = std::max(max_imag, std::abs(v.imag()));
  const std::string tag = field.tag().to_string();
  if (real_kind(field.tag())) return make_report("wigner-reality", max_imag, 0.0, tolerance::reality, tag);
  const bool significant = max_imag > tolerance::significant_imaginary;
  return make_report("complex-part", max_imag, 0.0, INFINITY,
                     tag + (significant ? ": imaginary part significant" : ": imaginary part negligible"));
}

std::string to_text(const CheckReport& r) {
  std::string out = (r.passed ? "PASS " : "FAIL ") + r.name + ": measured=" + short_number(r.measured) +
                    " expected=" + short_number(r.expected) + " tolerance=" + short_number(r.tolerance);
  if (!r.context.empty()) out += " [" + r.context + "]";
  return out;
}

std::string to_text(std::span<const CheckReport> reports) {
  std::string out;
  for (const auto& r : reports) out += to_text(r) + "\n";
  return out;
}

std::string csv_header() { return "name,measured,expected,tolerance,pass"; }

std::string to_csv_row(const CheckReport& r) {
  return r.name + "," + number(r.measured) + "," + number(r.expected) + "," + number(r.tolerance) + "," +
         (r.passed ? "1" : "0");
}

std::string to_csv(std::span<const CheckReport> reports) {
  std::string out = csv_header() + "\n";
  for (const auto& r : reports) out += to_csv_row(r) + "\n";
  return out;
}

bool all_passed(std::span<const CheckReport> reports) {
  for (const auto& r : reports) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace qpsf
