#include <cmath>
#include <sstream>

#include "qpsf/errors.hpp"
#include "qpsf/fock.hpp"

namespace qpsf {
namespace {

constexpr double kNormDeficit = 1e-10;

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

// Renormalizes after checking that `full_norm2` (the untruncated squared norm)
// is captured by the dim components.
Ket finish_ket(Ket v, double full_norm2, const char* what) {
  const double deficit = 1.0 - v.squaredNorm() / full_norm2;
  if (deficit > kNormDeficit) {
    std::ostringstream msg;
    msg << what << " loses " << deficit << " of its norm in dim " << v.size();
    throw TruncationError(msg.str());
  }
  return v / v.norm();
}

Ket coherent_components(complex alpha0, std::size_t dim) {
  Ket v(idx(dim));
  complex c = std::exp(-0.5 * std::norm(alpha0));
  for (std::size_t n = 0; n < dim; ++n) {
    v(idx(n)) = c;
    c *= alpha0 / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

}  // namespace

// mu^{-1/2} (-nu/(2 mu))^k sqrt((2k)!)/k! on |2k>.
Ket squeezed_vacuum_amplitudes(const SqueezeParams& s, std::size_t size) {
  Ket v = Ket::Zero(idx(size));
  const double mu = s.mu();
  const complex z = -s.nu() / (2.0 * mu);
  complex c = 1.0 / std::sqrt(mu);
  for (std::size_t k = 0; 2 * k < size; ++k) {
    v(idx(2 * k)) = c;
    const double kd = static_cast<double>(k);
    // sqrt((2k+2)!)/(k+1)! over sqrt((2k)!)/k!
    c *= z * std::sqrt((2.0 * kd + 1.0) * (2.0 * kd + 2.0)) / (kd + 1.0);
  }
  return v;
}

namespace {

// Levels needed before the squeezed-vacuum tail drops below ~1e-20.
std::size_t squeezed_support(const SqueezeParams& s, std::size_t dim) {
  const double tanh_r = std::tanh(s.xi_abs());
  if (tanh_r < 1e-300) return dim;
  const double levels = 46.0 / -std::log(tanh_r);
  return std::min<std::size_t>(dim + static_cast<std::size_t>(std::ceil(levels)) + 2, 4096);
}

}  // namespace

Ket fock_ket(std::size_t n, std::size_t dim) {
  if (n >= dim) throw TruncationError("Fock level does not fit in dim");
  Ket v = Ket::Zero(idx(dim));
  v(idx(n)) = 1.0;
  return v;
}

Ket coherent_ket(complex alpha0, std::size_t dim) {
  if (!std::isfinite(std::abs(alpha0))) throw ConfigurationError("alpha0 must be finite");
  return finish_ket(coherent_components(alpha0, dim), 1.0, "coherent state");
}

Ket cat_ket(complex alpha0, std::size_t dim) {
  Ket v = coherent_components(alpha0, dim) + coherent_components(-alpha0, dim);
  return finish_ket(std::move(v), 2.0 + 2.0 * std::exp(-2.0 * std::norm(alpha0)), "cat state");
}

Ket squeezed_ket(complex alpha0, const SqueezeParams& squeeze, std::size_t dim) {
  const std::size_t work = squeezed_support(squeeze, dim);
  const Ket vac = squeezed_vacuum_amplitudes(squeeze, work);
  Ket v = displacement_block(alpha0, dim, work) * vac;
  return finish_ket(std::move(v), 1.0, "squeezed state");
}

Ket squeezed_cat_ket(const SqueezeParams& squeeze, std::size_t dim) {
  const SqueezeParams flipped(squeeze.xi_abs(), squeeze.phi_xi() + kPi);
  Ket v = squeezed_vacuum_amplitudes(squeeze, dim) + squeezed_vacuum_amplitudes(flipped, dim);
  const double full = 2.0 + 2.0 / std::sqrt(std::cosh(2.0 * squeeze.xi_abs()));
  return finish_ket(std::move(v), full, "squeezed cat");
}

AlphaGrid::AlphaGrid(Axis re_axis, Axis im_axis) : re(re_axis), im(im_axis) {
  if (re.count == 0 || im.count == 0) throw ConfigurationError("alpha grid needs at least one node per axis");
  if (!(re.step > 0.0) || !(im.step > 0.0)) throw ConfigurationError("alpha grid axes must be strictly increasing");
}

AlphaGrid AlphaGrid::square(double half_width, std::size_t count) {
  if (count < 2 || !(half_width > 0.0)) throw ConfigurationError("square alpha grid needs count >= 2 and half_width > 0");
  const double step = 2.0 * half_width / static_cast<double>(count - 1);
  return AlphaGrid(Axis{-half_width, step, count}, Axis{-half_width, step, count});
}

PhaseGrid AlphaGrid::phase_grid() const { return PhaseGrid(re, im, kAlphaHbar); }

AlphaGrid AlphaGrid::of(const PhaseGrid& grid) {
  if (std::abs(grid.hbar - kAlphaHbar) > 1e-15) throw ConfigurationError("phase grid is not in alpha coordinates");
  return AlphaGrid(grid.q, grid.p);
}

PhaseField to_alpha_coordinates(const PhaseField& field) {
  const PhaseGrid& g = field.grid();
  if (std::abs(g.hbar - kAlphaHbar) <= 1e-15) return field;
  const double s = 1.0 / std::sqrt(2.0 * g.hbar);
  const PhaseGrid alpha_grid(Axis{g.q.min * s, g.q.step * s, g.q.count}, Axis{g.p.min * s, g.p.step * s, g.p.count},
                             kAlphaHbar);
  std::vector<complex> values(field.values().begin(), field.values().end());
  const double scale = alpha_density_scale(g.hbar);
  for (auto& v : values) v *= scale;
  return PhaseField(alpha_grid, std::move(values), field.tag());
}

}  // namespace qpsf
