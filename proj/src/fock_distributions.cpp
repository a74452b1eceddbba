#include "qpsf/fock_distributions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

#include "qpsf/errors.hpp"
#include "qpsf/parallel.hpp"

namespace qpsf {
namespace {

constexpr double kTargetDeficit = 1e-13;
constexpr double kMaxDeficit = 1e-10;
constexpr std::size_t kMaxWorkDim = 1024;
constexpr double kOmegaCutoff = 1e-10;

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

// Eigen-decomposition of rho restricted to the levels it actually occupies.
struct Spectral {
  std::vector<double> weights;
  std::vector<Ket> kets;
  std::size_t support = 1;
};

Spectral spectral(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<FockOperator> solver(rho.matrix());
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  Spectral out;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (std::abs(values(k)) > 1e-14) kept.push_back(k);
  }
  for (Eigen::Index n = 0; n < vectors.rows(); ++n) {
    double weight = 0.0;
    for (auto k : kept) weight += std::abs(values(k)) * std::norm(vectors(n, k));
    if (weight > 1e-30) out.support = static_cast<std::size_t>(n) + 1;
  }
  for (auto k : kept) {
    out.weights.push_back(values(k));
    out.kets.push_back(vectors.col(k).head(idx(out.support)));
  }
  return out;
}

// D(-alpha) psi in a working space large enough to hold it.
Ket displaced(const Ket& psi, complex alpha) {
  const double root = std::sqrt(static_cast<double>(psi.size())) + std::abs(alpha) + 6.0;
  std::size_t work = std::max<std::size_t>(static_cast<std::size_t>(psi.size()) + 8,
                                           static_cast<std::size_t>(std::ceil(root * root)));
  work = std::min(work, kMaxWorkDim);
  const double norm2 = psi.squaredNorm();
  for (;;) {
    Ket phi = displacement_block(-alpha, work, static_cast<std::size_t>(psi.size())) * psi;
    const double deficit = 1.0 - phi.squaredNorm() / norm2;
    if (deficit <= kTargetDeficit) return phi;
    if (work >= kMaxWorkDim) {
      if (deficit <= kMaxDeficit) return phi;
      std::ostringstream msg;
      msg << "displaced state at alpha = " << alpha << " loses " << deficit << " of its norm in " << work << " levels";
      throw TruncationError(msg.str());
    }
    work = std::min(2 * work, kMaxWorkDim);
  }
}

// <phi| exp(c a^dagger^2) t^N exp(-c a^2) |phi> = sum_j t^j conj(chi1_j) chi2_j
// with chi1 = exp(c a^2) phi and chi2 = exp(-c a^2) phi.
complex ordered_value(const Ket& phi, double c, double t) {
  const auto size = static_cast<std::size_t>(phi.size());
  complex sum = 0.0;
  double t_power = 1.0;
  const std::size_t last = (t == 0.0) ? 1 : size;
  for (std::size_t j = 0; j < last; ++j) {
    complex chi1 = phi(idx(j));
    complex chi2 = chi1;
    if (c != 0.0) {
      double g = 1.0;
      for (std::size_t k = 0; j + 2 * k + 2 < size; ++k) {
        const double m = static_cast<double>(j + 2 * k);
        g *= c * std::sqrt((m + 1.0) * (m + 2.0)) / static_cast<double>(k + 1);
        if (std::abs(g) > 1e280) break;
        const complex v = g * phi(idx(j + 2 * k + 2));
        chi1 += v;
        chi2 += (k % 2 == 0) ? -v : v;
      }
    }
    const complex product = std::conj(chi1) * chi2;
    if (product != complex{}) {
      if (!std::isfinite(t_power)) throw TruncationError("ordered series diverges in the working space");
      sum += t_power * product;
    }
    t_power *= t;
  }
  return sum;
}

// Normalised Hermite functions h_m(x) for m < size at each x, as rows of the
// result. The Gaussian prefactor is carried as a log so large x does not
// underflow before the polynomial part has grown.
Eigen::MatrixXd hermite_functions(const std::vector<double>& xs, std::size_t size) {
  Eigen::MatrixXd out(idx(size), idx(xs.size()));
  const double log_norm = -0.25 * std::log(kPi);
  const double rescale = std::log(1e100);
  parallel_for(xs.size(), [&](std::size_t p) {
    const double x = xs[p];
    double scale = -0.5 * x * x + log_norm;
    double prev = 0.0;
    double cur = 1.0;
    for (std::size_t m = 0; m < size; ++m) {
      out(idx(m), idx(p)) = cur * std::exp(scale);
      const double md = static_cast<double>(m);
      const double next = std::sqrt(2.0 / (md + 1.0)) * x * cur - std::sqrt(md / (md + 1.0)) * prev;
      prev = cur;
      cur = next;
      if (std::abs(cur) > 1e100) {
        cur *= 1e-100;
        prev *= 1e-100;
        scale += rescale;
      }
    }
  });
  return out;
}

// Fock elements of exp(c a^dagger^2) t^N exp(-c a^2), built lazily and shared
// between threads. Applying exp(+-c a^2) to a far-displaced ket inflates it by
// ~exp(c |alpha|^2) and the quadratic form then cancels catastrophically, and
// the direct sum over intermediate levels cancels just as badly at high m, n.
// For 0 < |t| < 1, (2c)^2 + t^2 = 1 the operator is |t|^(-1/2) times the real dilation
// psi(x) -> sqrt|kappa| psi(kappa x), kappa = (sigma - 1) / (sigma + 1), whose
// elements are Hermite-function overlaps with positive quadrature weights.
class OrderedKernel {
 public:
  OrderedKernel(double sigma, double t) : sigma_(sigma), t_(t) {}

  std::shared_ptr<const Eigen::MatrixXd> at_least(std::size_t size) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!matrix_ || static_cast<std::size_t>(matrix_->rows()) < size) {
      const std::size_t have = matrix_ ? static_cast<std::size_t>(matrix_->rows()) : 0;
      const std::size_t want = std::max(size, std::min(have + have / 2, kMaxWorkDim));
      matrix_ = std::make_shared<const Eigen::MatrixXd>(dilation(want));
    }
    return matrix_;
  }

 private:
  Eigen::MatrixXd dilation(std::size_t size) const {
    const double kappa = (sigma_ - 1.0) / (sigma_ + 1.0);
    const bool flip = std::abs(kappa) > 1.0;  // D(kappa) = D(1/kappa)^T
    const double a = flip ? 1.0 / std::abs(kappa) : std::abs(kappa);
    const double sign = kappa < 0.0 ? -1.0 : 1.0;
    const double root = std::sqrt(a);
    const double reach = std::sqrt(2.0 * static_cast<double>(size) + 1.0);

    // D_mn = int h_m(z / root) h_n(sign root z) dz; trapezoid is spectrally
    // accurate for these Gaussian-damped integrands.
    const double half_width = root * (reach + 10.0);
    const double step = kPi / (1.5 * (reach / root + root * reach));
    const auto half = static_cast<std::size_t>(std::ceil(half_width / step));
    std::vector<double> wide(2 * half + 1);
    std::vector<double> narrow(2 * half + 1);
    for (std::size_t k = 0; k < wide.size(); ++k) {
      const double z = (static_cast<double>(k) - static_cast<double>(half)) * step;
      wide[k] = z / root;
      narrow[k] = sign * root * z;
    }
    const Eigen::MatrixXd hw = hermite_functions(wide, size);
    const Eigen::MatrixXd hn = hermite_functions(narrow, size);
    Eigen::MatrixXd d = (hw * hn.transpose()) * (step / std::sqrt(std::abs(t_)));
    if (flip) d.transposeInPlace();
    return d;
  }

  double sigma_;
  double t_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<const Eigen::MatrixXd> matrix_;
};

complex ordered_trace(const Spectral& s, complex alpha, double c, double t) {
  complex total = 0.0;
  for (std::size_t k = 0; k < s.kets.size(); ++k) {
    total += s.weights[k] * ordered_value(displaced(s.kets[k], alpha), c, t);
  }
  return total;
}

complex ordered_trace(const Spectral& s, complex alpha, const OrderedKernel& kernel) {
  complex total = 0.0;
  for (std::size_t k = 0; k < s.kets.size(); ++k) {
    const Ket phi = displaced(s.kets[k], alpha);
    const auto size = static_cast<std::size_t>(phi.size());
    const auto m = kernel.at_least(size);
    const Ket kphi = m->topLeftCorner(idx(size), idx(size)).cast<complex>() * phi;
    total += s.weights[k] * phi.dot(kphi);
  }
  return total;
}

template <typename PointFn>
PhaseField sample_grid(const AlphaGrid& grid, FieldTag tag, PointFn&& fn) {
  std::vector<complex> values(grid.size());
  parallel_for(grid.re.count, [&](std::size_t i) {
    for (std::size_t j = 0; j < grid.im.count; ++j) values[i * grid.im.count + j] = fn(grid.at(i, j));
  });
  return PhaseField(grid.phase_grid(), std::move(values), std::move(tag));
}

complex trace_with_displacement(const FockOperator& rho, complex beta) {
  const auto dim = static_cast<std::size_t>(rho.rows());
  return displacement_block(beta, dim, dim).cwiseProduct(rho.transpose()).sum();
}

void check_sigma(double sigma) {
  if (!std::isfinite(sigma)) throw ConfigurationError("sigma must be finite");
}

}  // namespace

complex characteristic_sigma(const DensityMatrix& rho, complex beta, double sigma) {
  check_sigma(sigma);
  const complex bc = std::conj(beta);
  return std::exp(sigma * (bc * bc - beta * beta) / 4.0) * trace_with_displacement(rho.matrix(), beta);
}

complex generalized_kr_at(const DensityMatrix& rho, complex alpha, double sigma) {
  check_sigma(sigma);
  const double d = 1.0 + sigma * sigma;
  const double c = sigma / d;
  const double t = (sigma * sigma - 1.0) / d;
  const Spectral s = spectral(rho);
  // Wigner (c = 0) and K-R (t = 0) ends keep the cheap ordered sum, which is stable there.
  if (c == 0.0 || t == 0.0) return 2.0 / (kPi * std::sqrt(d)) * ordered_trace(s, alpha, c, t);
  return 2.0 / (kPi * std::sqrt(d)) * ordered_trace(s, alpha, OrderedKernel(sigma, t));
}

PhaseField generalized_kr(const DensityMatrix& rho, const AlphaGrid& grid, double sigma) {
  check_sigma(sigma);
  const Spectral s = spectral(rho);
  const double d = 1.0 + sigma * sigma;
  const double c = sigma / d;
  const double t = (sigma * sigma - 1.0) / d;
  const double prefactor = 2.0 / (kPi * std::sqrt(d));
  if (c == 0.0 || t == 0.0) {
    return sample_grid(grid, FieldTag{DistributionKind::sigma_kr, sigma, {}},
                       [&](complex alpha) { return prefactor * ordered_trace(s, alpha, c, t); });
  }
  const OrderedKernel kernel(sigma, t);
  return sample_grid(grid, FieldTag{DistributionKind::sigma_kr, sigma, {}},
                     [&](complex alpha) { return prefactor * ordered_trace(s, alpha, kernel); });
}

Ket kr_v_vector(complex alpha, std::size_t dim) {
  Ket v(idx(dim));
  const complex ac = std::conj(alpha);
  const complex b = alpha - ac;
  complex prev = 0.0;
  complex cur = std::exp(-0.5 * std::norm(alpha) + 0.5 * ac * ac);
  for (std::size_t m = 0; m < dim; ++m) {
    v(idx(m)) = cur;
    const double md = static_cast<double>(m);
    const complex next = (b * cur + std::sqrt(md) * prev) / std::sqrt(md + 1.0);
    prev = cur;
    cur = next;
  }
  return v;
}

Ket kr_w_vector(complex alpha, std::size_t dim) {
  Ket w(idx(dim));
  const complex ac = std::conj(alpha);
  const complex b = alpha + ac;
  complex prev = 0.0;
  complex cur = std::exp(-0.5 * std::norm(alpha) - 0.5 * ac * ac);
  for (std::size_t m = 0; m < dim; ++m) {
    w(idx(m)) = cur;
    const double md = static_cast<double>(m);
    const complex next = (b * cur - std::sqrt(md) * prev) / std::sqrt(md + 1.0);
    prev = cur;
    cur = next;
  }
  return w;
}

complex kr_closed_form_at(const DensityMatrix& rho, complex alpha) {
  const Ket v = kr_v_vector(alpha, rho.dim());
  const Ket w = kr_w_vector(alpha, rho.dim());
  return std::sqrt(2.0) / kPi * w.dot(rho.matrix() * v);
}

PhaseField kr_closed_form(const DensityMatrix& rho, const AlphaGrid& grid) {
  return sample_grid(grid, FieldTag{DistributionKind::sigma_kr, 1.0, {}},
                     [&](complex alpha) { return kr_closed_form_at(rho, alpha); });
}

complex s_ordered_at(const DensityMatrix& rho, complex alpha, double s) {
  if (!(s < 1.0)) throw DomainError("s-ordered distributions require s < 1");
  return 2.0 / (kPi * (1.0 - s)) * ordered_trace(spectral(rho), alpha, 0.0, (s + 1.0) / (s - 1.0));
}

PhaseField s_ordered(const DensityMatrix& rho, const AlphaGrid& grid, double s) {
  if (!(s < 1.0)) throw DomainError("s-ordered distributions require s < 1");
  const Spectral sp = spectral(rho);
  const double t = (s + 1.0) / (s - 1.0);
  const double prefactor = 2.0 / (kPi * (1.0 - s));
  return sample_grid(grid, FieldTag{DistributionKind::s_ordered, s, {}},
                     [&](complex alpha) { return prefactor * ordered_trace(sp, alpha, 0.0, t); });
}

PhaseField omega_transform(const DensityMatrix& rho, const AlphaGrid& grid, const OrderingFunction& omega,
                           FieldTag tag) {
  if (!omega) throw ConfigurationError("ordering function is empty");
  if (std::abs(omega(complex{}) - 1.0) > 1e-12) throw ValidationError("ordering function must satisfy Omega(0,0) = 1");

  const Spectral s = spectral(rho);
  const FockOperator block = rho.matrix().topLeftCorner(idx(s.support), idx(s.support));
  auto integrand = [&](complex beta) { return omega(beta) * trace_with_displacement(block, beta); };

  // Radius of the beta disk: first ring on which |Omega chi| < cutoff.
  double radius = 1.0;
  for (;;) {
    radius += 0.5;
    if (radius > 40.0) throw TruncationError("Omega-weighted characteristic function does not decay");
    const std::size_t points = std::max<std::size_t>(32, static_cast<std::size_t>(std::ceil(8.0 * kPi * radius)));
    double ring = 0.0;
    for (std::size_t k = 0; k < points; ++k) {
      ring = std::max(ring, std::abs(integrand(std::polar(radius, 2.0 * kPi * static_cast<double>(k) / points))));
    }
    if (ring < kOmegaCutoff) break;
  }

  // Spacing keeps periodic images of the result outside the state's support.
  const double grid_extent = std::max({std::abs(grid.re.min), std::abs(grid.re.max()), std::abs(grid.im.min),
                                       std::abs(grid.im.max())});
  const double state_extent = std::sqrt(2.0 * static_cast<double>(s.support) + 1.0) + 5.0;
  const double step = std::min(0.25, kPi / (grid_extent + state_extent));
  const auto half = static_cast<std::size_t>(std::ceil(radius / step));
  const std::size_t nb = 2 * half + 1;
  auto node = [&](std::size_t i) { return (static_cast<double>(i) - static_cast<double>(half)) * step; };

  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(idx(nb), idx(nb));  // f(u, v)
  parallel_for(nb, [&](std::size_t a) {
    for (std::size_t b = 0; b < nb; ++b) {
      const complex beta{node(a), node(b)};
      if (std::abs(beta) <= radius) f(idx(a), idx(b)) = integrand(beta);
    }
  });

  // alpha conj(beta) - conj(alpha) beta = 2i (y u - x v).
  Eigen::MatrixXcd ey(idx(grid.im.count), idx(nb));
  for (std::size_t j = 0; j < grid.im.count; ++j) {
    for (std::size_t a = 0; a < nb; ++a) ey(idx(j), idx(a)) = std::polar(1.0, 2.0 * grid.im.at(j) * node(a));
  }
  Eigen::MatrixXcd ex(idx(grid.re.count), idx(nb));
  for (std::size_t i = 0; i < grid.re.count; ++i) {
    for (std::size_t b = 0; b < nb; ++b) ex(idx(i), idx(b)) = std::polar(1.0, -2.0 * grid.re.at(i) * node(b));
  }
  const Eigen::MatrixXcd partial = ey * f;                                 // (y, v)
  const Eigen::MatrixXcd result = ex * partial.transpose() * (step * step / (kPi * kPi));  // (x, y)

  std::vector<complex> values(grid.size());
  for (std::size_t i = 0; i < grid.re.count; ++i) {
    for (std::size_t j = 0; j < grid.im.count; ++j) values[i * grid.im.count + j] = result(idx(i), idx(j));
  }
  return PhaseField(grid.phase_grid(), std::move(values), std::move(tag));
}

}  // namespace qpsf
