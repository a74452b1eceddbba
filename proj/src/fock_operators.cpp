#include <cmath>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "qpsf/errors.hpp"
#include "qpsf/fock.hpp"

namespace qpsf {
namespace {

void require_dim(std::size_t dim, std::size_t minimum, const char* what) {
  if (dim < minimum) {
    std::ostringstream msg;
    msg << what << " needs dim >= " << minimum << " (got " << dim << ")";
    throw ConfigurationError(msg.str());
  }
}

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

// Ordered factor exp(z a^dagger^2): element (m, j) = z^k / k! sqrt(m!/j!), m = j + 2k.
FockOperator raising_pair_exponential(complex z, std::size_t dim) {
  FockOperator out = FockOperator::Zero(idx(dim), idx(dim));
  for (std::size_t j = 0; j < dim; ++j) out(idx(j), idx(j)) = 1.0;
  if (z == complex{}) return out;
  const double log_abs = std::log(std::abs(z));
  const double arg = std::arg(z);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 1; j + 2 * k < dim; ++k) {
      const std::size_t m = j + 2 * k;
      const double kd = static_cast<double>(k);
      const double log_mag = kd * log_abs - std::lgamma(kd + 1.0) +
                             0.5 * (std::lgamma(static_cast<double>(m) + 1.0) - std::lgamma(static_cast<double>(j) + 1.0));
      out(idx(m), idx(j)) = std::polar(std::exp(log_mag), kd * arg);
    }
  }
  return out;
}

// z^N with 0^0 = 1.
Eigen::VectorXcd number_power(complex z, std::size_t dim) {
  Eigen::VectorXcd out(idx(dim));
  complex v = 1.0;
  for (std::size_t n = 0; n < dim; ++n) {
    out(idx(n)) = v;
    v *= z;
  }
  return out;
}

double max_squeeze(std::size_t dim) { return dim >= 96 ? 2.5 : 2.0; }

void squeeze_guard(const SqueezeParams& params, std::size_t dim) {
  if (dim < 32 || params.xi_abs() > max_squeeze(dim)) {
    std::ostringstream msg;
    msg << "squeeze |xi| = " << params.xi_abs() << " is not resolved in dim " << dim
        << " (need dim >= 32 and |xi| <= 2, or dim >= 96 and |xi| <= 2.5)";
    throw TruncationError(msg.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(FockOperator matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2) throw ValidationError("density matrix must be square with dim >= 2");
  if (!matrix_.allFinite()) throw ValidationError("density matrix has non-finite entries");
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) throw ValidationError("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
  const complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > 1e-10) throw ValidationError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<FockOperator> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-8) throw ValidationError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw ValidationError("cannot build a density matrix from a zero vector");
  const Ket unit = psi / norm;
  FockOperator rho = unit * unit.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

std::pair<FockOperator, FockOperator> ladder_ops(std::size_t dim) {
  require_dim(dim, 2, "ladder operators");
  FockOperator a = FockOperator::Zero(idx(dim), idx(dim));
  for (std::size_t n = 1; n < dim; ++n) a(idx(n - 1), idx(n)) = std::sqrt(static_cast<double>(n));
  FockOperator ad = a.adjoint();
  return {std::move(a), std::move(ad)};
}

FockOperator displacement_block(complex alpha, std::size_t rows, std::size_t cols) {
  FockOperator out = FockOperator::Zero(idx(rows), idx(cols));
  if (alpha == complex{}) {
    for (std::size_t n = 0; n < std::min(rows, cols); ++n) out(idx(n), idx(n)) = 1.0;
    return out;
  }
  const double x = std::norm(alpha);
  const double r = std::abs(alpha);
  const double log_r = std::log(r);
  const double theta = std::arg(alpha);

  // Lower part m = n + d: sqrt(n!/m!) alpha^d exp(-x/2) L_n^(d)(x).
  // Upper part m = n - d: sqrt(m!/n!) (-conj(alpha))^d exp(-x/2) L_m^(d)(x).
  auto fill = [&](std::size_t d, std::size_t count, double phase, bool lower) {
    const double dd = static_cast<double>(d);
    double pre = std::exp(dd * log_r - 0.5 * std::lgamma(dd + 1.0) - 0.5 * x);
    const complex unit = std::polar(1.0, phase);
    double l_prev = 0.0;
    double l_cur = 1.0;
    for (std::size_t n = 0; n < count; ++n) {
      const complex v = unit * (pre * l_cur);
      if (lower) {
        out(idx(n + d), idx(n)) = v;
      } else {
        out(idx(n), idx(n + d)) = v;
      }
      const double nd = static_cast<double>(n);
      const double l_next = ((2.0 * nd + 1.0 + dd - x) * l_cur - (nd + dd) * l_prev) / (nd + 1.0);
      l_prev = l_cur;
      l_cur = l_next;
      pre *= std::sqrt((nd + 1.0) / (nd + 1.0 + dd));
    }
  };

  for (std::size_t d = 0; d < rows; ++d) {
    const std::size_t count = std::min(cols, rows - d);
    if (count == 0) break;
    fill(d, count, static_cast<double>(d) * theta, true);
  }
  for (std::size_t d = 1; d < cols; ++d) {
    const std::size_t count = std::min(rows, cols - d);
    if (count == 0) break;
    fill(d, count, static_cast<double>(d) * (kPi - theta), false);
  }
  if (!out.allFinite()) throw TruncationError("displacement matrix elements overflowed");
  return out;
}

FockOperator displacement(complex alpha, std::size_t dim) {
  require_dim(dim, 2, "displacement");
  if (std::norm(alpha) > static_cast<double>(dim) / 4.0) {
    std::ostringstream msg;
    msg << "|alpha|^2 = " << std::norm(alpha) << " exceeds dim/4 = " << static_cast<double>(dim) / 4.0;
    throw TruncationError(msg.str());
  }
  return displacement_block(alpha, dim, dim);
}

FockOperator displacement_expm(complex alpha, std::size_t dim) {
  const auto [a, ad] = ladder_ops(dim);
  const FockOperator generator = alpha * ad - std::conj(alpha) * a;
  return generator.exp();
}

FockOperator squeeze(const SqueezeParams& params, std::size_t dim) {
  squeeze_guard(params, dim);
  const double mu = params.mu();
  const complex nu = params.nu();
  const FockOperator left = raising_pair_exponential(-nu / (2.0 * mu), dim);
  // exp(conj(nu)/(2 mu) a^2) is the adjoint of exp(nu/(2 mu) a^dagger^2).
  const FockOperator right = raising_pair_exponential(nu / (2.0 * mu), dim).adjoint();
  Eigen::VectorXcd middle = number_power(1.0 / mu, dim) / std::sqrt(mu);
  return left * middle.asDiagonal() * right;
}

FockOperator squeeze_expm(const SqueezeParams& params, std::size_t dim) {
  squeeze_guard(params, dim);
  const auto [a, ad] = ladder_ops(dim);
  const complex xi = params.xi();
  const FockOperator generator = -0.5 * xi * ad * ad + 0.5 * std::conj(xi) * a * a;
  return generator.exp();
}

FockOperator k_sigma_operator(double sigma, std::size_t dim) {
  require_dim(dim, 16, "K(sigma)");
  if (!std::isfinite(sigma)) throw ConfigurationError("sigma must be finite");
  const double d = 1.0 + sigma * sigma;
  const double c = sigma / d;
  const double t = (sigma * sigma - 1.0) / d;
  const FockOperator left = raising_pair_exponential(c, dim);
  const FockOperator right = raising_pair_exponential(-c, dim).adjoint();
  return left * number_power(t, dim).asDiagonal() * right;
}

FockOperator pi_s_operator(double s, std::size_t dim) {
  require_dim(dim, 2, "Pi(s)");
  if (!(s < 1.0)) throw DomainError("s-ordered operator requires s < 1");
  return number_power((s + 1.0) / (s - 1.0), dim).asDiagonal();
}

double k_sigma_trace(double sigma) { return std::sqrt(1.0 + sigma * sigma) / 2.0; }

complex regularized_trace(const FockOperator& op) {
  complex sum = 0.0;
  complex last = 0.0;
  complex before_last = 0.0;
  bool have_last = false;
  bool have_before = false;
  for (Eigen::Index n = 0; n < op.rows(); ++n) {
    sum += op(n, n);
    if (!have_last || sum != last) {
      before_last = last;
      have_before = have_last;
      last = sum;
      have_last = true;
    }
  }
  return have_before ? 0.5 * (last + before_last) : last;
}

}  // namespace qpsf
