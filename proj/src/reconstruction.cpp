#include "qpsf/reconstruction.hpp"

#include <cmath>
#include <sstream>

#include "qpsf/errors.hpp"
#include "qpsf/fock_distributions.hpp"
#include "qpsf/log.hpp"
#include "qpsf/parallel.hpp"

namespace qpsf {
namespace {

constexpr double kBoundaryError = 1e-2;
constexpr double kBoundaryWarning = 1e-6;

bool is_kr_tag(const FieldTag& tag) {
  return tag.kind == DistributionKind::kr || (tag.kind == DistributionKind::sigma_kr && std::abs(tag.parameter - 1.0) < 1e-12);
}

double boundary_ratio(const PhaseField& f) {
  double peak = 0.0;
  double edge = 0.0;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const double v = std::abs(f(i, j));
      peak = std::max(peak, v);
      if (i == 0 || j == 0 || i + 1 == f.rows() || j + 1 == f.cols()) edge = std::max(edge, v);
    }
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

}  // namespace

Reconstruction reconstruct(const PhaseField& kr_field, std::size_t dim, ReconstructionPath path) {
  if (!is_kr_tag(kr_field.tag())) {
    throw ConfigurationError("reconstruction needs a K-R field (tag kr or sigma-kr with sigma = 1), got " +
                             kr_field.tag().to_string());
  }
  if (dim < 2) throw ConfigurationError("reconstruction needs dim >= 2");
  const PhaseField field = to_alpha_coordinates(kr_field);
  const AlphaGrid grid = AlphaGrid::of(field.grid());

  Reconstruction out;
  out.boundary_ratio = boundary_ratio(field);
  if (out.boundary_ratio > kBoundaryError) {
    std::ostringstream msg;
    msg << "K-R field does not decay at the grid boundary (ratio " << out.boundary_ratio << ")";
    throw TruncationError(msg.str());
  }
  if (out.boundary_ratio > kBoundaryWarning) {
    std::ostringstream msg;
    msg << "K-R field boundary ratio " << out.boundary_ratio << " exceeds " << kBoundaryWarning
        << "; reconstruction loses the missing support";
    warn(msg.str());
  }

  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<FockOperator> rows(grid.re.count, FockOperator::Zero(d, d));
  parallel_for(grid.re.count, [&](std::size_t i) {
    FockOperator& acc = rows[i];
    for (std::size_t j = 0; j < grid.im.count; ++j) {
      const complex k = field(i, j);
      if (k == complex{}) continue;
      const complex alpha = grid.at(i, j);
      const Ket v = kr_v_vector(alpha, dim);
      const Ket w = kr_w_vector(alpha, dim);
      if (path == ReconstructionPath::direct) {
        acc.noalias() += k * (w * v.adjoint());
      } else {
        acc.noalias() += std::conj(k) * (v * w.adjoint());
      }
    }
  });
  out.raw = FockOperator::Zero(d, d);
  for (const auto& r : rows) out.raw += r;
  out.raw *= std::sqrt(2.0) * grid.cell_area();
  out.raw_trace = out.raw.trace();

  out.rho = 0.5 * (out.raw + out.raw.adjoint());
  const double tr = out.rho.trace().real();
  if (!(std::abs(tr) > 0.0)) throw ValidationError("reconstructed operator has zero trace");
  out.rho /= tr;
  Eigen::SelfAdjointEigenSolver<FockOperator> solver(out.rho, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  return out;
}

double fidelity(const FockOperator& rho, const Ket& psi) {
  if (psi.size() != rho.rows()) throw ConfigurationError("fidelity: state and operator dimensions differ");
  return psi.dot(rho * psi).real() / psi.squaredNorm();
}

complex kr_basis_overlap(complex alpha, complex beta, std::size_t dim) {
  if (dim < 2) throw ConfigurationError("overlap needs dim >= 2");
  const Ket va = kr_v_vector(alpha, dim);
  const Ket wa = kr_w_vector(alpha, dim);
  const Ket vb = kr_v_vector(beta, dim);
  const Ket wb = kr_w_vector(beta, dim);
  return va.dot(vb) * wb.dot(wa);
}

complex squeezed_projection_kr(const DensityMatrix& rho, complex alpha, double xi, std::size_t dim) {
  if (std::abs(xi) > 2.5 || dim < 96) {
    throw TruncationError("squeezed projection requires |xi| <= 2.5 and dim >= 96");
  }
  if (dim < rho.dim()) throw ConfigurationError("squeezed projection dim must cover the density matrix");
  const double r = std::abs(xi);
  const SqueezeParams toward(r, xi >= 0.0 ? 0.0 : kPi);      // S(xi)
  const SqueezeParams against(r, xi >= 0.0 ? kPi : 0.0);     // S(-xi)
  const FockOperator shift = displacement_block(alpha, rho.dim(), dim);
  const Ket left = shift * squeezed_vacuum_amplitudes(toward, dim);
  const Ket right = shift * squeezed_vacuum_amplitudes(against, dim);
  return std::sqrt(2.0) * std::cosh(r) / kPi * left.dot(rho.matrix() * right);
}

}  // namespace qpsf
