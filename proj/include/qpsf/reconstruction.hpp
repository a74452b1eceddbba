#pragma once

#include "qpsf/fock.hpp"

namespace qpsf {

enum class ReconstructionPath {
  direct,     // rho = sqrt 2 sum K(alpha, 1) |w_alpha><v_alpha| dA
  conjugate,  // rho = sqrt 2 sum conj(K(alpha, 1)) |v_alpha><w_alpha| dA
};

struct Reconstruction {
  FockOperator raw;    // quadrature result as summed
  FockOperator rho;    // Hermitized, trace-renormalized (no positivity projection)
  complex raw_trace;
  double min_eigenvalue = 0.0;
  double boundary_ratio = 0.0;  // max |K| on the grid boundary / max |K|
};

// Rebuilds a dim x dim density matrix from K-R samples (kind kr, or sigma-kr with
// sigma = 1). Fields on a (q, p) grid are mapped to alpha first. Boundary ratio
// above 1e-2 is a TruncationError; above 1e-6 a warning.
Reconstruction reconstruct(const PhaseField& kr_field, std::size_t dim,
                           ReconstructionPath path = ReconstructionPath::direct);

// <psi|rho|psi> for normalized psi.
double fidelity(const FockOperator& rho, const Ket& psi);

// Tr[K(alpha,1)^dagger K(beta,1)] in dim levels = <v_a|v_b><w_b|w_a>.
complex kr_basis_overlap(complex alpha, complex beta, std::size_t dim);

// (sqrt 2 cosh xi / pi) <alpha, xi| rho |alpha, -xi> with |alpha, xi> = D(alpha) S(xi)|0>,
// the finite-squeezing approximation of K(alpha, 1). Requires |xi| <= 2.5, dim >= 96.
complex squeezed_projection_kr(const DensityMatrix& rho, complex alpha, double xi, std::size_t dim);

}  // namespace qpsf
