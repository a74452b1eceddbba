#pragma once

#include <functional>

#include "qpsf/fock.hpp"

namespace qpsf {

// C(beta, sigma) = exp(sigma (conj(beta)^2 - beta^2) / 4) Tr[rho D(beta)].
complex characteristic_sigma(const DensityMatrix& rho, complex beta, double sigma);

// K(alpha, sigma) = 2/(pi sqrt(1+sigma^2)) Tr[rho D(alpha) K(sigma) D(alpha)^dagger].
// Evaluated without truncating K(sigma): D(-alpha) applied to the eigenvectors of
// rho is kept in a working space grown until its norm deficit is below 1e-13;
// TruncationError if 1e-10 cannot be reached.
complex generalized_kr_at(const DensityMatrix& rho, complex alpha, double sigma);
PhaseField generalized_kr(const DensityMatrix& rho, const AlphaGrid& grid, double sigma);

// sigma = 1 through the closed-form vectors
//   v = D(alpha) exp(a^dagger^2 / 2)|0>,  w = D(alpha) exp(-a^dagger^2 / 2)|0>,
// K(alpha, 1) = (sqrt 2 / pi) <w|rho|v>. Components are exact in dim.
Ket kr_v_vector(complex alpha, std::size_t dim);
Ket kr_w_vector(complex alpha, std::size_t dim);
complex kr_closed_form_at(const DensityMatrix& rho, complex alpha);
PhaseField kr_closed_form(const DensityMatrix& rho, const AlphaGrid& grid);

// W(alpha, s) = 2/(pi (1-s)) Tr[rho D(alpha) Pi(s) D(alpha)^dagger], s < 1.
complex s_ordered_at(const DensityMatrix& rho, complex alpha, double s);
PhaseField s_ordered(const DensityMatrix& rho, const AlphaGrid& grid, double s);

// W(alpha) = int d^2beta / pi^2 exp(alpha conj(beta) - conj(alpha) beta) Omega(beta) Tr[rho D(beta)],
// by quadrature over the beta disk where |Tr[rho D] Omega| >= 1e-10.
using OrderingFunction = std::function<complex(complex beta)>;
PhaseField omega_transform(const DensityMatrix& rho, const AlphaGrid& grid, const OrderingFunction& omega,
                           FieldTag tag = {});

}  // namespace qpsf
