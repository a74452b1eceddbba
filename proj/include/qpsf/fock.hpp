#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>

#include "qpsf/grid.hpp"
#include "qpsf/states.hpp"

namespace qpsf {

// Dense operator in the truncated number basis |0>, ..., |dim - 1>.
using FockOperator = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

// Hermitian, unit-trace, positive (to 1e-8) operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(FockOperator matrix);

  // |psi><psi| after normalizing psi.
  static DensityMatrix pure(const Ket& psi);

  const FockOperator& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  FockOperator matrix_;
};

// (a, a^dagger) truncated to dim levels.
std::pair<FockOperator, FockOperator> ladder_ops(std::size_t dim);

// <m|D(alpha)|n> for m < rows, n < cols from the Laguerre closed form. Elements
// are exact (no truncation of the exponential), so any block is accurate.
FockOperator displacement_block(complex alpha, std::size_t rows, std::size_t cols);

// D(alpha) = exp(alpha a^dagger - conj(alpha) a); requires |alpha|^2 <= dim / 4.
FockOperator displacement(complex alpha, std::size_t dim);

// Same operator from the matrix exponential of the truncated generator.
FockOperator displacement_expm(complex alpha, std::size_t dim);

// S(xi) = exp(-xi/2 a^dagger^2 + conj(xi)/2 a^2) via the ordered product
//   exp(-nu/(2 mu) a^dagger^2) mu^{-(N + 1/2)} exp(conj(nu)/(2 mu) a^2).
// Requires dim >= 32 and |xi| <= 2 (|xi| <= 2.5 once dim >= 96).
FockOperator squeeze(const SqueezeParams& params, std::size_t dim);

// S(xi) from the matrix exponential of the truncated generator.
FockOperator squeeze_expm(const SqueezeParams& params, std::size_t dim);

// K(sigma) = exp(c a^dagger^2) t^N exp(-c a^2), c = sigma/(1+sigma^2),
// t = (sigma^2-1)/(1+sigma^2), with 0^0 = 1. Requires dim >= 16.
FockOperator k_sigma_operator(double sigma, std::size_t dim);

// Pi(s) = ((s+1)/(s-1))^N for s < 1.
FockOperator pi_s_operator(double s, std::size_t dim);

// Trace of the continuum K(sigma): sqrt(1 + sigma^2) / 2 (binomial series).
double k_sigma_trace(double sigma);

// Mean of the last two distinct partial sums of the diagonal; accelerates the
// alternating series behind Tr K(sigma).
complex regularized_trace(const FockOperator& op);

// Fock-basis states. Each throws TruncationError when more than 1e-10 of the
// norm falls outside dim levels, then renormalizes.
Ket fock_ket(std::size_t n, std::size_t dim);
Ket coherent_ket(complex alpha0, std::size_t dim);
Ket cat_ket(complex alpha0, std::size_t dim);
Ket squeezed_ket(complex alpha0, const SqueezeParams& squeeze, std::size_t dim);  // D(alpha0) S(xi)|0>
Ket squeezed_cat_ket(const SqueezeParams& squeeze, std::size_t dim);             // S(xi)|0> + S(-xi)|0>

// Amplitudes of S(xi)|0> on the first `levels` levels, without truncation check.
Ket squeezed_vacuum_amplitudes(const SqueezeParams& squeeze, std::size_t levels);

// Uniform lattice of alpha = x + i y.
struct AlphaGrid {
  Axis re;
  Axis im;

  AlphaGrid(Axis re_axis, Axis im_axis);

  // count x count nodes on [-half_width, half_width]^2, both ends included.
  static AlphaGrid square(double half_width, std::size_t count);

  complex at(std::size_t i, std::size_t j) const { return {re.at(i), im.at(j)}; }
  double cell_area() const { return re.step * im.step; }
  std::size_t size() const { return re.count * im.count; }

  // Under alpha = (q + i p) / sqrt(2 hbar), hbar = 1/2 makes (q, p) = (Re, Im)
  // alpha and densities coincide; alpha fields use that PhaseGrid.
  PhaseGrid phase_grid() const;
  static AlphaGrid of(const PhaseGrid& grid);
};

inline constexpr double kAlphaHbar = 0.5;

// Re-expresses a (q, p) field in alpha coordinates: axes scale by 1/sqrt(2 hbar),
// values by 2 hbar. Identity for fields already on an alpha grid.
PhaseField to_alpha_coordinates(const PhaseField& field);

}  // namespace qpsf
