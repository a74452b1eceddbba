#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qpsf/grid.hpp"

namespace qpsf {

// Cohen kernel Phi(q', p'). Admissible kernels satisfy Phi(q', 0) = 1 = Phi(0, p').
class CohenKernel {
 public:
  using Evaluator = std::function<complex(double q_lag, double p_lag, double hbar)>;

  CohenKernel(std::string name, Evaluator evaluator);

  const std::string& name() const { return name_; }
  complex operator()(double q_lag, double p_lag, double hbar) const { return evaluator_(q_lag, p_lag, hbar); }

  // Checks the marginal constraint on the sampled lag axes; throws ValidationError.
  void validate(const Axis& q_lags, const Axis& p_lags, double hbar) const;

  static CohenKernel unit();               // Wigner
  static CohenKernel kirkwood_rihaczek();  // exp(-i p' q' / (2 hbar))
  static CohenKernel margenau_hill();      // cos(p' q' / (2 hbar))

 private:
  std::string name_;
  Evaluator evaluator_;
};

// exp(-i sigma q' p' / (2 hbar)): sigma = 0 is Wigner, sigma = 1 is K-R.
CohenKernel sigma_kernel(double sigma);

enum class KernelCheck { enforce, skip };

// A(q', p') on the lag lattice q'_k = k dq, p'_l = l dp, k, l in [-n, n).
class AmbiguityField {
 public:
  AmbiguityField(PhaseGrid lags, std::vector<complex> values);

  const PhaseGrid& grid() const { return grid_; }
  std::span<const complex> values() const { return values_; }
  std::size_t rows() const { return grid_.q.count; }
  std::size_t cols() const { return grid_.p.count; }
  const complex& operator()(std::size_t k, std::size_t l) const { return values_[k * cols() + l]; }

  // Index of the lag origin along each axis.
  std::size_t origin_row() const { return rows() / 2; }
  std::size_t origin_col() const { return cols() / 2; }

 private:
  PhaseGrid grid_;
  std::vector<complex> values_;
};

// Psi at the half-offset nodes q_i + dq/2 by band-limited (Fourier) interpolation.
std::vector<complex> half_step_samples(const WaveField& psi);

// The phase grid must share psi's position axis and select a contiguous window
// of its conjugate momentum grid (see PhaseGrid::conjugate).

// K(q, p) = (1/2 pi hbar) Psi(q) exp(-i p q / hbar) conj(Psi~(p)).
PhaseField kirkwood_rihaczek(const WaveField& psi, const PhaseGrid& grid);

// Real part of K-R.
PhaseField margenau_hill(const WaveField& psi, const PhaseGrid& grid);

PhaseField wigner(const WaveField& psi, const PhaseGrid& grid);

AmbiguityField ambiguity(const WaveField& psi);

PhaseField cohen(const WaveField& psi, const CohenKernel& kernel, const PhaseGrid& grid,
                 KernelCheck check = KernelCheck::enforce);

// Cohen transform with sigma_kernel(sigma), tagged sigma-kr.
PhaseField sigma_kirkwood_rihaczek(const WaveField& psi, double sigma, const PhaseGrid& grid);

// (1/2 pi hbar) |Psi(q)|^2 |Psi~(p)|^2.
PhaseField product_distribution(const WaveField& psi, const PhaseGrid& grid);

}  // namespace qpsf
