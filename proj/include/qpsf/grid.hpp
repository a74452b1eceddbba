#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qpsf {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Uniform, strictly increasing sample axis.
struct Axis {
  double min = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  double at(std::size_t i) const { return min + step * static_cast<double>(i); }
  double max() const { return at(count - 1); }
};

// Uniform position sampling q_i = q_min + i*dq, i < n, together with hbar.
// The conjugate momentum grid is p_j = (j - n/2)*dp with dp = 2*pi*hbar/(n*dq).
class PositionGrid {
 public:
  PositionGrid(double q_min, double dq, std::size_t n, double hbar = 1.0);

  // n samples covering [q_min, q_max) (right end excluded, periodic convention).
  static PositionGrid spanning(double q_min, double q_max, std::size_t n, double hbar = 1.0);

  double q_min() const { return q_min_; }
  double dq() const { return dq_; }
  std::size_t n() const { return n_; }
  double hbar() const { return hbar_; }
  double span() const { return dq_ * static_cast<double>(n_); }

  double q(std::size_t i) const { return q_min_ + dq_ * static_cast<double>(i); }
  double dp() const;
  double p(std::size_t j) const;

  Axis position_axis() const { return {q_min_, dq_, n_}; }
  Axis momentum_axis() const;

  bool operator==(const PositionGrid&) const = default;

 private:
  double q_min_;
  double dq_;
  std::size_t n_;
  double hbar_;
};

enum class Normalize { yes, no };

// Complex wavefunction samples Psi(q_i). Normalized on construction unless asked
// otherwise; warns when the state is not negligible at the grid edges.
class WaveField {
 public:
  WaveField(PositionGrid grid, std::vector<complex> values, Normalize normalize = Normalize::yes);

  const PositionGrid& grid() const { return grid_; }
  std::span<const complex> values() const { return values_; }
  const complex& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  // Riemann norm sum |Psi|^2 dq.
  double norm() const;

  // max(|Psi(q_0)|, |Psi(q_{n-1})|) / max |Psi|.
  double edge_ratio() const;

 private:
  PositionGrid grid_;
  std::vector<complex> values_;
};

// Momentum amplitudes Psi~(p_j) on the conjugate grid of `grid`, with the
// convention Psi~(p) = int dq exp(-i p q / hbar) Psi(q).
class MomentumField {
 public:
  MomentumField(PositionGrid grid, std::vector<complex> values);

  const PositionGrid& grid() const { return grid_; }
  std::span<const complex> values() const { return values_; }
  const complex& operator[](std::size_t j) const { return values_[j]; }
  std::size_t size() const { return values_.size(); }

  // sum |Psi~|^2 dp / (2 pi hbar).
  double norm() const;

 private:
  PositionGrid grid_;
  std::vector<complex> values_;
};

// Rectangular (q, p) lattice.
struct PhaseGrid {
  Axis q;
  Axis p;
  double hbar = 1.0;

  PhaseGrid(Axis q_axis, Axis p_axis, double hbar_value = 1.0);

  // Full conjugate lattice of a position grid (m = n).
  static PhaseGrid conjugate(const PositionGrid& grid);

  // Conjugate lattice restricted to the momentum nodes inside [p_lo, p_hi].
  static PhaseGrid conjugate(const PositionGrid& grid, double p_lo, double p_hi);

  std::size_t size() const { return q.count * p.count; }
};

enum class DistributionKind { wigner, kr, mh, cohen, sigma_kr, s_ordered, product };

// Identifies which quasi-distribution a field holds. `parameter` carries sigma
// for sigma_kr and s for s_ordered; `label` names a Cohen kernel.
struct FieldTag {
  DistributionKind kind = DistributionKind::cohen;
  double parameter = 0.0;
  std::string label;

  // Compact text form, at most 15 characters (fits the 16-byte file field).
  std::string to_string() const;
  static FieldTag parse(const std::string& text);
};

// Complex values on a PhaseGrid, q-major: value(i, j) = values[i * p.count + j].
class PhaseField {
 public:
  PhaseField(PhaseGrid grid, std::vector<complex> values, FieldTag tag);

  const PhaseGrid& grid() const { return grid_; }
  const FieldTag& tag() const { return tag_; }
  std::span<const complex> values() const { return values_; }
  std::span<complex> values() { return values_; }

  std::size_t rows() const { return grid_.q.count; }
  std::size_t cols() const { return grid_.p.count; }
  const complex& operator()(std::size_t i, std::size_t j) const { return values_[i * cols() + j]; }
  complex& operator()(std::size_t i, std::size_t j) { return values_[i * cols() + j]; }

 private:
  PhaseGrid grid_;
  std::vector<complex> values_;
  FieldTag tag_;
};

// Position grid carrying a phase grid's q axis and hbar.
PositionGrid position_grid_of(const PhaseGrid& grid);

// Conjugate-lattice index of grid.p.min; ConfigurationError unless the p axis is
// a contiguous window of the conjugate momentum grid of `position`.
std::size_t conjugate_window_start(const PositionGrid& position, const PhaseGrid& grid);

// Riemann sum of field values with dq*dp weights.
complex integrate_2d(const PhaseField& field);

// Sums over p (q-marginal, indexed by q) and over q (p-marginal, indexed by p).
std::vector<complex> q_marginal(const PhaseField& field);
std::vector<complex> p_marginal(const PhaseField& field);

// Phase-space map alpha = (q + i p) / sqrt(2 hbar). Densities transform with the
// Jacobian: K_alpha(alpha) = 2 hbar K(q, p).
complex alpha_of(double q, double p, double hbar);
double alpha_density_scale(double hbar);

}  // namespace qpsf
