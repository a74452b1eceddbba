#pragma once

#include "qpsf/grid.hpp"

namespace qpsf {

// Coherent amplitude alpha0; with w = sqrt(hbar) the state is centred at
// q0 = sqrt(2) w Re(alpha0), p0 = sqrt(2) (hbar / w) Im(alpha0).
struct CoherentParams {
  complex alpha0{0.0, 0.0};
};

// Squeeze parameter xi = xi_abs * exp(i phi_xi).
class SqueezeParams {
 public:
  SqueezeParams(double xi_abs, double phi_xi = 0.0);

  double xi_abs() const { return xi_abs_; }
  double phi_xi() const { return phi_xi_; }
  complex xi() const { return std::polar(xi_abs_, phi_xi_); }
  double mu() const;
  complex nu() const;

 private:
  double xi_abs_;
  double phi_xi_;
};

// Two plane waves exp(i p1 q / hbar) + exp(i p2 q / hbar) under a Gaussian
// window exp(-q^2 / (2 L^2)).
struct PlaneWavePairParams {
  double p1 = 0.0;
  double p2 = 0.0;
  double window_width = 1.0;
};

WaveField coherent_wave(const CoherentParams& params, const PositionGrid& grid);

// Harmonic-oscillator eigenfunction (unit mass and frequency), 0 <= n <= 50.
WaveField fock_wave(int n, const PositionGrid& grid);

// N (|alpha0> + |-alpha0>) with N = (2 + 2 exp(-2 |alpha0|^2))^{-1/2}.
WaveField cat_wave(const CoherentParams& params, const PositionGrid& grid);
double cat_normalization(complex alpha0);

WaveField plane_wave_pair(const PlaneWavePairParams& params, const PositionGrid& grid);

// D(alpha0) S(xi) |0>, axis-aligned squeezing only (phi_xi in {0, pi}).
WaveField squeezed_coherent_wave(const CoherentParams& coherent, const SqueezeParams& squeeze,
                                 const PositionGrid& grid);

// S(|xi|)|0> + S(-|xi|)|0>, normalized numerically.
WaveField squeezed_cat_wave(const SqueezeParams& squeeze, const PositionGrid& grid);

// Closed-form quasi-distributions in alpha units (integrate to 1 over d^2 alpha).

// Generalized K-R function of the coherent state |alpha0>.
complex oracle_generalized_kr_coherent(complex alpha, complex alpha0, double sigma);

// Generalized K-R function of the cat N(|alpha0> + |-alpha0>).
complex oracle_kr_cat(complex alpha, complex alpha0, double sigma);

// K-R function (sigma = 1) of the one-photon Fock state.
complex oracle_kr_fock1(complex alpha);

}  // namespace qpsf
