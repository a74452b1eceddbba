#pragma once

#include "qpsf/grid.hpp"

namespace qpsf {

// Free particle of mass m evolved for time t; hbar comes from the grid.
struct FreeEvolutionParams {
  double mass = 1.0;
  double t = 0.0;

  void validate() const;
};

// Psi~(p) -> exp(-i p^2 t / (2 m hbar)) Psi~(p). TruncationError if the evolved
// state reaches the grid edge (edge ratio > 1e-3).
WaveField evolve_wave(const WaveField& psi, const FreeEvolutionParams& params);

// K(q, p, t) = exp[t (i hbar/(2m) d_q^2 - (p/m) d_q)] K(q, p, 0), applied per
// p column in the Fourier domain of q. The q frequency of each column is taken
// on the branch p' - p with p' on the conjugate lattice, which makes the result
// equal to the K-R function of evolve_wave(psi). DomainError unless k0 is a K-R
// field; ConfigurationError if its p axis is not a conjugate window.
PhaseField evolve_kr_field(const PhaseField& k0, const FreeEvolutionParams& params);

enum class DiffusionSign { physical, flipped };

// max |d_t K + (p/m) d_q K - (i hbar / 2m) d_q^2 K| at the middle snapshot, with
// a centred difference in t and spectral q derivatives. `flipped` negates the
// diffusion term (negative control).
double residual_of_pde(const PhaseField& earlier, const PhaseField& middle, const PhaseField& later, double dt,
                       double mass, DiffusionSign sign = DiffusionSign::physical);

}  // namespace qpsf
