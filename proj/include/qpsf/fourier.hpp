#pragma once

#include <span>

#include "qpsf/grid.hpp"

namespace qpsf {

enum class FftDirection { forward, backward };

// Unnormalized in-place DFT of any length: forward uses exp(-2 pi i j k / n),
// backward exp(+2 pi i j k / n). Safe to call concurrently.
void fft(std::span<complex> data, FftDirection direction);

// Psi~(p_j) = sum_i exp(-i p_j q_i / hbar) Psi(q_i) dq on the conjugate grid.
MomentumField forward_fourier(const WaveField& psi);

// Exact inverse of forward_fourier, with the dp / (2 pi hbar) measure.
// The result is not renormalized.
WaveField inverse_fourier(const MomentumField& phi);

}  // namespace qpsf
