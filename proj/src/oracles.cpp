#include <cmath>

#include "qpsf/states.hpp"

namespace qpsf {

complex oracle_generalized_kr_coherent(complex alpha, complex alpha0, double sigma) {
  const double d = 1.0 + sigma * sigma;
  const complex delta = alpha - alpha0;
  const complex exponent = (sigma * std::conj(delta) * std::conj(delta) - 2.0 * std::norm(delta) - sigma * delta * delta) / d;
  return 2.0 / (kPi * std::sqrt(d)) * std::exp(exponent);
}

complex oracle_kr_cat(complex alpha, complex alpha0, double sigma) {
  const double d = 1.0 + sigma * sigma;
  const complex ac = std::conj(alpha);
  const complex a0c = std::conj(alpha0);
  const double norm = cat_normalization(alpha0);

  const complex direct_plus = std::exp(
      (sigma * (ac - a0c) * (ac - a0c) - sigma * (alpha - alpha0) * (alpha - alpha0) - 2.0 * std::norm(alpha - alpha0)) / d);
  const complex direct_minus = std::exp(
      (sigma * (ac + a0c) * (ac + a0c) - sigma * (alpha + alpha0) * (alpha + alpha0) - 2.0 * std::norm(alpha + alpha0)) / d);
  const complex cross_a = std::exp(
      (sigma * (ac + a0c) * (ac + a0c) - sigma * (alpha - alpha0) * (alpha - alpha0) - 2.0 * (ac + a0c) * (alpha - alpha0)) / d);
  const complex cross_b = std::exp(
      (sigma * (ac - a0c) * (ac - a0c) - sigma * (alpha + alpha0) * (alpha + alpha0) - 2.0 * (ac - a0c) * (alpha + alpha0)) / d);

  // Density-matrix weight is N^2.
  return 2.0 * norm * norm / (kPi * std::sqrt(d)) *
         (direct_plus + direct_minus + std::exp(-2.0 * std::norm(alpha0)) * (cross_a + cross_b));
}

complex oracle_kr_fock1(complex alpha) {
  const complex ac = std::conj(alpha);
  return std::sqrt(2.0) / kPi * (alpha * alpha - ac * ac) *
         std::exp(-std::norm(alpha) - 0.5 * alpha * alpha + 0.5 * ac * ac);
}

}  // namespace qpsf
