#pragma once

#include <array>
#include <span>
#include <string>

#include "qpsf/grid.hpp"

namespace qpsf {

// passed <=> |measured - expected| <= tolerance.
struct CheckReport {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string context;
};

CheckReport make_report(std::string name, double measured, double expected, double tolerance,
                        std::string context = {});

// Per-check tolerances, set at the reference grid n = 512, q in [-12, 12), hbar = 1.
//
//   check                         tolerance   measured quantity
//   marginal-q, marginal-p        1e-6        sup |marginal - density|
//   kr-modulus-identity           1e-8        sup |(2 pi hbar)^2 |K|^2 - |Psi|^2 |Psi~|^2|
//   kr-square-integral            1e-5        |sum |K|^2 dq dp - 1/(2 pi hbar)|
//   kr-normalization              1e-6        |sum K dq dp - 1|
//   wigner-reality                1e-10       max |Im P|
//   complex-part (informational)  --          max |Im P|, significant above 1e-3
namespace tolerance {
inline constexpr double marginal = 1e-6;
inline constexpr double kr_modulus = 1e-8;
inline constexpr double kr_square_integral = 1e-5;
inline constexpr double normalization = 1e-6;
inline constexpr double reality = 1e-10;
inline constexpr double significant_imaginary = 1e-3;
}  // namespace tolerance

// q and p marginals of a field on psi's (q, p) lattice against |Psi|^2 and
// |Psi~|^2 / (2 pi hbar). ConfigurationError on grid mismatch.
std::array<CheckReport, 2> check_marginals(const PhaseField& field, const WaveField& psi);

// |K|^2 identity, square integral and normalization of the K-R function.
std::array<CheckReport, 3> check_kr_identities(const WaveField& psi, const PhaseGrid& grid);

// Real-valued kinds (Wigner, unit-kernel Cohen, sigma = 0, s-ordered) must have
// max |Im| below 1e-10. Complex kinds get an informational report that always
// passes and notes whether the imaginary part is significant.
CheckReport check_reality_wigner(const PhaseField& field);

// "PASS name: measured=... expected=... tolerance=... [context]"
std::string to_text(const CheckReport& report);
std::string to_text(std::span<const CheckReport> reports);

// name,measured,expected,tolerance,pass
std::string csv_header();
std::string to_csv_row(const CheckReport& report);
std::string to_csv(std::span<const CheckReport> reports);

bool all_passed(std::span<const CheckReport> reports);

}  // namespace qpsf
