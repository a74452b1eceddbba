#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qpsf/grid.hpp"
#include "qpsf/log.hpp"

namespace testing {

using qpsf::complex;

inline double sup_diff(std::span<const complex> a, std::span<const complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return a.size() == b.size() ? m : INFINITY;
}

inline double sup_abs(std::span<const complex> a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

// Reference grid: n = 512 on [-12, 12), hbar = 1.
inline qpsf::PositionGrid reference_grid(double hbar = 1.0) { return qpsf::PositionGrid::spanning(-12.0, 12.0, 512, hbar); }

// Collects warnings while alive.
class WarningCapture {
 public:
  WarningCapture() {
    previous_ = qpsf::set_warning_sink([this](std::string_view m) { messages.emplace_back(m); });
  }
  ~WarningCapture() { qpsf::set_warning_sink(std::move(previous_)); }
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  std::vector<std::string> messages;

 private:
  qpsf::WarningSink previous_;
};

}  // namespace testing
