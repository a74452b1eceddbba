#pragma once

#include <filesystem>
#include <iosfwd>

#include "qpsf/fock.hpp"
#include "qpsf/grid.hpp"

namespace qpsf {

// QPSF binary layout (all little-endian):
//   "QPSF0001" | u32 0x01020304 | u32 n | u32 m | f64 q_min, dq, p_min, dp, hbar |
//   char tag[16] (NUL padded) | n*m complex values as (re, im) f64 pairs, q-major.
inline constexpr std::size_t kQpsfHeaderBytes = 8 + 4 + 4 + 4 + 5 * 8 + 16;

void write_qpsf(std::ostream& out, const PhaseField& field);
PhaseField read_qpsf(std::istream& in);
void write_qpsf(const std::filesystem::path& path, const PhaseField& field);
PhaseField read_qpsf(const std::filesystem::path& path);

// Header "q,p,re,im", one row per node, 17 significant digits.
void write_field_csv(std::ostream& out, const PhaseField& field);

// Header "axis,coordinate,re,im": q marginal rows, then p marginal rows.
void write_marginals_csv(std::ostream& out, const PhaseField& field);

// One matrix row per line as re,im pairs: re(0),im(0),re(1),im(1),...
void write_matrix_csv(std::ostream& out, const FockOperator& matrix);

}  // namespace qpsf
