#include "qpsf/qpsf_file.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "qpsf/errors.hpp"

namespace qpsf {
namespace {

constexpr char kMagic[8] = {'Q', 'P', 'S', 'F', '0', '0', '0', '1'};
constexpr std::uint32_t kEndianMarker = 0x01020304u;
constexpr std::size_t kTagBytes = 16;

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int k = 0; k < 4; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xFFu);
  out.write(b.data(), b.size());
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> b{};
  for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((bits >> (8 * k)) & 0xFFu);
  out.write(b.data(), b.size());
}

void read_exact(std::istream& in, char* dst, std::size_t n) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) throw ValidationError("QPSF file is truncated");
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  read_exact(in, reinterpret_cast<char*>(b.data()), b.size());
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(b[k]) << (8 * k);
  return v;
}

double get_f64(std::istream& in) {
  std::array<unsigned char, 8> b{};
  read_exact(in, reinterpret_cast<char*>(b.data()), b.size());
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return std::bit_cast<double>(v);
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_qpsf(std::ostream& out, const PhaseField& field) {
  const PhaseGrid& g = field.grid();
  const std::string tag = field.tag().to_string();
  if (tag.size() >= kTagBytes) throw ConfigurationError("field tag too long for the QPSF header");
  out.write(kMagic, sizeof kMagic);
  put_u32(out, kEndianMarker);
  put_u32(out, static_cast<std::uint32_t>(g.q.count));
  put_u32(out, static_cast<std::uint32_t>(g.p.count));
  put_f64(out, g.q.min);
  put_f64(out, g.q.step);
  put_f64(out, g.p.min);
  put_f64(out, g.p.step);
  put_f64(out, g.hbar);
  std::array<char, kTagBytes> tag_bytes{};
  std::memcpy(tag_bytes.data(), tag.data(), tag.size());
  out.write(tag_bytes.data(), tag_bytes.size());
  for (const auto& v : field.values()) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
  if (!out) throw Error("failed to write QPSF data");
}

PhaseField read_qpsf(std::istream& in) {
  char magic[8];
  read_exact(in, magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw ValidationError("not a QPSF0001 file (bad magic)");
  if (get_u32(in) != kEndianMarker) throw ValidationError("QPSF endianness marker mismatch");
  const std::uint32_t n = get_u32(in);
  const std::uint32_t m = get_u32(in);
  const double q_min = get_f64(in);
  const double dq = get_f64(in);
  const double p_min = get_f64(in);
  const double dp = get_f64(in);
  const double hbar = get_f64(in);
  std::array<char, kTagBytes + 1> tag_bytes{};
  read_exact(in, tag_bytes.data(), kTagBytes);
  const FieldTag tag = FieldTag::parse(std::string(tag_bytes.data()));
  const PhaseGrid grid(Axis{q_min, dq, n}, Axis{p_min, dp, m}, hbar);

  std::vector<complex> values(static_cast<std::size_t>(n) * m);
  for (auto& v : values) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v = complex{re, im};
  }
  if (in.peek() != std::char_traits<char>::eof()) throw ValidationError("QPSF file has trailing bytes");
  return PhaseField(grid, std::move(values), tag);
}

void write_qpsf(const std::filesystem::path& path, const PhaseField& field) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_qpsf(out, field);
}

PhaseField read_qpsf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open " + path.string());
  return read_qpsf(in);
}

void write_field_csv(std::ostream& out, const PhaseField& field) {
  const PhaseGrid& g = field.grid();
  out << "q,p,re,im\n";
  for (std::size_t i = 0; i < field.rows(); ++i) {
    for (std::size_t j = 0; j < field.cols(); ++j) {
      const complex v = field(i, j);
      out << g17(g.q.at(i)) << ',' << g17(g.p.at(j)) << ',' << g17(v.real()) << ',' << g17(v.imag()) << '\n';
    }
  }
}

void write_marginals_csv(std::ostream& out, const PhaseField& field) {
  const PhaseGrid& g = field.grid();
  out << "axis,coordinate,re,im\n";
  const auto qm = q_marginal(field);
  for (std::size_t i = 0; i < qm.size(); ++i) {
    out << "q," << g17(g.q.at(i)) << ',' << g17(qm[i].real()) << ',' << g17(qm[i].imag()) << '\n';
  }
  const auto pm = p_marginal(field);
  for (std::size_t j = 0; j < pm.size(); ++j) {
    out << "p," << g17(g.p.at(j)) << ',' << g17(pm[j].real()) << ',' << g17(pm[j].imag()) << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const FockOperator& matrix) {
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (c > 0) out << ',';
      out << g17(matrix(r, c).real()) << ',' << g17(matrix(r, c).imag());
    }
    out << '\n';
  }
}

}  // namespace qpsf
