#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qpsf/grid.hpp"

namespace qpsf {

enum class RenderPart { re, im, abs };

RenderPart parse_render_part(const std::string& text);

// Selected real component, q-major like the field.
std::vector<double> field_part(const PhaseField& field, RenderPart part);

// 8-bit grayscale image: rows run over p with p max on top, columns over q;
// [min, max] maps linearly to [0, 255].
struct Heatmap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<unsigned char> pixels;  // row-major, top row first
  double min = 0.0;
  double max = 0.0;
};

Heatmap make_heatmap(const PhaseField& field, RenderPart part);

// Binary PGM (P5) plus a sidecar "<path>.range.txt" holding min and max.
void write_heatmap(const std::filesystem::path& path, const Heatmap& map);

struct Polyline {
  double level = 0.0;
  std::vector<std::pair<double, double>> points;  // (q, p)
  bool closed = false;
};

// min + k (max - min) / 10, k = 1..9.
std::vector<double> contour_levels(double min, double max);

// Marching squares on the field nodes; saddles resolved by the cell average.
std::vector<Polyline> contour_lines(const PhaseField& field, RenderPart part, const std::vector<double>& levels);

// Header "level,line,q,p"; `line` numbers polylines from 0.
void write_contour_csv(std::ostream& out, const std::vector<Polyline>& lines);

}  // namespace qpsf
