#include "qpsf/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>

#include "qpsf/errors.hpp"

namespace qpsf {
namespace {

// Cell edge: orientation 0 joins (i, j)-(i+1, j), orientation 1 joins (i, j)-(i, j+1).
struct EdgeId {
  int orientation;
  std::size_t i;
  std::size_t j;
  auto operator<=>(const EdgeId&) const = default;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RenderPart parse_render_part(const std::string& text) {
  if (text == "re") return RenderPart::re;
  if (text == "im") return RenderPart::im;
  if (text == "abs") return RenderPart::abs;
  throw ConfigurationError("unknown part '" + text + "' (expected re, im or abs)");
}

std::vector<double> field_part(const PhaseField& field, RenderPart part) {
  std::vector<double> out;
  out.reserve(field.values().size());
  for (const auto& v : field.values()) {
    switch (part) {
      case RenderPart::re: out.push_back(v.real()); break;
      case RenderPart::im: out.push_back(v.imag()); break;
      case RenderPart::abs: out.push_back(std::abs(v)); break;
    }
  }
  return out;
}

Heatmap make_heatmap(const PhaseField& field, RenderPart part) {
  const auto data = field_part(field, part);
  Heatmap map;
  map.width = field.rows();
  map.height = field.cols();
  const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
  map.min = *lo;
  map.max = *hi;
  const double range = map.max - map.min;
  map.pixels.resize(map.width * map.height);
  for (std::size_t row = 0; row < map.height; ++row) {
    const std::size_t j = map.height - 1 - row;
    for (std::size_t i = 0; i < map.width; ++i) {
      const double v = data[i * field.cols() + j];
      const double scaled = range > 0.0 ? 255.0 * (v - map.min) / range : 0.0;
      map.pixels[row * map.width + i] = static_cast<unsigned char>(std::clamp(std::lround(scaled), 0L, 255L));
    }
  }
  return map;
}

void write_heatmap(const std::filesystem::path& path, const Heatmap& map) {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "P5\n" << map.width << ' ' << map.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(map.pixels.data()), static_cast<std::streamsize>(map.pixels.size()));
    if (!out) throw Error("failed to write " + path.string());
  }
  std::filesystem::path side = path;
  side += ".range.txt";
  std::ofstream out(side, std::ios::trunc);
  if (!out) throw Error("cannot open " + side.string() + " for writing");
  out << "min " << g17(map.min) << "\nmax " << g17(map.max) << '\n';
}

std::vector<double> contour_levels(double min, double max) {
  std::vector<double> levels;
  for (int k = 1; k <= 9; ++k) levels.push_back(min + k * (max - min) / 10.0);
  return levels;
}

std::vector<Polyline> contour_lines(const PhaseField& field, RenderPart part, const std::vector<double>& levels) {
  const auto data = field_part(field, part);
  const PhaseGrid& g = field.grid();
  const std::size_t nq = field.rows();
  const std::size_t np = field.cols();
  auto value = [&](std::size_t i, std::size_t j) { return data[i * np + j]; };

  std::vector<Polyline> result;
  if (nq < 2 || np < 2) return result;

  for (const double level : levels) {
    auto crossing = [&](const EdgeId& e) {
      const std::size_t i2 = e.orientation == 0 ? e.i + 1 : e.i;
      const std::size_t j2 = e.orientation == 0 ? e.j : e.j + 1;
      const double a = value(e.i, e.j);
      const double b = value(i2, j2);
      const double s = (level - a) / (b - a);
      const double q = g.q.at(e.i) + (e.orientation == 0 ? s * g.q.step : 0.0);
      const double p = g.p.at(e.j) + (e.orientation == 1 ? s * g.p.step : 0.0);
      return std::pair{q, p};
    };

    std::vector<std::pair<EdgeId, EdgeId>> segments;
    for (std::size_t i = 0; i + 1 < nq; ++i) {
      for (std::size_t j = 0; j + 1 < np; ++j) {
        // corners: 0 (i,j), 1 (i+1,j), 2 (i+1,j+1), 3 (i,j+1)
        const double c[4] = {value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1)};
        bool up[4];
        for (int k = 0; k < 4; ++k) up[k] = c[k] > level;
        const EdgeId edges[4] = {{0, i, j}, {1, i + 1, j}, {0, i, j + 1}, {1, i, j}};  // bottom right top left
        const bool cut[4] = {up[0] != up[1], up[1] != up[2], up[3] != up[2], up[0] != up[3]};
        const int count = cut[0] + cut[1] + cut[2] + cut[3];
        if (count == 2) {
          int first = -1;
          int second = -1;
          for (int k = 0; k < 4; ++k) {
            if (!cut[k]) continue;
            (first < 0 ? first : second) = k;
          }
          segments.emplace_back(edges[first], edges[second]);
        } else if (count == 4) {
          const bool centre = 0.25 * (c[0] + c[1] + c[2] + c[3]) > level;
          // Corners on the other side of the centre are cut off on their own.
          if (up[0] != centre) {
            segments.emplace_back(edges[0], edges[3]);
            segments.emplace_back(edges[2], edges[1]);
          } else {
            segments.emplace_back(edges[0], edges[1]);
            segments.emplace_back(edges[2], edges[3]);
          }
        }
      }
    }

    std::map<EdgeId, std::vector<std::size_t>> incident;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      incident[segments[s].first].push_back(s);
      incident[segments[s].second].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);

    auto trace = [&](std::size_t start_segment, const EdgeId& start_edge) {
      Polyline line;
      line.level = level;
      line.points.push_back(crossing(start_edge));
      EdgeId at = start_edge;
      std::size_t seg = start_segment;
      for (;;) {
        used[seg] = true;
        const EdgeId next = segments[seg].first == at ? segments[seg].second : segments[seg].first;
        line.points.push_back(crossing(next));
        at = next;
        std::size_t follow = segments.size();
        for (const std::size_t cand : incident[at]) {
          if (!used[cand]) {
            follow = cand;
            break;
          }
        }
        if (follow == segments.size()) break;
        seg = follow;
      }
      line.closed = line.points.size() > 2 && at == start_edge;
      result.push_back(std::move(line));
    };

    // Open lines start at edges with a single segment, the rest are loops.
    for (const auto& [edge, segs] : incident) {
      if (segs.size() == 1 && !used[segs.front()]) trace(segs.front(), edge);
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
      if (!used[s]) trace(s, segments[s].first);
    }
  }
  return result;
}

void write_contour_csv(std::ostream& out, const std::vector<Polyline>& lines) {
  out << "level,line,q,p\n";
  for (std::size_t k = 0; k < lines.size(); ++k) {
    for (const auto& [q, p] : lines[k].points) {
      out << g17(lines[k].level) << ',' << k << ',' << g17(q) << ',' << g17(p) << '\n';
    }
  }
}

}  // namespace qpsf
