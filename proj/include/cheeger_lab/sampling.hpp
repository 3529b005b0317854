#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cheeger_lab/domain.hpp"
#include "cheeger_lab/random.hpp"

namespace cheeger {

/// Row-major point cloud.
struct PointSet {
  int dim = 0;
  std::vector<double> coords;

  std::size_t size() const { return dim ? coords.size() / static_cast<std::size_t>(dim) : 0; }
  ConstPoint operator[](std::size_t i) const { return {coords.data() + i * dim, static_cast<std::size_t>(dim)}; }
  void push_back(ConstPoint p) { coords.insert(coords.end(), p.begin(), p.end()); }
};

struct Sample {
  PointSet points;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Domain domain;
};

/// n uniform draws from M by rejection from its bounding box. Coordinates
/// are drawn in order x1..xd from one xoshiro256** stream.
inline Sample sample_uniform(const Domain& M, std::size_t n, std::uint64_t seed) {
  Sample s{{M.dim(), {}}, n, seed, M};
  s.points.coords.reserve(n * static_cast<std::size_t>(M.dim()));
  const Box b = M.bounding_box();
  const int d = M.dim();
  Xoshiro256 rng(seed);
  std::vector<double> p(d);
  while (s.points.size() < n) {
    for (int i = 0; i < d; ++i) p[i] = b.lo[i] + (b.hi[i] - b.lo[i]) * rng.uniform01();
    if (M.contains(p)) s.points.push_back(p);
  }
  return s;
}

inline std::string format_double(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  if (v == -std::numeric_limits<double>::infinity()) return "-inf";
  if (v != v) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV with header x1,...,xd and one point per row.
inline void write_points_csv(std::ostream& out, const PointSet& pts) {
  for (int i = 0; i < pts.dim; ++i) out << (i ? "," : "") << 'x' << i + 1;
  out << '\n';
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto p = pts[k];
    for (int i = 0; i < pts.dim; ++i) out << (i ? "," : "") << format_double(p[i]);
    out << '\n';
  }
}

inline PointSet read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("points csv: missing header");
  PointSet pts;
  pts.dim = 1;
  for (char c : line) pts.dim += (c == ',');
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    for (int i = 0; i < pts.dim; ++i) {
      std::size_t used = 0;
      pts.coords.push_back(std::stod(line.substr(pos), &used));
      pos += used + 1;
    }
  }
  return pts;
}

}  // namespace cheeger
