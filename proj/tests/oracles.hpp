#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "cheeger_lab/graph.hpp"
#include "cheeger_lab/random.hpp"

namespace oracle {

using EdgeSet = std::set<std::pair<std::uint32_t, std::uint32_t>>;

/// All pairs i < j with squared distance <= r^2.
inline EdgeSet brute_edges(const cheeger::PointSet& pts, double r) {
  EdgeSet e;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double s = 0.0;
      for (int a = 0; a < pts.dim; ++a) s += (pts[i][a] - pts[j][a]) * (pts[i][a] - pts[j][a]);
      if (s <= r * r) e.emplace(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  return e;
}

inline EdgeSet edge_set(const cheeger::NeighborhoodGraph& G) {
  EdgeSet e;
  for (auto p : G.edges()) e.insert(p);
  return e;
}

struct Cut {
  std::uint64_t delta_S = 0, delta_Sc = 0, sigma = 0;
  double h = std::numeric_limits<double>::infinity();
};

/// Cut quantities straight from the edge set.
inline Cut brute_cut(std::size_t n, const EdgeSet& edges, const std::vector<std::uint8_t>& S) {
  Cut c;
  std::vector<std::uint64_t> deg(n, 0);
  for (auto [i, j] : edges) {
    ++deg[i];
    ++deg[j];
    if ((S[i] != 0) != (S[j] != 0)) ++c.sigma;
  }
  for (std::size_t i = 0; i < n; ++i) (S[i] ? c.delta_S : c.delta_Sc) += deg[i];
  const auto m = std::min(c.delta_S, c.delta_Sc);
  if (m > 0) c.h = static_cast<double>(c.sigma) / static_cast<double>(m);
  return c;
}

/// min over every nonempty proper subset, by plain enumeration of all 2^n masks.
inline double brute_conductance(std::size_t n, const EdgeSet& edges) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::uint8_t> S(n);
    for (std::size_t i = 0; i < n; ++i) S[i] = (mask >> i) & 1U;
    best = std::min(best, brute_cut(n, edges, S).h);
  }
  return best;
}

/// Composite Simpson rule on [a, b] with `panels` (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int panels = 2000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

/// Area of the circular segment of the unit disk above height eta.
inline double segment_area(double eta) { return std::acos(eta) - eta * std::sqrt(1.0 - eta * eta); }

inline cheeger::PointSet random_points(std::size_t n, int d, std::uint64_t seed, double scale = 1.0) {
  cheeger::Xoshiro256 rng(seed);
  cheeger::PointSet p;
  p.dim = d;
  for (std::size_t i = 0; i < n * static_cast<std::size_t>(d); ++i) p.coords.push_back(scale * rng.uniform01());
  return p;
}

}  // namespace oracle
