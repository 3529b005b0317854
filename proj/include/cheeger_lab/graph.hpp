#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cheeger_lab/errors.hpp"
#include "cheeger_lab/parallel.hpp"
#include "cheeger_lab/sampling.hpp"

namespace cheeger {

/// G_{n,r}: unit-weight graph on the points, i ~ j iff |X_i - X_j| <= r,
/// stored as CSR with ascending neighbor lists.
class NeighborhoodGraph {
 public:
  NeighborhoodGraph() = default;

  /// Graph from an explicit undirected edge list (duplicates and self-loops rejected).
  static NeighborhoodGraph from_edges(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                      double r = 0.0, PointSet points = {}) {
    std::vector<std::vector<std::uint32_t>> rows(n);
    for (auto [i, j] : edges) {
      if (i >= n || j >= n) throw std::invalid_argument("edge endpoint out of range");
      if (i == j) throw std::invalid_argument("self-loop in edge list");
      rows[i].push_back(j);
      rows[j].push_back(i);
    }
    for (auto& row : rows) {
      std::sort(row.begin(), row.end());
      if (std::adjacent_find(row.begin(), row.end()) != row.end()) throw std::invalid_argument("duplicate edge");
    }
    return from_rows(std::move(rows), r, std::move(points));
  }

  static NeighborhoodGraph from_rows(std::vector<std::vector<std::uint32_t>> rows, double r, PointSet points) {
    NeighborhoodGraph g;
    g.r_ = r;
    g.points_ = std::move(points);
    g.offsets_.assign(rows.size() + 1, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) g.offsets_[i + 1] = g.offsets_[i] + rows[i].size();
    g.adj_.reserve(g.offsets_.back());
    for (auto& row : rows) {
      g.adj_.insert(g.adj_.end(), row.begin(), row.end());
      std::vector<std::uint32_t>().swap(row);
    }
    return g;
  }

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::uint64_t edge_count() const { return adj_.size() / 2; }
  double radius() const { return r_; }
  const PointSet& points() const { return points_; }

  std::uint64_t degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
  std::span<const std::uint32_t> neighbors(std::size_t i) const {
    return {adj_.data() + offsets_[i], static_cast<std::size_t>(degree(i))};
  }

  bool adjacent(std::size_t i, std::size_t j) const {
    const auto row = neighbors(i);
    return std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(j));
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < vertex_count(); ++i) {
      for (std::uint32_t j : neighbors(i)) {
        if (i < j) out.emplace_back(static_cast<std::uint32_t>(i), j);
      }
    }
    return out;
  }

  bool operator==(const NeighborhoodGraph& o) const { return offsets_ == o.offsets_ && adj_ == o.adj_; }

 private:
  double r_ = 0.0;
  PointSet points_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> adj_;
};

namespace detail {

// Uniform grid over the leading `k` coordinates with cells of side >= r.
struct Grid {
  int k;
  std::vector<double> lo;
  std::vector<double> cell;
  std::vector<std::uint64_t> count;

  std::vector<std::uint64_t> coords(ConstPoint p) const {
    std::vector<std::uint64_t> c(k);
    for (int i = 0; i < k; ++i) {
      const double v = std::floor((p[i] - lo[i]) / cell[i]);
      c[i] = std::min<std::uint64_t>(count[i] - 1, v > 0 ? static_cast<std::uint64_t>(v) : 0);
    }
    return c;
  }

  std::uint64_t key(const std::vector<std::uint64_t>& c) const {
    std::uint64_t key = 0;
    for (int i = 0; i < k; ++i) key = key * count[i] + c[i];
    return key;
  }
};

inline Grid make_grid(const PointSet& pts, double r) {
  constexpr int kMaxGridDims = 6;  // 3^6 neighbor cells
  const int d = pts.dim;
  Grid g{std::min(d, kMaxGridDims), {}, {}, {}};
  g.lo.assign(g.k, std::numeric_limits<double>::infinity());
  std::vector<double> hi(g.k, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int a = 0; a < g.k; ++a) {
      g.lo[a] = std::min(g.lo[a], pts[i][a]);
      hi[a] = std::max(hi[a], pts[i][a]);
    }
  }
  g.cell.resize(g.k);
  g.count.resize(g.k);
  const double n_cap = std::max(1.0, static_cast<double>(pts.size()));
  for (int a = 0; a < g.k; ++a) {
    const double extent = hi[a] - g.lo[a];
    // Floor keeps the side >= r; more cells than points never helps.
    double c = std::floor(extent / r);
    c = std::clamp(c, 1.0, n_cap);
    g.count[a] = static_cast<std::uint64_t>(c);
    g.cell[a] = extent > 0 ? extent / c : 1.0;
    if (g.cell[a] < r) g.cell[a] = r;
  }
  // Keep the linear key within 64 bits by merging cells.
  for (;;) {
    long double total = 1.0L;
    for (int a = 0; a < g.k; ++a) total *= static_cast<long double>(g.count[a]);
    if (total < 1.8e19L) break;
    const auto widest = std::max_element(g.count.begin(), g.count.end()) - g.count.begin();
    g.count[widest] = (g.count[widest] + 1) / 2;
    g.cell[widest] *= 2.0;
  }
  return g;
}

}  // namespace detail

/// Builds G_{n,r} by bucketing points into a grid with cell side >= r and
/// scanning the 3^k neighboring cells (k = min(d, 6) leading coordinates).
/// Rows are independent, so the result does not depend on thread count.
inline NeighborhoodGraph build_graph(const PointSet& pts, double r, std::size_t threads = worker_count()) {
  if (!(r > 0.0)) throw DomainError("build_graph: r must be positive");
  const std::size_t n = pts.size();
  if (n > std::numeric_limits<std::uint32_t>::max()) throw BudgetError("build_graph: too many points");
  if (n == 0) return NeighborhoodGraph::from_rows({}, r, pts);
  const detail::Grid grid = detail::make_grid(pts, r);
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(n);
  for (std::size_t i = 0; i < n; ++i) keyed[i] = {grid.key(grid.coords(pts[i])), static_cast<std::uint32_t>(i)};
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::uint64_t> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = keyed[i].first;

  int offsets = 1;
  for (int a = 0; a < grid.k; ++a) offsets *= 3;
  const double r2 = r * r;
  std::vector<std::vector<std::uint32_t>> rows(n);
  parallel_for(
      n,
      [&](std::size_t i) {
        const auto home = grid.coords(pts[i]);
        std::vector<std::uint64_t> c(grid.k);
        auto& row = rows[i];
        for (int code = 0; code < offsets; ++code) {
          int rest = code;
          bool valid = true;
          for (int a = 0; a < grid.k; ++a) {
            const int delta = rest % 3 - 1;
            rest /= 3;
            if ((delta < 0 && home[a] == 0) || (delta > 0 && home[a] + 1 >= grid.count[a])) {
              valid = false;
              break;
            }
            c[a] = home[a] + delta;
          }
          if (!valid) continue;
          const std::uint64_t key = grid.key(c);
          auto first = std::lower_bound(keys.begin(), keys.end(), key);
          for (auto it = first; it != keys.end() && *it == key; ++it) {
            const std::uint32_t j = keyed[static_cast<std::size_t>(it - keys.begin())].second;
            if (j != i && squared_distance(pts[i], pts[j]) <= r2) row.push_back(j);
          }
        }
        std::sort(row.begin(), row.end());
      },
      threads);
  return NeighborhoodGraph::from_rows(std::move(rows), r, pts);
}

inline NeighborhoodGraph build_graph(const Sample& s, double r, std::size_t threads = worker_count()) {
  return build_graph(s.points, r, threads);
}

/// Edge list: header "n m r", then one "i j" line per edge with i < j.
inline void write_edge_list(std::ostream& out, const NeighborhoodGraph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << ' ' << format_double(g.radius()) << '\n';
  for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

inline NeighborhoodGraph read_edge_list(std::istream& in) {
  std::size_t n = 0;
  std::uint64_t m = 0;
  std::string r_text;
  if (!(in >> n >> m >> r_text)) throw std::runtime_error("edge list: bad header");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(m);
  for (std::uint64_t e = 0; e < m; ++e) {
    std::uint32_t i = 0, j = 0;
    if (!(in >> i >> j)) throw std::runtime_error("edge list: truncated after " + std::to_string(e) + " edges");
    if (i >= j) throw std::runtime_error("edge list: expected i < j");
    edges.emplace_back(i, j);
  }
  return NeighborhoodGraph::from_edges(n, edges, std::stod(r_text));
}

}  // namespace cheeger
