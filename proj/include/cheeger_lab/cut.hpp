#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "cheeger_lab/errors.hpp"
#include "cheeger_lab/graph.hpp"

namespace cheeger {

/// Indicator vector over the vertices: S[i] != 0 iff i in S.
using VertexSubset = std::vector<std::uint8_t>;

/// Bitmask ("0x..." for n <= 64) or ascending index list ("{i;j;...}").
inline std::string describe_subset(const VertexSubset& S) {
  if (S.size() <= 64) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < S.size(); ++i) {
      if (S[i]) mask |= std::uint64_t{1} << i;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(mask));
    return buf;
  }
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (!S[i]) continue;
    out += (first ? "" : ";") + std::to_string(i);
    first = false;
  }
  return out + "}";
}

/// sigma / min(delta_S, delta_Sc), +inf when the minimum is zero.
inline double normalized_cut_value(std::uint64_t sigma, std::uint64_t delta_S, std::uint64_t delta_Sc) {
  const std::uint64_t m = std::min(delta_S, delta_Sc);
  return m ? static_cast<double>(sigma) / static_cast<double>(m) : std::numeric_limits<double>::infinity();
}

struct CutEvaluation {
  std::uint64_t delta_S = 0;
  std::uint64_t delta_Sc = 0;
  std::uint64_t sigma_S = 0;
  double h = std::numeric_limits<double>::infinity();
  bool degenerate = false;  // S empty or S = V
  std::string subset;
};

inline CutEvaluation evaluate_cut(const NeighborhoodGraph& G, const VertexSubset& S) {
  const std::size_t n = G.vertex_count();
  if (S.size() != n) throw DomainError("evaluate_cut: subset size differs from vertex count");
  CutEvaluation e;
  std::size_t members = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!S[i]) {
      e.delta_Sc += G.degree(i);
      continue;
    }
    ++members;
    e.delta_S += G.degree(i);
    for (std::uint32_t j : G.neighbors(i)) e.sigma_S += !S[j];
  }
  e.degenerate = members == 0 || members == n;
  e.h = normalized_cut_value(e.sigma_S, e.delta_S, e.delta_Sc);
  e.subset = describe_subset(S);
  return e;
}

/// Maintains delta(S) and sigma(S) under single-vertex toggles, each in
/// O(deg v).
class CutTracker {
 public:
  explicit CutTracker(const NeighborhoodGraph& G) : G_(G), in_(G.vertex_count(), 0), total_(2 * G.edge_count()) {}

  void toggle(std::size_t v) {
    std::uint64_t inside = 0;
    for (std::uint32_t j : G_.neighbors(v)) inside += in_[j];
    const std::uint64_t deg = G_.degree(v);
    if (in_[v]) {
      sigma_ = sigma_ + 2 * inside - deg;
      delta_ -= deg;
      --size_;
    } else {
      sigma_ = sigma_ + deg - 2 * inside;
      delta_ += deg;
      ++size_;
    }
    in_[v] ^= 1;
  }

  void set(std::size_t v, bool member) {
    if ((in_[v] != 0) != member) toggle(v);
  }

  bool contains(std::size_t v) const { return in_[v] != 0; }
  const VertexSubset& subset() const { return in_; }
  std::size_t size() const { return size_; }
  std::uint64_t delta_S() const { return delta_; }
  std::uint64_t delta_Sc() const { return total_ - delta_; }
  std::uint64_t sigma_S() const { return sigma_; }
  double h() const { return normalized_cut_value(sigma_, delta_, total_ - delta_); }

 private:
  const NeighborhoodGraph& G_;
  VertexSubset in_;
  std::uint64_t total_;
  std::uint64_t delta_ = 0;
  std::uint64_t sigma_ = 0;
  std::size_t size_ = 0;
};

struct ExactConductance {
  double H = std::numeric_limits<double>::infinity();
  VertexSubset subset;  // empty when every cut is infinite
  std::uint64_t mask = 0;
};

inline constexpr std::size_t kExactVertexLimit = 24;

/// H(G) by enumerating the 2^(n-1) - 1 subsets that exclude vertex n - 1 (one
/// per complement pair) in Gray-code order. Ratios are compared exactly;
/// ties go to the smallest mask.
inline ExactConductance conductance_exact(const NeighborhoodGraph& G) {
  const std::size_t n = G.vertex_count();
  if (n > kExactVertexLimit) {
    throw BudgetError("conductance_exact: " + std::to_string(n) + " vertices exceeds the limit of " +
                      std::to_string(kExactVertexLimit) + "; use spectral_sweep");
  }
  ExactConductance best;
  if (n < 2) return best;
  std::vector<std::uint32_t> adj(n, 0);
  std::vector<std::uint64_t> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    deg[i] = G.degree(i);
    for (std::uint32_t j : G.neighbors(i)) adj[i] |= std::uint32_t{1} << j;
  }
  const std::uint64_t total = 2 * G.edge_count();
  std::uint32_t mask = 0;
  std::uint64_t sigma = 0, delta = 0;
  std::uint64_t best_num = 0, best_den = 0;  // den == 0 means +inf
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t k = 1; k < count; ++k) {
    const int v = std::countr_zero(k);
    const std::uint32_t bit = std::uint32_t{1} << v;
    const std::uint64_t inside = static_cast<std::uint64_t>(std::popcount(adj[v] & mask));
    if (mask & bit) {
      sigma = sigma + 2 * inside - deg[v];
      delta -= deg[v];
    } else {
      sigma = sigma + deg[v] - 2 * inside;
      delta += deg[v];
    }
    mask ^= bit;
    const std::uint64_t den = std::min(delta, total - delta);
    if (den == 0) continue;
    bool better = best_den == 0 || sigma * best_den < best_num * den;
    if (!better && best_den != 0 && sigma * best_den == best_num * den) better = mask < best.mask;
    if (better) {
      best_num = sigma;
      best_den = den;
      best.mask = mask;
    }
  }
  if (best_den == 0) return best;
  best.H = static_cast<double>(best_num) / static_cast<double>(best_den);
  best.subset.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) best.subset[i] = (best.mask >> i) & 1U;
  return best;
}

}  // namespace cheeger
