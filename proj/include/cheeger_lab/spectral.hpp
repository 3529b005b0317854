#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "cheeger_lab/cut.hpp"
#include "cheeger_lab/random.hpp"

namespace cheeger {

struct SpectralOptions {
  double tolerance = 1e-8;
  int max_iterations = 10000;
};

struct SpectralResult {
  double h_upper = std::numeric_limits<double>::infinity();
  VertexSubset subset;
  double lambda2 = 0.0;  // normalized-Laplacian spectral gap estimate
  bool converged = true;
  bool disconnected = false;
  int iterations = 0;
};

/// Component label per vertex (labels in order of smallest member).
inline std::vector<std::uint32_t> connected_components(const NeighborhoodGraph& G) {
  const std::size_t n = G.vertex_count();
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(n, kUnset);
  std::vector<std::uint32_t> stack;
  std::uint32_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(static_cast<std::uint32_t>(s));
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      for (std::uint32_t w : G.neighbors(v)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

/// Upper bound on H(G) from the best prefix cut in the order of the
/// approximate second eigenvector of D^{-1/2} A D^{-1/2}, found by power
/// iteration on (I + D^{-1/2} A D^{-1/2})/2 with the top eigenvector
/// sqrt(d) projected out. Isolated vertices stay in the complement.
/// With two or more components carrying edges, returns the first of them
/// as a zero cut.
inline SpectralResult spectral_sweep(const NeighborhoodGraph& G, const SpectralOptions& opt = {}) {
  const std::size_t n = G.vertex_count();
  SpectralResult res;
  res.subset.assign(n, 0);
  if (G.edge_count() == 0) return res;

  const auto label = connected_components(G);
  std::uint32_t first = std::numeric_limits<std::uint32_t>::max();
  bool several = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (G.degree(i) == 0) continue;
    if (first == std::numeric_limits<std::uint32_t>::max()) {
      first = label[i];
    } else if (label[i] != first) {
      several = true;
    }
  }
  if (several) {
    for (std::size_t i = 0; i < n; ++i) res.subset[i] = label[i] == first;
    res.h_upper = 0.0;
    res.disconnected = true;
    res.lambda2 = 0.0;
    return res;
  }

  std::vector<std::uint32_t> active;
  for (std::size_t i = 0; i < n; ++i) {
    if (G.degree(i) > 0) active.push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<double> inv_sqrt(n, 0.0), top(n, 0.0);
  double top_norm2 = 0.0;
  for (std::uint32_t i : active) {
    const double deg = static_cast<double>(G.degree(i));
    inv_sqrt[i] = 1.0 / std::sqrt(deg);
    top[i] = std::sqrt(deg);
    top_norm2 += deg;
  }
  for (std::uint32_t i : active) top[i] /= std::sqrt(top_norm2);

  auto deflate = [&](std::vector<double>& x) {
    double c = 0.0;
    for (std::uint32_t i : active) c += x[i] * top[i];
    for (std::uint32_t i : active) x[i] -= c * top[i];
  };
  auto normalize = [&](std::vector<double>& x) {
    double s = 0.0;
    for (std::uint32_t i : active) s += x[i] * x[i];
    s = std::sqrt(s);
    if (s > 0) {
      for (std::uint32_t i : active) x[i] /= s;
    }
    return s;
  };
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::uint32_t i : active) {
      double acc = 0.0;
      for (std::uint32_t j : G.neighbors(i)) acc += inv_sqrt[j] * x[j];
      y[i] = 0.5 * (x[i] + inv_sqrt[i] * acc);
    }
  };

  std::vector<double> x(n, 0.0), y(n, 0.0);
  Xoshiro256 rng(0x5EED5EED5EEDULL);
  for (std::uint32_t i : active) x[i] = rng.uniform01() - 0.5;
  deflate(x);
  normalize(x);
  double lambda = 0.0;
  res.converged = false;
  if (active.size() <= 1) res.converged = true;
  for (int it = 0; it < opt.max_iterations && !res.converged; ++it) {
    apply(x, y);
    deflate(y);
    lambda = 0.0;
    for (std::uint32_t i : active) lambda += x[i] * y[i];
    double resid = 0.0;
    for (std::uint32_t i : active) resid += (y[i] - lambda * x[i]) * (y[i] - lambda * x[i]);
    res.iterations = it + 1;
    if (normalize(y) == 0.0) {
      res.converged = true;
      break;
    }
    std::swap(x, y);
    if (std::sqrt(resid) <= opt.tolerance) res.converged = true;
  }
  res.lambda2 = std::max(0.0, 2.0 - 2.0 * lambda);

  std::vector<std::uint32_t> order = active;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return x[a] * inv_sqrt[a] < x[b] * inv_sqrt[b]; });
  CutTracker tracker(G);
  std::size_t best_k = 0;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    tracker.toggle(order[k]);
    const double h = tracker.h();
    if (h < res.h_upper) {
      res.h_upper = h;
      best_k = k + 1;
    }
  }
  for (std::size_t k = 0; k < best_k; ++k) res.subset[order[k]] = 1;
  return res;
}

}  // namespace cheeger
