#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "cheeger_lab/spectral.hpp"
#include "oracles.hpp"

using namespace cheeger;

namespace {

bool connected(const NeighborhoodGraph& G) {
  const auto label = connected_components(G);
  return std::all_of(label.begin(), label.end(), [](std::uint32_t l) { return l == 0; });
}

// Second-smallest eigenvalue of I - D^{-1/2} A D^{-1/2}, dense.
double dense_lambda2(const NeighborhoodGraph& G) {
  const auto n = static_cast<Eigen::Index>(G.vertex_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
  for (auto [i, j] : G.edges()) {
    const double w = 1.0 / std::sqrt(static_cast<double>(G.degree(i) * G.degree(j)));
    L(i, j) -= w;
    L(j, i) -= w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  return es.eigenvalues()(1);
}

NeighborhoodGraph two_cliques(std::uint32_t k) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t base : {0u, k}) {
    for (std::uint32_t i = 0; i < k; ++i) {
      for (std::uint32_t j = i + 1; j < k; ++j) e.emplace_back(base + i, base + j);
    }
  }
  e.emplace_back(k - 1, k);
  return NeighborhoodGraph::from_edges(2 * k, e);
}

}  // namespace

TEST(SpectralSweep, EdgelessIsInfinite) {
  const auto s = spectral_sweep(NeighborhoodGraph::from_edges(5, {}));
  EXPECT_TRUE(std::isinf(s.h_upper));
}

TEST(SpectralSweep, DisconnectedIsZero) {
  const auto G = NeighborhoodGraph::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  const auto s = spectral_sweep(G);
  EXPECT_EQ(s.h_upper, 0.0);
  EXPECT_TRUE(s.disconnected);
  EXPECT_EQ(evaluate_cut(G, s.subset).h, 0.0);
}

TEST(SpectralSweep, IsolatedVerticesDoNotDisconnect) {
  // A path plus an isolated vertex: the isolated vertex carries no volume.
  const auto G = NeighborhoodGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}});
  const auto s = spectral_sweep(G);
  EXPECT_FALSE(s.disconnected);
  EXPECT_DOUBLE_EQ(s.h_upper, 1.0 / 3.0);
}

TEST(SpectralSweep, TwoCliquesBridge) {
  const auto G = two_cliques(10);
  const auto s = spectral_sweep(G);
  const auto e = conductance_exact(G);
  EXPECT_EQ(s.h_upper, e.H);
  EXPECT_DOUBLE_EQ(e.H, 1.0 / 91.0);
  std::size_t in_first = 0;
  for (std::size_t i = 0; i < 10; ++i) in_first += s.subset[i];
  std::size_t in_second = 0;
  for (std::size_t i = 10; i < 20; ++i) in_second += s.subset[i];
  EXPECT_TRUE((in_first == 10 && in_second == 0) || (in_first == 0 && in_second == 10));
}

TEST(SpectralSweep, UpperBoundsExactOnRandomGeometricGraphs) {
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 100; ++seed) {
    const std::size_t n = 6 + seed % 15;
    const auto G = build_graph(oracle::random_points(n, 2, 1000 + seed), 0.35 + 0.01 * (seed % 20));
    if (G.edge_count() == 0) continue;
    ++tested;
    const auto s = spectral_sweep(G);
    const auto e = conductance_exact(G);
    EXPECT_GE(s.h_upper, e.H) << "seed " << seed;
    if (std::isfinite(s.h_upper)) {
      EXPECT_EQ(evaluate_cut(G, s.subset).h, s.h_upper);
    }
  }
}

TEST(SpectralSweep, CheegerInequalityAndLambda2) {
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 60; ++seed) {
    const std::size_t n = 6 + seed % 15;
    const auto G = build_graph(oracle::random_points(n, 2, 5000 + seed), 0.5);
    if (!connected(G) || n < 2) continue;
    ++tested;
    const auto s = spectral_sweep(G);
    ASSERT_TRUE(s.converged) << seed;
    EXPECT_NEAR(s.lambda2, dense_lambda2(G), 1e-6) << seed;
    const double H = conductance_exact(G).H;
    EXPECT_LE(s.lambda2 / 2 - 1e-9, H) << seed;
    EXPECT_LE(H, std::sqrt(2 * s.lambda2) + 1e-9) << seed;
  }
}

TEST(SpectralSweep, LargeGraphIsDeterministic) {
  const auto G = build_graph(oracle::random_points(2000, 2, 3), 0.06);
  const auto a = spectral_sweep(G);
  const auto b = spectral_sweep(G);
  EXPECT_EQ(a.h_upper, b.h_upper);
  EXPECT_EQ(a.subset, b.subset);
}

TEST(ConnectedComponents, Labels) {
  const auto G = NeighborhoodGraph::from_edges(6, {{0, 3}, {1, 2}, {4, 5}});
  EXPECT_EQ(connected_components(G), (std::vector<std::uint32_t>{0, 1, 1, 0, 2, 2}));
}
