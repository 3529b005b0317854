#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "cheeger_lab/candidate.hpp"
#include "cheeger_lab/constants.hpp"
#include "cheeger_lab/continuum.hpp"
#include "cheeger_lab/cut.hpp"
#include "cheeger_lab/domain.hpp"
#include "cheeger_lab/graph.hpp"
#include "cheeger_lab/parallel.hpp"

namespace cheeger {

/// A neighborhood graph together with the domain it was sampled from.
struct EstimatorContext {
  const NeighborhoodGraph& graph;
  Domain domain;
  Constants constants;
  double r;

  EstimatorContext(const NeighborhoodGraph& g, Domain M)
      : graph(g), domain(std::move(M)), constants(Constants::for_dimension(domain.dim())), r(g.radius()) {
    if (g.points().dim != domain.dim()) throw DomainError("graph points and domain differ in dimension");
  }

  std::size_t n() const { return graph.vertex_count(); }
  double tau() const { return domain.volume(); }

  /// tau / (omega_d n (n-1) r^d)
  double volume_scale() const {
    require_pairs();
    const double nn = static_cast<double>(n()) * static_cast<double>(n() - 1);
    return tau() / (constants.omega_d * nn * std::pow(r, constants.d));
  }

  /// tau / (gamma_d n (n-1) r^(d+1))
  double perimeter_scale() const {
    require_pairs();
    const double nn = static_cast<double>(n()) * static_cast<double>(n() - 1);
    return tau() / (constants.gamma_d * nn * std::pow(r, constants.d + 1));
  }

  /// omega_d / (gamma_d r)
  double cut_scale() const { return constants.omega_d / (constants.gamma_d * r); }

 private:
  void require_pairs() const {
    if (n() < 2) throw DomainError("estimators need n >= 2");
  }
};

inline VertexSubset membership(const PointSet& pts, const CandidateSet& A) {
  VertexSubset S(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) S[i] = A.contains(pts[i]);
  return S;
}

inline VertexSubset membership(const EstimatorContext& ctx, const CandidateSet& A) {
  return membership(ctx.graph.points(), A);
}

inline double mu_n(const EstimatorContext& ctx, const CandidateSet& A) {
  const double scale = ctx.volume_scale();
  return scale * static_cast<double>(evaluate_cut(ctx.graph, membership(ctx, A)).delta_S);
}

inline double nu_n(const EstimatorContext& ctx, const CandidateSet& A) {
  const double scale = ctx.perimeter_scale();
  return scale * static_cast<double>(evaluate_cut(ctx.graph, membership(ctx, A)).sigma_S);
}

/// h_n(A) as nu_n / min(mu_n(A), mu_n(A^c)), and as the rescaled graph cut.
struct HnForms {
  double ratio;
  double rescaled;
  CutEvaluation cut;
};

inline HnForms h_n_forms(const EstimatorContext& ctx, const CandidateSet& A) {
  HnForms f{kInfinity, kInfinity, evaluate_cut(ctx.graph, membership(ctx, A))};
  const double mu_in = ctx.volume_scale() * static_cast<double>(f.cut.delta_S);
  const double mu_out = ctx.volume_scale() * static_cast<double>(f.cut.delta_Sc);
  const double nu = ctx.perimeter_scale() * static_cast<double>(f.cut.sigma_S);
  f.ratio = cut_ratio(nu, mu_in, mu_out);
  f.rescaled = ctx.cut_scale() * f.cut.h;
  return f;
}

inline double h_n(const EstimatorContext& ctx, const CandidateSet& A) { return h_n_forms(ctx, A).ratio; }

struct PenalizedConfig {
  double rho_n;
  std::vector<CandidateSet> family;
};

/// Membership of the points in R and whether both R and its complement hold
/// a ball of radius rho centred at a sample point.
struct BallCheck {
  bool inside_ball = false;
  bool outside_ball = false;
  bool ok() const { return inside_ball && outside_ball; }
};

inline BallCheck membership_with_balls(const PointSet& pts, const CandidateSet& R, double rho, VertexSubset& S) {
  BallCheck c;
  S.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double sd = R.signed_distance(pts[i]);
    S[i] = sd > 0.0 || (sd == 0.0 && R.contains(pts[i]));
    if (sd >= rho) c.inside_ball = true;
    if (-sd >= rho) c.outside_ball = true;
  }
  return c;
}

inline double h_n_ddag(const EstimatorContext& ctx, double rho_n, const CandidateSet& R) {
  VertexSubset S;
  if (!membership_with_balls(ctx.graph.points(), R, rho_n, S).ok()) return kInfinity;
  return ctx.cut_scale() * evaluate_cut(ctx.graph, S).h;
}

inline double h_n_ddag(const EstimatorContext& ctx, const PenalizedConfig& cfg, const CandidateSet& R) {
  return h_n_ddag(ctx, cfg.rho_n, R);
}

/// Family sizes: k_angle oriented directions in [0, 2pi) times k_offset
/// offsets spread over the interior of the support of M, as rounded slabs
/// with rounding rho; then balls centred on a ball_grid^d lattice over the
/// bounding box of M with each radius in ball_radii that is at least rho.
struct FamilySpec {
  int k_angle = 36;
  int k_offset = 41;
  int ball_grid = 0;
  std::vector<double> ball_radii;
};

/// Slabs ordered by (angle, offset), then balls by (centre index, radius).
/// Slabs are planar; balls work in any dimension.
inline std::vector<CandidateSet> build_candidate_family(const Domain& M, double rho, const FamilySpec& spec) {
  if (!(rho > 0.0)) throw DomainError("family rounding must be positive");
  std::vector<CandidateSet> family;
  if (spec.k_angle > 0 && spec.k_offset > 0) {
    if (M.dim() != 2) throw NoClosedForm("slab families are planar");
    for (int a = 0; a < spec.k_angle; ++a) {
      const auto u = direction_2d(2 * std::numbers::pi * a / spec.k_angle);
      const Interval range = M.support_range(u);
      for (int k = 0; k < spec.k_offset; ++k) {
        const double t = range.lo + range.length() * (k + 1) / (spec.k_offset + 1);
        family.push_back(CandidateSet::rounded_slab(u, t, rho, M.ambient()));
      }
    }
  }
  if (spec.ball_grid > 0) {
    const Box b = M.bounding_box();
    const int d = M.dim();
    std::size_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= static_cast<std::size_t>(spec.ball_grid);
    std::vector<double> radii = spec.ball_radii;
    std::sort(radii.begin(), radii.end());
    for (std::size_t idx = 0; idx < cells; ++idx) {
      std::vector<double> c(d);
      std::size_t rest = idx;
      for (int i = d - 1; i >= 0; --i) {
        const auto k = rest % static_cast<std::size_t>(spec.ball_grid);
        rest /= static_cast<std::size_t>(spec.ball_grid);
        c[i] = b.lo[i] + (b.hi[i] - b.lo[i]) * (static_cast<double>(k) + 0.5) / spec.ball_grid;
      }
      for (double radius : radii) {
        if (radius >= rho) family.push_back(CandidateSet::ball(c, radius));
      }
    }
  }
  return family;
}

struct MinimizeResult {
  double value = kInfinity;
  std::optional<std::size_t> index;  // empty when every member is infinite
  std::vector<double> values;        // per family member
  VertexSubset subset;               // points of the argmin
};

/// Exhaustive scan of the family. Each worker walks a contiguous block of
/// the family, updating one cut incrementally by the points whose membership
/// changes. The argmin is the first minimal member in family order.
inline MinimizeResult minimize_h_n_ddag(const EstimatorContext& ctx, const PenalizedConfig& cfg,
                                        std::size_t threads = worker_count()) {
  const auto& family = cfg.family;
  if (family.empty()) throw DomainError("minimize_h_n_ddag: empty family");
  MinimizeResult res;
  res.values.assign(family.size(), kInfinity);
  const PointSet& pts = ctx.graph.points();
  const double scale = ctx.cut_scale();
  const std::size_t blocks = std::max<std::size_t>(1, std::min(threads, family.size()));
  parallel_for(
      blocks,
      [&](std::size_t b) {
        const std::size_t lo = family.size() * b / blocks, hi = family.size() * (b + 1) / blocks;
        CutTracker tracker(ctx.graph);
        VertexSubset S;
        for (std::size_t k = lo; k < hi; ++k) {
          const BallCheck check = membership_with_balls(pts, family[k], cfg.rho_n, S);
          if (!check.ok()) continue;
          for (std::size_t i = 0; i < S.size(); ++i) {
            if ((S[i] != 0) != tracker.contains(i)) tracker.toggle(i);
          }
          res.values[k] = scale * tracker.h();
        }
      },
      blocks);
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (res.values[k] < res.value) {
      res.value = res.values[k];
      res.index = k;
    }
  }
  if (res.index) res.subset = membership(pts, family[*res.index]);
  return res;
}

enum class KernelKind { volume, perimeter, custom };

/// phi_{A,r}(x,y) = (1_A(x) + 1_A(y))/2 * 1{|x-y| <= r};
/// phibar_{A,r}(x,y) = (1_A(x) 1_{A^c}(y) + 1_A(y) 1_{A^c}(x))/2 * 1{|x-y| <= r}.
struct KernelSpec {
  KernelKind kind;
  std::optional<CandidateSet> A;
  double r = 0.0;
  std::function<double(ConstPoint, ConstPoint)> custom;

  double operator()(ConstPoint x, ConstPoint y) const {
    if (kind == KernelKind::custom) return custom(x, y);
    if (squared_distance(x, y) > r * r) return 0.0;
    const bool ax = A->contains(x), ay = A->contains(y);
    if (kind == KernelKind::volume) return 0.5 * (ax + ay);
    return 0.5 * ((ax && !ay) + (ay && !ax));
  }
};

/// U_n(phi) = (1/(n(n-1))) sum_{i != j} phi(X_i, X_j). The two indicator kernels
/// read delta(S) and sigma(S) off G, which must be built at radius kernel.r.
inline double u_statistic(const KernelSpec& kernel, const PointSet& pts, const NeighborhoodGraph* G = nullptr) {
  const std::size_t n = pts.size();
  if (n < 2) throw DomainError("u_statistic: n must be at least 2");
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  if (kernel.kind == KernelKind::custom) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) total += kernel(pts[i], pts[j]);
      }
    }
    return total / pairs;
  }
  std::optional<NeighborhoodGraph> own;
  if (!G) {
    own = build_graph(pts, kernel.r);
    G = &*own;
  }
  const CutEvaluation e = evaluate_cut(*G, membership(pts, *kernel.A));
  const auto count = kernel.kind == KernelKind::volume ? e.delta_S : e.sigma_S;
  return static_cast<double>(count) / pairs;
}

/// exp(-n t^2 / (5 sigma2 + 3 b t))
inline double hoeffding_tail_bound(std::size_t n, double t, double sigma2, double b) {
  if (n < 2) throw DomainError("hoeffding_tail_bound: n must be at least 2");
  if (!(t > 0.0) || !(b > 0.0) || !(sigma2 >= 0.0)) throw DomainError("hoeffding_tail_bound: needs t > 0, b > 0, sigma2 >= 0");
  return std::exp(-static_cast<double>(n) * t * t / (5.0 * sigma2 + 3.0 * b * t));
}

/// E phi_{A,r}(X, Y) for X, Y uniform on a planar M and A a half-space:
/// (1/tau^2) * integral over A ∩ M of Vol(B(x, r) ∩ M).
inline double volume_kernel_mean(const Domain& M, const HalfSpace& A, double r, double tol = 1e-9) {
  const double tau = M.volume();
  auto f = [&](double x, double y) {
    return relative_cut_quantities(CandidateSet::ball({x, y}, r), M, 0.1 * tol).vol_in;
  };
  return integrate_over_halfspace_part(M, A, f, tol) / (tau * tau);
}

/// E phibar_{A,r}(X, Y) for a planar M and half-space A:
/// (1/tau^2) * integral over A ∩ M of Vol(B(x, r) ∩ A^c ∩ M).
inline double perimeter_kernel_mean(const Domain& M, const HalfSpace& A, double r, double tol = 1e-8) {
  const double tau = M.volume();
  const auto& u = A.normal;
  const double w[2] = {-u[1], u[0]};
  const Interval range = M.support_range(u);
  auto f = [&](double x, double y) {
    const double xs = u[0] * x + u[1] * y, xl = w[0] * x + w[1] * y;
    const double lo = std::max(A.offset, range.lo), hi = std::min(xs + r, range.hi);
    if (hi <= lo) return 0.0;
    auto slice = [&](double s) {
      const double h2 = r * r - (s - xs) * (s - xs);
      if (h2 <= 0.0) return 0.0;
      const double h = std::sqrt(h2);
      double len = 0.0;
      for (const Interval& iv : M.chord(u, s)) len += std::max(0.0, std::min(iv.hi, xl + h) - std::max(iv.lo, xl - h));
      return len;
    };
    return integrate(slice, lo, hi, 0.1 * tol);
  };
  return integrate_over_halfspace_part(M, A, f, tol) / (tau * tau);
}

/// r_n = ((log n)^2 / n)^(1/(d+1)), so that n r^(d+1) / log n -> inf.
inline double log_rate_radius(std::size_t n, int d) {
  const double ln = std::log(static_cast<double>(n));
  return std::pow(ln * ln / static_cast<double>(n), 1.0 / (d + 1));
}

/// r_n = n^(-1/(2d+2)), so that n r^(2d+1) -> inf.
inline double power_rate_radius(std::size_t n, int d) {
  return std::pow(static_cast<double>(n), -1.0 / (2.0 * d + 2.0));
}

/// rho_n = 1 / log n.
inline double inverse_log_rho(std::size_t n) { return 1.0 / std::log(static_cast<double>(n)); }

}  // namespace cheeger
