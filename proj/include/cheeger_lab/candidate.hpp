#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "cheeger_lab/errors.hpp"
#include "cheeger_lab/polytope.hpp"
#include "cheeger_lab/vec.hpp"

namespace cheeger {

enum class CandidateKind { half_space, ball, rounded_slab };

inline std::string to_string(CandidateKind k) {
  switch (k) {
    case CandidateKind::half_space: return "half-space";
    case CandidateKind::ball: return "ball";
    case CandidateKind::rounded_slab: return "rounded-slab";
  }
  return "?";
}

/// {x : <normal, x> < offset}, unit normal.
struct HalfSpace {
  std::vector<double> normal;
  double offset;
};

/// Open ball.
struct Ball {
  std::vector<double> center;
  double radius;
};

/// Morphological opening by a ball of radius `rounding` of the polytope
/// {<normal, x> < offset} ∩ box. The opening equals core ⊕ B(rounding), where
/// core is the polytope eroded by `rounding`; `empty` marks an empty core.
struct RoundedSlab {
  std::vector<double> normal;
  double offset;
  double rounding;
  Box box;
  ConvexPolytope core;
  bool empty;
};

/// A candidate cut region A, or its complement when `complemented()`.
class CandidateSet {
 public:
  using Shape = std::variant<HalfSpace, Ball, RoundedSlab>;

  static CandidateSet half_space(const std::vector<double>& normal, double offset) {
    if (!(norm(normal) > 0.0)) throw DomainError("half-space normal must be nonzero");
    const double n = norm(normal);
    return CandidateSet(HalfSpace{normalized(normal), offset / n});
  }

  static CandidateSet ball(std::vector<double> center, double radius) {
    if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
    return CandidateSet(Ball{std::move(center), radius});
  }

  static CandidateSet rounded_slab(const std::vector<double>& normal, double offset, double rounding,
                                   Box box) {
    if (!(norm(normal) > 0.0)) throw DomainError("slab normal must be nonzero");
    if (!(rounding > 0.0)) throw DomainError("slab rounding must be positive");
    if (box.dim() != static_cast<int>(normal.size())) throw DomainError("slab box dimension mismatch");
    const double n = norm(normal);
    RoundedSlab s{normalized(normal), offset / n, rounding, std::move(box), {}, true};
    const int d = s.box.dim();
    Box shrunk = s.box;
    bool box_ok = true;
    double lowest = 0.0;  // min of <normal, x> over the shrunk box
    for (int i = 0; i < d; ++i) {
      shrunk.lo[i] += rounding;
      shrunk.hi[i] -= rounding;
      if (shrunk.lo[i] > shrunk.hi[i]) box_ok = false;
      lowest += s.normal[i] * (s.normal[i] > 0 ? shrunk.lo[i] : shrunk.hi[i]);
    }
    s.core = ConvexPolytope::from_box(shrunk);
    s.core.add_face(s.normal, s.offset - rounding);
    s.empty = !box_ok || lowest > s.offset - rounding;
    return CandidateSet(std::move(s));
  }

  CandidateKind kind() const { return static_cast<CandidateKind>(shape_.index()); }
  const Shape& shape() const { return shape_; }
  bool complemented() const { return complement_; }
  CandidateSet complement() const {
    CandidateSet c = *this;
    c.complement_ = !complement_;
    return c;
  }

  int dim() const {
    return std::visit(
        [](const auto& s) -> int {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball>) {
            return static_cast<int>(s.center.size());
          } else {
            return static_cast<int>(s.normal.size());
          }
        },
        shape_);
  }

  /// Indicator of the (possibly complemented) open set.
  bool contains(ConstPoint x) const { return base_contains(x) != complement_; }

  /// Distance to the boundary, positive inside the (possibly complemented) set.
  double signed_distance(ConstPoint x) const {
    const double s = base_signed_distance(x);
    return complement_ ? -s : s;
  }

  /// Lower bound on the reach of the boundary.
  double certified_reach() const {
    switch (kind()) {
      case CandidateKind::half_space: return std::numeric_limits<double>::infinity();
      case CandidateKind::ball: return std::get<Ball>(shape_).radius;
      case CandidateKind::rounded_slab: return std::get<RoundedSlab>(shape_).rounding;
    }
    return 0.0;
  }

  /// One-line description, free of commas.
  std::string describe() const {
    std::string out = to_string(kind());
    auto vec = [](const std::vector<double>& v) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
      return s + ")";
    };
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball>) {
            out += " center=" + vec(s.center) + " radius=" + fmt(s.radius);
          } else {
            out += " normal=" + vec(s.normal) + " offset=" + fmt(s.offset);
            if constexpr (std::is_same_v<T, RoundedSlab>) out += " rounding=" + fmt(s.rounding);
          }
        },
        shape_);
    if (complement_) out += " complement";
    return out;
  }

 private:
  explicit CandidateSet(Shape shape) : shape_(std::move(shape)) {}

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
  }

  bool base_contains(ConstPoint x) const {
    switch (kind()) {
      case CandidateKind::half_space: {
        const auto& h = std::get<HalfSpace>(shape_);
        return dot(h.normal, x) < h.offset;
      }
      case CandidateKind::ball: {
        const auto& b = std::get<Ball>(shape_);
        return squared_distance(x, b.center) < b.radius * b.radius;
      }
      case CandidateKind::rounded_slab: {
        const auto& s = std::get<RoundedSlab>(shape_);
        return !s.empty && s.core.distance(x) < s.rounding;
      }
    }
    return false;
  }

  double base_signed_distance(ConstPoint x) const {
    switch (kind()) {
      case CandidateKind::half_space: {
        const auto& h = std::get<HalfSpace>(shape_);
        return h.offset - dot(h.normal, x);
      }
      case CandidateKind::ball: {
        const auto& b = std::get<Ball>(shape_);
        return b.radius - distance(x, b.center);
      }
      case CandidateKind::rounded_slab: {
        const auto& s = std::get<RoundedSlab>(shape_);
        if (s.empty) return -std::numeric_limits<double>::infinity();
        // The opening of a convex set by B(rho) has inner parallel set at
        // depth rho equal to the core, so depth adds rho inside the core.
        if (s.core.contains(x)) return s.rounding + s.core.depth(x);
        return s.rounding - s.core.distance(x);
      }
    }
    return 0.0;
  }

  Shape shape_;
  bool complement_ = false;
};

}  // namespace cheeger
