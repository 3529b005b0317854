#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "cheeger_lab/vec.hpp"

namespace cheeger {

/// Closed convex polytope {x : <a_k, x> <= b_k}, unit normals a_k.
class ConvexPolytope {
 public:
  struct Face {
    std::vector<double> normal;
    double offset;
  };

  ConvexPolytope() = default;
  explicit ConvexPolytope(int dim) : dim_(dim) {}

  void add_face(std::vector<double> normal, double offset) {
    const double n = norm(normal);
    for (double& v : normal) v /= n;
    faces_.push_back({std::move(normal), offset / n});
  }

  /// Axis box intersected with the given faces.
  static ConvexPolytope from_box(const Box& box) {
    ConvexPolytope p(box.dim());
    for (int i = 0; i < box.dim(); ++i) {
      std::vector<double> e(box.dim(), 0.0);
      e[i] = 1.0;
      p.add_face(e, box.hi[i]);
      e[i] = -1.0;
      p.add_face(e, -box.lo[i]);
    }
    return p;
  }

  int dim() const { return dim_; }
  const std::vector<Face>& faces() const { return faces_; }

  bool contains(ConstPoint x) const {
    for (const Face& f : faces_) {
      if (dot(f.normal, x) > f.offset) return false;
    }
    return true;
  }

  /// Distance from an interior point to the boundary (negative outside).
  double depth(ConstPoint x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const Face& f : faces_) d = std::min(d, f.offset - dot(f.normal, x));
    return d;
  }

  /// Euclidean distance from x to the polytope (0 inside). Exact: the nearest
  /// point is the projection of x onto the affine hull of some set of at most
  /// dim linearly independent faces, so the minimum over feasible projections
  /// is the distance.
  double distance(ConstPoint x) const {
    std::vector<double> violation(faces_.size());
    int violated = 0;
    std::size_t last = 0;
    for (std::size_t k = 0; k < faces_.size(); ++k) {
      violation[k] = dot(faces_[k].normal, x) - faces_[k].offset;
      if (violation[k] > 0.0) {
        ++violated;
        last = k;
      }
    }
    if (violated == 0) return 0.0;
    if (violated == 1) {
      // Common case: projecting onto the single violated face is feasible.
      std::vector<double> y(x.begin(), x.end());
      for (int i = 0; i < dim_; ++i) y[i] -= violation[last] * faces_[last].normal[i];
      if (feasible(y)) return violation[last];
    }
    return enumerate_faces(x);
  }

 private:
  bool feasible(ConstPoint y) const {
    constexpr double kSlack = 1e-12;
    for (const Face& f : faces_) {
      if (dot(f.normal, y) > f.offset + kSlack) return false;
    }
    return true;
  }

  // Projection of x onto {y : <a_k, y> = b_k for k in active}; false if the
  // active normals are linearly dependent.
  bool project(ConstPoint x, const std::vector<std::size_t>& active, std::vector<double>& y) const {
    const std::size_t m = active.size();
    std::vector<double> gram(m * m), rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Face& fi = faces_[active[i]];
      rhs[i] = dot(fi.normal, x) - fi.offset;
      for (std::size_t j = 0; j < m; ++j) gram[i * m + j] = dot(fi.normal, faces_[active[j]].normal);
    }
    // Gaussian elimination with partial pivoting.
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < m; ++r) {
        if (std::abs(gram[r * m + c]) > std::abs(gram[piv * m + c])) piv = r;
      }
      if (std::abs(gram[piv * m + c]) < 1e-12) return false;
      if (piv != c) {
        for (std::size_t j = 0; j < m; ++j) std::swap(gram[c * m + j], gram[piv * m + j]);
        std::swap(rhs[c], rhs[piv]);
      }
      for (std::size_t r = c + 1; r < m; ++r) {
        const double f = gram[r * m + c] / gram[c * m + c];
        for (std::size_t j = c; j < m; ++j) gram[r * m + j] -= f * gram[c * m + j];
        rhs[r] -= f * rhs[c];
      }
    }
    std::vector<double> lambda(m);
    for (std::size_t c = m; c-- > 0;) {
      double s = rhs[c];
      for (std::size_t j = c + 1; j < m; ++j) s -= gram[c * m + j] * lambda[j];
      lambda[c] = s / gram[c * m + c];
    }
    y.assign(x.begin(), x.end());
    for (std::size_t i = 0; i < m; ++i) {
      const Face& f = faces_[active[i]];
      for (int k = 0; k < dim_; ++k) y[k] -= lambda[i] * f.normal[k];
    }
    return true;
  }

  double enumerate_faces(ConstPoint x) const {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> active;
    std::vector<double> y;
    const std::size_t count = faces_.size();
    auto recurse = [&](auto&& self, std::size_t start) -> void {
      if (!active.empty() && project(x, active, y) && feasible(y)) {
        best = std::min(best, distance_between(x, y));
      }
      if (active.size() == static_cast<std::size_t>(dim_)) return;
      for (std::size_t k = start; k < count; ++k) {
        active.push_back(k);
        self(self, k + 1);
        active.pop_back();
      }
    };
    recurse(recurse, 0);
    return best;
  }

  static double distance_between(ConstPoint a, const std::vector<double>& b) {
    return cheeger::distance(a, ConstPoint(b));
  }

  int dim_ = 0;
  std::vector<Face> faces_;
};

/// Vertices (counter-clockwise) of the planar polygon {<u, x> <= t} inside a 2-D box.
inline std::vector<std::array<double, 2>> clip_box_halfplane(const Box& box, ConstPoint u, double t) {
  std::vector<std::array<double, 2>> poly = {
      {box.lo[0], box.lo[1]}, {box.hi[0], box.lo[1]}, {box.hi[0], box.hi[1]}, {box.lo[0], box.hi[1]}};
  std::vector<std::array<double, 2>> out;
  const std::size_t n = poly.size();
  auto value = [&](const std::array<double, 2>& p) { return u[0] * p[0] + u[1] * p[1] - t; };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    const double va = value(a), vb = value(b);
    if (va <= 0.0) out.push_back(a);
    if ((va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0)) {
      const double s = va / (va - vb);
      out.push_back({a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])});
    }
  }
  return out;
}

/// Area and perimeter of a simple polygon.
inline double polygon_area(const std::vector<std::array<double, 2>>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % p.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return 0.5 * std::abs(s);
}

inline double polygon_perimeter(const std::vector<std::array<double, 2>>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % p.size()];
    s += std::hypot(b[0] - a[0], b[1] - a[1]);
  }
  return s;
}

}  // namespace cheeger
