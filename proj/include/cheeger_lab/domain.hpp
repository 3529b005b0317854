#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cheeger_lab/constants.hpp"
#include "cheeger_lab/errors.hpp"
#include "cheeger_lab/vec.hpp"

namespace cheeger {

enum class DomainKind { disk, rectangle, annulus };

inline std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::disk: return "disk";
    case DomainKind::rectangle: return "rectangle";
    case DomainKind::annulus: return "annulus";
  }
  return "?";
}

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

struct DomainQuantities {
  double volume;
  double boundary_measure;
  double reach;
};

inline constexpr double kDefaultMargin = 0.01;
inline constexpr double kDefaultRounding = 0.02;

/// A bounded open region of R^d with closed-form geometry: a ball ("disk"),
/// an axis-aligned box with rounded corners ("rectangle"), or a spherical
/// shell ("annulus"). The closure must sit inside an ambient box (the unit
/// cube unless stated) with a positive margin.
///
/// The rounded rectangle is the Minkowski sum of a core box with a ball of
/// radius `rounding`, so every side keeps its nominal length.
class Domain {
 public:
  static Domain disk(std::vector<double> center, double radius, Box ambient = {},
                     double margin = kDefaultMargin) {
    Domain m(DomainKind::disk, std::move(center), std::move(ambient), margin);
    m.outer_ = radius;
    m.validate();
    return m;
  }

  static Domain rectangle(std::vector<double> center, const std::vector<double>& sides,
                          double rounding = kDefaultRounding, Box ambient = {},
                          double margin = kDefaultMargin) {
    Domain m(DomainKind::rectangle, std::move(center), std::move(ambient), margin);
    m.half_.resize(sides.size());
    for (std::size_t i = 0; i < sides.size(); ++i) m.half_[i] = 0.5 * sides[i];
    m.rounding_ = rounding;
    m.validate();
    return m;
  }

  static Domain annulus(std::vector<double> center, double inner, double outer, Box ambient = {},
                        double margin = kDefaultMargin) {
    Domain m(DomainKind::annulus, std::move(center), std::move(ambient), margin);
    m.inner_ = inner;
    m.outer_ = outer;
    m.validate();
    return m;
  }

  DomainKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(center_.size()); }
  const std::vector<double>& center() const { return center_; }
  double radius() const { return outer_; }
  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }
  std::vector<double> sides() const {
    std::vector<double> s(half_);
    for (double& v : s) v *= 2.0;
    return s;
  }
  double rounding() const { return rounding_; }
  const Box& ambient() const { return ambient_; }
  double margin() const { return margin_; }

  bool contains(ConstPoint x) const {
    switch (kind_) {
      case DomainKind::disk: return squared_distance(x, center_) < outer_ * outer_;
      case DomainKind::annulus: {
        const double s = squared_distance(x, center_);
        return s > inner_ * inner_ && s < outer_ * outer_;
      }
      case DomainKind::rectangle: {
        if (rounding_ == 0.0) {
          for (int i = 0; i < dim(); ++i) {
            if (!(std::abs(x[i] - center_[i]) < half_[i])) return false;
          }
          return true;
        }
        double s = 0.0;
        for (int i = 0; i < dim(); ++i) {
          const double q = std::abs(x[i] - center_[i]) - (half_[i] - rounding_);
          if (q > 0.0) s += q * q;
        }
        return s < rounding_ * rounding_;
      }
    }
    return false;
  }

  /// Distance to the boundary, positive inside.
  double signed_distance(ConstPoint x) const {
    switch (kind_) {
      case DomainKind::disk: return outer_ - distance(x, center_);
      case DomainKind::annulus: {
        const double r = distance(x, center_);
        return std::min(r - inner_, outer_ - r);
      }
      case DomainKind::rectangle: {
        double outside = 0.0;
        double inside = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < dim(); ++i) {
          const double q = std::abs(x[i] - center_[i]) - (half_[i] - rounding_);
          if (q > 0.0) outside += q * q;
          inside = std::max(inside, q);
        }
        const double core = outside > 0.0 ? std::sqrt(outside) : inside;
        return rounding_ - core;
      }
    }
    return 0.0;
  }

  double volume() const {
    const int d = dim();
    switch (kind_) {
      case DomainKind::disk: return unit_ball_volume(d) * std::pow(outer_, d);
      case DomainKind::annulus:
        return unit_ball_volume(d) * (std::pow(outer_, d) - std::pow(inner_, d));
      case DomainKind::rectangle: {
        const double p = rounding_;
        const auto c = core_sides();
        if (d == 2) return (c[0] + 2 * p) * (c[1] + 2 * p) - (4.0 - std::numbers::pi) * p * p;
        if (d == 3) {
          // Steiner formula for the parallel body of a box.
          return c[0] * c[1] * c[2] + 2 * p * (c[0] * c[1] + c[1] * c[2] + c[2] * c[0]) +
                 std::numbers::pi * p * p * (c[0] + c[1] + c[2]) + 4.0 / 3.0 * std::numbers::pi * p * p * p;
        }
        if (p == 0.0) {
          double v = 1.0;
          for (double h : half_) v *= 2 * h;
          return v;
        }
        throw NoClosedForm("rounded rectangle volume needs d <= 3");
      }
    }
    return 0.0;
  }

  double boundary_measure() const {
    const int d = dim();
    switch (kind_) {
      case DomainKind::disk: return d * unit_ball_volume(d) * std::pow(outer_, d - 1);
      case DomainKind::annulus:
        return d * unit_ball_volume(d) * (std::pow(outer_, d - 1) + std::pow(inner_, d - 1));
      case DomainKind::rectangle: {
        const double p = rounding_;
        const auto c = core_sides();
        if (d == 2) return 2 * (c[0] + c[1]) + 2 * std::numbers::pi * p;
        if (d == 3) {
          return 2 * (c[0] * c[1] + c[1] * c[2] + c[2] * c[0]) + 2 * std::numbers::pi * p * (c[0] + c[1] + c[2]) +
                 4 * std::numbers::pi * p * p;
        }
        if (p == 0.0) {
          double s = 0.0;
          for (int i = 0; i < d; ++i) {
            double face = 1.0;
            for (int j = 0; j < d; ++j) {
              if (j != i) face *= 2 * half_[j];
            }
            s += 2 * face;
          }
          return s;
        }
        throw NoClosedForm("rounded rectangle boundary measure needs d <= 3");
      }
    }
    return 0.0;
  }

  /// Reach of the boundary. For the shell the medial sphere halfway between
  /// the two boundary spheres limits it to half the thickness.
  double reach_of_boundary() const {
    switch (kind_) {
      case DomainKind::disk: return outer_;
      case DomainKind::annulus: return std::min(inner_, 0.5 * (outer_ - inner_));
      case DomainKind::rectangle: return rounding_;
    }
    return 0.0;
  }

  double inradius() const {
    switch (kind_) {
      case DomainKind::disk: return outer_;
      case DomainKind::annulus: return 0.5 * (outer_ - inner_);
      case DomainKind::rectangle: return *std::min_element(half_.begin(), half_.end());
    }
    return 0.0;
  }

  Box bounding_box() const {
    Box b{center_, center_};
    for (int i = 0; i < dim(); ++i) {
      const double h = kind_ == DomainKind::rectangle ? half_[i] : outer_;
      b.lo[i] -= h;
      b.hi[i] += h;
    }
    return b;
  }

  /// Points at distance >= r from the boundary, as the same parametric kind.
  Domain inner_parallel(double r) const {
    if (!(r > 0.0)) throw DomainError("inner_parallel: r must be positive");
    if (r >= inradius()) throw DomainError("inner_parallel: r >= inradius, the set is empty");
    Domain m = *this;
    switch (kind_) {
      case DomainKind::disk: m.outer_ -= r; break;
      case DomainKind::annulus:
        m.inner_ += r;
        m.outer_ -= r;
        break;
      case DomainKind::rectangle:
        for (double& h : m.half_) h -= r;
        m.rounding_ = std::max(0.0, rounding_ - r);
        break;
    }
    return m;
  }

  /// Range of <u, x> over the closure, for a unit vector u.
  Interval support_range(ConstPoint u) const {
    const double mid = dot(u, center_);
    double w = outer_;
    if (kind_ == DomainKind::rectangle) {
      w = rounding_;
      for (int i = 0; i < dim(); ++i) w += (half_[i] - rounding_) * std::abs(u[i]);
    }
    return {mid - w, mid + w};
  }

  /// Planar only. The line {<u, x> = s} (u unit) is parametrized as
  /// s*u + lambda*w with w = (-u1, u0); returns the lambda-intervals inside.
  std::vector<Interval> chord(ConstPoint u, double s) const {
    if (dim() != 2) throw NoClosedForm("chord: planar domains only");
    const double w[2] = {-u[1], u[0]};
    const double q = s - dot(u, center_);
    const double mid = w[0] * center_[0] + w[1] * center_[1];
    switch (kind_) {
      case DomainKind::disk: {
        if (q * q >= outer_ * outer_) return {};
        const double h = std::sqrt(outer_ * outer_ - q * q);
        return {{mid - h, mid + h}};
      }
      case DomainKind::annulus: {
        if (q * q >= outer_ * outer_) return {};
        const double h_out = std::sqrt(outer_ * outer_ - q * q);
        if (q * q >= inner_ * inner_) return {{mid - h_out, mid + h_out}};
        const double h_in = std::sqrt(inner_ * inner_ - q * q);
        return {{mid - h_out, mid - h_in}, {mid + h_in, mid + h_out}};
      }
      case DomainKind::rectangle: return rectangle_chord(u, w, s);
    }
    return {};
  }

  bool operator==(const Domain&) const = default;

 private:
  Domain(DomainKind kind, std::vector<double> center, Box ambient, double margin)
      : kind_(kind), center_(std::move(center)), ambient_(std::move(ambient)), margin_(margin) {
    if (ambient_.lo.empty()) ambient_ = Box::unit(static_cast<int>(center_.size()));
  }

  std::vector<double> core_sides() const {
    std::vector<double> c(half_.size());
    for (std::size_t i = 0; i < half_.size(); ++i) c[i] = 2 * (half_[i] - rounding_);
    return c;
  }

  std::vector<Interval> rectangle_chord(ConstPoint u, const double w[2], double s) const {
    std::optional<Interval> hull;
    auto merge = [&](std::optional<Interval> piece) {
      if (!piece) return;
      if (!hull) {
        hull = piece;
      } else {
        hull->lo = std::min(hull->lo, piece->lo);
        hull->hi = std::max(hull->hi, piece->hi);
      }
    };
    auto box_piece = [&](double hx, double hy) -> std::optional<Interval> {
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      const double half[2] = {hx, hy};
      for (int i = 0; i < 2; ++i) {
        const double base = s * u[i] - center_[i];
        if (w[i] == 0.0) {
          if (!(std::abs(base) < half[i])) return std::nullopt;
          continue;
        }
        double a = (-half[i] - base) / w[i];
        double b = (half[i] - base) / w[i];
        if (a > b) std::swap(a, b);
        lo = std::max(lo, a);
        hi = std::min(hi, b);
      }
      if (!(hi > lo)) return std::nullopt;
      return Interval{lo, hi};
    };
    auto disk_piece = [&](double cx, double cy, double r) -> std::optional<Interval> {
      const double q = s - (u[0] * cx + u[1] * cy);
      if (q * q >= r * r) return std::nullopt;
      const double h = std::sqrt(r * r - q * q);
      const double m = w[0] * cx + w[1] * cy;
      return Interval{m - h, m + h};
    };
    const double p = rounding_;
    const double ex = half_[0] - p, ey = half_[1] - p;
    if (p == 0.0) {
      merge(box_piece(half_[0], half_[1]));
    } else {
      merge(box_piece(half_[0], ey));
      merge(box_piece(ex, half_[1]));
      for (int sx : {-1, 1}) {
        for (int sy : {-1, 1}) merge(disk_piece(center_[0] + sx * ex, center_[1] + sy * ey, p));
      }
    }
    if (!hull) return {};
    return {*hull};
  }

  void validate() const {
    const int d = dim();
    if (d < 2 || d > kMaxDimension) throw DomainError("domain dimension must be in [2, 20]");
    if (ambient_.dim() != d) throw DomainError("ambient box dimension mismatch");
    if (!(margin_ > 0.0)) throw DomainError("domain margin must be positive");
    switch (kind_) {
      case DomainKind::disk:
        if (!(outer_ > 0.0)) throw DomainError("disk radius must be positive");
        break;
      case DomainKind::annulus:
        if (!(inner_ > 0.0 && outer_ > inner_)) throw DomainError("annulus needs 0 < inner < outer");
        break;
      case DomainKind::rectangle:
        if (static_cast<int>(half_.size()) != d) throw DomainError("rectangle needs one side per axis");
        for (double h : half_) {
          if (!(h > 0.0)) throw DomainError("rectangle sides must be positive");
        }
        if (!(rounding_ >= 0.0) || rounding_ > inradius()) {
          throw DomainError("rectangle rounding must lie in [0, half the shortest side]");
        }
        break;
    }
    const Box b = bounding_box();
    for (int i = 0; i < d; ++i) {
      if (b.lo[i] < ambient_.lo[i] + margin_ || b.hi[i] > ambient_.hi[i] - margin_) {
        throw DomainError("domain closure must lie inside the ambient box with the configured margin");
      }
    }
  }

  DomainKind kind_;
  std::vector<double> center_;
  Box ambient_;
  double margin_;
  double outer_ = 0.0;
  double inner_ = 0.0;
  std::vector<double> half_;
  double rounding_ = 0.0;
};

inline DomainQuantities domain_quantities(const Domain& m) {
  return {m.volume(), m.boundary_measure(), m.reach_of_boundary()};
}

}  // namespace cheeger
