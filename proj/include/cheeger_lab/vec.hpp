#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace cheeger {

using ConstPoint = std::span<const double>;

inline double dot(ConstPoint a, ConstPoint b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_distance(ConstPoint a, ConstPoint b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

inline double distance(ConstPoint a, ConstPoint b) { return std::sqrt(squared_distance(a, b)); }

inline double norm(ConstPoint a) { return std::sqrt(dot(a, a)); }

inline std::vector<double> normalized(ConstPoint a) {
  const double n = norm(a);
  std::vector<double> out(a.begin(), a.end());
  for (double& v : out) v /= n;
  return out;
}

/// Unit vector at angle theta in the plane.
inline std::vector<double> direction_2d(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Axis-aligned box [lo, hi].
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box unit(int d) { return {std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)}; }
  static Box cube(int d, double lo, double hi) {
    return {std::vector<double>(d, lo), std::vector<double>(d, hi)};
  }
  int dim() const { return static_cast<int>(lo.size()); }
  bool operator==(const Box&) const = default;
};

}  // namespace cheeger
