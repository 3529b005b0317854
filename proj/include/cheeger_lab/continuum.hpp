#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "cheeger_lab/candidate.hpp"
#include "cheeger_lab/constants.hpp"
#include "cheeger_lab/domain.hpp"
#include "cheeger_lab/quadrature.hpp"

namespace cheeger {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Perimeter over the smaller side volume, with 0/0 (and x/0) read as +inf.
inline double cut_ratio(double perimeter, double vol_in, double vol_out) {
  const double m = std::min(vol_in, vol_out);
  return m > 0.0 ? perimeter / m : kInfinity;
}

/// Relative boundary measure Vol_{d-1}(∂A ∩ M), the two side volumes, and
/// h(A; M) for a candidate A against a domain M.
struct RelativeCut {
  double perimeter;
  double vol_in;
  double vol_out;
  double h;
};

namespace detail {

// Volume of {<n, y> < q} inside the origin-centred ball of radius R.
inline double ball_halfspace_volume(int d, double R, double q) {
  const double full = unit_ball_volume(d) * std::pow(R, d);
  if (q >= R) return full;
  if (q <= -R) return 0.0;
  if (q >= 0.0) return full - std::pow(R, d) * cap_volume(d, q / R);
  return std::pow(R, d) * cap_volume(d, -q / R);
}

// (d-1)-volume of the hyperplane section at signed height q.
inline double ball_section(int d, double R, double q) {
  if (q * q >= R * R) return 0.0;
  return unit_ball_volume(d - 1) * std::pow(R * R - q * q, 0.5 * (d - 1));
}

// Area of the intersection of two disks with radii R, r and centre distance c.
inline double lens_area(double R, double r, double c) {
  if (c >= R + r) return 0.0;
  const double small = std::min(R, r);
  if (c <= std::abs(R - r)) return std::numbers::pi * small * small;
  const double a1 = std::clamp((c * c + R * R - r * r) / (2 * c * R), -1.0, 1.0);
  const double a2 = std::clamp((c * c + r * r - R * R) / (2 * c * r), -1.0, 1.0);
  const double k = (-c + R + r) * (c + R - r) * (c - R + r) * (c + R + r);
  return R * R * std::acos(a1) + r * r * std::acos(a2) - 0.5 * std::sqrt(std::max(0.0, k));
}

// Length of the circle of radius r (centre at distance c) inside the disk of radius R.
inline double arc_inside(double R, double r, double c) {
  if (c + r <= R) return 2 * std::numbers::pi * r;
  if (c >= R + r || c + R <= r) return 0.0;
  const double a = std::clamp((r * r + c * c - R * R) / (2 * r * c), -1.0, 1.0);
  return 2 * r * std::acos(a);
}

inline double chord_length(const Domain& M, ConstPoint u, double s) {
  double len = 0.0;
  for (const Interval& iv : M.chord(u, s)) len += iv.length();
  return len;
}

inline RelativeCut halfspace_cut(const HalfSpace& hs, const Domain& M, double tol) {
  const int d = M.dim();
  const double tau = M.volume();
  double perimeter = 0.0, vol_in = 0.0;
  if (M.kind() == DomainKind::disk || M.kind() == DomainKind::annulus) {
    const double q = hs.offset - dot(hs.normal, M.center());
    vol_in = ball_halfspace_volume(d, M.outer_radius(), q);
    perimeter = ball_section(d, M.outer_radius(), q);
    if (M.kind() == DomainKind::annulus) {
      vol_in -= ball_halfspace_volume(d, M.inner_radius(), q);
      perimeter -= ball_section(d, M.inner_radius(), q);
    }
  } else if (d == 2) {
    const Interval range = M.support_range(hs.normal);
    if (hs.offset >= range.hi) {
      vol_in = tau;
    } else if (hs.offset > range.lo) {
      perimeter = chord_length(M, hs.normal, hs.offset);
      vol_in = integrate([&](double s) { return chord_length(M, hs.normal, s); }, range.lo, hs.offset, tol);
    }
  } else {
    throw NoClosedForm("half-space cut of a rounded box needs d = 2");
  }
  vol_in = std::clamp(vol_in, 0.0, tau);
  return {perimeter, vol_in, tau - vol_in, cut_ratio(perimeter, vol_in, tau - vol_in)};
}

// Arc length of a circle inside M, from sign changes of the signed distance.
inline double arc_inside_domain(const Domain& M, const Ball& b) {
  constexpr int kSamples = 4096;
  auto g = [&](double theta) {
    const double p[2] = {b.center[0] + b.radius * std::cos(theta), b.center[1] + b.radius * std::sin(theta)};
    return M.signed_distance(p);
  };
  const double step = 2 * std::numbers::pi / kSamples;
  double inside = 0.0;
  double prev_theta = 0.0, prev_val = g(0.0);
  for (int k = 1; k <= kSamples; ++k) {
    const double theta = k * step;
    const double val = g(theta);
    if ((prev_val > 0.0) == (val > 0.0)) {
      if (val > 0.0) inside += step;
    } else {
      double lo = prev_theta, hi = theta;
      const bool lo_inside = prev_val > 0.0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((g(mid) > 0.0) == lo_inside) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double root = 0.5 * (lo + hi);
      inside += lo_inside ? root - prev_theta : theta - root;
    }
    prev_theta = theta;
    prev_val = val;
  }
  return b.radius * inside;
}

inline RelativeCut ball_cut(const Ball& b, const Domain& M, double tol) {
  if (M.dim() != 2) throw NoClosedForm("ball cuts need d = 2");
  const double tau = M.volume();
  double perimeter = 0.0, vol_in = 0.0;
  if (M.kind() == DomainKind::disk || M.kind() == DomainKind::annulus) {
    const double c = distance(b.center, M.center());
    vol_in = lens_area(M.outer_radius(), b.radius, c);
    perimeter = arc_inside(M.outer_radius(), b.radius, c);
    if (M.kind() == DomainKind::annulus) {
      vol_in -= lens_area(M.inner_radius(), b.radius, c);
      perimeter -= arc_inside(M.inner_radius(), b.radius, c);
    }
  } else {
    const double e1[2] = {1.0, 0.0};
    auto slice = [&](double x) {
      const double dx = x - b.center[0];
      const double h2 = b.radius * b.radius - dx * dx;
      if (h2 <= 0.0) return 0.0;
      const double h = std::sqrt(h2);
      double len = 0.0;
      for (const Interval& iv : M.chord(e1, x)) {
        len += std::max(0.0, std::min(iv.hi, b.center[1] + h) - std::max(iv.lo, b.center[1] - h));
      }
      return len;
    };
    vol_in = integrate(slice, b.center[0] - b.radius, b.center[0] + b.radius, tol);
    perimeter = arc_inside_domain(M, b);
  }
  vol_in = std::clamp(vol_in, 0.0, tau);
  perimeter = std::max(0.0, perimeter);
  return {perimeter, vol_in, tau - vol_in, cut_ratio(perimeter, vol_in, tau - vol_in)};
}

// Polygon of the slab core (planar).
inline std::vector<std::array<double, 2>> slab_core_polygon(const RoundedSlab& s) {
  Box shrunk = s.box;
  for (int i = 0; i < 2; ++i) {
    shrunk.lo[i] += s.rounding;
    shrunk.hi[i] -= s.rounding;
  }
  return clip_box_halfplane(shrunk, s.normal, s.offset - s.rounding);
}

// Whether the rounded slab meets M exactly where its generating half-space
// does. Outside a neighbourhood of each vertex v of {<n,x> < t} ∩ box the
// opening changes nothing; near v the removed region lies within
// rounding * cot(angle_v / 2) of v.
inline bool slab_matches_halfspace_on(const RoundedSlab& s, const Domain& M) {
  if (M.dim() != 2 || s.empty) return false;
  const auto poly = clip_box_halfplane(s.box, s.normal, s.offset);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& prev = poly[(i + n - 1) % n];
    const auto& v = poly[i];
    const auto& next = poly[(i + 1) % n];
    const double ax = prev[0] - v[0], ay = prev[1] - v[1];
    const double bx = next[0] - v[0], by = next[1] - v[1];
    const double la = std::hypot(ax, ay), lb = std::hypot(bx, by);
    if (la == 0.0 || lb == 0.0) continue;
    const double cosang = std::clamp((ax * bx + ay * by) / (la * lb), -1.0, 1.0);
    const double angle = std::acos(cosang);
    if (angle >= std::numbers::pi) continue;
    const double reach_out = s.rounding / std::tan(0.5 * angle);
    const double p[2] = {v[0], v[1]};
    if (-M.signed_distance(p) < reach_out) return false;
  }
  return true;
}

}  // namespace detail

/// If A ∩ M coincides with H ∩ M for a half-space H, returns H with the
/// complement flag folded in; otherwise nullopt. Empty rounded slabs yield
/// nullopt as well (they are not half-spaces).
inline std::optional<HalfSpace> in_domain_halfspace(const CandidateSet& A, const Domain& M) {
  std::optional<HalfSpace> h;
  if (A.kind() == CandidateKind::half_space) {
    h = std::get<HalfSpace>(A.shape());
  } else if (A.kind() == CandidateKind::rounded_slab) {
    const auto& s = std::get<RoundedSlab>(A.shape());
    if (detail::slab_matches_halfspace_on(s, M)) h = HalfSpace{s.normal, s.offset};
  }
  if (h && A.complemented()) {
    for (double& v : h->normal) v = -v;
    h->offset = -h->offset;
  }
  return h;
}

/// Closed forms for half-space cuts of disks/annuli (any d) and rounded
/// rectangles (planar, by 1-D quadrature of chord lengths); ball cuts in the
/// plane. Rounded slabs are handled when they agree with their half-space on
/// M, or are empty.
inline RelativeCut relative_cut_quantities(const CandidateSet& A, const Domain& M,
                                           double tol = kCutTolerance) {
  if (A.dim() != M.dim()) throw DomainError("candidate and domain dimensions differ");
  RelativeCut base{};
  switch (A.kind()) {
    case CandidateKind::half_space:
      base = detail::halfspace_cut(std::get<HalfSpace>(A.shape()), M, tol);
      break;
    case CandidateKind::ball: base = detail::ball_cut(std::get<Ball>(A.shape()), M, tol); break;
    case CandidateKind::rounded_slab: {
      const auto& s = std::get<RoundedSlab>(A.shape());
      if (s.empty) {
        base = {0.0, 0.0, M.volume(), kInfinity};
      } else if (detail::slab_matches_halfspace_on(s, M)) {
        base = detail::halfspace_cut(HalfSpace{s.normal, s.offset}, M, tol);
      } else {
        throw NoClosedForm("rounded slab whose rounding meets the domain");
      }
      break;
    }
  }
  if (A.complemented()) std::swap(base.vol_in, base.vol_out);
  return base;
}

/// d-volume of a bounded candidate (balls any d, rounded slabs planar).
inline double candidate_volume(const CandidateSet& A) {
  if (A.complemented()) throw DomainError("candidate_volume: complement is unbounded");
  switch (A.kind()) {
    case CandidateKind::half_space: throw DomainError("candidate_volume: half-space is unbounded");
    case CandidateKind::ball: {
      const auto& b = std::get<Ball>(A.shape());
      return unit_ball_volume(A.dim()) * std::pow(b.radius, A.dim());
    }
    case CandidateKind::rounded_slab: {
      const auto& s = std::get<RoundedSlab>(A.shape());
      if (A.dim() != 2) throw NoClosedForm("rounded slab volume needs d = 2");
      if (s.empty) return 0.0;
      const auto poly = detail::slab_core_polygon(s);
      return polygon_area(poly) + polygon_perimeter(poly) * s.rounding +
             std::numbers::pi * s.rounding * s.rounding;
    }
  }
  return 0.0;
}

/// (d-1)-volume of the boundary of a bounded candidate.
inline double candidate_boundary_measure(const CandidateSet& A) {
  switch (A.kind()) {
    case CandidateKind::half_space: throw DomainError("candidate_boundary_measure: unbounded boundary");
    case CandidateKind::ball: {
      const auto& b = std::get<Ball>(A.shape());
      const int d = A.dim();
      return d * unit_ball_volume(d) * std::pow(b.radius, d - 1);
    }
    case CandidateKind::rounded_slab: {
      const auto& s = std::get<RoundedSlab>(A.shape());
      if (A.dim() != 2) throw NoClosedForm("rounded slab perimeter needs d = 2");
      if (s.empty) return 0.0;
      return polygon_perimeter(detail::slab_core_polygon(s)) + 2 * std::numbers::pi * s.rounding;
    }
  }
  return 0.0;
}

/// Volume of the tubular neighbourhood V(∂A, r) for r below the certified
/// reach. Half-spaces have unbounded boundary, so their tube is taken around
/// the relative boundary ∂A ∩ M (flat, ends removed) and `clip` is required.
inline double tube_volume(const CandidateSet& A, double r, const Domain* clip = nullptr) {
  if (!(r >= 0.0)) throw DomainError("tube_volume: r must be nonnegative");
  if (!(r < A.certified_reach())) throw DomainError("tube_volume: r must be below the certified reach");
  if (r == 0.0) return 0.0;
  switch (A.kind()) {
    case CandidateKind::half_space: {
      if (!clip) throw DomainError("tube_volume: a half-space needs a clipping domain");
      return 2.0 * r * relative_cut_quantities(A, *clip).perimeter;
    }
    case CandidateKind::ball: {
      const auto& b = std::get<Ball>(A.shape());
      const int d = A.dim();
      return unit_ball_volume(d) * (std::pow(b.radius + r, d) - std::pow(b.radius - r, d));
    }
    case CandidateKind::rounded_slab:
      // Steiner: outer minus inner parallel body of core ⊕ B(rounding).
      return 2.0 * r * candidate_boundary_measure(A);
  }
  return 0.0;
}

/// Minimum of h(H; M) over half-planes at `angles` directions in [0, pi) and
/// `offsets` interior offsets spread uniformly over the support of M.
struct HalfplaneSweep {
  double h;
  double angle;
  double offset;
};

inline HalfplaneSweep halfplane_cheeger_sweep(const Domain& M, int angles, int offsets,
                                             double tol = kCutTolerance) {
  if (M.dim() != 2) throw NoClosedForm("halfplane sweep is planar");
  HalfplaneSweep best{kInfinity, 0.0, 0.0};
  for (int k = 0; k < angles; ++k) {
    const double theta = std::numbers::pi * k / angles;
    const auto u = direction_2d(theta);
    const Interval range = M.support_range(u);
    for (int j = 0; j < offsets; ++j) {
      const double t = range.lo + (range.hi - range.lo) * (j + 1) / (offsets + 1);
      const double h = relative_cut_quantities(CandidateSet::half_space(u, t), M, tol).h;
      if (h < best.h) best = {h, theta, t};
    }
  }
  return best;
}

/// Cheeger constant and Cheeger-set orbit for domains where both are known:
/// planar disks (half-disks, any rotation) and planar rounded rectangles
/// (the two halves split across the long axis).
struct CheegerSetInfo {
  double H;
  bool rotation_orbit;              // disk: all rotations of `elements[0]`
  std::vector<HalfSpace> elements;  // each A* = element ∩ M
};

inline std::optional<CheegerSetInfo> known_cheeger(const Domain& M) {
  if (M.dim() != 2) return std::nullopt;
  const auto& c = M.center();
  if (M.kind() == DomainKind::disk) {
    HalfSpace h{{1.0, 0.0}, c[0]};
    const double H = relative_cut_quantities(CandidateSet::half_space(h.normal, h.offset), M).h;
    return CheegerSetInfo{H, true, {h}};
  }
  if (M.kind() == DomainKind::rectangle) {
    const auto sides = M.sides();
    const int a = sides[0] >= sides[1] ? 0 : 1;
    std::vector<double> e(2, 0.0);
    e[a] = 1.0;
    std::vector<double> neg(2, 0.0);
    neg[a] = -1.0;
    const double H = relative_cut_quantities(CandidateSet::half_space(e, c[a]), M).h;
    return CheegerSetInfo{H, false, {HalfSpace{e, c[a]}, HalfSpace{neg, -c[a]}}};
  }
  return std::nullopt;
}

/// Nearest element of the Cheeger orbit to R ∩ M in the L1 (symmetric
/// difference volume) metric, and that distance.
struct OrbitMatch {
  HalfSpace element;
  double l1;
};

namespace detail {

inline double halfspace_volume_in(const Domain& M, ConstPoint n, double t) {
  return relative_cut_quantities(CandidateSet::half_space({n.begin(), n.end()}, t), M).vol_in;
}

// L1 distance between {<n,x> < t} ∩ M and {<m,x> < s} ∩ M when m = ±n.
inline std::optional<double> parallel_l1(const Domain& M, const HalfSpace& a, const HalfSpace& b) {
  const double c = dot(a.normal, b.normal);
  if (std::abs(std::abs(c) - 1.0) > 1e-14) return std::nullopt;
  const double tau = M.volume();
  if (c > 0) return std::abs(halfspace_volume_in(M, a.normal, a.offset) - halfspace_volume_in(M, a.normal, b.offset));
  // b = {<n,x> > -s}
  const double s = -b.offset;
  const double lo = std::min(a.offset, s), hi = std::max(a.offset, s);
  return halfspace_volume_in(M, a.normal, lo) + tau - halfspace_volume_in(M, a.normal, hi);
}

// Midpoint-rule symmetric differences on a grid x grid lattice over the
// bounding box of M, for many orbit elements against one R.
class L1Grid {
 public:
  L1Grid(const CandidateSet& R, const Domain& M, int grid) : M_(M), grid_(grid) {
    const Box b = M.bounding_box();
    lo_ = b.lo;
    step_ = {(b.hi[0] - b.lo[0]) / grid, (b.hi[1] - b.lo[1]) / grid};
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const double p[2] = {lo_[0] + (i + 0.5) * step_[0], lo_[1] + (j + 0.5) * step_[1]};
        if (!M.contains(p)) continue;
        cells_.push_back(static_cast<std::uint32_t>(i * grid + j));
        in_r_.push_back(R.contains(p) ? 1 : 0);
      }
    }
  }

  double l1(const HalfSpace& h) const {
    std::size_t diff = 0;
    for (std::size_t k = 0; k < cells_.size(); ++k) {
      const int i = static_cast<int>(cells_[k] / grid_), j = static_cast<int>(cells_[k] % grid_);
      const double x = lo_[0] + (i + 0.5) * step_[0], y = lo_[1] + (j + 0.5) * step_[1];
      const bool in_h = h.normal[0] * x + h.normal[1] * y < h.offset;
      diff += (in_h != (in_r_[k] != 0));
    }
    return static_cast<double>(diff) * step_[0] * step_[1];
  }

 private:
  const Domain& M_;
  int grid_;
  std::vector<double> lo_;
  std::array<double, 2> step_;
  std::vector<std::uint32_t> cells_;
  std::vector<std::uint8_t> in_r_;
};

inline HalfSpace rotated_element(const Domain& M, double theta) {
  auto u = direction_2d(theta);
  const double t = dot(u, M.center());
  return HalfSpace{std::move(u), t};
}

}  // namespace detail

inline OrbitMatch nearest_cheeger_set(const CandidateSet& R, const Domain& M, const CheegerSetInfo& info,
                                      int grid = 2048) {
  const auto hs = in_domain_halfspace(R, M);
  if (info.rotation_orbit) {
    if (hs) {
      // Closest half-disk shares the normal, in one of two orientations.
      HalfSpace same = detail::rotated_element(M, std::atan2(hs->normal[1], hs->normal[0]));
      HalfSpace flip{{-same.normal[0], -same.normal[1]}, -same.offset};
      const double a = *detail::parallel_l1(M, *hs, same);
      const double b = *detail::parallel_l1(M, *hs, flip);
      return a <= b ? OrbitMatch{same, a} : OrbitMatch{flip, b};
    }
    detail::L1Grid g(R, M, grid);
    constexpr int kCoarse = 72;
    double best_theta = 0.0, best = kInfinity;
    for (int k = 0; k < kCoarse; ++k) {
      const double theta = 2 * std::numbers::pi * k / kCoarse;
      const double v = g.l1(detail::rotated_element(M, theta));
      if (v < best) {
        best = v;
        best_theta = theta;
      }
    }
    // Golden-section refinement inside the winning bracket.
    const double step = 2 * std::numbers::pi / kCoarse;
    double a = best_theta - step, b = best_theta + step;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = g.l1(detail::rotated_element(M, c)), fd = g.l1(detail::rotated_element(M, d));
    for (int it = 0; it < 30; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = g.l1(detail::rotated_element(M, c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = g.l1(detail::rotated_element(M, d));
      }
    }
    const double theta = fc < fd ? c : d;
    const double v = std::min(fc, fd);
    if (v < best) return {detail::rotated_element(M, theta), v};
    return {detail::rotated_element(M, best_theta), best};
  }
  std::optional<detail::L1Grid> g;
  OrbitMatch best{info.elements.front(), kInfinity};
  for (const HalfSpace& e : info.elements) {
    std::optional<double> v;
    if (hs) v = detail::parallel_l1(M, *hs, e);
    if (!v) {
      if (!g) g.emplace(R, M, grid);
      v = g->l1(e);
    }
    if (*v < best.l1) best = {e, *v};
  }
  return best;
}

/// ∫ f over H ∩ M for a planar domain, by nested adaptive quadrature along
/// the normal of H and then along each chord.
inline double integrate_over_halfspace_part(const Domain& M, const HalfSpace& h,
                                            const std::function<double(double, double)>& f,
                                            double tol = 1e-10) {
  if (M.dim() != 2) throw NoClosedForm("integrate_over_halfspace_part is planar");
  const auto& u = h.normal;
  const double w[2] = {-u[1], u[0]};
  const Interval range = M.support_range(u);
  const double top = std::min(h.offset, range.hi);
  auto inner = [&](double s) {
    double total = 0.0;
    for (const Interval& iv : M.chord(u, s)) {
      total += integrate([&](double lam) { return f(s * u[0] + lam * w[0], s * u[1] + lam * w[1]); }, iv.lo,
                         iv.hi, 0.1 * tol);
    }
    return total;
  };
  return integrate(inner, range.lo, top, tol);
}

/// Witness for the lower volume bound of B(x, alpha) ∩ M_r on a disk M: the
/// ball B(z, alpha/4) with z = x + (r + alpha/4) (y - x)/|y - x| and y the
/// centre of a reach-radius ball through x (the disk centre itself).
struct QuarterBallWitness {
  std::vector<double> center;
  double radius;
  bool included;  // B(z, alpha/4) ⊆ B(x, alpha) ∩ M_r
};

inline QuarterBallWitness quarter_ball_witness(const Domain& M, ConstPoint x, double r, double alpha) {
  if (M.kind() != DomainKind::disk) throw NoClosedForm("quarter_ball_witness: disks only");
  if (!(0.0 < 2 * r && 2 * r <= alpha && alpha <= M.reach_of_boundary())) {
    throw DomainError("quarter_ball_witness: needs 0 < 2r <= alpha <= reach");
  }
  const auto& y = M.center();
  const double q = alpha / 4.0;
  std::vector<double> z(x.begin(), x.end());
  const double dxy = distance(x, y);
  if (dxy > 0.0) {
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += (r + q) * (y[i] - x[i]) / dxy;
  }
  const bool in_ball = distance(z, x) + q <= alpha * (1 + 1e-12);
  const bool in_inner = distance(z, y) + q <= (M.radius() - r) * (1 + 1e-12);
  return {std::move(z), q, in_ball && in_inner};
}

}  // namespace cheeger
