#pragma once

// Exact planar geometry over the rationals: convex polygons, half-plane clipping,
// and coverage of a convex polygon by a finite union of convex polygons or boxes.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "fracsum/cellgrid.hpp"
#include "fracsum/rational.hpp"

namespace fracsum::geom {

struct Point2 {
  Rational x;
  Rational y;

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(const Rational& s, const Point2& p) { return {s * p.x, s * p.y}; }

// (b - a) x (c - a)
inline Rational cross(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// a*x + b*y <= c
struct HalfPlane {
  Rational a;
  Rational b;
  Rational c;

  Rational eval(const Point2& p) const { return a * p.x + b * p.y - c; }
  HalfPlane complement() const { return {-a, -b, -c}; }
};

class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  // Convex hull (counter-clockwise, collinear points dropped).
  static ConvexPolygon hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    ConvexPolygon poly;
    if (pts.size() < 3) {
      poly.v_ = std::move(pts);
      return poly;
    }
    std::vector<Point2> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
      h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
      h[k++] = pts[i];
    }
    h.resize(k - 1);
    poly.v_ = std::move(h);
    return poly;
  }

  const std::vector<Point2>& vertices() const { return v_; }
  bool degenerate() const { return twice_area() == 0; }

  Rational twice_area() const {
    Rational s = 0;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      const auto& p = v_[i];
      const auto& q = v_[(i + 1) % v_.size()];
      s += p.x * q.y - q.x * p.y;
    }
    return s;
  }

  Rational area() const { return twice_area() / 2; }

  // Inward half-planes, one per edge.
  std::vector<HalfPlane> half_planes() const {
    std::vector<HalfPlane> out;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      const auto& p = v_[i];
      const auto& q = v_[(i + 1) % v_.size()];
      Rational a = q.y - p.y, b = p.x - q.x;
      Rational c = a * p.x + b * p.y;
      out.push_back({std::move(a), std::move(b), std::move(c)});
    }
    return out;
  }

  // Closed membership.
  bool contains(const Point2& p) const {
    if (v_.empty()) return false;
    if (v_.size() == 1) return v_[0] == p;
    if (degenerate()) {
      const auto [lo, hi] = std::minmax_element(v_.begin(), v_.end());
      return cross(*lo, *hi, p) == 0 && !(p < *lo) && !(*hi < p);
    }
    for (const auto& h : half_planes())
      if (h.eval(p) > 0) return false;
    return true;
  }

  // Convex polygons: inclusion is decided by the vertices.
  bool contains(const ConvexPolygon& other) const {
    return std::all_of(other.v_.begin(), other.v_.end(), [&](const Point2& p) { return contains(p); });
  }

  ConvexPolygon clip(const HalfPlane& h) const {
    ConvexPolygon out;
    const std::size_t n = v_.size();
    if (n == 0) return out;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = v_[i];
      const auto& q = v_[(i + 1) % n];
      const Rational fp = h.eval(p), fq = h.eval(q);
      if (fp <= 0) out.v_.push_back(p);
      if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
        const Rational t = fp / (fp - fq);
        out.v_.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
    }
    return hull(std::move(out.v_));
  }

  ConvexPolygon translated(const Point2& d) const {
    ConvexPolygon out = *this;
    for (auto& p : out.v_) p = p + d;
    return out;
  }

  ConvexPolygon scaled(const Rational& s) const {
    std::vector<Point2> pts;
    for (const auto& p : v_) pts.push_back(s * p);
    return hull(std::move(pts));
  }

  Rational min_x() const {
    return std::min_element(v_.begin(), v_.end(), [](auto& a, auto& b) { return a.x < b.x; })->x;
  }
  Rational max_x() const {
    return std::max_element(v_.begin(), v_.end(), [](auto& a, auto& b) { return a.x < b.x; })->x;
  }
  Rational min_y() const {
    return std::min_element(v_.begin(), v_.end(), [](auto& a, auto& b) { return a.y < b.y; })->y;
  }
  Rational max_y() const {
    return std::max_element(v_.begin(), v_.end(), [](auto& a, auto& b) { return a.y < b.y; })->y;
  }

 private:
  std::vector<Point2> v_;
};

// Pieces of `piece` outside the interior of q (closed pieces, zero-area ones dropped).
inline std::vector<ConvexPolygon> subtract(const ConvexPolygon& piece, const ConvexPolygon& q) {
  if (q.degenerate()) return {piece};
  if (q.max_x() <= piece.min_x() || q.min_x() >= piece.max_x() || q.max_y() <= piece.min_y() ||
      q.min_y() >= piece.max_y())
    return {piece};
  std::vector<ConvexPolygon> out;
  ConvexPolygon rest = piece;
  for (const auto& h : q.half_planes()) {
    ConvexPolygon outside = rest.clip(h.complement());
    if (!outside.degenerate()) out.push_back(std::move(outside));
    rest = rest.clip(h);
    if (rest.degenerate()) break;
  }
  return out;
}

// True iff the convex body p lies in the union of the closed convex polygons qs.
// For a convex body this is equivalent to the uncovered part having zero area.
inline bool covered_by(const ConvexPolygon& p, const std::vector<ConvexPolygon>& qs) {
  if (p.degenerate()) {
    // Lower-dimensional targets are accepted only when one piece contains them.
    return std::any_of(qs.begin(), qs.end(), [&](const ConvexPolygon& q) { return q.contains(p); });
  }
  std::vector<ConvexPolygon> remaining{p};
  for (const auto& q : qs) {
    std::vector<ConvexPolygon> next;
    for (const auto& r : remaining) {
      auto parts = subtract(r, q);
      next.insert(next.end(), std::make_move_iterator(parts.begin()), std::make_move_iterator(parts.end()));
    }
    remaining = std::move(next);
    if (remaining.empty()) return true;
  }
  return remaining.empty();
}

// y-extent of p over the closed strip x0 <= x <= x1, when p meets the strip in
// positive area.
inline std::optional<std::pair<Rational, Rational>> strip_y_range(const ConvexPolygon& p, const Rational& x0,
                                                                   const Rational& x1) {
  ConvexPolygon s = p.clip({Rational(-1), Rational(0), Rational(-x0)}).clip({Rational(1), Rational(0), x1});
  if (s.degenerate()) return std::nullopt;
  return std::make_pair(s.min_y(), s.max_y());
}

namespace detail {

// y-extent of convex p on the vertical line x = x0 (p assumed to reach it).
inline std::optional<std::pair<Rational, Rational>> vertical_section(const ConvexPolygon& p, const Rational& x0) {
  const auto& v = p.vertices();
  std::optional<Rational> lo, hi;
  auto take = [&](const Rational& y) {
    if (!lo || y < *lo) lo = y;
    if (!hi || y > *hi) hi = y;
  };
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    if (a.x == x0) take(a.y);
    if ((a.x < x0 && b.x > x0) || (a.x > x0 && b.x < x0)) take(a.y + (b.y - a.y) * (x0 - a.x) / (b.x - a.x));
  }
  if (!lo) return std::nullopt;
  return std::make_pair(*lo, *hi);
}

}  // namespace detail

// Exact test that the convex polygon p lies in a finite union of closed boxes in
// the plane. The x-axis is cut at every box edge and polygon vertex; on each slab
// the boxes spanning it give a fixed union of y-intervals and the polygon section
// moves linearly, so checking both slab ends against one merged interval decides it.
inline bool covered_by_boxes(const ConvexPolygon& p, const std::vector<Box>& boxes) {
  if (p.vertices().empty()) return true;
  const Rational xmin = p.min_x(), xmax = p.max_x();
  std::vector<Rational> xs;
  for (const auto& v : p.vertices()) xs.push_back(v.x);
  for (const auto& b : boxes) {
    if (b.lo[0] > xmin && b.lo[0] < xmax) xs.push_back(b.lo[0]);
    if (b.hi[0] > xmin && b.hi[0] < xmax) xs.push_back(b.hi[0]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto section_inside = [](const std::pair<Rational, Rational>& sec, const std::vector<Interval>& merged) -> int {
    for (std::size_t i = 0; i < merged.size(); ++i)
      if (merged[i].lo <= sec.first && sec.second <= merged[i].hi) return static_cast<int>(i);
    return -1;
  };

  if (xs.size() == 1) {
    auto sec = detail::vertical_section(p, xs[0]);
    std::vector<Interval> ys;
    for (const auto& b : boxes)
      if (b.lo[0] <= xs[0] && xs[0] <= b.hi[0]) ys.push_back({b.lo[1], b.hi[1]});
    return sec && section_inside(*sec, IntervalUnion(std::move(ys)).intervals()) >= 0;
  }

  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rational &x0 = xs[i], &x1 = xs[i + 1];
    std::vector<Interval> ys;
    for (const auto& b : boxes)
      if (b.lo[0] <= x0 && b.hi[0] >= x1) ys.push_back({b.lo[1], b.hi[1]});
    const IntervalUnion merged(std::move(ys));
    auto s0 = detail::vertical_section(p, x0);
    auto s1 = detail::vertical_section(p, x1);
    if (!s0 || !s1) return false;
    const int i0 = section_inside(*s0, merged.intervals());
    const int i1 = section_inside(*s1, merged.intervals());
    if (i0 < 0 || i0 != i1) return false;
  }
  return true;
}

}  // namespace fracsum::geom
