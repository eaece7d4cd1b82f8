#pragma once

// Exact planar lattice geometry: points, primitive vectors, unimodular maps,
// convex regions, and moment polygons.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "toricap/error.hpp"
#include "toricap/rational.hpp"

namespace toricap {

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(const Rational& s, const Point& p) { return {s * p.x, s * p.y}; }
};

inline bool lex_less(const Point& a, const Point& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

inline std::string to_string(const Point& p) { return to_string(p.x) + " " + to_string(p.y); }

struct LatticeVector {
  BigInt x;
  BigInt y;

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend LatticeVector operator*(const BigInt& s, const LatticeVector& v) { return {s * v.x, s * v.y}; }

  bool is_primitive() const { return gcd(x, y) == 1; }
};

inline std::string to_string(const LatticeVector& v) { return "(" + v.x.str() + "," + v.y.str() + ")"; }

inline BigInt det(const LatticeVector& a, const LatticeVector& b) { return a.x * b.y - a.y * b.x; }
inline BigInt dot(const LatticeVector& a, const LatticeVector& b) { return a.x * b.x + a.y * b.y; }
inline Rational dot(const LatticeVector& u, const Point& p) { return Rational(u.x) * p.x + Rational(u.y) * p.y; }

// Orientation of (a - o, b - o); positive for a left turn.
inline Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline LatticeVector primitive(const BigInt& x, const BigInt& y) {
  BigInt g = gcd(x, y);
  if (g == 0) throw Error(ErrorCode::InvalidArgument, "zero vector has no primitive direction");
  return {x / g, y / g};
}

// Primitive integer vector pointing from `from` to `to`.
inline LatticeVector primitive_direction(const Point& from, const Point& to) {
  Rational dx = to.x - from.x;
  Rational dy = to.y - from.y;
  BigInt l = lcm(den(dx), den(dy));
  return primitive(num(dx * l), num(dy * l));
}

// Length of the segment measured in units of its primitive direction.
inline Rational lattice_length(const Point& from, const Point& to) {
  LatticeVector d = primitive_direction(from, to);
  return d.x != 0 ? Rational((to.x - from.x) / Rational(d.x)) : Rational((to.y - from.y) / Rational(d.y));
}

// Strictly convex hull, counterclockwise, starting at the lexicographically
// smallest point. Degenerate inputs give one or two points.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline Rational shoelace_area(std::span<const Point> v) {
  if (v.size() < 3) return 0;
  Rational twice = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& p = v[i];
    const Point& q = v[(i + 1) % v.size()];
    twice += p.x * q.y - p.y * q.x;
  }
  return abs(twice) / 2;
}

// A compact convex set given by its hull vertices: empty, a point, a segment,
// or a polygon. Support polytopes of divisors live here because they may be
// degenerate.
class ConvexRegion {
 public:
  ConvexRegion() = default;

  static ConvexRegion hull_of(std::vector<Point> pts) {
    ConvexRegion r;
    r.vertices_ = convex_hull(std::move(pts));
    return r;
  }

  const std::vector<Point>& vertices() const { return vertices_; }
  bool empty() const { return vertices_.empty(); }
  // -1 for empty.
  int dimension() const { return std::min<int>(static_cast<int>(vertices_.size()), 3) - 1; }

  Rational area() const { return shoelace_area(vertices_); }

  bool contains(const Point& p) const {
    const std::size_t n = vertices_.size();
    if (n == 0) return false;
    if (n == 1) return vertices_[0] == p;
    if (n == 2) {
      const Point& a = vertices_[0];
      const Point& b = vertices_[1];
      if (cross(a, b, p) != 0) return false;
      return min(a.x, b.x) <= p.x && p.x <= max(a.x, b.x) && min(a.y, b.y) <= p.y && p.y <= max(a.y, b.y);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (cross(vertices_[i], vertices_[(i + 1) % n], p) < 0) return false;
    }
    return true;
  }

  struct LatticeRow {
    BigInt y;
    BigInt x_lo;
    BigInt x_hi;
  };

  // Row sweep over integer y; each row's x-interval comes from the edges.
  // Only rows holding at least one lattice point are returned.
  std::vector<LatticeRow> lattice_rows() const {
    std::vector<LatticeRow> rows;
    const std::size_t n = vertices_.size();
    if (n == 0) return rows;
    if (n == 1) {
      if (is_integer(vertices_[0].x) && is_integer(vertices_[0].y)) {
        rows.push_back({num(vertices_[0].y), num(vertices_[0].x), num(vertices_[0].x)});
      }
      return rows;
    }
    Rational ymin = vertices_[0].y, ymax = vertices_[0].y;
    for (const auto& v : vertices_) {
      ymin = min(ymin, v.y);
      ymax = max(ymax, v.y);
    }
    const std::size_t edges = n == 2 ? 1 : n;
    for (BigInt y = toricap::ceil(ymin), top = toricap::floor(ymax); y <= top; ++y) {
      const Rational ry(y);
      std::optional<Rational> lo, hi;
      auto take = [&](const Rational& x) {
        if (!lo || x < *lo) lo = x;
        if (!hi || *hi < x) hi = x;
      };
      for (std::size_t i = 0; i < edges; ++i) {
        const Point& p = vertices_[i];
        const Point& q = vertices_[(i + 1) % n];
        if (ry < min(p.y, q.y) || max(p.y, q.y) < ry) continue;
        if (p.y == q.y) {
          take(p.x);
          take(q.x);
        } else {
          take(p.x + (ry - p.y) * (q.x - p.x) / (q.y - p.y));
        }
      }
      if (!lo) continue;
      BigInt x_lo = toricap::ceil(*lo), x_hi = toricap::floor(*hi);
      if (x_lo <= x_hi) rows.push_back({y, x_lo, x_hi});
    }
    return rows;
  }

  BigInt lattice_count() const {
    BigInt count = 0;
    for (const auto& row : lattice_rows()) count += row.x_hi - row.x_lo + 1;
    return count;
  }

  friend bool operator==(const ConvexRegion& a, const ConvexRegion& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<Point> vertices_;
};

inline ConvexRegion minkowski_sum(const ConvexRegion& a, const ConvexRegion& b) {
  std::vector<Point> sums;
  sums.reserve(a.vertices().size() * b.vertices().size());
  for (const auto& p : a.vertices()) {
    for (const auto& q : b.vertices()) sums.push_back(p + q);
  }
  return ConvexRegion::hull_of(std::move(sums));
}

// area(a + b) - area(a) - area(b); defined for degenerate regions too.
inline Rational mixed_area(const ConvexRegion& a, const ConvexRegion& b) {
  if (a.empty() || b.empty()) return 0;
  return minkowski_sum(a, b).area() - a.area() - b.area();
}

// x -> M x + t with integer M, |det M| = 1, and a rational translation.
class UnimodularAffineMap {
 public:
  UnimodularAffineMap(BigInt m00, BigInt m01, BigInt m10, BigInt m11, Point t = {0, 0})
      : m00_(std::move(m00)), m01_(std::move(m01)), m10_(std::move(m10)), m11_(std::move(m11)), t_(std::move(t)) {
    BigInt d = det();
    if (d != 1 && d != -1) throw Error(ErrorCode::InvalidArgument, "linear part is not unimodular");
  }

  static UnimodularAffineMap identity() { return {1, 0, 0, 1}; }
  static UnimodularAffineMap translation(Point t) { return {1, 0, 0, 1, std::move(t)}; }

  BigInt det() const { return m00_ * m11_ - m01_ * m10_; }
  const Point& translation() const { return t_; }

  Point operator()(const Point& p) const {
    return {Rational(m00_) * p.x + Rational(m01_) * p.y + t_.x, Rational(m10_) * p.x + Rational(m11_) * p.y + t_.y};
  }

  LatticeVector linear(const LatticeVector& v) const {
    return {m00_ * v.x + m01_ * v.y, m10_ * v.x + m11_ * v.y};
  }

  // The map x -> next(this(x)).
  UnimodularAffineMap then(const UnimodularAffineMap& next) const {
    Point t = next(t_);
    return {next.m00_ * m00_ + next.m01_ * m10_, next.m00_ * m01_ + next.m01_ * m11_,
            next.m10_ * m00_ + next.m11_ * m10_, next.m10_ * m01_ + next.m11_ * m11_, t};
  }

  UnimodularAffineMap inverse() const {
    BigInt d = det();
    UnimodularAffineMap lin(m11_ * d, -m01_ * d, -m10_ * d, m00_ * d);
    Point back = lin(t_);
    return {lin.m00_, lin.m01_, lin.m10_, lin.m11_, {-back.x, -back.y}};
  }

  friend bool operator==(const UnimodularAffineMap& a, const UnimodularAffineMap& b) {
    return a.m00_ == b.m00_ && a.m01_ == b.m01_ && a.m10_ == b.m10_ && a.m11_ == b.m11_ && a.t_ == b.t_;
  }

 private:
  BigInt m00_, m01_, m10_, m11_;
  Point t_;
};

// A convex polygon with rational vertices and nonempty interior, stored
// counterclockwise from its lexicographically smallest vertex. Edge i runs
// from vertex i to vertex i + 1.
class MomentPolygon {
 public:
  static MomentPolygon from_vertices(std::vector<Point> ccw) {
    std::vector<Point> hull = convex_hull(ccw);
    if (hull.size() < 3) throw Error(ErrorCode::ZeroArea, "polygon has empty interior");
    if (hull.size() != ccw.size()) {
      throw Error(ErrorCode::NotConvex, "vertices are not in strictly convex position");
    }
    auto start = std::find(ccw.begin(), ccw.end(), hull.front());
    std::rotate(ccw.begin(), start, ccw.end());
    if (ccw != hull) throw Error(ErrorCode::NotConvex, "vertices are not in counterclockwise convex order");
    return MomentPolygon(std::move(hull));
  }

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& vertex(std::size_t i) const { return vertices_[i % size()]; }
  const Point& next(std::size_t i) const { return vertices_[(i + 1) % size()]; }
  const Point& prev(std::size_t i) const { return vertices_[(i + size() - 1) % size()]; }

  LatticeVector edge_direction(std::size_t i) const { return primitive_direction(vertex(i), next(i)); }

  // Primitive inner normal u_F of edge i.
  LatticeVector inward_normal(std::size_t i) const {
    LatticeVector d = edge_direction(i);
    return {-d.y, d.x};
  }

  // a_F with <u_F, x> = -a_F along edge i.
  Rational support_number(std::size_t i) const { return -dot(inward_normal(i), vertex(i)); }

  Rational edge_lattice_length(std::size_t i) const { return lattice_length(vertex(i), next(i)); }

  ConvexRegion region() const { return ConvexRegion::hull_of(vertices_); }

  friend bool operator==(const MomentPolygon& a, const MomentPolygon& b) { return a.vertices_ == b.vertices_; }

 private:
  explicit MomentPolygon(std::vector<Point> v) : vertices_(std::move(v)) {}
  std::vector<Point> vertices_;
};

inline Rational area(const MomentPolygon& p) { return shoelace_area(p.vertices()); }

inline BigInt lattice_count(const MomentPolygon& p) { return p.region().lattice_count(); }

// Lattice points on the boundary; requires integer vertices.
inline BigInt boundary_lattice_count(const MomentPolygon& p) {
  BigInt total = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational len = p.edge_lattice_length(i);
    if (!is_integer(p.vertex(i).x) || !is_integer(p.vertex(i).y)) {
      throw Error(ErrorCode::InvalidArgument, "boundary count needs lattice vertices");
    }
    total += num(len);
  }
  return total;
}

// Sum of l1 edge lengths, which bounds the Euclidean perimeter from above.
inline Rational perimeter_upper_bound(const MomentPolygon& p) {
  Rational total = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Point e = p.next(i) - p.vertex(i);
    total += abs(e.x) + abs(e.y);
  }
  return total;
}

inline MomentPolygon minkowski_sum(const MomentPolygon& a, const MomentPolygon& b) {
  return MomentPolygon::from_vertices(minkowski_sum(a.region(), b.region()).vertices());
}

inline Rational mixed_area(const MomentPolygon& a, const MomentPolygon& b) {
  return mixed_area(a.region(), b.region());
}

inline MomentPolygon scale(const MomentPolygon& p, const Rational& s) {
  if (s <= 0) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  std::vector<Point> v;
  for (const auto& q : p.vertices()) v.push_back(s * q);
  return MomentPolygon::from_vertices(std::move(v));
}

inline MomentPolygon translate(const MomentPolygon& p, const Point& t) {
  return MomentPolygon::from_vertices([&] {
    std::vector<Point> v;
    for (const auto& q : p.vertices()) v.push_back(q + t);
    return v;
  }());
}

inline MomentPolygon apply(const UnimodularAffineMap& t, const MomentPolygon& p) {
  std::vector<Point> v;
  for (const auto& q : p.vertices()) v.push_back(t(q));
  if (t.det() < 0) std::reverse(v.begin(), v.end());
  return MomentPolygon::from_vertices(std::move(v));
}

inline bool contains(const MomentPolygon& p, std::span<const Point> pts) {
  for (const auto& q : pts) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (cross(p.vertex(i), p.next(i), q) < 0) return false;
    }
  }
  return true;
}

inline bool contains(const MomentPolygon& p, const MomentPolygon& q) { return contains(p, q.vertices()); }

struct LatticeWidth {
  Rational width;
  LatticeVector direction;
};

inline Rational width_along(const MomentPolygon& p, const LatticeVector& l) {
  Rational lo = dot(l, p.vertex(0)), hi = lo;
  for (const auto& v : p.vertices()) {
    Rational s = dot(l, v);
    lo = min(lo, s);
    hi = max(hi, s);
  }
  return hi - lo;
}

namespace detail {

// Integer mu minimizing the convex function width_along(p, b - mu * a).
inline BigInt best_multiple(const MomentPolygon& p, const LatticeVector& a, const LatticeVector& b) {
  auto step = [&](const BigInt& mu) { return width_along(p, b - (mu + 1) * a) - width_along(p, b - mu * a); };
  // step is non-decreasing; return the least mu with step(mu) >= 0.
  BigInt lo = -1, hi = 1;
  while (step(lo) >= 0) lo *= 2;
  while (step(hi) < 0) hi *= 2;
  while (hi - lo > 1) {
    BigInt mid = lo + (hi - lo) / 2;
    (step(mid) < 0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace detail

// Minimum over primitive l of the extent of <l, .> on p. The direction basis
// is first Gauss-reduced for the width norm; in reduced coordinates any
// direction that can beat the axis widths has |l| <= W * perimeter / (2 * area).
// Ties go to the smallest Euclidean norm, then the larger x.
inline LatticeWidth lattice_width(const MomentPolygon& p) {
  LatticeVector b1{1, 0}, b2{0, 1};
  if (width_along(p, b2) < width_along(p, b1)) std::swap(b1, b2);
  while (true) {
    LatticeVector c = b2 - detail::best_multiple(p, b1, b2) * b1;
    if (width_along(p, c) >= width_along(p, b1)) {
      b2 = c;
      break;
    }
    b2 = b1;
    b1 = c;
  }
  MomentPolygon q = apply(UnimodularAffineMap(b1.x, b1.y, b2.x, b2.y), p);

  Rational axis = min(width_along(q, {1, 0}), width_along(q, {0, 1}));
  Rational radius = axis * perimeter_upper_bound(q) / (2 * area(q));
  Rational radius_sq = radius * radius;
  BigInt r = toricap::floor(radius);

  std::optional<LatticeWidth> best;
  BigInt best_norm = 0;
  for (BigInt x = -r; x <= r; ++x) {
    for (BigInt y = -r; y <= r; ++y) {
      BigInt norm = x * x + y * y;
      if (norm == 0 || Rational(norm) > radius_sq || gcd(x, y) != 1) continue;
      LatticeVector l = x * b1 + y * b2;
      if (l.x < 0 || (l.x == 0 && l.y < 0)) continue;
      Rational w = width_along(q, {x, y});
      BigInt n = dot(l, l);
      bool better = !best || w < best->width ||
                    (w == best->width && (n < best_norm || (n == best_norm && l.x > best->direction.x)));
      if (better) {
        best = LatticeWidth{w, l};
        best_norm = n;
      }
    }
  }
  return *best;
}

inline bool is_smooth_vertex(const MomentPolygon& p, std::size_t i) {
  BigInt d = det(primitive_direction(p.vertex(i), p.next(i)), primitive_direction(p.vertex(i), p.prev(i)));
  return d == 1 || d == -1;
}

inline std::vector<std::size_t> smooth_vertices(const MomentPolygon& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (is_smooth_vertex(p, i)) out.push_back(i);
  }
  return out;
}

struct Normalized {
  MomentPolygon polygon;
  UnimodularAffineMap map;  // map(original) == polygon
};

// Sends the first smooth vertex to the origin with its outgoing edge along e1
// and its incoming edge along e2.
inline Normalized normalize(const MomentPolygon& p) {
  auto smooth = smooth_vertices(p);
  if (smooth.empty()) throw Error(ErrorCode::NoSmoothVertex, "every vertex is singular");
  const std::size_t i = smooth.front();
  LatticeVector out = primitive_direction(p.vertex(i), p.next(i));
  LatticeVector in = primitive_direction(p.vertex(i), p.prev(i));
  // Inverse of the matrix with columns (out, in); its determinant is +1.
  UnimodularAffineMap lin(in.y, -in.x, -out.y, out.x);
  Point shift = lin(p.vertex(i));
  UnimodularAffineMap t(in.y, -in.x, -out.y, out.x, {-shift.x, -shift.y});
  return {apply(t, p), t};
}

// Cuts the corner at vertex v with the two new vertices at lattice distance
// eps along the incident edges. At a smooth vertex this is the polygon of the
// toric blow-up with class A - eps E.
inline MomentPolygon corner_chop(const MomentPolygon& p, std::size_t v, const Rational& eps) {
  if (v >= p.size()) throw Error(ErrorCode::InvalidArgument, "vertex index out of range");
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "chop size must be positive");
  const Point& c = p.vertex(v);
  if (eps >= lattice_length(c, p.next(v)) || eps >= lattice_length(c, p.prev(v))) {
    throw Error(ErrorCode::ChopTooLarge, "chop does not fit strictly inside the incident edges");
  }
  LatticeVector out = primitive_direction(c, p.next(v));
  LatticeVector in = primitive_direction(c, p.prev(v));
  std::vector<Point> verts;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == v) {
      verts.push_back({c.x + eps * Rational(in.x), c.y + eps * Rational(in.y)});
      verts.push_back({c.x + eps * Rational(out.x), c.y + eps * Rational(out.y)});
    } else {
      verts.push_back(p.vertex(i));
    }
  }
  return MomentPolygon::from_vertices(std::move(verts));
}

}  // namespace toricap
