#pragma once

// Toric surfaces from their fans: torus-invariant divisors, intersection
// numbers, sections, nef/ample tests, and the birational moves used to turn
// effective divisors into nef ones.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricap/error.hpp"
#include "toricap/lattice.hpp"
#include "toricap/rational.hpp"

namespace toricap {

inline constexpr int kIpIterationCap = 10000;

namespace detail {

// 0 for arguments in [0, pi), 1 for [pi, 2 pi).
inline int half_plane(const LatticeVector& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

inline bool angle_less(const LatticeVector& a, const LatticeVector& b) {
  int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return det(a, b) > 0;
}

}  // namespace detail

// A complete two-dimensional fan. Rays are primitive and sorted
// counterclockwise by argument starting from the positive x-axis; cone i is
// spanned by rays i and i + 1 (cyclically).
class ToricSurface {
 public:
  static ToricSurface from_rays(std::vector<LatticeVector> rays, std::optional<MomentPolygon> source = std::nullopt) {
    if (rays.size() < 3) throw Error(ErrorCode::InvalidArgument, "a complete fan needs at least three rays");
    for (const auto& r : rays) {
      if (r.x == 0 && r.y == 0) throw Error(ErrorCode::InvalidArgument, "zero ray");
      if (!r.is_primitive()) throw Error(ErrorCode::InvalidArgument, "ray " + to_string(r) + " is not primitive");
    }
    std::sort(rays.begin(), rays.end(), detail::angle_less);
    ToricSurface y;
    y.rays_ = std::move(rays);
    y.source_ = std::move(source);
    const std::size_t n = y.rays_.size();
    for (std::size_t i = 0; i < n; ++i) {
      BigInt d = det(y.rays_[i], y.rays_[(i + 1) % n]);
      if (d <= 0) throw Error(ErrorCode::InvalidArgument, "rays do not form a complete simplicial fan");
      y.cone_dets_.push_back(d);
    }
    y.build_intersections();
    return y;
  }

  const std::vector<LatticeVector>& rays() const { return rays_; }
  std::size_t size() const { return rays_.size(); }
  const LatticeVector& ray(std::size_t i) const { return rays_[i % size()]; }
  std::size_t next(std::size_t i) const { return (i + 1) % size(); }
  std::size_t prev(std::size_t i) const { return (i + size() - 1) % size(); }

  // |det(v_i, v_{i+1})|.
  const BigInt& cone_det(std::size_t i) const { return cone_dets_[i % size()]; }
  bool cone_smooth(std::size_t i) const { return cone_det(i) == 1; }
  bool is_smooth() const {
    return std::all_of(cone_dets_.begin(), cone_dets_.end(), [](const BigInt& d) { return d == 1; });
  }

  // D_i . D_j.
  const Rational& intersection(std::size_t i, std::size_t j) const { return matrix_[i * size() + j]; }

  const std::optional<MomentPolygon>& source() const { return source_; }

  // Same fan, ignoring the source polygon.
  friend bool operator==(const ToricSurface& a, const ToricSurface& b) { return a.rays_ == b.rays_; }

 private:
  // Adjacent divisors meet in 1/det; self-intersections follow from the
  // relation v_{i-1} / d_{i-1} + v_{i+1} / d_i = (det(v_{i-1}, v_{i+1}) / (d_{i-1} d_i)) v_i.
  void build_intersections() {
    const std::size_t n = size();
    matrix_.assign(n * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = next(i);
      Rational meet(BigInt(1), cone_dets_[i]);
      matrix_[i * n + j] += meet;
      matrix_[j * n + i] += meet;
    }
    // Three rays: every pair is adjacent once, so += above is exact.
    for (std::size_t i = 0; i < n; ++i) {
      const LatticeVector& a = rays_[prev(i)];
      const LatticeVector& c = rays_[next(i)];
      matrix_[i * n + i] = -Rational(det(a, c)) / Rational(cone_dets_[prev(i)] * cone_dets_[i]);
    }
  }

  std::vector<LatticeVector> rays_;
  std::vector<BigInt> cone_dets_;
  std::vector<Rational> matrix_;
  std::optional<MomentPolygon> source_;
};

// Coefficients on the rays of a surface, in ray order.
struct TorusDivisor {
  std::vector<Rational> coefficients;

  std::size_t size() const { return coefficients.size(); }
  const Rational& operator[](std::size_t i) const { return coefficients[i]; }
  Rational& operator[](std::size_t i) { return coefficients[i]; }

  bool is_integral() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& c) { return is_integer(c); });
  }

  friend bool operator==(const TorusDivisor& a, const TorusDivisor& b) { return a.coefficients == b.coefficients; }
  friend TorusDivisor operator+(TorusDivisor a, const TorusDivisor& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  }
  friend TorusDivisor operator-(TorusDivisor a, const TorusDivisor& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
  }
  friend TorusDivisor operator*(const Rational& s, TorusDivisor a) {
    for (auto& c : a.coefficients) c *= s;
    return a;
  }
};

inline std::string to_string(const TorusDivisor& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + to_string(d[i]);
  return out;
}

inline TorusDivisor make_divisor(std::initializer_list<Rational> c) { return {std::vector<Rational>(c)}; }

namespace detail {
inline void check_divisor(const ToricSurface& y, const TorusDivisor& d) {
  if (d.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "divisor length does not match ray count");
}
}  // namespace detail

inline TorusDivisor zero_divisor(const ToricSurface& y) { return {std::vector<Rational>(y.size(), Rational(0))}; }

inline TorusDivisor prime_divisor(const ToricSurface& y, std::size_t i) {
  TorusDivisor d = zero_divisor(y);
  d[i] = 1;
  return d;
}

// K_Y = -sum D_i.
inline TorusDivisor canonical_divisor(const ToricSurface& y) {
  return {std::vector<Rational>(y.size(), Rational(-1))};
}

// div(chi^m) = sum <m, v_i> D_i, linearly equivalent to zero.
inline TorusDivisor principal_divisor(const ToricSurface& y, const LatticeVector& m) {
  TorusDivisor d = zero_divisor(y);
  for (std::size_t i = 0; i < y.size(); ++i) d[i] = Rational(dot(m, y.ray(i)));
  return d;
}

inline ToricSurface build_surface(const MomentPolygon& p) {
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < p.size(); ++i) rays.push_back(p.inward_normal(i));
  return ToricSurface::from_rays(std::move(rays), p);
}

// A_P = sum a_F D_F with <u_F, x> = -a_F on edge F.
inline TorusDivisor associated_divisor(const MomentPolygon& p) {
  std::vector<std::pair<LatticeVector, Rational>> pairs;
  for (std::size_t i = 0; i < p.size(); ++i) pairs.emplace_back(p.inward_normal(i), p.support_number(i));
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return detail::angle_less(a.first, b.first); });
  TorusDivisor d;
  for (auto& [u, a] : pairs) d.coefficients.push_back(a);
  return d;
}

// D . D_i.
inline Rational dot_prime(const ToricSurface& y, const TorusDivisor& d, std::size_t i) {
  const std::size_t p = y.prev(i), n = y.next(i);
  Rational s = d[i] * y.intersection(i, i) + d[n] * y.intersection(n, i);
  if (p != n) s += d[p] * y.intersection(p, i);
  return s;
}

inline Rational intersect(const ToricSurface& y, const TorusDivisor& a, const TorusDivisor& b) {
  detail::check_divisor(y, a);
  detail::check_divisor(y, b);
  Rational s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (b[i] != 0) s += b[i] * dot_prime(y, a, i);
  }
  return s;
}

// I(D) = D . (D - K).
inline Rational index(const ToricSurface& y, const TorusDivisor& d) {
  detail::check_divisor(y, d);
  Rational s = intersect(y, d, d);
  for (std::size_t i = 0; i < y.size(); ++i) s += dot_prime(y, d, i);
  return s;
}

// P_D = { x : <v_i, x> >= -b_i for all i }, via pairwise line intersections.
inline ConvexRegion support_polytope(const ToricSurface& y, const TorusDivisor& d) {
  detail::check_divisor(y, d);
  const std::size_t n = y.size();
  std::vector<Point> corners;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const LatticeVector& a = y.ray(i);
      const LatticeVector& b = y.ray(j);
      BigInt dd = det(a, b);
      if (dd == 0) continue;
      Rational D(dd);
      Point p{(-d[i] * Rational(b.y) + d[j] * Rational(a.y)) / D, (-d[j] * Rational(a.x) + d[i] * Rational(b.x)) / D};
      bool inside = true;
      for (std::size_t k = 0; k < n && inside; ++k) inside = dot(y.ray(k), p) >= -d[k];
      if (inside) corners.push_back(std::move(p));
    }
  }
  return ConvexRegion::hull_of(std::move(corners));
}

inline BigInt h0(const ToricSurface& y, const TorusDivisor& d) { return support_polytope(y, d).lattice_count(); }

// Nef iff D . D_i >= 0 for every boundary curve; on a complete toric surface
// this is convexity of the support function across each ray, equivalently
// every supporting line of P_D touches P_D.
inline bool is_nef(const ToricSurface& y, const TorusDivisor& d) {
  detail::check_divisor(y, d);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (dot_prime(y, d, i) < 0) return false;
  }
  return true;
}

inline bool is_ample(const ToricSurface& y, const TorusDivisor& d) {
  detail::check_divisor(y, d);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (dot_prime(y, d, i) <= 0) return false;
  }
  return true;
}

// Some representative of the class has all coefficients >= 0, i.e. P_D holds
// a lattice point.
inline bool is_effective(const ToricSurface& y, const TorusDivisor& d) { return h0(y, d) > 0; }

inline Rational chi(const ToricSurface& y, const TorusDivisor& d) {
  if (y.is_smooth()) return 1 + index(y, d) / 2;
  if (is_nef(y, d)) return Rational(h0(y, d));
  throw Error(ErrorCode::SingularSurfaceChi, "Euler characteristic on a singular surface needs a nef divisor");
}

// Canonical coset representative modulo the principal divisors
// {(<m, v_i>)_i : m in Z^2}, via a Hermite basis of that rank-2 lattice.
struct DivisorClass {
  std::vector<Rational> representative;
  friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.representative == b.representative; }
};

inline DivisorClass divisor_class(const ToricSurface& y, const TorusDivisor& d) {
  detail::check_divisor(y, d);
  const std::size_t n = y.size();
  std::vector<BigInt> r0(n), r1(n);
  for (std::size_t i = 0; i < n; ++i) {
    r0[i] = y.ray(i).x;
    r1[i] = y.ray(i).y;
  }
  auto axpy = [n](std::vector<BigInt>& dst, const BigInt& q, const std::vector<BigInt>& src) {
    for (std::size_t i = 0; i < n; ++i) dst[i] -= q * src[i];
  };
  const std::size_t c0 = 0;
  while (r1[c0] != 0) {
    BigInt q = r0[c0] / r1[c0];
    axpy(r0, q, r1);
    std::swap(r0, r1);
  }
  if (r0[c0] < 0) {
    for (auto& v : r0) v = -v;
  }
  std::size_t c1 = 0;
  while (r1[c1] == 0) ++c1;
  if (r1[c1] < 0) {
    for (auto& v : r1) v = -v;
  }
  axpy(r0, floor_div(r0[c1], r1[c1]), r1);

  std::vector<Rational> b = d.coefficients;
  auto reduce = [&](const std::vector<BigInt>& row, std::size_t c) {
    BigInt q = toricap::floor(b[c] / Rational(row[c]));
    for (std::size_t i = 0; i < n; ++i) b[i] -= Rational(q * row[i]);
  };
  reduce(r0, c0);
  reduce(r1, c1);
  return {std::move(b)};
}

inline std::vector<std::size_t> minus_one_curves(const ToricSurface& y) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y.intersection(i, i) == -1 && y.cone_smooth(y.prev(i)) && y.cone_smooth(i)) out.push_back(i);
  }
  return out;
}

// Star subdivision of a smooth cone i, adding v_i + v_{i+1}.
inline ToricSurface blow_up(const ToricSurface& y, std::size_t cone) {
  if (!y.cone_smooth(cone)) throw Error(ErrorCode::InvalidArgument, "blow_up expects a smooth cone");
  auto rays = y.rays();
  rays.push_back(y.ray(cone) + y.ray(y.next(cone)));
  return ToricSurface::from_rays(std::move(rays));
}

inline ToricSurface blow_down(const ToricSurface& y, std::size_t i) {
  if (y.size() < 4 || y.intersection(i, i) != -1 || !y.cone_smooth(y.prev(i)) || !y.cone_smooth(i)) {
    throw Error(ErrorCode::NotContractible, "ray " + std::to_string(i) + " is not a contractible (-1)-curve");
  }
  auto rays = y.rays();
  rays.erase(rays.begin() + static_cast<std::ptrdiff_t>(i));
  return ToricSurface::from_rays(std::move(rays));
}

namespace detail {

// Rays strictly inside cone(u, v) on the boundary of the convex hull of its
// nonzero lattice points, in order from u to v.
inline std::vector<LatticeVector> hirzebruch_jung_rays(const LatticeVector& u, const LatticeVector& v) {
  const BigInt d = det(u, v);
  std::vector<LatticeVector> out;
  if (d == 1) return out;
  // Extended Euclid: s u.x + t u.y = 1, so w = (-t, s) has det(u, w) = 1.
  BigInt a = u.x, b = u.y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    BigInt q = floor_div(a, b);
    BigInt tmp = a - q * b;
    a = b;
    b = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (a < 0) {
    s0 = -s0;
    t0 = -t0;
  }
  LatticeVector w{-t0, s0};
  // v = alpha u + d w; shift w so that alpha lands in (-d, 0].
  BigInt alpha = det(v, w);
  w = w + ceil_div(alpha, d) * u;
  LatticeVector prev = u, cur = w;
  for (int guard = 0; !(cur == v); ++guard) {
    if (guard > 1000000) throw Error(ErrorCode::IterationLimit, "Hirzebruch-Jung expansion did not terminate");
    out.push_back(cur);
    BigInt b_j = ceil_div(det(prev, v), det(cur, v));
    LatticeVector nxt = b_j * cur - prev;
    prev = cur;
    cur = nxt;
  }
  return out;
}

}  // namespace detail

// Minimal resolution: Hirzebruch-Jung rays inserted into each singular cone.
inline ToricSurface resolve(const ToricSurface& y) {
  if (y.is_smooth()) return y;
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < y.size(); ++i) {
    rays.push_back(y.ray(i));
    for (auto& r : detail::hirzebruch_jung_rays(y.ray(i), y.ray(y.next(i)))) rays.push_back(std::move(r));
  }
  return ToricSurface::from_rays(std::move(rays));
}

// Pull-back along a refinement: the support function stays linear on each
// coarse cone.
inline TorusDivisor pullback(const ToricSurface& coarse, const TorusDivisor& d, const ToricSurface& fine) {
  detail::check_divisor(coarse, d);
  TorusDivisor out = zero_divisor(fine);
  for (std::size_t k = 0; k < fine.size(); ++k) {
    const LatticeVector& w = fine.ray(k);
    bool placed = false;
    for (std::size_t i = 0; i < coarse.size() && !placed; ++i) {
      const LatticeVector& a = coarse.ray(i);
      const LatticeVector& b = coarse.ray(coarse.next(i));
      if (w == a) {
        out[k] = d[i];
        placed = true;
      } else if (det(a, w) > 0 && det(w, b) > 0) {
        Rational cd(coarse.cone_det(i));
        out[k] = Rational(det(w, b)) / cd * d[i] + Rational(det(a, w)) / cd * d[coarse.next(i)];
        placed = true;
      }
    }
    if (!placed) throw Error(ErrorCode::InvalidArgument, "fine fan does not refine the coarse fan");
  }
  return out;
}

// Push-forward to a coarser fan: keep the coefficients of surviving rays.
inline TorusDivisor pushforward(const ToricSurface& fine, const TorusDivisor& d, const ToricSurface& coarse) {
  detail::check_divisor(fine, d);
  TorusDivisor out = zero_divisor(coarse);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    auto it = std::find(fine.rays().begin(), fine.rays().end(), coarse.ray(i));
    if (it == fine.rays().end()) throw Error(ErrorCode::InvalidArgument, "coarse ray missing from fine fan");
    out[i] = d[static_cast<std::size_t>(it - fine.rays().begin())];
  }
  return out;
}

namespace detail {

inline TorusDivisor ip_step(const ToricSurface& y, const TorusDivisor& d) {
  TorusDivisor out = d;
  for (std::size_t i = 0; i < y.size(); ++i) {
    Rational meet = dot_prime(y, d, i);
    if (meet >= 0) continue;
    const Rational& self = y.intersection(i, i);
    if (self >= 0) throw Error(ErrorCode::NotEffective, "negative intersection with a non-negative curve");
    out[i] -= Rational(toricap::ceil(meet / self));
  }
  return out;
}

inline void require_smooth_effective_integral(const ToricSurface& y, const TorusDivisor& d) {
  detail::check_divisor(y, d);
  if (!y.is_smooth()) throw Error(ErrorCode::SingularSurface, "surface must be smooth");
  if (!d.is_integral()) throw Error(ErrorCode::NotEffective, "divisor must be integral");
  if (!is_effective(y, d)) throw Error(ErrorCode::NotEffective, "divisor class has no effective representative");
}

}  // namespace detail

// D - sum over D.D_i < 0 of ceil(D.D_i / D_i^2) D_i.
inline TorusDivisor ip_transform(const ToricSurface& y, const TorusDivisor& d) {
  detail::require_smooth_effective_integral(y, d);
  return detail::ip_step(y, d);
}

// All iterates D, IP(D), IP^2(D), ... up to and including the nef fixed point.
inline std::vector<TorusDivisor> iterate_ip(const ToricSurface& y, const TorusDivisor& d) {
  detail::require_smooth_effective_integral(y, d);
  std::vector<TorusDivisor> steps{d};
  for (int it = 0; it < kIpIterationCap; ++it) {
    TorusDivisor next = detail::ip_step(y, steps.back());
    if (next == steps.back()) return steps;
    steps.push_back(std::move(next));
  }
  throw Error(ErrorCode::IterationLimit, "isoparametric iteration exceeded cap");
}

namespace detail {

inline TorusDivisor preferable_nef_rec(const ToricSurface& y, TorusDivisor d) {
  for (int it = 0; it < kIpIterationCap; ++it) {
    if (is_nef(y, d)) return d;
    for (std::size_t e : minus_one_curves(y)) {
      if (dot_prime(y, d, e) <= 0) {
        // D = pi^* Dbar + m E with m = -D.E >= 0; recurse downstairs.
        ToricSurface down = blow_down(y, e);
        TorusDivisor nef_down = preferable_nef_rec(down, pushforward(y, d, down));
        return pullback(down, nef_down, y);
      }
    }
    d = ip_step(y, d);
  }
  throw Error(ErrorCode::IterationLimit, "preferable nef construction exceeded cap");
}

}  // namespace detail

// Nef integral divisor with no larger pairing against any ample class and no
// smaller index. Blows down a (-1)-curve that D meets non-positively, else
// applies the isoparametric transform.
inline TorusDivisor preferable_nef(const ToricSurface& y, const TorusDivisor& d) {
  detail::check_divisor(y, d);
  if (!y.is_smooth()) throw Error(ErrorCode::SingularSurface, "preferable_nef needs a smooth surface");
  if (!d.is_integral() || !is_effective(y, d) || index(y, d) < 0) {
    throw Error(ErrorCode::NotInSW, "divisor is not effective with non-negative index");
  }
  return detail::preferable_nef_rec(y, d);
}

// Floors the coefficients, then moves each supporting line inward until it
// touches a lattice point of P_D. Same lattice points, pairing no larger.
inline TorusDivisor round_down_nef(const ToricSurface& y, const TorusDivisor& d) {
  if (!is_nef(y, d)) throw Error(ErrorCode::InvalidArgument, "round_down_nef expects a nef divisor");
  TorusDivisor floored = zero_divisor(y);
  for (std::size_t i = 0; i < y.size(); ++i) floored[i] = Rational(toricap::floor(d[i]));
  auto rows = support_polytope(y, floored).lattice_rows();
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "nef divisor has no lattice points to round to");
  TorusDivisor out = zero_divisor(y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const LatticeVector& v = y.ray(i);
    std::optional<BigInt> lowest;
    for (const auto& row : rows) {
      for (const BigInt* x : {&row.x_lo, &row.x_hi}) {
        BigInt s = v.x * *x + v.y * row.y;
        if (!lowest || s < *lowest) lowest = s;
      }
    }
    out[i] = Rational(-*lowest);
  }
  return out;
}

}  // namespace toricap
