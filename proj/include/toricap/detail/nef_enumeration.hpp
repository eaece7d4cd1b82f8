#pragma once

// Machine-integer view of a toric surface for the branch-and-bound scans.
// Everything is scaled to integers once; any value that would not fit is
// rejected up front with ErrorCode::Overflow.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "toricap/error.hpp"
#include "toricap/rational.hpp"
#include "toricap/toric.hpp"

namespace toricap::detail {

using i64 = std::int64_t;

// Coefficients and ray coordinates stay below this, so products of three
// such numbers cannot overflow.
inline constexpr i64 kKernelLimit = i64{1} << 20;

inline i64 floor_div64(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i64 ceil_div64(i64 a, i64 b) { return -floor_div64(-a, b); }

struct IntFan {
  std::size_t n = 0;
  std::vector<i64> rx, ry;
  std::vector<i64> dets;  // det(v_i, v_{i+1})
  // det(v_{i-1}, v_i) det(v_i, v_{i+1}) D . D_i = lc_i b_{i-1} + mc_i b_i + rc_i b_{i+1}
  std::vector<i64> lc, mc, rc;
  std::vector<i64> weight;  // weight_scale * w_i
  BigInt weight_scale = 1;

  IntFan(const ToricSurface& y, const std::vector<Rational>& weights) : n(y.size()) {
    for (const auto& w : weights) weight_scale = lcm(weight_scale, den(w));
    for (std::size_t i = 0; i < n; ++i) {
      rx.push_back(bounded(y.ray(i).x));
      ry.push_back(bounded(y.ray(i).y));
      dets.push_back(bounded(y.cone_det(i)));
      weight.push_back(to_int64(num(weights[i] * weight_scale)));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t p = prev(i), q = next(i);
      lc.push_back(dets[i]);
      mc.push_back(-bounded(rx[p] * ry[q] - ry[p] * rx[q]));
      rc.push_back(dets[p]);
    }
  }

  std::size_t next(std::size_t i) const { return i + 1 == n ? 0 : i + 1; }
  std::size_t prev(std::size_t i) const { return i == 0 ? n - 1 : i - 1; }

  // Positive multiple of D . D_i; three-ray fans have every pair adjacent,
  // which the prev/next formula already covers.
  i64 scaled_dot_prime(const std::vector<i64>& b, std::size_t i) const {
    return lc[i] * b[prev(i)] + mc[i] * b[i] + rc[i] * b[next(i)];
  }

  i64 objective(const std::vector<i64>& b) const {
    i64 s = 0;
    for (std::size_t i = 0; i < n; ++i) s += weight[i] * b[i];
    return s;
  }

  // Lattice points of P_D for an integral nef D. Its vertices are the cone
  // points, which bound the rows.
  i64 count_nef_lattice_points(const std::vector<i64>& b) const {
    i64 y_lo = std::numeric_limits<i64>::max(), y_hi = std::numeric_limits<i64>::min();
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = next(i);
      i64 numer = -b[j] * rx[i] + b[i] * rx[j];
      y_lo = std::min(y_lo, ceil_div64(numer, dets[i]));
      y_hi = std::max(y_hi, floor_div64(numer, dets[i]));
    }
    i64 count = 0;
    for (i64 y = y_lo; y <= y_hi; ++y) {
      i64 lo = std::numeric_limits<i64>::min(), hi = std::numeric_limits<i64>::max();
      bool empty = false;
      for (std::size_t i = 0; i < n && !empty; ++i) {
        i64 rhs = -b[i] - ry[i] * y;  // rx_i * x >= rhs
        if (rx[i] > 0) {
          lo = std::max(lo, ceil_div64(rhs, rx[i]));
        } else if (rx[i] < 0) {
          hi = std::min(hi, floor_div64(rhs, rx[i]));
        } else if (rhs > 0) {
          empty = true;
        }
      }
      if (!empty && lo <= hi) count += hi - lo + 1;
    }
    return count;
  }

 private:
  static i64 bounded(const BigInt& v) {
    i64 x = to_int64(v);
    if (x > kKernelLimit || x < -kKernelLimit) throw Error(ErrorCode::Overflow, "fan data too large for kernel");
    return x;
  }
};

// Visits every integral nef support vector b >= 0 with objective(b) <= budget.
// With a smooth cone p available, b_p = b_{p+1} = 0 pins the cone's vertex of
// P_D at the origin, giving exactly one representative per class. Without
// one, every representative with the origin in P_D is visited.
template <class Visit>
void enumerate_nef(const IntFan& fan, i64 budget, Visit&& visit) {
  const std::size_t n = fan.n;
  std::vector<std::size_t> order;
  std::vector<bool> fixed(n, false);
  std::optional<std::size_t> pinned;
  for (std::size_t i = 0; i < n; ++i) {
    if (fan.dets[i] != 1) continue;
    if (!pinned || fan.weight[i] + fan.weight[fan.next(i)] < fan.weight[*pinned] + fan.weight[fan.next(*pinned)]) {
      pinned = i;
    }
  }
  if (pinned) {
    fixed[*pinned] = fixed[fan.next(*pinned)] = true;
    for (std::size_t s = 2; s < n; ++s) order.push_back((*pinned + s) % n);
  } else {
    for (std::size_t i = 0; i < n; ++i) order.push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!fixed[i] && budget / fan.weight[i] > kKernelLimit) {
      throw Error(ErrorCode::Overflow, "search box too large for kernel");
    }
  }

  std::vector<i64> b(n, 0);
  std::vector<bool> known = fixed;
  // Rays whose nef condition becomes checkable once order[t] is set.
  auto ready = [&](std::size_t ray) { return known[fan.prev(ray)] && known[ray] && known[fan.next(ray)]; };

  auto rec = [&](auto&& self, std::size_t t, i64 spent) -> void {
    if (t == order.size()) {
      visit(static_cast<const std::vector<i64>&>(b));
      return;
    }
    const std::size_t idx = order[t];
    i64 lo = 0;
    // Nef at idx - 1 bounds b_idx from below once its other neighbours are set.
    const std::size_t left = fan.prev(idx);
    if (known[left] && known[fan.prev(left)]) {
      i64 partial = fan.lc[left] * b[fan.prev(left)] + fan.mc[left] * b[left];
      lo = std::max<i64>(lo, ceil_div64(-partial, fan.rc[left]));
    }
    const i64 hi = (budget - spent) / fan.weight[idx];
    known[idx] = true;
    for (i64 v = lo; v <= hi; ++v) {
      b[idx] = v;
      bool ok = true;
      for (std::size_t ray : {fan.prev(idx), idx, fan.next(idx)}) {
        if (ready(ray) && fan.scaled_dot_prime(b, ray) < 0) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, t + 1, spent + v * fan.weight[idx]);
    }
    known[idx] = false;
    b[idx] = 0;
  };
  if (budget >= 0) rec(rec, 0, 0);
}

}  // namespace toricap::detail
