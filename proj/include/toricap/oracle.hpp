#pragma once

// Brute-force verifiers. Nothing here shares code with the pruned kernel:
// candidates are all of [0, box]^n, nef is tested on every ray and lattice
// points are counted by scanning a bounding box.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <thread>
#include <vector>

#include "toricap/capacities.hpp"
#include "toricap/error.hpp"
#include "toricap/lattice.hpp"
#include "toricap/rational.hpp"
#include "toricap/toric.hpp"

namespace toricap {

namespace oracle_detail {

using i64 = std::int64_t;


// Integer data for one surface: full intersection matrix times `scale`,
// rays, and per-ray objective weights times `wscale`.
struct Frame {
  std::size_t n = 0;
  std::vector<std::vector<i64>> m;
  i64 scale = 1;
  std::vector<i64> vx, vy;
  std::vector<i64> w;
  BigInt wscale = 1;
  // Corner decomposition of -e for e = +x, -x, +y, -y: -e = al v_i + be v_j.
  struct Corner {
    std::size_t i, j;
    Rational al, be;
  };
  std::vector<Corner> corners;

  Frame(const ToricSurface& y, const std::vector<Rational>& weights) : n(y.size()) {
    BigInt s = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s = lcm(s, den(y.intersection(i, j)));
    scale = to_int64(s);
    m.assign(n, std::vector<i64>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = to_int64(num(y.intersection(i, j) * s));
    for (const auto& x : weights) wscale = lcm(wscale, den(x));
    for (std::size_t i = 0; i < n; ++i) {
      vx.push_back(to_int64(y.ray(i).x));
      vy.push_back(to_int64(y.ray(i).y));
      w.push_back(to_int64(num(weights[i] * wscale)));
    }
    const LatticeVector dirs[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    for (const auto& d : dirs) {
      bool found = false;
      for (std::size_t i = 0; i < n && !found; ++i) {
        std::size_t j = (i + 1) % n;
        BigInt dt = det(y.ray(i), y.ray(j));
        Rational al(det(d, y.ray(j)), dt), be(det(y.ray(i), d), dt);
        if (al >= 0 && be >= 0) {
          corners.push_back({i, j, al, be});
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::InvalidArgument, "fan is not complete");
    }
  }

  i64 dot_prime(const std::vector<i64>& b, std::size_t i) const {
    i64 s = 0;
    for (std::size_t j = 0; j < n; ++j) s += b[j] * m[j][i];
    return s;
  }

  bool nef(const std::vector<i64>& b) const {
    for (std::size_t i = 0; i < n; ++i)
      if (dot_prime(b, i) < 0) return false;
    return true;
  }

  i64 objective(const std::vector<i64>& b) const {
    i64 s = 0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * b[i];
    return s;
  }

  // Lattice points m with <m, v_i> >= -b_i for all i.
  i64 count(const std::vector<i64>& b) const {
    i64 bound[4];
    for (int c = 0; c < 4; ++c) {
      const auto& k = corners[c];
      bound[c] = to_int64(floor(k.al * b[k.i] + k.be * b[k.j]));
    }
    i64 cnt = 0;
    for (i64 x = -bound[1]; x <= bound[0]; ++x) {
      for (i64 yy = -bound[3]; yy <= bound[2]; ++yy) {
        bool in = true;
        for (std::size_t i = 0; i < n && in; ++i) in = vx[i] * x + vy[i] * yy >= -b[i];
        if (in) ++cnt;
      }
    }
    return cnt;
  }
};

// Per-bucket incumbent: minimum value, lexicographically smallest vector
// attaining it, and whether some minimizer stays off the box boundary.
struct Slot {
  i64 value = std::numeric_limits<i64>::max();
  std::vector<i64> arg;
  bool interior = false;

  void offer(i64 v, const std::vector<i64>& b, bool inside) {
    if (v < value) {
      value = v;
      arg = b;
      interior = inside;
    } else if (v == value) {
      if (b < arg) arg = b;
      interior = interior || inside;
    }
  }
  void merge(const Slot& o) {
    if (o.value == std::numeric_limits<i64>::max()) return;
    if (o.value < value) {
      *this = o;
    } else if (o.value == value) {
      if (o.arg < arg) arg = o.arg;
      interior = interior || o.interior;
    }
  }
};

// Calls visit(local_slots, b) for every b in [0, box]^n, splitting the first
// coordinate across threads; slot tables are merged afterwards, so the result
// does not depend on the thread count.
template <class Visit>
std::vector<Slot> scan_box(std::size_t n, int box, std::size_t slots, unsigned threads, Visit visit) {
  if (box < 0) throw Error(ErrorCode::InvalidArgument, "box must be nonnegative");
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(box + 1)));
  std::vector<std::vector<Slot>> local(threads, std::vector<Slot>(slots));
  auto work = [&](unsigned tid) {
    std::vector<i64> b(n, 0);
    for (i64 first = tid; first <= box; first += threads) {
      b.assign(n, 0);
      b[0] = first;
      while (true) {
        visit(local[tid], static_cast<const std::vector<i64>&>(b));
        std::size_t pos = 1;
        while (pos < n && b[pos] == box) b[pos++] = 0;
        if (pos >= n) break;
        ++b[pos];
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  std::vector<Slot> out(slots);
  for (const auto& l : local)
    for (std::size_t s = 0; s < slots; ++s) out[s].merge(l[s]);
  return out;
}

inline bool off_boundary(const std::vector<i64>& b, int box) {
  return std::none_of(b.begin(), b.end(), [box](i64 c) { return c == box; });
}

inline std::vector<Rational> surface_weights(const ToricSurface& y, const TorusDivisor& a) {
  std::vector<Rational> w;
  for (std::size_t i = 0; i < y.size(); ++i) w.push_back(dot_prime(y, a, i));
  return w;
}

inline TorusDivisor to_divisor(const std::vector<i64>& b) {
  TorusDivisor d;
  for (auto c : b) d.coefficients.emplace_back(c);
  return d;
}

// Suffix minima over buckets k..K for each k; BoxTooSmall when a minimum is
// missing or every minimizer touches the box.
inline void finish(const std::vector<Slot>& buckets, const BigInt& wscale, std::size_t K, std::size_t n,
                   std::vector<Rational>& values, std::vector<TorusDivisor>& optimizers) {
  values.assign(K + 1, Rational(0));
  optimizers.assign(K + 1, TorusDivisor{std::vector<Rational>(n, Rational(0))});
  Slot run;
  for (std::size_t k = K; k >= 1; --k) {
    run.merge(buckets[k]);
    if (run.value == std::numeric_limits<i64>::max()) {
      throw Error(ErrorCode::BoxTooSmall, "no candidate in the box reaches k = " + std::to_string(k));
    }
    if (!run.interior) {
      throw Error(ErrorCode::BoxTooSmall, "every minimizer for k = " + std::to_string(k) + " touches the box");
    }
    values[k] = Rational(BigInt(run.value), wscale);
    optimizers[k] = to_divisor(run.arg);
  }
}

}  // namespace oracle_detail

struct OracleTable {
  std::vector<Rational> values;  // k = 0..K
  std::vector<TorusDivisor> optimizers;
};

// Exhaustive c^alg: every nef vector in [0, box]^n, no pruning.
inline OracleTable brute_calg_table(const MomentPolygon& p, std::size_t K, int box, unsigned threads = 1) {
  using namespace oracle_detail;
  ToricSurface y = build_surface(p);
  Frame f(y, surface_weights(y, associated_divisor(p)));
  auto buckets = scan_box(f.n, box, K + 1, threads, [&](std::vector<Slot>& slots, const std::vector<i64>& b) {
    if (!f.nef(b)) return;
    i64 h = f.count(b);
    if (h < 1) return;
    auto k = static_cast<std::size_t>(std::min<i64>(h - 1, static_cast<i64>(K)));
    slots[k].offer(f.objective(b), b, off_boundary(b, box));
  });
  OracleTable out;
  finish(buckets, f.wscale, K, f.n, out.values, out.optimizers);
  return out;
}

inline Rational brute_calg(const MomentPolygon& p, std::size_t k, int box) {
  return brute_calg_table(p, k, box).values[k];
}

struct SwTable {
  std::vector<Rational> values;  // k = 0..K
  std::vector<TorusDivisor> optimizers;
  std::vector<std::size_t> optimal_classes;  // distinct classes attaining each minimum
  bool certificates_ok = true;               // preferable_nef witnesses for every optimal class
};

// Infimum of D.A over effective integral D in [0, box]^n with I(D) >= 2k,
// membership in SW by I(D) >= 0.
inline SwTable sw_infimum_table(const MomentPolygon& p, std::size_t K, int box, unsigned threads = 1) {
  using namespace oracle_detail;
  ToricSurface y = build_surface(p);
  if (!y.is_smooth()) throw Error(ErrorCode::SingularSurface, "Seiberg-Witten oracle needs a smooth surface");
  TorusDivisor a = associated_divisor(p);
  Frame f(y, surface_weights(y, a));
  auto index_of = [&](const std::vector<i64>& b) {
    i64 s = 0;
    for (std::size_t i = 0; i < f.n; ++i) {
      i64 d = f.dot_prime(b, i);
      s += d * b[i] + d;
    }
    return s;  // scale * I(D); scale is 1 on smooth surfaces
  };
  auto buckets = scan_box(f.n, box, K + 1, threads, [&](std::vector<Slot>& slots, const std::vector<i64>& b) {
    i64 idx = index_of(b);
    if (idx < 0) return;
    auto k = static_cast<std::size_t>(std::min<i64>(idx / (2 * f.scale), static_cast<i64>(K)));
    slots[k].offer(f.objective(b), b, off_boundary(b, box));
  });
  SwTable out;
  finish(buckets, f.wscale, K, f.n, out.values, out.optimizers);

  // Second pass: collect every optimal vector and group by class.
  std::vector<i64> target(K + 1);
  for (std::size_t k = 0; k <= K; ++k) target[k] = to_int64(num(out.values[k] * f.wscale));
  std::vector<std::map<std::vector<Rational>, std::vector<i64>>> classes(K + 1);
  std::vector<i64> b(f.n, 0);
  while (true) {
    i64 idx = index_of(b);
    if (idx >= 0) {
      i64 v = f.objective(b);
      auto top = std::min<i64>(idx / (2 * f.scale), static_cast<i64>(K));
      for (std::size_t k = 0; k <= static_cast<std::size_t>(top); ++k) {
        if (v != target[k]) continue;
        auto cls = divisor_class(y, to_divisor(b)).representative;
        classes[k].emplace(std::move(cls), b);
      }
    }
    std::size_t pos = 0;
    while (pos < f.n && b[pos] == box) b[pos++] = 0;
    if (pos >= f.n) break;
    ++b[pos];
  }
  for (std::size_t k = 0; k <= K; ++k) {
    out.optimal_classes.push_back(classes[k].size());
    for (const auto& [cls, vec] : classes[k]) {
      TorusDivisor d = to_divisor(vec);
      TorusDivisor nef = preferable_nef(y, d);
      if (!is_nef(y, nef) || intersect(y, nef, a) > intersect(y, d, a) || index(y, nef) < index(y, d)) {
        out.certificates_ok = false;
      }
    }
  }
  return out;
}

inline Rational sw_infimum(const MomentPolygon& p, std::size_t k, int box) {
  return sw_infimum_table(p, k, box).values[k];
}

struct SwNefRow {
  std::size_t k = 0;
  Rational sw;
  Rational calg;
  bool equal = false;
  std::size_t classes = 0;
};

struct SwNefReport {
  std::vector<SwNefRow> rows;
  bool certificates_ok = true;
  bool all_equal() const {
    return std::all_of(rows.begin(), rows.end(), [](const SwNefRow& r) { return r.equal; });
  }
};

inline SwNefReport sw_equals_nef(const MomentPolygon& p, std::size_t k_max, int box, unsigned threads = 1) {
  SwTable sw = sw_infimum_table(p, k_max, box, threads);
  CalgTable alg = calg_table(p, k_max);
  SwNefReport out;
  out.certificates_ok = sw.certificates_ok;
  for (std::size_t k = 0; k <= k_max; ++k) {
    out.rows.push_back({k, sw.values[k], alg.values[k], sw.values[k] == alg.values[k], sw.optimal_classes[k]});
  }
  return out;
}

}  // namespace toricap
