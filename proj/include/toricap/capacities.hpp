#pragma once

// Algebraic capacities of toric surfaces, ECH capacities of toric domains,
// embedding verdicts and width estimates.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string_view>
#include <utility>
#include <vector>

#include "toricap/detail/nef_enumeration.hpp"
#include "toricap/error.hpp"
#include "toricap/lattice.hpp"
#include "toricap/rational.hpp"
#include "toricap/toric.hpp"

namespace toricap {

// ---------------------------------------------------------------------------
// Algebraic capacities

struct CalgTable {
  std::vector<Rational> values;           // index k = 0..K
  std::vector<TorusDivisor> optimizers;   // lexicographically smallest support vector
  ToricSurface surface;
};

namespace detail {

// Smallest D.A over round-downs of tA with at least `need` lattice points.
inline Rational initial_incumbent(const MomentPolygon& p, const ToricSurface& y, const TorusDivisor& a,
                                  std::size_t need) {
  for (long t = 1;; ++t) {
    if (lattice_count(scale(p, Rational(t))) < need) continue;
    TorusDivisor d = round_down_nef(y, Rational(t) * a);
    return intersect(y, d, a);
  }
}

inline bool lex_less(const std::vector<i64>& a, const std::vector<i64>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

// c^alg_k for every k <= K in a single enumeration.
inline CalgTable calg_table(const MomentPolygon& p, std::size_t K) {
  ToricSurface y = build_surface(p);
  TorusDivisor a = associated_divisor(p);
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < y.size(); ++i) weights.push_back(dot_prime(y, a, i));

  CalgTable out{{Rational(0)}, {zero_divisor(y)}, y};
  if (K == 0) return out;

  detail::IntFan fan(y, weights);
  Rational upper = detail::initial_incumbent(p, y, a, K + 1);
  auto budget = to_int64(num(upper * fan.weight_scale));

  const std::size_t cap = K + 1;
  const auto none = std::numeric_limits<detail::i64>::max();
  std::vector<detail::i64> best(cap + 1, none);
  std::vector<std::vector<detail::i64>> arg(cap + 1);

  detail::enumerate_nef(fan, budget, [&](const std::vector<detail::i64>& b) {
    detail::i64 value = fan.objective(b);
    auto h = static_cast<std::size_t>(std::min<detail::i64>(fan.count_nef_lattice_points(b), cap));
    if (value < best[h] || (value == best[h] && detail::lex_less(b, arg[h]))) {
      best[h] = value;
      arg[h] = b;
    }
  });

  // Suffix minimum: c_k uses every divisor with at least k+1 sections.
  detail::i64 run = none;
  std::vector<detail::i64> run_arg;
  std::vector<Rational> values(cap);
  std::vector<TorusDivisor> opts(cap);
  for (std::size_t h = cap; h >= 2; --h) {
    if (best[h] < run || (best[h] == run && best[h] != none && detail::lex_less(arg[h], run_arg))) {
      run = best[h];
      run_arg = arg[h];
    }
    if (run == none) throw Error(ErrorCode::InvalidArgument, "enumeration missed the incumbent");
    values[h - 1] = Rational(BigInt(run), fan.weight_scale);
    TorusDivisor d;
    for (auto c : run_arg) d.coefficients.emplace_back(c);
    opts[h - 1] = std::move(d);
  }
  for (std::size_t k = 1; k <= K; ++k) {
    out.values.push_back(values[k]);
    out.optimizers.push_back(opts[k]);
  }
  return out;
}

inline Rational calg(const MomentPolygon& p, std::size_t k) { return calg_table(p, k).values[k]; }

// ---------------------------------------------------------------------------
// Capacity sequences

enum class Provenance { Alg, EchEllipsoid, EchConvex, EchConcave };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Alg: return "ALG";
    case Provenance::EchEllipsoid: return "ECH_ELLIPSOID";
    case Provenance::EchConvex: return "ECH_CONVEX";
    case Provenance::EchConcave: return "ECH_CONCAVE";
  }
  return "UNKNOWN";
}

// Lazily extended table k -> value. Readers share the lock; a miss recomputes
// the prefix up to a doubled horizon under the exclusive lock.
class CapacitySequence {
 public:
  using Evaluator = std::function<std::vector<Rational>(std::size_t horizon)>;

  CapacitySequence(Provenance provenance, Evaluator evaluator)
      : state_(std::make_shared<State>()) {
    state_->provenance = provenance;
    state_->evaluate = std::move(evaluator);
  }

  Provenance provenance() const { return state_->provenance; }

  Rational operator()(std::size_t k) const { return prefix(k)[k]; }

  std::vector<Rational> prefix(std::size_t horizon) const {
    {
      std::shared_lock lock(state_->mutex);
      if (state_->memo.size() > horizon) {
        return {state_->memo.begin(), state_->memo.begin() + static_cast<std::ptrdiff_t>(horizon) + 1};
      }
    }
    std::unique_lock lock(state_->mutex);
    if (state_->memo.size() <= horizon) {
      std::size_t target = std::max(horizon, 2 * state_->memo.size());
      state_->memo = state_->evaluate(target);
    }
    return {state_->memo.begin(), state_->memo.begin() + static_cast<std::ptrdiff_t>(horizon) + 1};
  }

 private:
  struct State {
    Provenance provenance{};
    Evaluator evaluate;
    mutable std::shared_mutex mutex;
    std::vector<Rational> memo;
  };
  std::shared_ptr<State> state_;
};

inline CapacitySequence alg_sequence(const MomentPolygon& p) {
  return {Provenance::Alg, [p](std::size_t horizon) { return calg_table(p, horizon).values; }};
}

// ---------------------------------------------------------------------------
// Ellipsoids

// N(a,b)_0..K: the sorted values a m + b n with multiplicity.
inline std::vector<Rational> ech_ellipsoid_sequence(const Rational& a, const Rational& b, std::size_t K) {
  if (a <= 0 || b <= 0) throw Error(ErrorCode::InvalidArgument, "ellipsoid parameters must be positive");
  std::vector<Rational> all;
  all.reserve((K + 1) * (K + 1));
  for (std::size_t m = 0; m <= K; ++m) {
    for (std::size_t n = 0; n <= K; ++n) all.push_back(a * m + b * n);
  }
  std::sort(all.begin(), all.end());
  all.resize(K + 1);
  return all;
}

inline Rational ech_ellipsoid(const Rational& a, const Rational& b, std::size_t k) {
  return ech_ellipsoid_sequence(a, b, k)[k];
}

inline CapacitySequence ellipsoid_sequence(const Rational& a, const Rational& b) {
  return {Provenance::EchEllipsoid, [a, b](std::size_t horizon) { return ech_ellipsoid_sequence(a, b, horizon); }};
}

// ---------------------------------------------------------------------------
// Convex domains

// Smooth corner at the origin with both incident edges along the positive axes.
inline bool is_convex_domain(const MomentPolygon& p) {
  const Point origin{0, 0};
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.vertex(i).x < 0 || p.vertex(i).y < 0) return false;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.vertex(i) != origin) continue;
    return p.next(i).y == 0 && p.prev(i).x == 0;
  }
  return false;
}

// Strictly inside the open quadrant.
inline bool is_free_polygon(const MomentPolygon& p) {
  return std::all_of(p.vertices().begin(), p.vertices().end(), [](const Point& v) { return v.x > 0 && v.y > 0; });
}

inline void require_domain_polygon(const MomentPolygon& p) {
  if (!is_convex_domain(p) && !is_free_polygon(p)) {
    throw Error(ErrorCode::NotDomainPolygon, "polygon is neither a convex domain nor free");
  }
}

inline Rational ech_convex(const MomentPolygon& p, std::size_t k) {
  require_domain_polygon(p);
  return calg(p, k);
}

inline CapacitySequence convex_sequence(const MomentPolygon& p) {
  require_domain_polygon(p);
  return {Provenance::EchConvex, [p](std::size_t horizon) { return calg_table(p, horizon).values; }};
}

// ---------------------------------------------------------------------------
// Concave domains

inline constexpr std::size_t kWeightCap = 100000;

// Region between the axes and the graph of a convex, strictly decreasing,
// piecewise-linear function from (0,b) to (a,0).
class ConcaveDomain {
 public:
  // Graph vertices from (0,b) to (a,0).
  static ConcaveDomain from_graph(std::vector<Point> graph) {
    if (graph.size() < 2) throw Error(ErrorCode::NotConcave, "graph needs two endpoints");
    if (graph.front().x != 0 || graph.front().y <= 0 || graph.back().y != 0 || graph.back().x <= 0) {
      throw Error(ErrorCode::NotConcave, "graph must run from the positive y-axis to the positive x-axis");
    }
    for (std::size_t i = 0; i + 1 < graph.size(); ++i) {
      if (graph[i + 1].x <= graph[i].x || graph[i + 1].y >= graph[i].y) {
        throw Error(ErrorCode::NotConcave, "graph is not strictly decreasing");
      }
    }
    for (std::size_t i = 1; i + 1 < graph.size(); ++i) {
      if (cross(graph[i - 1], graph[i], graph[i + 1]) <= 0) {
        throw Error(ErrorCode::NotConcave, "graph is not strictly convex at vertex " + to_string(graph[i]));
      }
    }
    ConcaveDomain d;
    d.graph_ = std::move(graph);
    return d;
  }

  // Counterclockwise region vertices (0,0), (a,0), ..., (0,b), in any rotation.
  static ConcaveDomain from_vertices(std::vector<Point> ccw) {
    const Point origin{0, 0};
    auto it = std::find(ccw.begin(), ccw.end(), origin);
    if (it == ccw.end()) throw Error(ErrorCode::NotConcave, "region must have a corner at the origin");
    std::rotate(ccw.begin(), it, ccw.end());
    if (ccw.size() < 3) throw Error(ErrorCode::NotConcave, "region needs at least three vertices");
    return from_graph(std::vector<Point>(ccw.rbegin(), ccw.rend() - 1));
  }

  static ConcaveDomain triangle(const Rational& a, const Rational& b) {
    return from_graph({{Rational(0), b}, {a, Rational(0)}});
  }

  const std::vector<Point>& graph() const { return graph_; }
  const Rational& x_extent() const { return graph_.back().x; }
  const Rational& y_extent() const { return graph_.front().y; }
  bool is_triangle() const { return graph_.size() == 2; }

  std::vector<Point> region_vertices() const {
    std::vector<Point> out{{0, 0}};
    out.insert(out.end(), graph_.rbegin(), graph_.rend());
    return out;
  }

  ConcaveDomain scaled(const Rational& s) const {
    if (s <= 0) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
    std::vector<Point> g;
    for (const auto& v : graph_) g.push_back(s * v);
    return from_graph(std::move(g));
  }

  // Weight expansion: the largest ball triangle x + y <= w under the graph,
  // then the two leftover pieces, each sheared back into a concave domain.
  std::vector<Rational> weights(std::size_t cap = kWeightCap) const {
    std::vector<Rational> out;
    std::vector<std::vector<Point>> stack{graph_};
    while (!stack.empty()) {
      std::vector<Point> g = std::move(stack.back());
      stack.pop_back();
      if (out.size() >= cap) throw Error(ErrorCode::IterationLimit, "weight expansion exceeds cap");
      Rational w = g.front().x + g.front().y;
      for (const auto& v : g) w = min(w, v.x + v.y);
      out.push_back(w);
      std::size_t lo = g.size(), hi = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].x + g[i].y == w) {
          lo = std::min(lo, i);
          hi = std::max(hi, i);
        }
      }
      std::vector<Point> right;
      for (std::size_t i = hi; i < g.size(); ++i) right.push_back({g[i].x + g[i].y - w, g[i].y});
      if (right.size() >= 2 && right.front().y > 0 && right.back().x > 0) stack.push_back(std::move(right));
      std::vector<Point> left;
      for (std::size_t i = 0; i <= lo; ++i) left.push_back({g[i].x, g[i].x + g[i].y - w});
      if (left.size() >= 2 && left.front().y > 0 && left.back().x > 0) stack.push_back(std::move(left));
    }
    return out;
  }

 private:
  std::vector<Point> graph_;
};

// c_0..K of the ball B(w): w d with d minimal such that d(d+3)/2 >= k.
inline std::vector<Rational> ech_ball_sequence(const Rational& w, std::size_t K) {
  std::vector<Rational> out;
  std::size_t d = 0;
  for (std::size_t k = 0; k <= K; ++k) {
    while (d * (d + 3) / 2 < k) ++d;
    out.push_back(w * d);
  }
  return out;
}

// Disjoint union of balls: max over splittings k = k_1 + ... + k_n.
inline std::vector<Rational> ech_concave_sequence(const ConcaveDomain& d, std::size_t K) {
  std::vector<Rational> acc(K + 1, Rational(0));
  bool first = true;
  for (const auto& w : d.weights()) {
    std::vector<Rational> ball = ech_ball_sequence(w, K);
    if (first) {
      acc = std::move(ball);
      first = false;
      continue;
    }
    std::vector<Rational> next(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
      Rational best = acc[k];
      for (std::size_t j = 1; j <= k; ++j) {
        Rational v = acc[k - j] + ball[j];
        if (v > best) best = std::move(v);
      }
      next[k] = std::move(best);
    }
    acc = std::move(next);
  }
  return acc;
}

inline Rational ech_concave(const ConcaveDomain& d, std::size_t k) { return ech_concave_sequence(d, k)[k]; }

inline CapacitySequence concave_sequence(const ConcaveDomain& d) {
  return {Provenance::EchConcave, [d](std::size_t horizon) { return ech_concave_sequence(d, horizon); }};
}

// ---------------------------------------------------------------------------
// Embeddings and widths

enum class VerdictStatus { Obstructed, CompatibleUpToK };

struct EmbeddingVerdict {
  VerdictStatus status{};
  std::size_t horizon = 0;
  std::optional<std::size_t> witness;  // least failing k
  Rational ech_value;                  // at the witness
  Rational alg_value;
};

inline std::string_view to_string(VerdictStatus s) {
  return s == VerdictStatus::Obstructed ? "OBSTRUCTED" : "COMPATIBLE_UP_TO_K";
}

inline void require_smooth_vertex(const MomentPolygon& p) {
  if (smooth_vertices(p).empty()) throw Error(ErrorCode::NoSmoothVertex, "target polygon has no smooth vertex");
}

inline EmbeddingVerdict embedding_verdict(const ConcaveDomain& delta, const MomentPolygon& omega, std::size_t K) {
  require_smooth_vertex(omega);
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be at least 1");
  std::vector<Rational> alg = calg_table(omega, K).values;
  std::vector<Rational> ech = ech_concave_sequence(delta, K);
  EmbeddingVerdict v{VerdictStatus::CompatibleUpToK, K, std::nullopt, Rational(0), Rational(0)};
  for (std::size_t k = 1; k <= K; ++k) {
    if (ech[k] > alg[k]) {
      v.status = VerdictStatus::Obstructed;
      v.witness = k;
      v.ech_value = ech[k];
      v.alg_value = alg[k];
      break;
    }
  }
  return v;
}

struct XiWidth {
  Rational estimate;
  std::size_t argmin = 0;  // least k attaining the estimate
  bool stable = false;     // already attained within the first half of the horizon
  std::size_t horizon = 0;
};

inline XiWidth xi_width(const MomentPolygon& omega, const ConcaveDomain& xi, std::size_t K) {
  require_smooth_vertex(omega);
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be at least 1");
  std::vector<Rational> alg = calg_table(omega, K).values;
  std::vector<Rational> ech = ech_concave_sequence(xi, K);
  XiWidth out;
  out.horizon = K;
  for (std::size_t k = 1; k <= K; ++k) {
    Rational r = alg[k] / ech[k];
    if (out.argmin == 0 || r < out.estimate) {
      out.estimate = r;
      out.argmin = k;
    }
  }
  out.stable = out.argmin <= std::max<std::size_t>(1, (K + 1) / 2);
  return out;
}

inline XiWidth gromov_width(const MomentPolygon& omega, std::size_t K) {
  return xi_width(omega, ConcaveDomain::triangle(1, 1), K);
}

struct WidthBound {
  XiWidth gromov;
  LatticeWidth lattice;
  bool holds = false;
};

inline WidthBound width_bound_check(const MomentPolygon& omega, std::size_t K) {
  WidthBound out{gromov_width(omega, K), lattice_width(omega), false};
  out.holds = out.gromov.estimate <= out.lattice.width;
  return out;
}

}  // namespace toricap
