#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "toricap/toricap.hpp"

namespace toricap::testing {

inline MomentPolygon poly(std::vector<Point> v) { return MomentPolygon::from_vertices(std::move(v)); }

inline Rational q(long n, long d = 1) { return Rational(n, d); }

inline std::filesystem::path corpus_dir() { return TORICAP_CORPUS; }

inline MomentPolygon corpus(const std::string& name) { return parse_polygon(corpus_dir() / (name + ".poly")); }

inline ConcaveDomain domain(const std::string& name) {
  return parse_concave(corpus_dir() / "domains" / (name + ".poly"));
}

// Polygons whose toric surfaces are smooth.
inline std::vector<std::string> smooth_corpus_names() {
  return {"triangle", "triangle_2", "square",       "rect_1x2",         "rect_2x3",
          "hirzebruch_1", "hirzebruch_2", "square_two_chops", "hexagon"};
}

inline std::vector<MomentPolygon> smooth_corpus() {
  std::vector<MomentPolygon> out;
  for (const auto& n : smooth_corpus_names()) out.push_back(corpus(n));
  return out;
}

// Word in the elementary shears, an optional reflection, and a rational translation.
inline UnimodularAffineMap random_unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> shear(-2, 2), coin(0, 1), tnum(-6, 6), tden(1, 3);
  UnimodularAffineMap t = UnimodularAffineMap::identity();
  for (int i = 0; i < 3; ++i) {
    t = t.then(UnimodularAffineMap(1, shear(rng), 0, 1));
    t = t.then(UnimodularAffineMap(1, 0, shear(rng), 1));
  }
  if (coin(rng)) t = t.then(UnimodularAffineMap(0, 1, 1, 0));
  return t.then(UnimodularAffineMap::translation({Rational(tnum(rng), tden(rng)), Rational(tnum(rng), tden(rng))}));
}

inline TorusDivisor divisor(std::initializer_list<long> c) {
  TorusDivisor d;
  for (long v : c) d.coefficients.emplace_back(v);
  return d;
}

// Rejection sampling over [0, hi]^n with coefficients in (1/den) Z.
inline TorusDivisor random_nef(const ToricSurface& y, std::mt19937_64& rng, long den = 1, long hi = 4) {
  std::uniform_int_distribution<long> c(0, hi * den);
  while (true) {
    TorusDivisor d;
    for (std::size_t i = 0; i < y.size(); ++i) d.coefficients.emplace_back(c(rng), den);
    if (is_nef(y, d)) return d;
  }
}

// Integral divisor with a lattice point in P_D, coefficients in [lo, hi].
inline TorusDivisor random_effective(const ToricSurface& y, std::mt19937_64& rng, long lo = -2, long hi = 4) {
  std::uniform_int_distribution<long> c(lo, hi);
  while (true) {
    TorusDivisor d;
    for (std::size_t i = 0; i < y.size(); ++i) d.coefficients.emplace_back(c(rng));
    if (is_effective(y, d)) return d;
  }
}

}  // namespace toricap::testing
