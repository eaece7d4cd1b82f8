#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "support.hpp"

using namespace toricap;
using namespace toricap::testing;

namespace {

const MomentPolygon kTriangle = poly({{0, 0}, {1, 0}, {0, 1}});
const MomentPolygon kSquare = poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}});

}  // namespace

TEST(Rational, ParsesAndPrints) {
  EXPECT_EQ(parse_rational("3/2"), q(3, 2));
  EXPECT_EQ(parse_rational("-4/6"), q(-2, 3));
  EXPECT_EQ(parse_rational("7"), q(7));
  EXPECT_EQ(to_string(q(6, 4)), "3/2");
  EXPECT_EQ(to_string(q(4, 2)), "2");
  EXPECT_EQ(to_decimal(q(2, 3)), "0.666667");
  EXPECT_EQ(to_decimal(q(-1, 8), 2), "-0.13");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_EQ(toricap::floor(q(-3, 2)), -2);
  EXPECT_EQ(toricap::ceil(q(-3, 2)), -1);
}

TEST(Area, Examples) {
  EXPECT_EQ(area(kTriangle), q(1, 2));
  EXPECT_EQ(area(kSquare), q(1));
  EXPECT_EQ(area(corner_chop(kSquare, 0, q(1, 2))), q(7, 8));
}

TEST(LatticeCount, Examples) {
  EXPECT_EQ(lattice_count(kTriangle), 3);
  EXPECT_EQ(lattice_count(scale(kTriangle, 2)), 6);
  EXPECT_EQ(lattice_count(poly({{0, 0}, {q(3, 2), 0}, {0, q(3, 2)}})), 3);
}

TEST(LatticeCount, DegenerateRegions) {
  EXPECT_EQ(ConvexRegion::hull_of({{q(1, 2), 0}}).lattice_count(), 0);
  EXPECT_EQ(ConvexRegion::hull_of({{1, 1}}).lattice_count(), 1);
  EXPECT_EQ(ConvexRegion::hull_of({{0, 0}, {3, 3}}).lattice_count(), 4);
  EXPECT_EQ(ConvexRegion::hull_of({{0, q(1, 2)}, {3, q(1, 2)}}).lattice_count(), 0);
}

TEST(MixedArea, Examples) {
  EXPECT_EQ(mixed_area(kTriangle, kTriangle), 2 * area(kTriangle));
  EXPECT_EQ(mixed_area(scale(kTriangle, 2), kTriangle), q(2));
  EXPECT_EQ(mixed_area(kSquare, poly({{0, 0}, {2, 0}, {2, 3}, {0, 3}})), q(5));
}

TEST(MixedArea, SymmetricAndHomogeneous) {
  std::vector<MomentPolygon> ps = smooth_corpus();
  for (const auto& a : ps) {
    for (const auto& b : ps) {
      EXPECT_EQ(mixed_area(a, b), mixed_area(b, a));
      EXPECT_EQ(mixed_area(scale(a, q(5, 3)), b), q(5, 3) * mixed_area(a, b));
    }
  }
}

TEST(LatticeWidth, Examples) {
  auto w = lattice_width(kSquare);
  EXPECT_EQ(w.width, 1);
  EXPECT_EQ(w.direction, (LatticeVector{1, 0}));
  w = lattice_width(scale(kTriangle, 2));
  EXPECT_EQ(w.width, 2);
  EXPECT_EQ(w.direction, (LatticeVector{1, 0}));
  for (long a2 : {1L, 2L, 5L, 10L}) {
    w = lattice_width(poly({{0, 0}, {q(3, 4), 0}, {q(3, 4), a2}, {0, a2}}));
    EXPECT_EQ(w.width, q(3, 4));
    EXPECT_EQ(w.direction, (LatticeVector{1, 0}));
  }
}

TEST(LatticeWidth, MatchesDirectSearch) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> c(0, 12);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Point> pts;
    for (int j = 0; j < 4; ++j) pts.push_back({q(c(rng), 2), q(c(rng), 3)});
    auto hull = convex_hull(pts);
    if (hull.size() < 3) continue;
    auto p = poly(hull);
    Rational best = width_along(p, {1, 0});
    for (long x = 0; x <= 40; ++x)
      for (long y = -40; y <= 40; ++y)
        if ((x > 0 || y > 0) && gcd(BigInt(x), BigInt(y)) == 1) best = min(best, width_along(p, {x, y}));
    EXPECT_EQ(lattice_width(p).width, best);
    EXPECT_EQ(width_along(p, lattice_width(p).direction), best);
  }
}

TEST(LatticeWidth, SkewDirection) {
  // Thin strip along the diagonal: width 1 in direction (1,-1), far more along the axes.
  auto p = poly({{0, 0}, {1, 0}, {6, 5}, {5, 5}});
  auto w = lattice_width(p);
  EXPECT_EQ(w.width, 1);
  EXPECT_EQ(w.direction, (LatticeVector{1, -1}));
}

TEST(SmoothVertices, Examples) {
  EXPECT_EQ(smooth_vertices(kTriangle).size(), 3u);
  auto p = poly({{0, 0}, {1, 0}, {0, 2}});
  auto s = smooth_vertices(p);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(p.vertex(s[0]), (Point{0, 0}));
  EXPECT_EQ(p.vertex(s[1]), (Point{0, 2}));
  EXPECT_EQ(smooth_vertices(scale(kTriangle, 2)).size(), 3u);
  EXPECT_TRUE(smooth_vertices(poly({{0, 0}, {2, 1}, {1, 2}})).empty());
}

TEST(Normalize, Examples) {
  auto n = normalize(kTriangle);
  EXPECT_EQ(n.polygon, kTriangle);
  EXPECT_EQ(n.map, UnimodularAffineMap::identity());

  auto shifted = poly({{1, 1}, {2, 1}, {1, 2}});
  n = normalize(shifted);
  EXPECT_EQ(n.polygon, kTriangle);
  EXPECT_EQ(n.map, UnimodularAffineMap::translation({-1, -1}));

  EXPECT_THROW(normalize(poly({{0, 0}, {2, 1}, {1, 2}})), Error);
}

TEST(Normalize, RoundTripAndCorner) {
  std::mt19937_64 rng(7);
  for (const auto& p : smooth_corpus()) {
    for (int i = 0; i < 5; ++i) {
      auto moved = apply(random_unimodular(rng), p);
      auto n = normalize(moved);
      EXPECT_EQ(apply(n.map.inverse(), n.polygon), moved);
      EXPECT_EQ(n.polygon.vertex(0), (Point{0, 0}));
      EXPECT_EQ(n.polygon.edge_direction(0), (LatticeVector{1, 0}));
      EXPECT_EQ(primitive_direction(n.polygon.vertex(0), n.polygon.prev(0)), (LatticeVector{0, 1}));
    }
  }
}

TEST(CornerChop, Examples) {
  auto c = corner_chop(kSquare, 0, q(1, 2));
  EXPECT_EQ(c, poly({{q(1, 2), 0}, {1, 0}, {1, 1}, {0, 1}, {0, q(1, 2)}}));
  for (const auto& p : smooth_corpus()) {
    for (std::size_t v = 0; v < p.size(); ++v) {
      Rational eps = q(1, 7);
      auto chopped = corner_chop(p, v, eps);
      EXPECT_EQ(chopped.size(), p.size() + 1);
      EXPECT_TRUE(contains(p, chopped));
    }
  }
  for (long d : {2L, 3L, 5L}) {
    EXPECT_EQ(area(kSquare) - area(corner_chop(kSquare, 2, q(1, d))), q(1, 2 * d * d));
  }
  EXPECT_THROW(corner_chop(kSquare, 0, q(1)), Error);
  EXPECT_THROW(corner_chop(kSquare, 0, q(0)), Error);
}

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(kTriangle, kTriangle));
  EXPECT_TRUE(contains(poly({{0, 0}, {2, 0}, {2, 3}, {0, 3}}), poly({{0, 0}, {1, 0}, {0, 2}})));
  EXPECT_FALSE(contains(kTriangle, kSquare));
  EXPECT_EQ(area(scale(kTriangle, 3)), q(9, 2));
  EXPECT_THROW(scale(kTriangle, 0), Error);
}

TEST(MinkowskiSum, Rectangles) {
  auto sum = minkowski_sum(kSquare, poly({{0, 0}, {2, 0}, {2, 3}, {0, 3}}));
  EXPECT_EQ(sum, poly({{0, 0}, {3, 0}, {3, 4}, {0, 4}}));
}

TEST(Polygon, CanonicalForm) {
  auto p = poly({{1, 1}, {0, 1}, {0, 0}, {1, 0}});
  EXPECT_EQ(p.vertex(0), (Point{0, 0}));
  EXPECT_EQ(p, kSquare);
}

TEST(Polygon, RejectsBadInput) {
  try {
    poly({{0, 0}, {1, 0}, {2, 0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConvex);
  }
  try {
    poly({{0, 0}, {1, 1}, {2, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroArea);
  }
  try {
    poly({{0, 0}, {0, 1}, {1, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConvex);
  }
}

// Pick: interior + boundary/2 - 1 = area for lattice polygons.
TEST(Invariants, Pick) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(0, 6);
  int tested = 0;
  while (tested < 200) {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({c(rng), c(rng)});
    auto hull = convex_hull(pts);
    if (hull.size() < 3) continue;
    auto p = poly(hull);
    BigInt total = lattice_count(p), boundary = boundary_lattice_count(p);
    EXPECT_EQ(Rational(total), area(p) + Rational(boundary, 2) + 1);
    ++tested;
  }
}

TEST(Invariants, UnimodularInvariance) {
  std::mt19937_64 rng(13);
  auto ps = smooth_corpus();
  ps.push_back(poly({{0, 0}, {1, 0}, {0, 2}}));
  ps.push_back(poly({{0, 0}, {q(5, 2), 0}, {1, q(3, 2)}}));
  for (int i = 0; i < 100; ++i) {
    const auto& p = ps[i % ps.size()];
    auto t = random_unimodular(rng);
    // Integer translations keep the lattice fixed; rational ones only preserve width.
    auto lin = UnimodularAffineMap(t.linear({1, 0}).x, t.linear({0, 1}).x, t.linear({1, 0}).y, t.linear({0, 1}).y,
                                   {toricap::floor(t.translation().x), toricap::floor(t.translation().y)});
    auto moved = apply(lin, p);
    EXPECT_EQ(lattice_count(moved), lattice_count(p));
    EXPECT_EQ(smooth_vertices(moved).size(), smooth_vertices(p).size());
    EXPECT_EQ(lattice_width(apply(t, p)).width, lattice_width(p).width);
    EXPECT_EQ(area(apply(t, p)), area(p));
  }
}

TEST(UnimodularMap, ComposeAndInvert) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    auto a = random_unimodular(rng), b = random_unimodular(rng);
    Point x{q(3, 5), q(-7, 2)};
    EXPECT_EQ(a.then(b)(x), b(a(x)));
    EXPECT_EQ(a.inverse()(a(x)), x);
    EXPECT_EQ(a.then(a.inverse()), UnimodularAffineMap::identity());
  }
  EXPECT_THROW(UnimodularAffineMap(2, 0, 0, 1), Error);
}

TEST(PolygonIO, ParsesFiles) {
  std::istringstream tri("0 0\n1 0\n0 1\n");
  EXPECT_EQ(parse_polygon(tri), kTriangle);
  std::istringstream rational("# comment\n3/2 0\n\n0 1\n0 0\n");
  EXPECT_EQ(parse_polygon(rational).vertex(1), (Point{q(3, 2), 0}));
  std::istringstream bad("0 0\n1 0\n1/x 1\n");
  try {
    parse_polygon(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream arity("0 0 0\n");
  EXPECT_THROW(parse_polygon(arity), ParseError);
  std::istringstream collinear("0 0\n1 0\n2 0\n1 1\n");
  try {
    parse_polygon(collinear);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConvex);
  }
}
