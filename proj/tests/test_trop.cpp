#include <doctest.h>

#include <algorithm>
#include <array>
#include <vector>

#include "tropfan/product.hpp"
#include "tropfan/trfunction.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace tropfan;

namespace {

WeightedFan b_tripod() {
  // balanced line with rays -e1, -e2, e1+e2
  return make_fan_1d(
      2, {LatticeVector{-1, 0}, LatticeVector{0, -1}, LatticeVector{1, 1}},
      {Int(1), Int(1), Int(1)});
}

LinearFunctional lf2(long long a, long long b) {
  return LinearFunctional{IntVec{Int(a), Int(b)}};
}

TRFunction fn(std::vector<std::vector<int>> rows) {
  std::vector<LinearFunctional> fs;
  for (auto& r : rows) {
    IntVec c;
    for (int x : r) c.push_back(Int(x));
    fs.push_back(LinearFunctional(std::move(c)));
  }
  return TRFunction(std::move(fs));
}

}  // namespace

TEST_CASE("normalize pins the smallest functional at zero") {
  TRFunction t = fn({{1, 0}, {1, 1}, {2, 0}});
  TRFunction m = normalize(t);
  bool has_zero = false;
  for (const auto& l : m.functionals)
    if (l.is_zero()) has_zero = true;
  CHECK(has_zero);
  // normalization subtracts one linear functional, so t - m is additive
  auto d = [&](const LatticeVector& v) { return t(v) - m(v); };
  LatticeVector e1{1, 0};
  LatticeVector e2{0, 1};
  CHECK(d(e1 + e2) == d(e1) + d(e2));
  CHECK(d(-e1) == -d(e1));
  CHECK(d(Int(3) * e1 + Int(-2) * e2) == Int(3) * d(e1) + Int(-2) * d(e2));
  CHECK(normalize(m) == m);
}

TEST_CASE("binomial constructors reject degenerate input") {
  CHECK_THROWS_AS(binomial(LinearFunctional{0, 0}), MalformedInputError);
  CHECK_THROWS_AS(
      binomial_pair(LinearFunctional{1, 0}, LinearFunctional{1, 0}),
      MalformedInputError);
  TRFunction b = binomial(LinearFunctional{2, -1});
  CHECK(b.functionals.size() == 2);
  CHECK(b(LatticeVector{1, 0}) == 2);
  CHECK(b(LatticeVector{-1, 0}) == 0);
}

TEST_CASE("newton vertices drop interior and repeated points") {
  TRFunction sq = fn({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}, {2, 0}});
  auto vs = newton_vertices(sq);
  CHECK(vs.size() == 4);
  CHECK(std::find(vs.begin(), vs.end(), LinearFunctional{1, 1}) == vs.end());
  for (auto p : {LinearFunctional{0, 0}, LinearFunctional{2, 0},
                 LinearFunctional{0, 2}, LinearFunctional{2, 2}})
    CHECK(std::find(vs.begin(), vs.end(), p) != vs.end());
}

TEST_CASE("newton membership agrees with a direct hull test") {
  gen::Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t k = 1 + rng() % 5;
    std::vector<LinearFunctional> fs;
    std::vector<std::array<Int, 2>> pts;
    for (std::size_t i = 0; i < k; ++i) {
      long long a = gen::rand_between(rng, -4, 4);
      long long b = gen::rand_between(rng, -4, 4);
      fs.push_back(lf2(a, b));
      pts.push_back({Int(a), Int(b)});
    }
    TRFunction t(fs);
    for (int q = 0; q < 8; ++q) {
      long long a = gen::rand_between(rng, -5, 5);
      long long b = gen::rand_between(rng, -5, 5);
      bool got = newton_contains(t, lf2(a, b));
      bool want = oracle::hull_contains_2d(pts, {Int(a), Int(b)});
      CHECK(got == want);
    }
  }
}

TEST_CASE("pointwise comparison through newton polytopes") {
  TRFunction small = fn({{0, 0}, {1, 0}});
  TRFunction big = fn({{0, 0}, {1, 0}, {0, 1}});
  CHECK(compare(small, big) == CompareResult::LE);
  CHECK(compare(big, small) == CompareResult::GE);
  CHECK(compare(big, big) == CompareResult::EQ);
  TRFunction other = fn({{0, 0}, {-1, 0}});
  CHECK(compare(big, other) == CompareResult::INCOMPARABLE);
  // equality is about the function, not the presentation
  TRFunction redundant = fn({{0, 0}, {1, 0}, {2, 0}});
  TRFunction plain = fn({{0, 0}, {2, 0}, {1, 0}});
  CHECK(compare(redundant, plain) == CompareResult::EQ);
}

TEST_CASE("newton faces of a triangle") {
  TRFunction tri = fn({{0, 0}, {1, 0}, {0, 1}});
  auto faces = newton_faces(tri);
  std::size_t edges = 0, cells = 0;
  for (const auto& f : faces) {
    if (f.face_dim == 1) {
      ++edges;
      CHECK(f.members.size() == 2);
    }
    if (f.face_dim == 2) {
      ++cells;
      CHECK(f.members.size() == 3);
    }
  }
  CHECK(edges == 3);
  CHECK(cells == 1);
}

TEST_CASE("hypersurface facets and weights") {
  Hypersurface h1 = hypersurface(fx::coord_max(3, {0}));
  REQUIRE(h1.facets.size() == 1);
  CHECK(h1.facets[0].weight == 1);
  CHECK(h1.facets[0].direction == LinearFunctional{1, 0, 0});

  Hypersurface h2 = hypersurface(fn({{0, 0, 0}, {2, 0, 0}}));
  REQUIRE(h2.facets.size() == 1);
  CHECK(h2.facets[0].weight == 2);

  Hypersurface h3 = hypersurface(fx::coord_max(2, {0, 1}));
  CHECK(h3.facets.size() == 3);
  for (const auto& f : h3.facets) CHECK(f.weight == 1);
}

TEST_CASE("degree of a function on a balanced line") {
  WeightedFan f = b_tripod();
  CHECK(product_1d(fx::coord_max(2, {0, 1}), f) == 1);
  CHECK(product_1d(fx::coord_max(2, {0}), f) == 1);
  CHECK(product_1d(binomial(LinearFunctional{1, -1}), f) == 1);
  CHECK(product_1d(fn({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), f) == 2);
  CHECK(product_1d(fn({{0, 0}, {2, 0}}), f) == 2);
  CHECK(product_1d(fn({{0, 0}, {1, 1}}), f) == 2);
  CHECK(product_1d(fn({{0, 0}}), f) == 0);
  // the correction term makes the value well defined without balancing
  WeightedFan open_ray = make_fan_1d(2, {LatticeVector{1, 0}}, {Int(1)});
  CHECK(product_1d(fx::coord_max(2, {0}), open_ray) == 0);
}

TEST_CASE("surface product slices the join fan correctly") {
  WeightedFan j = fx::join_fan();
  Product2D p1 = product_2d(fx::coord_max(3, {0}), j);
  WeightedFan vertical = make_fan_1d(
      3, {LatticeVector{0, 0, 1}, LatticeVector{0, 0, -1}}, {Int(1), Int(1)});
  CHECK(cycles_equal_1d(p1.cycle, vertical));

  Product2D p2 = product_2d(fx::coord_max(3, {2}), j);
  WeightedFan triangle = make_fan_1d(
      3,
      {LatticeVector{1, 0, 0}, LatticeVector{0, 1, 0}, LatticeVector{-1, -1, 0}},
      {Int(1), Int(1), Int(1)});
  CHECK(cycles_equal_1d(p2.cycle, triangle));

  WeightedFan half = make_fan_2d(
      3, {LatticeVector{1, 0, 0}, LatticeVector{0, 0, 1}}, {{0, 1}}, {Int(1)});
  CHECK_THROWS_AS(product_2d(fx::coord_max(3, {0}), half), UnbalancedError);
}

TEST_CASE("iterated numbers on the reference surfaces") {
  WeightedFan j = fx::join_fan();
  TRFunction m1 = fx::coord_max(3, {0});
  TRFunction m2 = fx::coord_max(3, {2});
  CHECK(intersection_number({m1, m1}, j) == 0);
  CHECK(intersection_number({m1, m2}, j) == 1);
  CHECK(intersection_number({m2, m1}, j) == 1);
  // m2 . j lies in the plane where m2 vanishes identically, so the square
  // drops to zero
  CHECK(intersection_number({m2, m2}, j) == 0);

  WeightedFan u = fx::plane_union_fan();
  TRFunction t1 = fx::coord_max(4, {0, 1});
  TRFunction t2 = fx::coord_max(4, {2, 3});
  CHECK(intersection_number({t1, t1}, u) == 1);
  CHECK(intersection_number({t1, t2}, u) == 0);
  CHECK(intersection_number({t2, t2}, u) == 1);
}

TEST_CASE("products ignore global linear shifts and commute") {
  gen::Rng rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 3 + rng() % 2;
    WeightedFan f = gen::random_balanced_2d(n, rng);
    TRFunction a = gen::random_function(n, rng);
    TRFunction b = gen::random_function(n, rng);
    IntVec sc;
    for (std::size_t i = 0; i < n; ++i)
      sc.push_back(Int(gen::rand_between(rng, -3, 3)));
    LinearFunctional shift(std::move(sc));
    CHECK(intersection_number({a, b}, f) == intersection_number({b, a}, f));
    CHECK(intersection_number({a, b}, f) ==
          intersection_number({shift_by(a, shift), b}, f));
  }
}

TEST_CASE("pullback composes values and satisfies the projection identity") {
  gen::Rng rng(91);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix m(2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        m.at(i, j) = Int(gen::rand_between(rng, -2, 2));
    TRFunction t = gen::random_function(2, rng);
    TRFunction pb = pullback(t, m);
    for (int q = 0; q < 5; ++q) {
      IntVec c;
      for (int j = 0; j < 3; ++j)
        c.push_back(Int(gen::rand_between(rng, -4, 4)));
      LatticeVector v(std::move(c));
      CHECK(pb(v) == t(m.apply(v)));
    }
    WeightedFan f = gen::random_balanced_2d(3, rng);
    TRFunction slicer = gen::random_function(3, rng);
    WeightedFan c1 = product_2d(slicer, f).cycle;
    if (!c1.rays.empty()) CHECK(projection_formula_check(m, t, c1));
  }
}

TEST_CASE("stable intersection agrees with the product on fixed fans") {
  WeightedFan j = fx::join_fan();
  TRFunction m2 = fx::coord_max(3, {2});
  WeightedFan st = stable_intersect_2d(m2, j, 5);
  CHECK(cycles_equal_1d(st, product_2d(m2, j).cycle));
  WeightedFan st2 = stable_intersect_2d(fx::coord_max(3, {0}), j, 6);
  CHECK(cycles_equal_1d(st2, product_2d(fx::coord_max(3, {0}), j).cycle));

  WeightedFan tri = b_tripod();
  CHECK(stable_intersect_0d(fx::coord_max(2, {0, 1}), tri, 7) == 1);
  CHECK(stable_intersect_0d(fn({{0, 0}, {1, 1}}), tri, 8) == 2);
}
