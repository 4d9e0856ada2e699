#include <doctest.h>

#include <algorithm>
#include <vector>

#include "tropfan/classify1d.hpp"
#include "tropfan/product.hpp"
#include "fixtures.hpp"

using namespace tropfan;

namespace {

WeightedFan mixed_fan() {
  // gallery tripod in the first two coordinates plus a weight-2 line
  return make_fan_1d(3,
                     {LatticeVector{-1, 0, 0}, LatticeVector{0, -1, 0},
                      LatticeVector{1, 1, 0}, LatticeVector{0, 0, 1},
                      LatticeVector{0, 0, -1}},
                     {Int(1), Int(1), Int(1), Int(2), Int(2)});
}

}  // namespace

TEST_CASE("gallery enumeration on a direct sum of two lines") {
  WeightedFan f = fx::two_line_sum();
  auto gs = find_galleries(f);
  REQUIRE(gs.size() == 6);
  for (const auto& g : gs) {
    CHECK(g.a < g.b);
    // defining evaluations
    CHECK(g.l(f.rays[g.a]) == 1);
    CHECK(g.l(f.rays[g.b]) == -1);
    for (std::size_t r = 0; r < f.rays.size(); ++r)
      if (r != g.a && r != g.b) CHECK(g.l(f.rays[r]) == 0);
  }
  // the functional of the pair (-e1, -e2)
  bool found = false;
  for (const auto& g : gs)
    if (g.a == 0 && g.b == 1) {
      found = true;
      CHECK(g.l == LinearFunctional{-1, 1, 0, 0});
    }
  CHECK(found);
}

TEST_CASE("gallery enumeration needs a spanning fan") {
  WeightedFan flat = make_fan_1d(
      3,
      {LatticeVector{-1, 0, 0}, LatticeVector{0, -1, 0}, LatticeVector{1, 1, 0}},
      {Int(1), Int(1), Int(1)});
  CHECK_THROWS_AS(find_galleries(flat), AmbientSpaceNotSpannedError);
}

TEST_CASE("canonical partition splits the rays into the two summands") {
  WeightedFan f = fx::two_line_sum();
  CanonicalPartition p = canonical_partition(f);
  REQUIRE(p.classes.size() == 2);
  CHECK(p.classes[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(p.classes[1] == std::vector<std::size_t>{3, 4, 5});
  CHECK(p.nongallery.empty());
  REQUIRE(p.class_galleries.size() == 2);
  CHECK(p.class_galleries[0].size() == 3);
  CHECK(p.class_galleries[1].size() == 3);
}

TEST_CASE("higher weights exclude rays from every gallery") {
  WeightedFan heavy = make_fan_1d(
      2, {LatticeVector{-1, 0}, LatticeVector{0, -1}, LatticeVector{1, 1}},
      {Int(2), Int(2), Int(2)});
  CHECK(find_galleries(heavy).empty());
  CanonicalPartition p = canonical_partition(heavy);
  CHECK(p.classes.empty());
  CHECK(p.nongallery == std::vector<std::size_t>{0, 1, 2});
  CHECK_THROWS_AS(minimal_model(heavy), NotRegularError);

  CanonicalPartition q = canonical_partition(mixed_fan());
  REQUIRE(q.classes.size() == 1);
  CHECK(q.classes[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(q.nongallery == std::vector<std::size_t>{3, 4});
}

TEST_CASE("pair functionals evaluate to the defining values") {
  WeightedFan f = fx::two_line_sum();
  CanonicalPartition p = canonical_partition(f);
  CHECK(pair_functional(p, 0, 0, 1) == LinearFunctional{-1, 1, 0, 0});
  CHECK(pair_functional(p, 0, 1, 0) == LinearFunctional{1, -1, 0, 0});
  CHECK(pair_functional(p, 0, 2, 0) == LinearFunctional{1, 0, 0, 0});
  CHECK(pair_functional(p, 1, 5, 3) == LinearFunctional{0, 0, 1, 0});
  CHECK_THROWS_AS(pair_functional(p, 0, 0, 3), RayNotInClassError);
  CHECK_THROWS_AS(pair_functional(p, 0, 0, 0), RayNotInClassError);
  CHECK_THROWS_AS(pair_functional(p, 1, 0, 1), RayNotInClassError);
}

TEST_CASE("class maximum function and its degree") {
  WeightedFan f = fx::two_line_sum();
  CanonicalPartition p = canonical_partition(f);
  TRFunction m = m_max(f, p, 0, 2);
  TRFunction want = fx::coord_max(4, {0, 1});
  CHECK(compare(m, want) == CompareResult::EQ);
  CHECK_THROWS_AS(m_max(f, p, 0, 4), RayNotInClassError);
  for (std::size_t c = 0; c < p.classes.size(); ++c)
    for (std::size_t i : p.classes[c])
      CHECK(product_1d(m_max(f, p, c, i), f) == 1);
}

TEST_CASE("multiplicity-one test reports the witness ray") {
  WeightedFan f = fx::two_line_sum();
  RegularityResult r = is_regular_function(f, fx::coord_max(4, {0, 1}));
  CHECK(r.regular);
  CHECK(r.value == 1);
  REQUIRE(r.witness_ray.has_value());
  CHECK(*r.witness_ray == 2);
  REQUIRE(r.class_id.has_value());
  CHECK(*r.class_id == 0);
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness_ray == r.witness->a);

  RegularityResult r2 = is_regular_function(f, fx::coord_max(4, {0}));
  CHECK(r2.regular);
  CHECK(*r2.witness_ray == 2);

  TRFunction dbl({fx::zero_l(4), LinearFunctional{2, 0, 0, 0}});
  RegularityResult r3 = is_regular_function(f, dbl);
  CHECK(!r3.regular);
  CHECK(r3.value == 2);

  RegularityResult r4 = is_regular_function(mixed_fan(), fx::coord_max(3, {2}));
  CHECK(!r4.regular);
  CHECK(r4.value == 2);
}

TEST_CASE("characterization by the class maximum") {
  WeightedFan f = fx::two_line_sum();
  CHECK(characterize_class_functions(f, 0, 2, fx::coord_max(4, {0})));
  CHECK(characterize_class_functions(f, 0, 2, fx::coord_max(4, {0, 1})));
  TRFunction over({fx::zero_l(4), LinearFunctional{1, 0, 0, 0},
                   LinearFunctional{0, 1, 0, 0}, LinearFunctional{1, 1, 0, 0}});
  CHECK(!characterize_class_functions(f, 0, 2, over));
  CHECK(!characterize_class_functions(f, 0, 2, fx::coord_max(4, {2})));
}

TEST_CASE("minimal model of the two-line sum") {
  WeightedFan f = fx::two_line_sum();
  MinimalModel mm = minimal_model(f);
  IntMatrix want = IntMatrix::from_rows(
      {LinearFunctional{1, -1, 0, 0}, LinearFunctional{1, 0, 0, 0},
       LinearFunctional{0, 0, 1, -1}, LinearFunctional{0, 0, 1, 0}});
  CHECK(mm.matrix == want);
  REQUIRE(mm.class_blocks.size() == 2);
  CHECK(mm.class_blocks[0] == std::make_pair(std::size_t{0}, std::size_t{2}));
  CHECK(mm.class_blocks[1] == std::make_pair(std::size_t{2}, std::size_t{4}));

  WeightedFan wantimg = make_fan_1d(
      4,
      {LatticeVector{-1, -1, 0, 0}, LatticeVector{1, 0, 0, 0},
       LatticeVector{0, 1, 0, 0}, LatticeVector{0, 0, -1, -1},
       LatticeVector{0, 0, 1, 0}, LatticeVector{0, 0, 0, 1}},
      std::vector<Int>(6, Int(1)));
  CHECK(cycles_equal_1d(mm.image, wantimg));

  BergmanSumResult bs = is_bergman_sum(mm.image);
  CHECK(bs.ok());
  CHECK(bs.groups.size() == 2);
}

TEST_CASE("direct sum recognition rejects a non-unimodular triple") {
  WeightedFan bad = make_fan_1d(
      2, {LatticeVector{1, 2}, LatticeVector{1, -1}, LatticeVector{-2, -1}},
      {Int(1), Int(1), Int(1)});
  BergmanSumResult bs = is_bergman_sum(bad);
  CHECK(!bs.ok());
  CHECK(bs.violation.find("unimodular") != std::string::npos);

  WeightedFan heavy =
      make_fan_1d(1, {LatticeVector{1}, LatticeVector{-1}}, {Int(2), Int(2)});
  CHECK(!is_bergman_sum(heavy).ok());
}

TEST_CASE("projections factor through the minimal model") {
  WeightedFan f = fx::two_line_sum();
  MinimalModel mm = minimal_model(f);

  IntMatrix psi = factor_projection(f, mm.matrix);
  CHECK(matmul(psi, mm.matrix) == mm.matrix);

  // forget the second summand
  IntMatrix drop = IntMatrix::from_rows(
      {LinearFunctional{1, -1, 0, 0}, LinearFunctional{1, 0, 0, 0}});
  IntMatrix psi2 = factor_projection(f, drop);
  CHECK(matmul(psi2, mm.matrix) == drop);

  // a map mixing the two classes in one fibre cannot factor
  IntMatrix mix(1, 4);
  mix.at(0, 0) = 1;
  mix.at(0, 2) = 1;
  CHECK_THROWS_AS(factor_projection(f, mix), Error);
}

TEST_CASE("lifting a product-one function to the model") {
  WeightedFan f = fx::two_line_sum();
  MinimalModel mm = minimal_model(f);
  TRFunction t = fx::coord_max(4, {0, 1});
  LiftResult lr = lift_function(f, t);
  CHECK(lr.class_id == 0);
  CHECK(lr.witness_ray == 2);
  CHECK(product_1d(lr.lifted, mm.image) == 1);
  CHECK(compare(pullback(lr.lifted, mm.matrix), normalize(t)) ==
        CompareResult::EQ);

  TRFunction t2 = fx::coord_max(4, {2});
  LiftResult lr2 = lift_function(f, t2);
  CHECK(lr2.class_id == 1);
  CHECK(compare(pullback(lr2.lifted, mm.matrix), normalize(t2)) ==
        CompareResult::EQ);

  TRFunction dbl({fx::zero_l(4), LinearFunctional{2, 0, 0, 0}});
  CHECK_THROWS_AS(lift_function(f, dbl), NotRegularFunctionError);
  TRFunction cross({fx::zero_l(4), LinearFunctional{1, 0, 0, 0},
                    LinearFunctional{0, 0, 1, 0}});
  CHECK_THROWS_AS(lift_function(f, cross), NotRegularFunctionError);
}

TEST_CASE("class span comparison flags rank-deficient classes") {
  WeightedFan apex = make_fan_1d(
      3,
      {LatticeVector{1, 0, 0}, LatticeVector{-1, 0, 0}, LatticeVector{0, 1, 0},
       LatticeVector{0, -1, 0}, LatticeVector{1, 1, 1},
       LatticeVector{-1, -1, -1}},
      std::vector<Int>(6, Int(1)));
  ClassSpanReport rep = check_class_spans(apex);
  CHECK(!rep.hypothesis_excluded);
  REQUIRE(rep.entries.size() == 3);
  for (const auto& e : rep.entries) {
    CHECK(e.expected_dim == 2);
    CHECK(e.computed_dim == 1);
    CHECK(!e.match);
  }

  // reducible fans are allowed to miss the count: each summand of the
  // two-line sum is a full tripod, three rays of rank two
  ClassSpanReport red = check_class_spans(fx::two_line_sum());
  CHECK(!red.hypothesis_excluded);
  REQUIRE(red.entries.size() == 2);
  for (const auto& e : red.entries) {
    CHECK(e.expected_dim == 3);
    CHECK(e.computed_dim == 2);
    CHECK(!e.match);
  }

  // an irreducible example: the class rays are independent because the
  // third ray carries the rest of the balancing weight
  WeightedFan shear = make_fan_1d(
      2, {LatticeVector{1, 0}, LatticeVector{-1, 2}, LatticeVector{0, -1}},
      {Int(1), Int(1), Int(2)});
  ClassSpanReport good = check_class_spans(shear);
  CHECK(!good.hypothesis_excluded);
  REQUIRE(good.entries.size() == 1);
  CHECK(good.entries.front().expected_dim == 2);
  CHECK(good.entries.front().computed_dim == 2);
  CHECK(good.entries.front().match);

  WeightedFan line =
      make_fan_1d(1, {LatticeVector{1}, LatticeVector{-1}}, {Int(1), Int(1)});
  ClassSpanReport excl = check_class_spans(line);
  CHECK(excl.hypothesis_excluded);
}

TEST_CASE("partition is stable under ray reordering") {
  WeightedFan f = fx::two_line_sum();
  std::vector<std::size_t> perm = {5, 3, 0, 4, 2, 1};
  std::vector<LatticeVector> rays;
  for (std::size_t i : perm) rays.push_back(f.rays[i]);
  WeightedFan g = make_fan_1d(4, rays, std::vector<Int>(6, Int(1)));
  CanonicalPartition pf = canonical_partition(f);
  CanonicalPartition pg = canonical_partition(g);
  REQUIRE(pg.classes.size() == pf.classes.size());
  // translate the permuted classes back to original labels and compare
  std::vector<std::vector<std::size_t>> back;
  for (const auto& cl : pg.classes) {
    std::vector<std::size_t> orig;
    for (std::size_t i : cl) orig.push_back(perm[i]);
    std::sort(orig.begin(), orig.end());
    back.push_back(orig);
  }
  std::sort(back.begin(), back.end());
  std::vector<std::vector<std::size_t>> expect = pf.classes;
  std::sort(expect.begin(), expect.end());
  CHECK(back == expect);
}
