#include <doctest.h>

#include <random>

#include "tropfan/lattice.hpp"
#include "oracles.hpp"

using namespace tropfan;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                        int bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.at(i, j) = Int(static_cast<long long>(rng() % (2 * bound + 1)) - bound);
  return m;
}

}  // namespace

TEST_CASE("determinant matches cofactor expansion") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = 2 + it % 4;  // 2..5
    IntMatrix m = random_matrix(rng, n, n, 9);
    CHECK(det(m) == oracle::det_cofactor(m));
  }
  CHECK(det(IntMatrix::identity(4)) == 1);
}

TEST_CASE("hermite form: H = U A with unimodular U and echelon shape") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 40; ++it) {
    std::size_t r = 1 + it % 4, c = 1 + (it / 3) % 4;
    IntMatrix a = random_matrix(rng, r, c, 6);
    if (a.is_zero()) continue;
    HermiteResult h = hermite_form(a);
    CHECK(matmul(h.u, a) == h.h);
    Int du = det(h.u);
    CHECK((du == 1 || du == -1));
    // echelon: pivot columns strictly increase, pivots positive, entries
    // above each pivot lie in [0, pivot)
    std::size_t last_pivot = 0;
    bool seen_zero_row = false;
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t j = 0;
      while (j < c && h.h.at(i, j) == 0) ++j;
      if (j == c) {
        seen_zero_row = true;
        continue;
      }
      CHECK(!seen_zero_row);
      if (i > 0) CHECK(j > last_pivot);
      last_pivot = j;
      CHECK(h.h.at(i, j) > 0);
      for (std::size_t i2 = 0; i2 < i; ++i2) {
        CHECK(h.h.at(i2, j) >= 0);
        CHECK(h.h.at(i2, j) < h.h.at(i, j));
      }
    }
  }
}

TEST_CASE("lattice index on spanning and defective families") {
  std::vector<LatticeVector> gens = {LatticeVector{1, 1, 0, 0},
                                     LatticeVector{0, 0, 1, 0},
                                     LatticeVector{2, 5, 0, -1},
                                     LatticeVector{1, 0, 0, 0}};
  auto idx = lattice_index(gens);
  REQUIRE(idx.has_value());
  CHECK(*idx == 1);

  CHECK(*lattice_index({LatticeVector{2}}) == 2);
  CHECK(*lattice_index({LatticeVector{1, 0}, LatticeVector{0, 2}}) == 2);
  CHECK(*lattice_index({LatticeVector{2, 0}, LatticeVector{0, 3},
                        LatticeVector{1, 1}}) == 1);
  CHECK(!lattice_index({LatticeVector{1, 0}}).has_value());
}

TEST_CASE("smith diagonal product equals absolute determinant") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 30; ++it) {
    std::size_t n = 2 + it % 3;
    IntMatrix m = random_matrix(rng, n, n, 5);
    Int d = det(m);
    if (d == 0) continue;
    Int prod = 1;
    for (const Int& s : smith_diagonal(m)) prod *= s;
    CHECK(abs(prod) == abs(d));
  }
}

TEST_CASE("dual solve distinguishes its failure modes") {
  // unique integral solution
  auto r = solve_dual({{LatticeVector{1, 0}, Int(3)},
                       {LatticeVector{0, 1}, Int(-2)}},
                      2);
  REQUIRE(r.ok());
  CHECK((*r.solution)[0] == 3);
  CHECK((*r.solution)[1] == -2);

  // rational but not integral
  auto ni = solve_dual({{LatticeVector{2, 0}, Int(1)},
                        {LatticeVector{0, 1}, Int(0)}},
                       2);
  CHECK(!ni.ok());
  CHECK(ni.failure == DualSolveFailure::NonIntegral);

  auto inc = solve_dual({{LatticeVector{1, 0}, Int(1)},
                         {LatticeVector{2, 0}, Int(3)}},
                        2);
  CHECK(!inc.ok());
  CHECK(inc.failure == DualSolveFailure::Inconsistent);

  auto ud = solve_dual({{LatticeVector{1, 1}, Int(1)}}, 2);
  CHECK(!ud.ok());
  CHECK(ud.failure == DualSolveFailure::Underdetermined);
}

TEST_CASE("kernel basis is a basis of the saturated kernel") {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 40; ++it) {
    std::size_t r = 1 + it % 3, c = 2 + it % 4;
    IntMatrix a = random_matrix(rng, r, c, 4);
    std::vector<LatticeVector> kb = kernel_basis(a);
    for (const auto& v : kb) CHECK(a.apply(v).is_zero());
    CHECK(rank(IntMatrix::from_row_vectors(kb)) == kb.size());
    CHECK(kb.size() == c - rank(a));
    if (kb.empty()) continue;
    // same lattice as the canonical saturation of its span
    std::vector<LatticeVector> sat = saturated_span_basis(kb, c);
    REQUIRE(sat.size() == kb.size());
    for (const auto& v : kb)
      CHECK(integer_coords_in_span(v, sat).has_value());
    for (const auto& v : sat)
      CHECK(integer_coords_in_span(v, kb).has_value());
  }
}

TEST_CASE("saturated span basis is canonical in the span") {
  auto b1 = saturated_span_basis({LatticeVector{2, 4}}, 2);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0] == LatticeVector{1, 2});

  auto ba = saturated_span_basis(
      {LatticeVector{1, 0, 1}, LatticeVector{0, 1, 1}}, 3);
  auto bb = saturated_span_basis(
      {LatticeVector{1, 1, 2}, LatticeVector{1, -1, 0}}, 3);
  CHECK(ba == bb);
}

TEST_CASE("integer coordinates in a span") {
  std::vector<LatticeVector> basis = {LatticeVector{2, 0, 0},
                                      LatticeVector{0, 1, 0}};
  auto c = integer_coords_in_span(LatticeVector{2, 5, 0}, basis);
  REQUIRE(c.has_value());
  CHECK((*c)[0] == 1);
  CHECK((*c)[1] == 5);
  CHECK(!integer_coords_in_span(LatticeVector{1, 0, 0}, basis).has_value());
  CHECK(!integer_coords_in_span(LatticeVector{0, 0, 1}, basis).has_value());
  CHECK_THROWS_AS(
      integer_coords_in_span(LatticeVector{1, 1},
                             {LatticeVector{1, 0}, LatticeVector{2, 0}}),
      MalformedInputError);
}

TEST_CASE("primitive representatives") {
  CHECK(primitive(LatticeVector{2, 4, 6}) == LatticeVector{1, 2, 3});
  CHECK(primitive(LatticeVector{0, -3}) == LatticeVector{0, -1});
  CHECK_THROWS_AS(primitive(LatticeVector{0, 0}), ZeroVectorError);
}
