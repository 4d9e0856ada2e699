#pragma once

// Small concrete fans and function pairs reused across the test binaries.

#include <vector>

#include "tropfan/classify2d.hpp"
#include "tropfan/fan.hpp"
#include "tropfan/lattice.hpp"
#include "tropfan/trfunction.hpp"

namespace fx {

using namespace tropfan;

inline LinearFunctional unit_l(std::size_t n, std::size_t i) {
  IntVec c(n, Int(0));
  c[i] = 1;
  return LinearFunctional(std::move(c));
}

inline LatticeVector unit_v(std::size_t n, std::size_t i) {
  IntVec c(n, Int(0));
  c[i] = 1;
  return LatticeVector(std::move(c));
}

inline LinearFunctional zero_l(std::size_t n) {
  return LinearFunctional(IntVec(n, Int(0)));
}

/** max(0, x_i : i in idx) in R^n. */
inline TRFunction coord_max(std::size_t n, std::vector<std::size_t> idx) {
  std::vector<LinearFunctional> fs = {zero_l(n)};
  for (std::size_t i : idx) fs.push_back(unit_l(n, i));
  return TRFunction(std::move(fs));
}

/** Direct sum of two arrangement lines in complementary coordinate planes. */
inline WeightedFan two_line_sum() {
  std::vector<LatticeVector> rays = {
      LatticeVector{-1, 0, 0, 0}, LatticeVector{0, -1, 0, 0},
      LatticeVector{1, 1, 0, 0},  LatticeVector{0, 0, -1, 0},
      LatticeVector{0, 0, 0, -1}, LatticeVector{0, 0, 1, 1}};
  return make_fan_1d(4, rays, std::vector<Int>(6, Int(1)));
}

/** The 5-ray, 6-facet fan joining a triangle of rays to a vertical pair. */
inline WeightedFan join_fan() {
  std::vector<LatticeVector> rays = {LatticeVector{1, 0, 0},
                                     LatticeVector{0, 1, 0},
                                     LatticeVector{-1, -1, 0},
                                     LatticeVector{0, 0, 1},
                                     LatticeVector{0, 0, -1}};
  std::vector<std::vector<std::size_t>> cones = {{0, 3}, {0, 4}, {1, 3},
                                                 {1, 4}, {2, 3}, {2, 4}};
  return make_fan_2d(3, rays, cones, std::vector<Int>(6, Int(1)));
}

/** Union of the two complementary coordinate 2-planes of R^4. */
inline WeightedFan plane_union_fan() {
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < 4; ++i) rays.push_back(unit_v(4, i));
  for (std::size_t i = 0; i < 4; ++i) rays.push_back(-unit_v(4, i));
  std::vector<std::vector<std::size_t>> cones = {{0, 1}, {1, 4}, {4, 5}, {5, 0},
                                                 {2, 3}, {3, 6}, {6, 7}, {7, 2}};
  return make_fan_2d(4, rays, cones, std::vector<Int>(8, Int(1)));
}

/** max(0,x1,x2) and max(0,x3,x4) stacked over the standard basis of Z^4. */
inline ConventionPair standard_pair_r4() {
  return make_convention_pair(coord_max(4, {0, 1}), coord_max(4, {2, 3}));
}

}  // namespace fx
