#ifndef TROPFAN_FAN_HPP
#define TROPFAN_FAN_HPP

// Weighted rational fans of dimension 1 and 2: axiom validation, the
// balancing condition, refinement along a piecewise-linear function, and
// pushforward of 1-dimensional fans under integer linear maps.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tropfan/lattice.hpp"
#include "tropfan/trfunction.hpp"

namespace tropfan {

/**
 * A pure-dimensional weighted fan.  Top-dimensional cones are lists of ray
 * indices (1 index for dim 1, 2 indices for dim 2); lower faces are implied.
 * Weights are parallel to the cone list.  An empty cone list represents the
 * zero cycle of that dimension.
 */
struct WeightedFan {
  std::size_t n = 0;    // ambient dimension
  std::size_t dim = 0;  // pure dimension of the top cones, 1 or 2
  std::vector<LatticeVector> rays;
  std::vector<std::vector<std::size_t>> cones;
  std::vector<Int> weights;
};

/** 1-dimensional fan whose cones are exactly its rays, in order. */
WeightedFan make_fan_1d(std::size_t n, std::vector<LatticeVector> rays,
                        std::vector<Int> weights);

WeightedFan make_fan_2d(std::size_t n, std::vector<LatticeVector> rays,
                        std::vector<std::vector<std::size_t>> cones,
                        std::vector<Int> weights);

/**
 * Fan-axiom diagnostics; empty means the fan is well-formed: primitive
 * distinct rays, positive weights, strongly convex top cones, purity, and
 * pairwise intersections that are common faces.  Structural breakage (bad
 * indices, ragged data) is also reported here rather than thrown.
 */
std::vector<std::string> validate(const WeightedFan& f);

struct BalanceReport {
  bool balanced = true;
  std::vector<std::string> failures;  // one entry per violated face
};

/**
 * Balancing: in dim 1 the weighted primitive rays sum to zero; in dim 2 the
 * weighted sum of the cross-ray generators v_{sigma/tau} at each ray tau
 * lies on the line spanned by tau.
 */
BalanceReport check_balanced(const WeightedFan& f);

/**
 * Exact coordinates on the saturated lattice of a 2-plane.  Lattice points
 * of the plane have unique integer coordinates in the basis (b1, b2), and
 * vectors primitive in that basis are primitive in the ambient lattice.
 */
struct PlaneCoords {
  LatticeVector b1, b2;
  std::size_t pivot_i = 0, pivot_j = 0;  // coordinate rows with det != 0
  Int det;

  /** Plane coordinates of v, or empty if v is off the plane. */
  std::optional<std::array<Int, 2>> to_plane(const LatticeVector& v) const;
  LatticeVector to_ambient(const Int& x, const Int& y) const;
};

/** Coordinates for the plane spanned by independent vectors u, w. */
PlaneCoords plane_coords(const LatticeVector& u, const LatticeVector& w);

/**
 * A primitive vector of the cone spanned by (u, w) generating the quotient
 * of the plane lattice by the line lattice of u.  Deterministic choice.
 */
LatticeVector cross_ray_generator(const LatticeVector& u,
                                  const LatticeVector& w);

/**
 * Refine so the function is linear on every cone: each 2-cone is split at
 * the interior rays where the achieving-functional set of T changes.  For
 * dim 1 the fan is returned unchanged.  Output rays are sorted and cones
 * canonically ordered; weights are inherited.
 */
WeightedFan refine_by(const WeightedFan& f, const TRFunction& t);

/**
 * Image fan of a 1-dimensional fan under the integer linear map given by
 * the rows of m.  Rays mapping to zero are dropped; weights aggregate with
 * the integer stretch factor of the map on each ray.
 */
WeightedFan pushforward(const IntMatrix& m, const WeightedFan& f);

/** Indices of top cones containing the given ray. */
std::vector<std::size_t> cones_at_ray(const WeightedFan& f, std::size_t ray);

/**
 * Merge a list of (primitive ray, weight) pairs into a canonical
 * 1-dimensional fan: equal rays summed, zero weights dropped, rays sorted.
 * Negative accumulated weights throw NegativeWeight.
 */
WeightedFan merge_1d(std::size_t n,
                     const std::vector<std::pair<LatticeVector, Int>>& contrib,
                     bool allow_negative = false);

/** Equality of 1-cycles: same rays (after merging) with the same weights. */
bool cycles_equal_1d(const WeightedFan& a, const WeightedFan& b);

/**
 * The plane through u and w as a balanced weight-1 fan: the four quadrant
 * cones of its canonical saturated basis.  Independent of the choice of
 * generating pair.
 */
WeightedFan plane_fan(const LatticeVector& u, const LatticeVector& w);

}  // namespace tropfan

#endif
