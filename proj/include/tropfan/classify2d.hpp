#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tropfan/fan.hpp"
#include "tropfan/lattice.hpp"
#include "tropfan/product.hpp"
#include "tropfan/trfunction.hpp"

namespace tropfan {

/**
 * A pair of nonnegative piecewise-linear functions max(0, v_1..v_k) and
 * max(0, w_1..w_{n-k}) whose nonzero functionals are linearly independent,
 * stacked into an invertible matrix m.  All plane enumeration runs against
 * such a pair.
 */
struct ConventionPair {
  TRFunction t1, t2;
  IntMatrix m{0, 0};
  std::size_t k = 0;
  std::size_t n = 0;
};

/**
 * Validate the shape (leading zero functional on each side, independent
 * nonzero functionals filling the ambient dimension) and build the stacked
 * matrix.  Throws MalformedInputError on any violation.
 */
ConventionPair make_convention_pair(const TRFunction& t1, const TRFunction& t2);

/** The same pair with the roles of the two functions exchanged. */
ConventionPair swapped(const ConventionPair& p);

/** Intersection numbers (T1.T1, T1.T2, T2.T2) against a fixed 2-cycle. */
struct Profile {
  Int a = 0, b = 0, c = 0;
};

inline bool operator==(const Profile& x, const Profile& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c;
}
inline bool operator!=(const Profile& x, const Profile& y) {
  return !(x == y);
}

/**
 * The profile of the weight-1 plane spanned by g1, g2, computed exactly in
 * coordinates intrinsic to the saturated plane lattice.  The generators must
 * be linearly independent.
 */
Profile plane_profile(const ConventionPair& p, const LatticeVector& g1,
                      const LatticeVector& g2);

/** Which enumeration branch produced a candidate plane. */
enum class PlaneBranch {
  TwoLines,  // both restricted divisors are lines
  Curve,     // one restricted divisor is a trivalent curve
  OneSided,  // one function restricts linearly, the other self-intersects once
};

/**
 * A certified 2-plane candidate.  `span` is the canonical basis of the
 * saturated span (the deduplication key); the remaining fields record how
 * the plane was found and its exact profile.
 */
struct PlaneCandidate {
  std::vector<LatticeVector> span;
  PlaneBranch branch = PlaneBranch::TwoLines;
  bool swapped_roles = false;
  std::vector<std::size_t> a_set, b_set;  // two-lines patterns, 1-based
  std::vector<LatticeVector> triple;      // curve/one-sided rays r1, r2, r3
  Profile profile;
};

/**
 * Planes whose divisors under both functions are lines: solves the unit
 * value patterns (x_A, 0) and (0, x_B) through the pair matrix for all
 * nonempty index sets, keeps integral primitive rays, and filters to the
 * exact profile (0, 1, 0).  Output deduplicated and sorted by span.
 */
std::vector<PlaneCandidate> enumerate_planes_two_lines(const ConventionPair& p);

/**
 * Planes carrying a trivalent curve divisor: enumerates the finitely many
 * value tables forced by balancing (a nonempty support set on the curve
 * side, a two-part split of it, and the analogous data on the other side),
 * solves the three rays through the pair matrix, and keeps planes with
 * profile (1, 1, <=1).  The role-swapped enumeration runs as well, keeping
 * profile (<=1, 1, 1).
 */
std::vector<PlaneCandidate> enumerate_planes_curve(const ConventionPair& p);

/**
 * Planes on which the first function restricts linearly while the second
 * self-intersects once: value tables with the first-side rows all zero,
 * filtered to the exact profile (0, 0, 1).  Also sweeps the profiles
 * (0, 0, 0) and (1, 0, 1) over every enumeration branch and throws
 * StructureViolationError on a survivor; both sweeps are expected to come
 * back empty.
 */
std::vector<PlaneCandidate> enumerate_planes_one_sided(const ConventionPair& p);

/**
 * All candidate planes from every branch (no profile filter) whose
 * recomputed profile equals `target`.  Deduplicated and sorted by span.
 */
std::vector<PlaneCandidate> sweep_profile(const ConventionPair& p,
                                          const Profile& target);

/**
 * A 2-dimensional gallery: the facets sigma of f with
 * dim(span(sigma) + V(l1) cap V(l2)) = n.
 */
struct Gallery2D {
  TRFunction l1, l2;
  std::vector<std::size_t> facets;
};

/**
 * Compute the gallery of f over two binomials forming a regular sequence
 * (the double product must be 1, else NotRegularSequenceError).  Verifies
 * on every facet that the span criterion matches the product criterion
 * (the double product of the facet plane being 1), that gallery facets
 * carry weight 1, and that every ray of a gallery facet lies in exactly two
 * gallery facets; a mismatch throws StructureViolationError.
 */
Gallery2D gallery_2d(const WeightedFan& f, const TRFunction& l1,
                     const TRFunction& l2);

/** Facet monotonicity report; see facet_bound_check. */
struct FacetBoundReport {
  bool ok = true;
  Profile fan_profile;
  std::vector<Profile> facet_profiles;
  std::vector<std::string> violations;
};

/**
 * Check that every facet plane's profile is bounded componentwise by the
 * profile of the whole balanced 2-dimensional fan.
 */
FacetBoundReport facet_bound_check(const ConventionPair& p,
                                   const WeightedFan& f);

/**
 * Union of weight-1 planes as a fan: each plane is subdivided angularly
 * along its basis directions and every pairwise intersection line, the
 * pieces are glued, validated and checked for balancing.  Throws
 * UnbalancedError naming a failing ray and MalformedInputError for
 * duplicate or degenerate planes.  Distinct full planes overlap at most in
 * lines, so their union is itself a sum of plane cycles and balances.
 */
WeightedFan fan_from_planes(
    const std::vector<std::vector<LatticeVector>>& planes, std::size_t n);

/** One verified cycle from the plane-subset search. */
struct AssembledCycle {
  std::vector<std::size_t> plane_subset;  // indices into the pool
  WeightedFan fan;
  Profile profile;
  bool strongly_regular = false;
  bool hodge_counterexample = false;
  std::vector<std::string> gallery_coverage;  // per-facet witnesses
};

/** Output of assemble_strongly_regular. */
struct AssembleResult {
  std::vector<PlaneCandidate> pool;
  std::vector<AssembledCycle> cycles;
  std::vector<AssembledCycle> hodge_records;
};

/**
 * Desk-scale search for strongly regular 2-cycles: pools the certified
 * planes from every enumeration branch (both role orders), then tries every
 * subset of at most max_planes planes, keeping the balanced candidates with
 * T1.T2 = 1, T1.T1 <= 1, T2.T2 <= 1.  Each kept cycle carries a gallery
 * coverage certificate: every facet lies in the gallery of some binomial
 * pair drawn from the two functions.  Cycles with profile (1, 0, 1) are
 * recorded separately as Hodge-inequality counterexample shapes.  Throws
 * SearchBoundExceededError when the subset space is beyond desk scale.
 */
AssembleResult assemble_strongly_regular(const ConventionPair& p,
                                         std::size_t max_planes);

}  // namespace tropfan
