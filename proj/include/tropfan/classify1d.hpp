#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tropfan/fan.hpp"
#include "tropfan/lattice.hpp"
#include "tropfan/trfunction.hpp"

namespace tropfan {

/**
 * A gallery on a one-dimensional fan: an integral functional taking value 1
 * on ray a, -1 on ray b and 0 on every other ray.  Both rays carry weight 1.
 * find_galleries emits each gallery once, with a < b; the reversed gallery
 * is (-l, b, a).
 */
struct Gallery1D {
  LinearFunctional l;
  std::size_t a = 0;
  std::size_t b = 0;
};

/**
 * Grouping of the rays of a one-dimensional fan by the gallery relation.
 * Two rays sharing a gallery always lie in a common class, and within a
 * class every ordered ray pair has a gallery, so `class_galleries[c]`
 * contains one entry per unordered member pair.
 *
 * `classes` are sorted internally and ordered by smallest member;
 * `nongallery` lists the rays in no gallery at all.
 */
struct CanonicalPartition {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> nongallery;
  std::vector<std::vector<Gallery1D>> class_galleries;
};

/**
 * All galleries of a one-dimensional fan whose rays span the ambient space.
 * Throws AmbientSpaceNotSpannedError otherwise.  Output is sorted by (a, b).
 */
std::vector<Gallery1D> find_galleries(const WeightedFan& f);

/** Partition the rays of f into gallery classes. */
CanonicalPartition canonical_partition(const WeightedFan& f);

/**
 * The functional valued 1 on ray a and -1 on ray b, both members of class
 * `class_id`.  Throws RayNotInClassError when either ray is outside the
 * class or a == b.
 */
LinearFunctional pair_functional(const CanonicalPartition& p,
                                 std::size_t class_id, std::size_t a,
                                 std::size_t b);

/**
 * The largest function cutting out ray i with multiplicity one:
 * max(0, l_{i,j} : j in the class of i, j != i).
 * Throws RayNotInClassError when i is not a member of class `class_id`.
 */
TRFunction m_max(const WeightedFan& f, const CanonicalPartition& p,
                 std::size_t class_id, std::size_t i);

/** Outcome of testing a function for product 1 against a fan. */
struct RegularityResult {
  bool regular = false;
  Int value = 0;
  std::optional<std::size_t> witness_ray;
  std::optional<std::size_t> class_id;
  std::optional<Gallery1D> witness;
};

/**
 * Decide whether t cuts multiplicity one out of the balanced fan f, and if
 * so report the unique ray where the normalized function is positive
 * together with a gallery at that ray dominated by the function.
 */
RegularityResult is_regular_function(const WeightedFan& f, const TRFunction& t);

/**
 * Whether the normalization of t lies below (or equals) the class maximum
 * m_max for ray i, which characterizes the functions with product 1
 * concentrated at that ray.
 */
bool characterize_class_functions(const WeightedFan& f, std::size_t class_id,
                                  std::size_t i, const TRFunction& t);

/**
 * The projection onto the gallery classes together with its image fan.
 * Row block [class_blocks[c].first, class_blocks[c].second) corresponds to
 * the members of class c other than its representative (the smallest
 * member), in increasing order.
 */
struct MinimalModel {
  IntMatrix matrix{0, 0};
  WeightedFan image;
  std::vector<std::pair<std::size_t, std::size_t>> class_blocks;
};

/**
 * Compute the minimal model of a balanced one-dimensional fan whose rays span
 * the ambient space.  Throws NotRegularError when the fan has no gallery
 * classes, StructureViolationError when the image fails the expected direct
 * sum shape.
 */
MinimalModel minimal_model(const WeightedFan& f);

/**
 * Decomposition of a one-dimensional fan into summands that are unimodular
 * images of hyperplane-arrangement fans, or a reason why none exists.
 */
struct BergmanSumResult {
  std::vector<std::vector<std::size_t>> groups;
  std::string violation;
  bool ok() const { return violation.empty(); }
};

/**
 * Test whether f is a direct sum of fans, each spanned by rays summing to
 * zero with every proper subset part of a lattice basis, with the summand
 * spans jointly giving a basis decomposition of the ambient lattice.
 */
BergmanSumResult is_bergman_sum(const WeightedFan& f);

/**
 * Factor an arbitrary integral projection pi through the minimal model:
 * returns psi with psi . (model matrix) = pi on every ray.  Throws
 * NotBergmanImageError when the image of pi is not a direct sum as above,
 * StructureViolationError when a fibre of pi meets two classes, and
 * FactorizationFailedError when no integral psi exists.
 */
IntMatrix factor_projection(const WeightedFan& f, const IntMatrix& pi);

/** A function on the minimal model pulling back to a given function. */
struct LiftResult {
  TRFunction lifted;
  std::size_t class_id = 0;
  std::size_t witness_ray = 0;
};

/**
 * Lift a product-one function to the minimal model: every nonzero functional
 * of the normalized input is a gallery functional from the witness ray, and
 * is rewritten in the coordinates of the witness class block.  Throws
 * NotRegularFunctionError when the input does not cut multiplicity one or
 * exceeds the class maximum.
 */
LiftResult lift_function(const WeightedFan& f, const TRFunction& t);

/** Span comparison for one gallery class. */
struct ClassSpanEntry {
  std::size_t class_id = 0;
  std::size_t expected_dim = 0;
  std::size_t computed_dim = 0;
  bool match = false;
};

/** Per-class span report; see check_class_spans. */
struct ClassSpanReport {
  bool hypothesis_excluded = false;
  std::vector<ClassSpanEntry> entries;
};

/**
 * For each gallery class, compare the rank of its rays with the class size.
 * Equality is expected whenever the fan is irreducible and no single class
 * carries all rays; `hypothesis_excluded` flags the latter situation.
 */
ClassSpanReport check_class_spans(const WeightedFan& f);

}  // namespace tropfan
