#ifndef TROPFAN_PRODUCT_HPP
#define TROPFAN_PRODUCT_HPP

// The tropical intersection product of a piecewise-linear function with a
// weighted fan, iterated intersection numbers, hypersurfaces of TR
// functions, and certified stable intersection against them.

#include <cstdint>
#include <vector>

#include "tropfan/fan.hpp"
#include "tropfan/trfunction.hpp"

namespace tropfan {

/**
 * Weight at the origin of t . f for a 1-dimensional fan: the full formula
 * sum_i w_i t(v_i) - t(sum_i w_i v_i).  The correction term vanishes on
 * balanced input; it is computed regardless, so the value is meaningful
 * for any 1-dimensional fan.
 */
Int product_1d(const TRFunction& t, const WeightedFan& f);

struct Product2D {
  WeightedFan cycle;                     // rays with nonzero weight
  std::vector<LatticeVector> zero_rays;  // refinement rays weighted zero
  WeightedFan refined;                   // the refinement that was used
};

/**
 * t . f for a balanced 2-dimensional fan: refine until t is linear on each
 * cone, then weight each ray tau by
 *   sum_{sigma > tau} t_sigma(w(sigma) v_{sigma/tau})
 *     - t_tau(sum_{sigma > tau} w(sigma) v_{sigma/tau}),
 * where t_sigma is the functional representing t on sigma and t_tau the
 * linear extension of t from the ray tau.  Throws Unbalanced when the
 * input is not balanced (the extension t_tau is undefined otherwise) and
 * NegativeWeight if a weight comes out negative, which convexity forbids.
 */
Product2D product_2d(const TRFunction& t, const WeightedFan& f);

/**
 * Iterated product; ts.size() must equal f.dim.  The last function is
 * applied first, so {t1, t2} computes t1 . (t2 . f).  The value is
 * independent of the order.
 */
Int intersection_number(const std::vector<TRFunction>& ts,
                        const WeightedFan& f);

/** Functionals composed with the map m (columns of m pulled back). */
TRFunction pullback(const TRFunction& t, const IntMatrix& m);

/**
 * Both sides of the projection identity for a 1-dimensional fan c:
 * product_1d(t, pushforward(m, c)) versus product_1d(pullback(t, m), c).
 */
bool projection_formula_check(const IntMatrix& m, const TRFunction& t,
                              const WeightedFan& c);

/**
 * A facet of the hypersurface of a TR function: the locus where all the
 * listed functionals tie for the maximum.  Its weight is the lattice
 * length of the corresponding Newton edge; its span is the hyperplane
 * where the primitive edge direction vanishes.
 */
struct HypersurfaceFacet {
  std::vector<std::size_t> members;  // indices into the function's list
  LinearFunctional direction;        // primitive Newton-edge direction
  Int weight;
};

struct Hypersurface {
  TRFunction t;
  std::vector<HypersurfaceFacet> facets;
};

Hypersurface hypersurface(const TRFunction& t);

/**
 * Stable intersection of the hypersurface of t with a 2-dimensional
 * balanced fan, as a 1-cycle.  The generic shift is drawn from the seeded
 * generator with coordinates in [-10^6, 10^6]; every facet pair is
 * certified to either miss the shifted facet or meet it transversally,
 * with up to 32 redraws before GenericityFailure is thrown.
 */
WeightedFan stable_intersect_2d(const TRFunction& t, const WeightedFan& f,
                                std::uint64_t seed);

/** Same certification for a 1-dimensional fan; returns the origin weight. */
Int stable_intersect_0d(const TRFunction& t, const WeightedFan& f,
                        std::uint64_t seed);

}  // namespace tropfan

#endif
