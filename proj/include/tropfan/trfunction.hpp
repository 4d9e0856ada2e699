#ifndef TROPFAN_TRFUNCTION_HPP
#define TROPFAN_TRFUNCTION_HPP

// Piecewise-linear convex functions max(l_1, ..., l_k) of integer
// functionals, their Newton polytopes and the pointwise partial order.

#include <vector>

#include "tropfan/lattice.hpp"
#include "tropfan/rational.hpp"

namespace tropfan {

/**
 * A tropical function max(l_1, ..., l_k); the functional list is nonempty.
 * Redundant functionals (never uniquely achieving the maximum) may be
 * present; newton_vertices identifies the essential ones.
 */
struct TRFunction {
  std::vector<LinearFunctional> functionals;

  TRFunction() = default;
  explicit TRFunction(std::vector<LinearFunctional> fs)
      : functionals(std::move(fs)) {
    if (functionals.empty())
      throw MalformedInputError("tropical function needs a functional");
  }

  std::size_t dim() const { return functionals[0].dim(); }

  Int operator()(const LatticeVector& v) const {
    Int best = functionals[0](v);
    for (std::size_t i = 1; i < functionals.size(); ++i) {
      Int x = functionals[i](v);
      if (x > best) best = x;
    }
    return best;
  }

  /** Indices of all functionals achieving the maximum at v. */
  std::vector<std::size_t> argmax(const LatticeVector& v) const;

  friend bool operator==(const TRFunction& a, const TRFunction& b) {
    return a.functionals == b.functionals;
  }
};

/** max(0, l) for a nonzero functional l. */
TRFunction binomial(const LinearFunctional& l);

/** max of two functionals; the pairs used for surface galleries. */
TRFunction binomial_pair(const LinearFunctional& l, const LinearFunctional& h);

/**
 * Subtract the lexicographically smallest functional from every functional.
 * The result contains the zero functional and defines the same intersection
 * products (products are invariant under adding a global linear term).
 */
TRFunction normalize(const TRFunction& t);

/** Shift every functional by l (adds the linear function l pointwise). */
TRFunction shift_by(const TRFunction& t, const LinearFunctional& l);

/** The distinct functionals of t, sorted. */
std::vector<LinearFunctional> unique_functionals(const TRFunction& t);

/** The Newton polytope: convex hull of the functionals in the dual lattice. */
struct NewtonPolytope {
  std::vector<LinearFunctional> points;
};

NewtonPolytope newton_polytope(const TRFunction& t);

/** Extreme points of the hull; these are the essential functionals. */
std::vector<LinearFunctional> newton_vertices(const TRFunction& t);

/** Does p lie in the convex hull of the functionals of t? */
bool newton_contains(const TRFunction& t, const LinearFunctional& p);

enum class CompareResult { LE, GE, EQ, INCOMPARABLE };

/**
 * Pointwise partial order: t <= s everywhere iff every functional of t lies
 * in the Newton polytope of s.
 */
CompareResult compare(const TRFunction& t, const TRFunction& s);

/**
 * Faces of the Newton polytope, listed by their achieving functional sets.
 * A face is reported once with the full set of functional indices lying on
 * it and the dimension of its affine hull.  Only faces of dimension >= 1
 * are returned; they index the cells of the dual hypersurface complex.
 */
struct NewtonFace {
  std::vector<std::size_t> members;  // indices into t.functionals
  std::size_t face_dim = 0;
};

std::vector<NewtonFace> newton_faces(const TRFunction& t);

}  // namespace tropfan

#endif
