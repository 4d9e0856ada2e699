#ifndef TROPFAN_RATIONAL_HPP
#define TROPFAN_RATIONAL_HPP

// Exact rational linear algebra: unique solves, reduced row echelon form and
// linear-program feasibility (phase-1 simplex with Bland's rule).  These back
// the convex membership tests: Newton polytope containment, cone membership
// and the generic-shift certification.

#include <optional>
#include <vector>

#include "tropfan/lattice.hpp"
#include "tropfan/numeric.hpp"

namespace tropfan {

using RatVec = std::vector<Rat>;
using RatMatrix = std::vector<RatVec>;

RatVec to_rat(const IntVec& v);

/** Unique solution of A x = b, if A is square and invertible. */
std::optional<RatVec> solve_unique(const RatMatrix& a, const RatVec& b);

/** In-place reduced row echelon form; returns the pivot columns. */
std::vector<std::size_t> rref(RatMatrix& m);

/**
 * Feasibility of {x >= 0 : A x = b}, decided exactly by phase-1 simplex.
 * Bland's rule guarantees termination.
 */
bool nonneg_feasible(const RatMatrix& a, const RatVec& b);

/**
 * Builder for small feasibility systems mixing nonnegative and free
 * variables with equality constraints.  Free variables are split into
 * differences of nonnegative ones before the simplex call.
 */
class FeasibilitySystem {
 public:
  // Returns the index of a new variable.
  std::size_t add_nonneg_var();
  std::size_t add_free_var();

  // Adds the constraint sum coeff_i * x_i = rhs.
  void add_eq(const std::vector<std::pair<std::size_t, Rat>>& terms,
              const Rat& rhs);

  bool feasible() const;

 private:
  struct Var {
    bool free = false;
  };
  std::vector<Var> vars_;
  std::vector<std::vector<std::pair<std::size_t, Rat>>> eqs_;
  std::vector<Rat> rhs_;
};

/** Is p a convex combination of the given points? */
bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& points);

/**
 * Is v in the cone generated by `gens` plus the linear span of `lin`?
 * Decided exactly; empty generator lists are allowed.
 */
bool in_cone(const RatVec& v, const std::vector<RatVec>& gens,
             const std::vector<RatVec>& lin);

}  // namespace tropfan

#endif
