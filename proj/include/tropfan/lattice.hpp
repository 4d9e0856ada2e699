#ifndef TROPFAN_LATTICE_HPP
#define TROPFAN_LATTICE_HPP

// Exact integer linear algebra on Z^n: primitive vectors, row Hermite form
// with unimodular transform, Smith-diagonal lattice indices, saturated kernel
// bases and dual-side linear solves.  Everything downstream (fans, products,
// classification) reduces to these operations.

#include <optional>
#include <string>
#include <vector>

#include "tropfan/errors.hpp"
#include "tropfan/numeric.hpp"

namespace tropfan {

using IntVec = std::vector<Int>;

Int ivec_dot(const IntVec& a, const IntVec& b);
IntVec ivec_add(const IntVec& a, const IntVec& b);
IntVec ivec_sub(const IntVec& a, const IntVec& b);
IntVec ivec_neg(const IntVec& a);
IntVec ivec_scale(const Int& c, const IntVec& a);
bool ivec_is_zero(const IntVec& a);
Int ivec_content(const IntVec& a);  // gcd of entries, 0 for the zero vector

/** A lattice point of Z^n. */
struct LatticeVector {
  IntVec c;

  LatticeVector() = default;
  explicit LatticeVector(IntVec coords) : c(std::move(coords)) {}
  LatticeVector(std::initializer_list<int> coords) {
    for (int x : coords) c.emplace_back(x);
  }

  std::size_t dim() const { return c.size(); }
  const Int& operator[](std::size_t i) const { return c[i]; }
  Int& operator[](std::size_t i) { return c[i]; }
  bool is_zero() const { return ivec_is_zero(c); }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.c == b.c;
  }
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
    return a.c < b.c;
  }
};

/** An integer linear functional on Z^n (an element of the dual lattice). */
struct LinearFunctional {
  IntVec c;

  LinearFunctional() = default;
  explicit LinearFunctional(IntVec coords) : c(std::move(coords)) {}
  LinearFunctional(std::initializer_list<int> coords) {
    for (int x : coords) c.emplace_back(x);
  }

  std::size_t dim() const { return c.size(); }
  const Int& operator[](std::size_t i) const { return c[i]; }
  Int& operator[](std::size_t i) { return c[i]; }
  bool is_zero() const { return ivec_is_zero(c); }

  Int operator()(const LatticeVector& v) const { return ivec_dot(c, v.c); }

  friend bool operator==(const LinearFunctional& a, const LinearFunctional& b) {
    return a.c == b.c;
  }
  friend bool operator<(const LinearFunctional& a, const LinearFunctional& b) {
    return a.c < b.c;
  }
};

inline LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  return LatticeVector(ivec_add(a.c, b.c));
}
inline LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
  return LatticeVector(ivec_sub(a.c, b.c));
}
inline LatticeVector operator-(const LatticeVector& a) {
  return LatticeVector(ivec_neg(a.c));
}
inline LatticeVector operator*(const Int& s, const LatticeVector& a) {
  return LatticeVector(ivec_scale(s, a.c));
}
inline LinearFunctional operator+(const LinearFunctional& a, const LinearFunctional& b) {
  return LinearFunctional(ivec_add(a.c, b.c));
}
inline LinearFunctional operator-(const LinearFunctional& a, const LinearFunctional& b) {
  return LinearFunctional(ivec_sub(a.c, b.c));
}
inline LinearFunctional operator-(const LinearFunctional& a) {
  return LinearFunctional(ivec_neg(a.c));
}
inline LinearFunctional operator*(const Int& s, const LinearFunctional& a) {
  return LinearFunctional(ivec_scale(s, a.c));
}

/** Rescale v by 1/content so the entries have gcd one.  Throws on zero. */
LatticeVector primitive(const LatticeVector& v);
LinearFunctional primitive(const LinearFunctional& l);

/** An integer matrix whose rows act as functionals: a map Z^cols -> Z^rows. */
struct IntMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<IntVec> rows;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c)
      : n_rows(r), n_cols(c), rows(r, IntVec(c, Int(0))) {}
  explicit IntMatrix(std::vector<IntVec> rs) : rows(std::move(rs)) {
    n_rows = rows.size();
    n_cols = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
      if (r.size() != n_cols)
        throw DimensionMismatchError("ragged matrix rows");
  }

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<LinearFunctional>& fs);
  static IntMatrix from_row_vectors(const std::vector<LatticeVector>& vs);

  Int& at(std::size_t i, std::size_t j) { return rows[i][j]; }
  const Int& at(std::size_t i, std::size_t j) const { return rows[i][j]; }
  bool is_zero() const;

  IntMatrix transposed() const;

  /** Image of v under the map (row-by-row dot products). */
  LatticeVector apply(const LatticeVector& v) const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.n_rows == b.n_rows && a.n_cols == b.n_cols && a.rows == b.rows;
  }
};

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);

/** Exact determinant (Bareiss fraction-free elimination); matrix must be square. */
Int det(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

/**
 * Row Hermite normal form H = U * A with U unimodular.
 *
 * H is in row echelon form with positive pivots and entries above each pivot
 * reduced into [0, pivot).  A must be nonzero.
 */
struct HermiteResult {
  IntMatrix h;
  IntMatrix u;
};
HermiteResult hermite_form(const IntMatrix& a);

/**
 * Index of the sublattice of Z^n generated by the given vectors, i.e. the
 * product of the Smith diagonal entries.  Empty optional means the vectors do
 * not span Q^n, so the index is infinite.
 */
std::optional<Int> lattice_index(const std::vector<LatticeVector>& gens);

/** Smith diagonal entries (not divisibility-normalized; their product is the
 * absolute determinant invariant, which is all the index computation needs). */
std::vector<Int> smith_diagonal(const IntMatrix& a);

/** One evaluation constraint l(v) = value for the dual solve. */
struct DualConstraint {
  LatticeVector v;
  Int value;
};

enum class DualSolveFailure { None, Inconsistent, NonIntegral, Underdetermined };

struct DualSolveResult {
  std::optional<LinearFunctional> solution;
  DualSolveFailure failure = DualSolveFailure::None;
  bool ok() const { return solution.has_value(); }
};

/**
 * Find the integer functional l with l(v_i) = c_i for all constraints.
 *
 * Fails with Inconsistent when no rational solution exists, NonIntegral when
 * the unique rational solution is not integral, and Underdetermined when the
 * rational solution space is positive-dimensional.
 */
DualSolveResult solve_dual(const std::vector<DualConstraint>& constraints,
                           std::size_t ambient_dim);

/**
 * Basis of the integer kernel {v : A v = 0}.
 *
 * The basis vectors are primitive and saturated: together with preimages of a
 * basis of the row space they extend to a basis of Z^n.  An empty or zero
 * matrix yields the standard basis of its column space.
 */
std::vector<LatticeVector> kernel_basis(const IntMatrix& a);

/**
 * Canonical basis of the saturation span(vs) ∩ Z^n, in Hermite form.
 * Equal rational spans produce identical bases.
 */
std::vector<LatticeVector> saturated_span_basis(
    const std::vector<LatticeVector>& vs, std::size_t ambient_dim);

/**
 * Integer coordinates of v in the given linearly independent basis, i.e.
 * the c with v = sum c_i basis_i.  Empty when v is off the span or the
 * coordinates are not integral.
 */
std::optional<IntVec> integer_coords_in_span(
    const LatticeVector& v, const std::vector<LatticeVector>& basis);

}  // namespace tropfan

#endif
