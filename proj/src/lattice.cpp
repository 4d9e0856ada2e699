#include "tropfan/lattice.hpp"

#include <algorithm>

namespace tropfan {

Int ivec_dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    throw DimensionMismatchError("dot of vectors of unequal length");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec ivec_add(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    throw DimensionMismatchError("sum of vectors of unequal length");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec ivec_sub(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    throw DimensionMismatchError("difference of vectors of unequal length");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec ivec_neg(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

IntVec ivec_scale(const Int& c, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool ivec_is_zero(const IntVec& a) {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

Int ivec_content(const IntVec& a) {
  Int g = 0;
  for (const Int& x : a) g = gcd_int(g, x);
  return g;
}

namespace {
IntVec ivec_primitive(const IntVec& v) {
  Int g = ivec_content(v);
  if (g == 0) throw ZeroVectorError();
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}
}  // namespace

LatticeVector primitive(const LatticeVector& v) {
  return LatticeVector(ivec_primitive(v.c));
}

LinearFunctional primitive(const LinearFunctional& l) {
  return LinearFunctional(ivec_primitive(l.c));
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows[i][i] = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<LinearFunctional>& fs) {
  std::vector<IntVec> rs;
  rs.reserve(fs.size());
  for (const auto& f : fs) rs.push_back(f.c);
  return IntMatrix(std::move(rs));
}

IntMatrix IntMatrix::from_row_vectors(const std::vector<LatticeVector>& vs) {
  std::vector<IntVec> rs;
  rs.reserve(vs.size());
  for (const auto& v : vs) rs.push_back(v.c);
  return IntMatrix(std::move(rs));
}

bool IntMatrix::is_zero() const {
  for (const auto& r : rows)
    if (!ivec_is_zero(r)) return false;
  return true;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(n_cols, n_rows);
  for (std::size_t i = 0; i < n_rows; ++i)
    for (std::size_t j = 0; j < n_cols; ++j) t.rows[j][i] = rows[i][j];
  return t;
}

LatticeVector IntMatrix::apply(const LatticeVector& v) const {
  if (v.dim() != n_cols)
    throw DimensionMismatchError("matrix-vector product size");
  IntVec r(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) r[i] = ivec_dot(rows[i], v.c);
  return LatticeVector(std::move(r));
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_cols != b.n_rows)
    throw DimensionMismatchError("matrix product shapes");
  IntMatrix c(a.n_rows, b.n_cols);
  for (std::size_t i = 0; i < a.n_rows; ++i)
    for (std::size_t k = 0; k < a.n_cols; ++k) {
      if (a.rows[i][k] == 0) continue;
      for (std::size_t j = 0; j < b.n_cols; ++j)
        c.rows[i][j] += a.rows[i][k] * b.rows[k][j];
    }
  return c;
}

Int det(const IntMatrix& a) {
  if (a.n_rows != a.n_cols)
    throw DimensionMismatchError("determinant of non-square matrix");
  std::size_t n = a.n_rows;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination; all divisions are exact.
  std::vector<IntVec> m = a.rows;
  Int prev = 1;
  int sgn = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sgn > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

HermiteResult hermite_form(const IntMatrix& a) {
  if (a.n_rows == 0 || a.n_cols == 0 || a.is_zero())
    throw MalformedInputError("hermite form of an empty or zero matrix");
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.n_rows);
  std::size_t r = a.n_rows, n = a.n_cols;
  std::size_t pr = 0;  // next pivot row

  auto row_op = [&](std::size_t dst, std::size_t src, const Int& q) {
    // row dst -= q * row src, tracked in u.
    for (std::size_t j = 0; j < n; ++j) h.rows[dst][j] -= q * h.rows[src][j];
    for (std::size_t j = 0; j < r; ++j) u.rows[dst][j] -= q * u.rows[src][j];
  };

  for (std::size_t col = 0; col < n && pr < r; ++col) {
    // Euclidean elimination below the pivot row.
    while (true) {
      std::size_t best = r;
      for (std::size_t i = pr; i < r; ++i) {
        if (h.rows[i][col] == 0) continue;
        if (best == r ||
            abs_int(h.rows[i][col]) < abs_int(h.rows[best][col]))
          best = i;
      }
      if (best == r) break;  // column is zero from pr down
      if (best != pr) {
        std::swap(h.rows[best], h.rows[pr]);
        std::swap(u.rows[best], u.rows[pr]);
      }
      bool reduced_all = true;
      for (std::size_t i = pr + 1; i < r; ++i) {
        if (h.rows[i][col] == 0) continue;
        Int q = floor_div(h.rows[i][col], h.rows[pr][col]);
        row_op(i, pr, q);
        if (h.rows[i][col] != 0) reduced_all = false;
      }
      if (reduced_all) break;
    }
    if (h.rows[pr][col] == 0) continue;
    if (h.rows[pr][col] < 0) {
      for (std::size_t j = 0; j < n; ++j) h.rows[pr][j] = -h.rows[pr][j];
      for (std::size_t j = 0; j < r; ++j) u.rows[pr][j] = -u.rows[pr][j];
    }
    // Reduce the entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < pr; ++i) {
      Int q = floor_div(h.rows[i][col], h.rows[pr][col]);
      if (q != 0) row_op(i, pr, q);
    }
    ++pr;
  }
  return {h, u};
}

std::vector<Int> smith_diagonal(const IntMatrix& a) {
  std::vector<IntVec> m = a.rows;
  std::size_t rr = a.n_rows, cc = a.n_cols;
  std::vector<Int> diag;
  std::size_t t = 0;
  while (t < rr && t < cc) {
    // Find the entry of smallest absolute value in the trailing block.
    std::size_t bi = rr, bj = cc;
    for (std::size_t i = t; i < rr; ++i)
      for (std::size_t j = t; j < cc; ++j) {
        if (m[i][j] == 0) continue;
        if (bi == rr || abs_int(m[i][j]) < abs_int(m[bi][bj])) {
          bi = i;
          bj = j;
        }
      }
    if (bi == rr) break;  // trailing block is zero
    std::swap(m[t], m[bi]);
    for (std::size_t i = t; i < rr; ++i) std::swap(m[i][t], m[i][bj]);
    bool clean = true;
    for (std::size_t i = t + 1; i < rr; ++i) {
      if (m[i][t] == 0) continue;
      Int q = floor_div(m[i][t], m[t][t]);
      for (std::size_t j = t; j < cc; ++j) m[i][j] -= q * m[t][j];
      if (m[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cc; ++j) {
      if (m[t][j] == 0) continue;
      Int q = floor_div(m[t][j], m[t][t]);
      for (std::size_t i = t; i < rr; ++i) m[i][j] -= q * m[i][t];
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // re-run the block with the smaller remainders
    diag.push_back(abs_int(m[t][t]));
    ++t;
  }
  return diag;
}

std::size_t rank(const IntMatrix& a) {
  if (a.n_rows == 0 || a.n_cols == 0 || a.is_zero()) return 0;
  const IntMatrix h = hermite_form(a).h;
  std::size_t r = 0;
  for (const auto& row : h.rows)
    if (!ivec_is_zero(row)) ++r;
  return r;
}

std::optional<Int> lattice_index(const std::vector<LatticeVector>& gens) {
  if (gens.empty()) return std::nullopt;
  std::size_t n = gens[0].dim();
  for (const auto& g : gens)
    if (g.dim() != n)
      throw DimensionMismatchError("lattice generators of unequal dimension");
  IntMatrix a = IntMatrix::from_row_vectors(gens);
  std::vector<Int> d = smith_diagonal(a);
  if (d.size() < n) return std::nullopt;
  Int idx = 1;
  for (const Int& x : d) idx *= x;
  return idx;
}

DualSolveResult solve_dual(const std::vector<DualConstraint>& constraints,
                           std::size_t ambient_dim) {
  DualSolveResult res;
  std::size_t n = ambient_dim;
  std::vector<IntVec> vrows;
  std::vector<Int> target;
  for (const auto& c : constraints) {
    if (c.v.dim() != n)
      throw DimensionMismatchError("dual constraint vector dimension");
    vrows.push_back(c.v.c);
    target.push_back(c.value);
  }
  IntMatrix v(std::move(vrows));
  if (v.n_rows == 0 || v.is_zero()) {
    // Only the zero functional could satisfy anything, and only a full-rank
    // system pins a unique solution.
    res.failure = DualSolveFailure::Underdetermined;
    if (n == 0) res.solution = LinearFunctional(IntVec{});
    return res;
  }
  HermiteResult hr = hermite_form(v);
  // Transformed right-hand side: H l = U c.
  std::vector<Int> rhs(v.n_rows, Int(0));
  for (std::size_t i = 0; i < v.n_rows; ++i)
    for (std::size_t j = 0; j < v.n_rows; ++j)
      rhs[i] += hr.u.rows[i][j] * target[j];
  // Zero rows of H must have zero right-hand side.
  std::size_t rk = 0;
  for (std::size_t i = 0; i < v.n_rows; ++i) {
    if (ivec_is_zero(hr.h.rows[i])) {
      if (rhs[i] != 0) {
        res.failure = DualSolveFailure::Inconsistent;
        return res;
      }
    } else {
      ++rk;
    }
  }
  if (rk < n) {
    res.failure = DualSolveFailure::Underdetermined;
    return res;
  }
  // rk == n: the top n rows of H are upper triangular with pivots on the
  // diagonal.  Back-substitute over the rationals.
  std::vector<Rat> x(n, Rat(0));
  for (std::size_t ii = n; ii-- > 0;) {
    Rat acc = Rat(rhs[ii]);
    for (std::size_t j = ii + 1; j < n; ++j)
      acc -= Rat(hr.h.rows[ii][j]) * x[j];
    x[ii] = acc / Rat(hr.h.rows[ii][ii]);
  }
  IntVec sol(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_integer(x[i])) {
      res.failure = DualSolveFailure::NonIntegral;
      return res;
    }
    sol[i] = rat_num(x[i]);
  }
  res.solution = LinearFunctional(std::move(sol));
  return res;
}

std::vector<LatticeVector> kernel_basis(const IntMatrix& a) {
  std::size_t n = a.n_cols;
  std::vector<LatticeVector> out;
  if (a.n_rows == 0 || a.is_zero()) {
    if (n == 0) return out;
    IntMatrix id = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      out.emplace_back(id.rows[i]);
    return out;
  }
  // Rows u of U with (U A^T)(u-row) = 0 are exactly the kernel vectors, and
  // they are saturated because U is unimodular.
  HermiteResult hr = hermite_form(a.transposed());
  for (std::size_t i = 0; i < hr.h.n_rows; ++i)
    if (ivec_is_zero(hr.h.rows[i])) out.emplace_back(hr.u.rows[i]);
  return out;
}

std::vector<LatticeVector> saturated_span_basis(
    const std::vector<LatticeVector>& vs, std::size_t ambient_dim) {
  std::size_t n = ambient_dim;
  std::vector<LatticeVector> nonzero;
  for (const auto& v : vs) {
    if (v.dim() != n)
      throw DimensionMismatchError("span generator dimension");
    if (!v.is_zero()) nonzero.push_back(v);
  }
  if (nonzero.empty()) return {};
  // Two kernel passes: first the functionals vanishing on the span, then the
  // lattice vectors those functionals annihilate.  The result is the
  // saturation, independent of the generating set.
  std::vector<LatticeVector> ann =
      kernel_basis(IntMatrix::from_row_vectors(nonzero));
  std::vector<LatticeVector> sat;
  if (ann.empty()) {
    IntMatrix id = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) sat.emplace_back(id.rows[i]);
  } else {
    sat = kernel_basis(IntMatrix::from_row_vectors(ann));
  }
  // Canonicalize via Hermite form so equal spans give identical bases.
  HermiteResult hr = hermite_form(IntMatrix::from_row_vectors(sat));
  std::vector<LatticeVector> out;
  for (const auto& row : hr.h.rows)
    if (!ivec_is_zero(row)) out.emplace_back(row);
  return out;
}

std::optional<IntVec> integer_coords_in_span(
    const LatticeVector& v, const std::vector<LatticeVector>& basis) {
  std::size_t n = v.dim();
  std::size_t m = basis.size();
  for (const auto& b : basis)
    if (b.dim() != n) throw DimensionMismatchError("span basis dimension");
  if (m == 0) {
    if (v.is_zero()) return IntVec{};
    return std::nullopt;
  }
  // Fraction-free elimination on the n x m system (columns = basis vectors).
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(m + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = Rat(basis[j][i]);
    a[i][m] = Rat(v[i]);
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_of(m, n);
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t p = row;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    Rat inv = a[row][col];
    for (std::size_t j = col; j <= m; ++j) a[row][j] /= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (std::size_t j = col; j <= m; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_of[col] = row;
    ++row;
  }
  // Independence of the basis is part of the contract.
  for (std::size_t col = 0; col < m; ++col)
    if (pivot_of[col] == n)
      throw MalformedInputError("span basis is linearly dependent");
  for (std::size_t i = row; i < n; ++i)
    if (a[i][m] != 0) return std::nullopt;
  IntVec c(m);
  for (std::size_t col = 0; col < m; ++col) {
    const Rat& x = a[pivot_of[col]][m];
    if (!is_integer(x)) return std::nullopt;
    c[col] = rat_num(x);
  }
  return c;
}

}  // namespace tropfan
