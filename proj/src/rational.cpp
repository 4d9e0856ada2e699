#include "tropfan/rational.hpp"

#include <algorithm>

namespace tropfan {

RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

std::optional<RatVec> solve_unique(const RatMatrix& a, const RatVec& b) {
  std::size_t n = a.size();
  if (n == 0) return RatVec{};
  for (const auto& row : a)
    if (row.size() != n) return std::nullopt;
  RatMatrix m = a;
  RatVec rhs = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) return std::nullopt;  // singular
    std::swap(m[p], m[col]);
    std::swap(rhs[p], rhs[col]);
    Rat piv = m[col][col];
    for (std::size_t j = col; j < n; ++j) m[col][j] /= piv;
    rhs[col] /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
      rhs[i] -= f * rhs[col];
    }
  }
  return rhs;
}

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t pr = 0;
  for (std::size_t col = 0; col < cols && pr < rows; ++col) {
    std::size_t p = pr;
    while (p < rows && m[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[pr]);
    Rat piv = m[pr][col];
    for (std::size_t j = col; j < cols; ++j) m[pr][j] /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[pr][j];
    }
    pivots.push_back(col);
    ++pr;
  }
  return pivots;
}

bool nonneg_feasible(const RatMatrix& a, const RatVec& b) {
  std::size_t m = a.size();
  if (m != b.size()) return false;
  std::size_t n = m == 0 ? 0 : a[0].size();
  if (m == 0) return true;
  // Tableau [A | I | b] with nonnegative right-hand side; minimize the sum of
  // the artificial variables.
  RatMatrix t(m, RatVec(n + m + 1, Rat(0)));
  for (std::size_t i = 0; i < m; ++i) {
    int s = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = Rat(s) * a[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = Rat(s) * b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  // Reduced cost row for the phase-1 objective.
  RatVec cost(n + m + 1, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n + m; ++j) cost[j] -= t[i][j];
  for (std::size_t i = 0; i < m; ++i) cost[n + i] = 0;

  while (true) {
    // Bland: entering variable = smallest index with negative reduced cost.
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == n + m) break;  // optimal
    // Ratio test, ties broken by smallest basis index (Bland).
    std::size_t leave = m;
    Rat best_ratio = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][n + m] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // unbounded below cannot happen for phase 1
    // Pivot.
    Rat piv = t[leave][enter];
    for (std::size_t j = 0; j <= n + m; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      Rat f = cost[enter];
      for (std::size_t j = 0; j <= n + m; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  // Feasible iff the optimal artificial sum is zero, i.e. -cost[rhs] == 0.
  return cost[n + m] == 0;
}

std::size_t FeasibilitySystem::add_nonneg_var() {
  vars_.push_back({false});
  return vars_.size() - 1;
}

std::size_t FeasibilitySystem::add_free_var() {
  vars_.push_back({true});
  return vars_.size() - 1;
}

void FeasibilitySystem::add_eq(
    const std::vector<std::pair<std::size_t, Rat>>& terms, const Rat& rhs) {
  eqs_.push_back(terms);
  rhs_.push_back(rhs);
}

bool FeasibilitySystem::feasible() const {
  // Map each variable to one column (nonneg) or two (free, split x+ - x-).
  std::vector<std::size_t> col_of(vars_.size());
  std::size_t ncols = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    col_of[i] = ncols;
    ncols += vars_[i].free ? 2 : 1;
  }
  RatMatrix a(eqs_.size(), RatVec(ncols, Rat(0)));
  for (std::size_t e = 0; e < eqs_.size(); ++e)
    for (const auto& [var, coef] : eqs_[e]) {
      a[e][col_of[var]] += coef;
      if (vars_[var].free) a[e][col_of[var] + 1] -= coef;
    }
  return nonneg_feasible(a, rhs_);
}

bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& points) {
  if (points.empty()) return false;
  std::size_t d = p.size();
  RatMatrix a(d + 1, RatVec(points.size(), Rat(0)));
  RatVec b(d + 1, Rat(0));
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t i = 0; i < d; ++i) a[i][j] = points[j][i];
    a[d][j] = 1;
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = p[i];
  b[d] = 1;
  return nonneg_feasible(a, b);
}

bool in_cone(const RatVec& v, const std::vector<RatVec>& gens,
             const std::vector<RatVec>& lin) {
  std::size_t d = v.size();
  FeasibilitySystem sys;
  std::vector<std::size_t> g_vars, l_vars;
  for (std::size_t j = 0; j < gens.size(); ++j) g_vars.push_back(sys.add_nonneg_var());
  for (std::size_t j = 0; j < lin.size(); ++j) l_vars.push_back(sys.add_free_var());
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::pair<std::size_t, Rat>> terms;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (gens[j][i] != 0) terms.push_back({g_vars[j], gens[j][i]});
    for (std::size_t j = 0; j < lin.size(); ++j)
      if (lin[j][i] != 0) terms.push_back({l_vars[j], lin[j][i]});
    sys.add_eq(terms, v[i]);
  }
  return sys.feasible();
}

}  // namespace tropfan
