#include "tropfan/trfunction.hpp"

#include <algorithm>
#include <map>

namespace tropfan {

std::vector<std::size_t> TRFunction::argmax(const LatticeVector& v) const {
  Int best = (*this)(v);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < functionals.size(); ++i)
    if (functionals[i](v) == best) out.push_back(i);
  return out;
}

TRFunction binomial(const LinearFunctional& l) {
  if (l.is_zero()) throw MalformedInputError("binomial needs a nonzero functional");
  return TRFunction({LinearFunctional(IntVec(l.dim(), Int(0))), l});
}

TRFunction binomial_pair(const LinearFunctional& l, const LinearFunctional& h) {
  if (l == h) throw MalformedInputError("binomial pair needs distinct functionals");
  return TRFunction({l, h});
}

TRFunction normalize(const TRFunction& t) {
  const LinearFunctional* least = &t.functionals[0];
  for (const auto& f : t.functionals)
    if (f < *least) least = &f;
  std::vector<LinearFunctional> out;
  out.reserve(t.functionals.size());
  for (const auto& f : t.functionals) out.push_back(f - *least);
  return TRFunction(std::move(out));
}

TRFunction shift_by(const TRFunction& t, const LinearFunctional& l) {
  std::vector<LinearFunctional> out;
  out.reserve(t.functionals.size());
  for (const auto& f : t.functionals) out.push_back(f + l);
  return TRFunction(std::move(out));
}

NewtonPolytope newton_polytope(const TRFunction& t) {
  return NewtonPolytope{t.functionals};
}

std::vector<LinearFunctional> unique_functionals(const TRFunction& t) {
  std::vector<LinearFunctional> u = t.functionals;
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

std::vector<LinearFunctional> newton_vertices(const TRFunction& t) {
  std::vector<LinearFunctional> u = unique_functionals(t);
  std::vector<LinearFunctional> verts;
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::vector<RatVec> others;
    for (std::size_t j = 0; j < u.size(); ++j)
      if (j != i) others.push_back(to_rat(u[j].c));
    if (others.empty() || !in_convex_hull(to_rat(u[i].c), others))
      verts.push_back(u[i]);
  }
  return verts;
}

bool newton_contains(const TRFunction& t, const LinearFunctional& p) {
  std::vector<RatVec> pts;
  for (const auto& f : t.functionals) pts.push_back(to_rat(f.c));
  return in_convex_hull(to_rat(p.c), pts);
}

CompareResult compare(const TRFunction& t, const TRFunction& s) {
  bool le = true, ge = true;
  for (const auto& f : t.functionals)
    if (!newton_contains(s, f)) {
      le = false;
      break;
    }
  for (const auto& f : s.functionals)
    if (!newton_contains(t, f)) {
      ge = false;
      break;
    }
  if (le && ge) return CompareResult::EQ;
  if (le) return CompareResult::LE;
  if (ge) return CompareResult::GE;
  return CompareResult::INCOMPARABLE;
}

std::vector<NewtonFace> newton_faces(const TRFunction& t) {
  std::vector<LinearFunctional> u = unique_functionals(t);
  std::size_t k = u.size();
  std::size_t n = t.dim();
  std::vector<NewtonFace> faces;
  if (k < 2) return faces;
  if (k > 20)
    throw MalformedInputError("too many distinct functionals for face enumeration");
  // A subset S is the member set of a face iff some direction y is constant
  // on S and strictly smaller on the complement.  The system is homogeneous
  // in y, so strictness can be pinned at margin one.
  for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t(1) << i)) members.push_back(i);
    if (members.size() < 2) continue;
    FeasibilitySystem sys;
    std::vector<std::size_t> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = sys.add_free_var();
    const IntVec& p0 = u[members[0]].c;
    for (std::size_t mi = 1; mi < members.size(); ++mi) {
      std::vector<std::pair<std::size_t, Rat>> terms;
      for (std::size_t i = 0; i < n; ++i) {
        Rat c = Rat(u[members[mi]].c[i] - p0[i]);
        if (c != 0) terms.push_back({y[i], c});
      }
      sys.add_eq(terms, Rat(0));
    }
    bool possible = true;
    for (std::size_t r = 0; r < k; ++r) {
      if (mask & (std::size_t(1) << r)) continue;
      std::vector<std::pair<std::size_t, Rat>> terms;
      for (std::size_t i = 0; i < n; ++i) {
        Rat c = Rat(p0[i] - u[r].c[i]);
        if (c != 0) terms.push_back({y[i], c});
      }
      if (terms.empty()) {
        possible = false;  // duplicate already removed; defensive
        break;
      }
      std::size_t slack = sys.add_nonneg_var();
      terms.push_back({slack, Rat(-1)});
      sys.add_eq(terms, Rat(1));
    }
    if (!possible || !sys.feasible()) continue;
    // Affine dimension of the member set.
    std::vector<IntVec> diffs;
    for (std::size_t mi = 1; mi < members.size(); ++mi)
      diffs.push_back(ivec_sub(u[members[mi]].c, p0));
    std::size_t fd = rank(IntMatrix(std::move(diffs)));
    if (fd == 0) continue;
    // Map back to indices in the original functional list.
    NewtonFace face;
    face.face_dim = fd;
    for (std::size_t orig = 0; orig < t.functionals.size(); ++orig)
      for (std::size_t mi : members)
        if (t.functionals[orig] == u[mi]) {
          face.members.push_back(orig);
          break;
        }
    faces.push_back(std::move(face));
  }
  return faces;
}

}  // namespace tropfan
