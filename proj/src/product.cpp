#include "tropfan/product.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace tropfan {

Int product_1d(const TRFunction& t, const WeightedFan& f) {
  if (f.dim != 1)
    throw NotOneDimensionalError("product_1d needs a 1-dimensional fan");
  if (t.dim() != f.n)
    throw DimensionMismatchError("function and fan dimensions differ");
  Int acc = 0;
  IntVec sum(f.n, Int(0));
  for (std::size_t i = 0; i < f.cones.size(); ++i) {
    const LatticeVector& v = f.rays[f.cones[i][0]];
    acc += f.weights[i] * t(v);
    sum = ivec_add(sum, ivec_scale(f.weights[i], v.c));
  }
  return acc - t(LatticeVector(std::move(sum)));
}

Product2D product_2d(const TRFunction& t, const WeightedFan& f) {
  if (f.dim != 2)
    throw MalformedInputError("product_2d needs a 2-dimensional fan");
  if (t.dim() != f.n)
    throw DimensionMismatchError("function and fan dimensions differ");
  BalanceReport rep = check_balanced(f);
  if (!rep.balanced) throw UnbalancedError(rep.failures.front());

  Product2D out;
  out.refined = refine_by(f, t);
  const WeightedFan& r = out.refined;
  std::vector<std::pair<LatticeVector, Int>> contrib;
  for (std::size_t tau = 0; tau < r.rays.size(); ++tau) {
    std::vector<std::size_t> at = cones_at_ray(r, tau);
    if (at.empty()) continue;
    Int acc = 0;
    IntVec s(r.n, Int(0));
    for (std::size_t ci : at) {
      std::size_t other = r.cones[ci][0] == tau ? r.cones[ci][1] : r.cones[ci][0];
      LatticeVector v = cross_ray_generator(r.rays[tau], r.rays[other]);
      // Any functional achieving the maximum at an interior point of the
      // cone represents t on the whole cone after refinement.
      LatticeVector g = r.rays[r.cones[ci][0]] + r.rays[r.cones[ci][1]];
      const LinearFunctional& rep_l = t.functionals[t.argmax(g).front()];
      acc += r.weights[ci] * rep_l(v);
      s = ivec_add(s, ivec_scale(r.weights[ci], v.c));
    }
    // The cross-ray sum lies on the ray line; divide out the primitive
    // generator to evaluate the linear extension of t along the ray.
    const IntVec& u = r.rays[tau].c;
    std::size_t k = 0;
    while (u[k] == 0) ++k;
    if (s[k] % u[k] != 0)
      throw UnbalancedError("refined fan unbalanced at an interior ray");
    Int c = s[k] / u[k];
    if (ivec_scale(c, u) != s)
      throw UnbalancedError("refined fan unbalanced at an interior ray");
    Int w = acc - c * t(r.rays[tau]);
    if (w < 0)
      throw NegativeWeightError("negative product weight: convexity violated");
    if (w == 0)
      out.zero_rays.push_back(r.rays[tau]);
    else
      contrib.push_back({r.rays[tau], w});
  }
  out.cycle = merge_1d(f.n, contrib);
  return out;
}

Int intersection_number(const std::vector<TRFunction>& ts,
                        const WeightedFan& f) {
  if (ts.size() != f.dim)
    throw MalformedInputError("need one function per fan dimension");
  if (f.dim == 1) return product_1d(ts[0], f);
  Product2D p = product_2d(ts[1], f);
  return product_1d(ts[0], p.cycle);
}

TRFunction pullback(const TRFunction& t, const IntMatrix& m) {
  if (t.dim() != m.n_rows)
    throw DimensionMismatchError("function does not match map target");
  std::vector<LinearFunctional> fs;
  fs.reserve(t.functionals.size());
  for (const auto& l : t.functionals) {
    IntVec row(m.n_cols, Int(0));
    for (std::size_t j = 0; j < m.n_cols; ++j)
      for (std::size_t i = 0; i < m.n_rows; ++i)
        row[j] += l[i] * m.rows[i][j];
    fs.push_back(LinearFunctional(std::move(row)));
  }
  return TRFunction(std::move(fs));
}

bool projection_formula_check(const IntMatrix& m, const TRFunction& t,
                              const WeightedFan& c) {
  Int lhs = product_1d(t, pushforward(m, c));
  Int rhs = product_1d(pullback(t, m), c);
  return lhs == rhs;
}

Hypersurface hypersurface(const TRFunction& t) {
  Hypersurface h{t, {}};
  for (const NewtonFace& face : newton_faces(t)) {
    if (face.face_dim != 1) continue;
    std::vector<IntVec> pts;
    for (std::size_t m : face.members) pts.push_back(t.functionals[m].c);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    LinearFunctional dir =
        primitive(LinearFunctional(ivec_sub(pts[1], pts[0])));
    for (const Int& x : dir.c) {
      if (x == 0) continue;
      if (x < 0) dir = -dir;
      break;
    }
    std::size_t k = 0;
    while (dir[k] == 0) ++k;
    Int lo = 0, hi = 0;
    for (const auto& p : pts) {
      Int c = (p[k] - pts[0][k]) / dir[k];
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    h.facets.push_back({face.members, dir, hi - lo});
  }
  return h;
}

namespace {

// Deterministic bounded draw; avoids distribution objects so the stream
// is identical across standard libraries.
LatticeVector draw_shift(std::mt19937_64& eng, std::size_t n) {
  for (;;) {
    IntVec v(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t x = eng();
      long long r = static_cast<long long>(x % 2000001ull) - 1000000ll;
      v[i] = Int(r);
      if (r != 0) nonzero = true;
    }
    if (nonzero) return LatticeVector(std::move(v));
  }
}

struct FacetData {
  const HypersurfaceFacet* fc;
  LinearFunctional rep;                    // a functional achieving the face
  std::vector<const LinearFunctional*> off;  // functionals off the face
  std::vector<LatticeVector> span_lattice;   // saturated basis of the span
};

std::vector<FacetData> facet_data(const Hypersurface& h) {
  std::vector<FacetData> out;
  for (const auto& fc : h.facets) {
    FacetData d;
    d.fc = &fc;
    d.rep = h.t.functionals[fc.members[0]];
    std::set<std::size_t> mem(fc.members.begin(), fc.members.end());
    for (std::size_t i = 0; i < h.t.functionals.size(); ++i)
      if (!mem.count(i)) d.off.push_back(&h.t.functionals[i]);
    d.span_lattice = kernel_basis(IntMatrix::from_rows({fc.direction}));
    out.push_back(std::move(d));
  }
  return out;
}

enum class Outcome { Empty, Bounded, RayPlus, RayMinus, Degenerate };

// Intersection of the facet cone with the shifted 2-cone (u, w): the
// common points form an interval on a line; classify it exactly.
Outcome classify_pair_2d(const FacetData& fd, const LatticeVector& u,
                         const LatticeVector& w, const LatticeVector& shift) {
  const LinearFunctional& delta = fd.fc->direction;
  Int alpha = delta(u), beta = delta(w), gamma = delta(shift);
  if (alpha == 0 && beta == 0)
    return gamma == 0 ? Outcome::Degenerate : Outcome::Empty;
  // Base point and direction of {alpha a + beta b + gamma = 0}.
  Rat a0, b0;
  if (alpha != 0)
    a0 = Rat(-gamma) / Rat(alpha);
  else
    b0 = Rat(-gamma) / Rat(beta);
  Rat da(-beta), db(alpha);

  // Constraints p + q t >= 0 along the line.
  std::vector<std::pair<Rat, Rat>> cons;
  cons.push_back({a0, da});
  cons.push_back({b0, db});
  for (const LinearFunctional* off : fd.off) {
    LinearFunctional g = fd.rep - *off;
    Rat p = Rat(g(shift)) + a0 * Rat(g(u)) + b0 * Rat(g(w));
    Rat q = da * Rat(g(u)) + db * Rat(g(w));
    cons.push_back({p, q});
  }
  bool has_lo = false, has_hi = false;
  Rat tlo, thi;
  for (const auto& [p, q] : cons) {
    if (q == 0) {
      if (p == 0) return Outcome::Degenerate;
      if (p < 0) return Outcome::Empty;
      continue;
    }
    Rat bound = -p / q;
    if (q > 0) {
      if (!has_lo || bound > tlo) tlo = bound;
      has_lo = true;
    } else {
      if (!has_hi || bound < thi) thi = bound;
      has_hi = true;
    }
  }
  if (has_lo && has_hi) {
    if (tlo > thi) return Outcome::Empty;
    if (tlo == thi) return Outcome::Degenerate;
    return Outcome::Bounded;
  }
  if (!has_lo && !has_hi) return Outcome::Degenerate;  // cannot happen
  return has_lo ? Outcome::RayPlus : Outcome::RayMinus;
}

}  // namespace

WeightedFan stable_intersect_2d(const TRFunction& t, const WeightedFan& f,
                                std::uint64_t seed) {
  if (f.dim != 2)
    throw MalformedInputError("stable_intersect_2d needs a 2-dimensional fan");
  if (t.dim() != f.n)
    throw DimensionMismatchError("function and fan dimensions differ");
  Hypersurface h = hypersurface(t);
  std::vector<FacetData> fds = facet_data(h);

  // Per-cone span lattices and multiplicity cache.
  std::vector<std::array<LatticeVector, 2>> cone_basis;
  for (const auto& c : f.cones) {
    PlaneCoords pc = plane_coords(f.rays[c[0]], f.rays[c[1]]);
    cone_basis.push_back({pc.b1, pc.b2});
  }

  std::mt19937_64 eng(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    LatticeVector shift = draw_shift(eng, f.n);
    std::vector<std::pair<LatticeVector, Int>> contrib;
    bool ok = true;
    for (const FacetData& fd : fds) {
      for (std::size_t ci = 0; ci < f.cones.size() && ok; ++ci) {
        const LatticeVector& u = f.rays[f.cones[ci][0]];
        const LatticeVector& w = f.rays[f.cones[ci][1]];
        Outcome oc = classify_pair_2d(fd, u, w, shift);
        if (oc == Outcome::Degenerate) {
          ok = false;
          break;
        }
        if (oc != Outcome::RayPlus && oc != Outcome::RayMinus) continue;
        Int alpha = fd.fc->direction(u), beta = fd.fc->direction(w);
        LatticeVector e = (-beta) * u + alpha * w;
        if (oc == Outcome::RayMinus) e = -e;
        std::vector<LatticeVector> gens = fd.span_lattice;
        gens.push_back(cone_basis[ci][0]);
        gens.push_back(cone_basis[ci][1]);
        std::optional<Int> idx = lattice_index(gens);
        Int mult = fd.fc->weight * f.weights[ci] * *idx;
        contrib.push_back({primitive(e), mult});
      }
      if (!ok) break;
    }
    if (ok) return merge_1d(f.n, contrib);
  }
  throw GenericityFailureError("no generic shift found in 32 attempts");
}

Int stable_intersect_0d(const TRFunction& t, const WeightedFan& f,
                        std::uint64_t seed) {
  if (f.dim != 1)
    throw NotOneDimensionalError("stable_intersect_0d needs a 1-dimensional fan");
  if (t.dim() != f.n)
    throw DimensionMismatchError("function and fan dimensions differ");
  Hypersurface h = hypersurface(t);
  std::vector<FacetData> fds = facet_data(h);

  std::mt19937_64 eng(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    LatticeVector shift = draw_shift(eng, f.n);
    Int total = 0;
    bool ok = true;
    for (const FacetData& fd : fds) {
      const LinearFunctional& delta = fd.fc->direction;
      for (std::size_t ci = 0; ci < f.cones.size() && ok; ++ci) {
        const LatticeVector& u = f.rays[f.cones[ci][0]];
        Int q = delta(u), gamma = delta(shift);
        if (q == 0) {
          if (gamma == 0) ok = false;  // shift inside the deficient span
          continue;
        }
        Rat astar = Rat(-gamma) / Rat(q);
        if (astar == 0) {
          ok = false;
          break;
        }
        if (astar < 0) continue;
        bool meets = true;
        for (const LinearFunctional* off : fd.off) {
          LinearFunctional g = fd.rep - *off;
          Rat val = Rat(g(shift)) + astar * Rat(g(u));
          if (val == 0) {
            ok = false;
            break;
          }
          if (val < 0) {
            meets = false;
            break;
          }
        }
        if (!ok || !meets) continue;
        std::vector<LatticeVector> gens = fd.span_lattice;
        gens.push_back(u);
        std::optional<Int> idx = lattice_index(gens);
        total += fd.fc->weight * f.weights[ci] * *idx;
      }
      if (!ok) break;
    }
    if (ok) return total;
  }
  throw GenericityFailureError("no generic shift found in 32 attempts");
}

}  // namespace tropfan
