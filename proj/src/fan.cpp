#include "tropfan/fan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tropfan {

namespace {

std::string vec_str(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

// 2x2 determinant of plane-coordinate vectors.
Int det2(const std::array<Int, 2>& a, const std::array<Int, 2>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

// Is x (plane coordinates) in the cone spanned by u and w?  u, w independent.
bool in_cone2(const std::array<Int, 2>& u, const std::array<Int, 2>& w,
              const std::array<Int, 2>& x, bool strict) {
  Int d = det2(u, w);
  int s = sign(d);
  Int a = s * det2(x, w);  // proportional to the u-coefficient
  Int b = s * det2(u, x);  // proportional to the w-coefficient
  if (strict) return a > 0 && b > 0;
  return a >= 0 && b >= 0;
}

}  // namespace

WeightedFan make_fan_1d(std::size_t n, std::vector<LatticeVector> rays,
                        std::vector<Int> weights) {
  if (rays.size() != weights.size())
    throw MalformedInputError("ray and weight counts differ");
  WeightedFan f;
  f.n = n;
  f.dim = 1;
  f.rays = std::move(rays);
  f.weights = std::move(weights);
  f.cones.reserve(f.rays.size());
  for (std::size_t i = 0; i < f.rays.size(); ++i) f.cones.push_back({i});
  return f;
}

WeightedFan make_fan_2d(std::size_t n, std::vector<LatticeVector> rays,
                        std::vector<std::vector<std::size_t>> cones,
                        std::vector<Int> weights) {
  if (cones.size() != weights.size())
    throw MalformedInputError("cone and weight counts differ");
  WeightedFan f;
  f.n = n;
  f.dim = 2;
  f.rays = std::move(rays);
  f.cones = std::move(cones);
  f.weights = std::move(weights);
  return f;
}

std::vector<std::string> validate(const WeightedFan& f) {
  std::vector<std::string> d;
  if (f.dim != 1 && f.dim != 2) {
    d.push_back("fan dimension must be 1 or 2");
    return d;
  }
  if (f.n == 0) {
    d.push_back("ambient dimension must be positive");
    return d;
  }
  bool structural = true;
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (f.rays[i].dim() != f.n) {
      d.push_back("ray " + std::to_string(i) + " has wrong length");
      structural = false;
    }
  if (f.weights.size() != f.cones.size()) {
    d.push_back("weight list not parallel to cone list");
    structural = false;
  }
  for (std::size_t i = 0; i < f.cones.size(); ++i) {
    if (f.cones[i].size() != f.dim) {
      d.push_back("cone " + std::to_string(i) + " has wrong arity");
      structural = false;
      continue;
    }
    for (std::size_t r : f.cones[i])
      if (r >= f.rays.size()) {
        d.push_back("cone " + std::to_string(i) + " references a missing ray");
        structural = false;
      }
    if (f.dim == 2 && f.cones[i].size() == 2 &&
        f.cones[i][0] == f.cones[i][1]) {
      d.push_back("cone " + std::to_string(i) + " repeats a ray");
      structural = false;
    }
  }
  if (!structural) return d;

  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    if (f.rays[i].is_zero())
      d.push_back("ray " + std::to_string(i) + " is zero");
    else if (ivec_content(f.rays[i].c) != 1)
      d.push_back("ray " + std::to_string(i) + " is not primitive " +
                  vec_str(f.rays[i].c));
  }
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    for (std::size_t j = i + 1; j < f.rays.size(); ++j)
      if (f.rays[i] == f.rays[j])
        d.push_back("rays " + std::to_string(i) + " and " + std::to_string(j) +
                    " coincide");
  for (std::size_t i = 0; i < f.cones.size(); ++i)
    if (f.weights[i] <= 0)
      d.push_back("cone " + std::to_string(i) + " has non-positive weight");
  {
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
      std::vector<std::size_t> key = f.cones[i];
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second)
        d.push_back("cone " + std::to_string(i) + " duplicates another cone");
    }
  }
  if (!d.empty()) return d;

  if (f.dim == 1) return d;  // distinct primitive rays already pairwise-face

  // Strong convexity.
  for (std::size_t i = 0; i < f.cones.size(); ++i) {
    const LatticeVector& u = f.rays[f.cones[i][0]];
    const LatticeVector& w = f.rays[f.cones[i][1]];
    if (rank(IntMatrix::from_row_vectors({u, w})) != 2)
      d.push_back("cone " + std::to_string(i) + " is not strongly convex");
  }
  if (!d.empty()) return d;

  // Purity: every ray must be a face of some top cone.
  {
    std::vector<bool> used(f.rays.size(), false);
    for (const auto& c : f.cones)
      for (std::size_t r : c) used[r] = true;
    for (std::size_t i = 0; i < f.rays.size(); ++i)
      if (!used[i])
        d.push_back("ray " + std::to_string(i) + " lies in no top cone");
  }

  // Per-cone plane data.
  std::vector<PlaneCoords> pcs;
  std::vector<std::vector<LatticeVector>> plane_bases;
  std::vector<std::array<std::array<Int, 2>, 2>> gens2;
  for (const auto& c : f.cones) {
    const LatticeVector& u = f.rays[c[0]];
    const LatticeVector& w = f.rays[c[1]];
    PlaneCoords pc = plane_coords(u, w);
    gens2.push_back({*pc.to_plane(u), *pc.to_plane(w)});
    plane_bases.push_back({pc.b1, pc.b2});
    pcs.push_back(std::move(pc));
  }

  // A listed ray inside a cone must be one of its two generators.
  for (std::size_t r = 0; r < f.rays.size(); ++r)
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
      if (f.cones[i][0] == r || f.cones[i][1] == r) continue;
      auto x = pcs[i].to_plane(f.rays[r]);
      if (x && in_cone2(gens2[i][0], gens2[i][1], *x, false))
        d.push_back("ray " + std::to_string(r) + " is not a face of cone " +
                    std::to_string(i));
    }

  // Pairwise cone intersections must be common faces.
  for (std::size_t i = 0; i < f.cones.size(); ++i)
    for (std::size_t j = i + 1; j < f.cones.size(); ++j) {
      bool same_plane = plane_bases[i] == plane_bases[j];
      std::string overlap = "cones " + std::to_string(i) + " and " +
                            std::to_string(j) + " do not meet in a common face";
      if (same_plane) {
        // Both cones in one plane: collect generators of either lying in
        // the other; the intersection is spanned by them.  Opposite parallel
        // directions cannot occur once strong convexity has passed.
        auto gi = gens2[i], gj = gens2[j];
        std::vector<std::pair<std::array<Int, 2>, std::size_t>> s;
        for (int a = 0; a < 2; ++a) {
          if (in_cone2(gj[0], gj[1], gi[a], false)) s.push_back({gi[a], f.cones[i][a]});
          if (in_cone2(gi[0], gi[1], gj[a], false)) s.push_back({gj[a], f.cones[j][a]});
        }
        if (s.empty()) continue;  // intersection is the origin
        bool twodim = false;
        for (std::size_t a = 1; a < s.size(); ++a)
          if (det2(s[0].first, s[a].first) != 0) twodim = true;
        if (twodim) {
          // Distinct cone index sets always mean a genuine overlap here.
          d.push_back(overlap);
          continue;
        }
        // Single shared ray: it has to be a generator of both cones.
        std::size_t r = s[0].second;
        bool gen_i = f.cones[i][0] == r || f.cones[i][1] == r;
        bool gen_j = f.cones[j][0] == r || f.cones[j][1] == r;
        if (!gen_i || !gen_j) d.push_back(overlap);
      } else {
        // Distinct planes meet in a line at most; find its direction.
        IntMatrix rows_i = IntMatrix::from_row_vectors(
            {plane_bases[i][0], plane_bases[i][1]});
        IntMatrix rows_j = IntMatrix::from_row_vectors(
            {plane_bases[j][0], plane_bases[j][1]});
        std::vector<LatticeVector> ann_i = kernel_basis(rows_i);
        std::vector<LatticeVector> ann_j = kernel_basis(rows_j);
        std::vector<IntVec> stacked;
        for (const auto& v : ann_i) stacked.push_back(v.c);
        for (const auto& v : ann_j) stacked.push_back(v.c);
        std::vector<LatticeVector> line = kernel_basis(IntMatrix(stacked));
        if (line.empty()) continue;  // planes meet only at the origin
        for (int sgn_dir = 0; sgn_dir < 2; ++sgn_dir) {
          LatticeVector dvec = sgn_dir ? -line[0] : line[0];
          auto xi = pcs[i].to_plane(dvec);
          auto xj = pcs[j].to_plane(dvec);
          if (!xi || !xj) continue;
          if (!in_cone2(gens2[i][0], gens2[i][1], *xi, false)) continue;
          if (!in_cone2(gens2[j][0], gens2[j][1], *xj, false)) continue;
          bool gen_i = f.rays[f.cones[i][0]] == dvec || f.rays[f.cones[i][1]] == dvec;
          bool gen_j = f.rays[f.cones[j][0]] == dvec || f.rays[f.cones[j][1]] == dvec;
          if (!gen_i || !gen_j) d.push_back(overlap);
        }
      }
    }
  return d;
}

PlaneCoords plane_coords(const LatticeVector& u, const LatticeVector& w) {
  std::vector<LatticeVector> basis = saturated_span_basis({u, w}, u.dim());
  if (basis.size() != 2)
    throw DimensionMismatchError("plane generators are dependent");
  PlaneCoords pc;
  pc.b1 = basis[0];
  pc.b2 = basis[1];
  std::size_t n = pc.b1.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Int dd = pc.b1[i] * pc.b2[j] - pc.b1[j] * pc.b2[i];
      if (dd != 0) {
        pc.pivot_i = i;
        pc.pivot_j = j;
        pc.det = dd;
        return pc;
      }
    }
  throw DimensionMismatchError("degenerate plane basis");
}

std::optional<std::array<Int, 2>> PlaneCoords::to_plane(
    const LatticeVector& v) const {
  // Solve v = x*b1 + y*b2 on the pivot rows, then confirm on all rows.
  Int xn = v[pivot_i] * b2[pivot_j] - v[pivot_j] * b2[pivot_i];
  Int yn = b1[pivot_i] * v[pivot_j] - b1[pivot_j] * v[pivot_i];
  if (xn % det != 0 || yn % det != 0) return std::nullopt;
  Int x = xn / det, y = yn / det;
  for (std::size_t r = 0; r < v.dim(); ++r)
    if (x * b1[r] + y * b2[r] != v[r]) return std::nullopt;
  return std::array<Int, 2>{x, y};
}

LatticeVector PlaneCoords::to_ambient(const Int& x, const Int& y) const {
  IntVec out(b1.dim());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = x * b1[r] + y * b2[r];
  return LatticeVector(std::move(out));
}

LatticeVector cross_ray_generator(const LatticeVector& u,
                                  const LatticeVector& w) {
  PlaneCoords pc = plane_coords(u, w);
  std::array<Int, 2> up = *pc.to_plane(u);
  std::array<Int, 2> wp = *pc.to_plane(w);
  // Complete the primitive u to a lattice basis (u, c) of the plane.
  Int a, b;
  Int g = egcd(up[0], up[1], a, b);
  if (g != 1) throw MalformedInputError("cone generator is not primitive");
  std::array<Int, 2> c = {-b, a};  // det(u, c) = 1
  // In the basis (u, c) the other generator is (p, q); the quotient by the
  // line of u is generated by +-c, and the sign of q picks the side of w.
  Int q = det2(up, wp);
  Int p = det2(wp, c);
  int s = sign(q);
  // Smallest shift along u that lands s*c inside the cone.
  Rat bound = Rat(s * p) / Rat(q);
  Int t = rat_ceil(bound);
  Int vx = t * up[0] + s * c[0];
  Int vy = t * up[1] + s * c[1];
  return pc.to_ambient(vx, vy);
}

BalanceReport check_balanced(const WeightedFan& f) {
  BalanceReport rep;
  if (f.dim == 1) {
    if (f.cones.empty()) return rep;
    IntVec s(f.n, Int(0));
    for (std::size_t i = 0; i < f.cones.size(); ++i)
      s = ivec_add(s, ivec_scale(f.weights[i], f.rays[f.cones[i][0]].c));
    if (!ivec_is_zero(s)) {
      rep.balanced = false;
      rep.failures.push_back("origin: weighted ray sum is " + vec_str(s));
    }
    return rep;
  }
  for (std::size_t t = 0; t < f.rays.size(); ++t) {
    std::vector<std::size_t> at = cones_at_ray(f, t);
    if (at.empty()) continue;
    IntVec s(f.n, Int(0));
    for (std::size_t ci : at) {
      std::size_t other =
          f.cones[ci][0] == t ? f.cones[ci][1] : f.cones[ci][0];
      LatticeVector v = cross_ray_generator(f.rays[t], f.rays[other]);
      s = ivec_add(s, ivec_scale(f.weights[ci], v.c));
    }
    // Balanced at the ray iff the sum lies on the ray's line.
    const IntVec& u = f.rays[t].c;
    bool parallel = true;
    for (std::size_t i = 0; i < f.n && parallel; ++i)
      for (std::size_t j = i + 1; j < f.n; ++j)
        if (s[i] * u[j] != s[j] * u[i]) {
          parallel = false;
          break;
        }
    if (!parallel) {
      rep.balanced = false;
      rep.failures.push_back("ray " + std::to_string(t) +
                             ": cross-ray sum " + vec_str(s) +
                             " is off the ray line");
    }
  }
  return rep;
}

WeightedFan refine_by(const WeightedFan& f, const TRFunction& t) {
  if (t.dim() != f.n)
    throw DimensionMismatchError("function and fan dimensions differ");
  if (f.dim == 1) return f;

  std::map<IntVec, std::size_t> ray_ix;
  std::vector<LatticeVector> out_rays;
  auto ray_id = [&](const LatticeVector& v) {
    auto it = ray_ix.find(v.c);
    if (it != ray_ix.end()) return it->second;
    std::size_t id = out_rays.size();
    out_rays.push_back(v);
    ray_ix.emplace(v.c, id);
    return id;
  };
  std::vector<std::pair<std::vector<std::size_t>, Int>> out_cones;

  for (std::size_t ci = 0; ci < f.cones.size(); ++ci) {
    const LatticeVector& u = f.rays[f.cones[ci][0]];
    const LatticeVector& w = f.rays[f.cones[ci][1]];
    PlaneCoords pc = plane_coords(u, w);
    std::array<Int, 2> up = *pc.to_plane(u);
    std::array<Int, 2> wp = *pc.to_plane(w);
    // Restrict the functionals to the plane and drop duplicates.
    std::vector<std::array<Int, 2>> ls;
    for (const auto& l : t.functionals)
      ls.push_back({l(pc.b1), l(pc.b2)});
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());

    auto val = [](const std::array<Int, 2>& l, const std::array<Int, 2>& x) {
      return l[0] * x[0] + l[1] * x[1];
    };
    // Interior rays where two functionals tie at the maximum.
    std::vector<std::array<Int, 2>> dirs;
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j) {
        std::array<Int, 2> dl = {ls[i][0] - ls[j][0], ls[i][1] - ls[j][1]};
        for (int sg = 0; sg < 2; ++sg) {
          std::array<Int, 2> cand = {sg ? dl[1] : -dl[1], sg ? -dl[0] : dl[0]};
          if (!in_cone2(up, wp, cand, true)) continue;
          Int m = val(ls[0], cand);
          for (std::size_t k = 1; k < ls.size(); ++k) {
            Int x = val(ls[k], cand);
            if (x > m) m = x;
          }
          if (val(ls[i], cand) != m || val(ls[j], cand) != m) continue;
          Int g = gcd_int(abs_int(cand[0]), abs_int(cand[1]));
          dirs.push_back({cand[0] / g, cand[1] / g});
        }
      }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    // Angular order from u to w inside the cone.
    int orient = sign(det2(up, wp));
    std::sort(dirs.begin(), dirs.end(),
              [&](const std::array<Int, 2>& a, const std::array<Int, 2>& b) {
                return sign(det2(a, b)) == orient;
              });
    std::vector<std::array<Int, 2>> chain;
    chain.push_back(up);
    for (const auto& dd : dirs) chain.push_back(dd);
    chain.push_back(wp);
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      std::size_t r1 = ray_id(pc.to_ambient(chain[k][0], chain[k][1]));
      std::size_t r2 = ray_id(pc.to_ambient(chain[k + 1][0], chain[k + 1][1]));
      out_cones.push_back({{r1, r2}, f.weights[ci]});
    }
  }

  // Canonical order: rays sorted, cones as sorted index pairs, sorted.
  std::vector<std::size_t> perm(out_rays.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return out_rays[a] < out_rays[b];
  });
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  WeightedFan out;
  out.n = f.n;
  out.dim = 2;
  for (std::size_t i : perm) out.rays.push_back(out_rays[i]);
  for (auto& c : out_cones) {
    std::size_t a = inv[c.first[0]], b = inv[c.first[1]];
    if (a > b) std::swap(a, b);
    c.first = {a, b};
  }
  std::sort(out_cones.begin(), out_cones.end());
  for (auto& c : out_cones) {
    out.cones.push_back(c.first);
    out.weights.push_back(c.second);
  }
  return out;
}

WeightedFan pushforward(const IntMatrix& m, const WeightedFan& f) {
  if (f.dim != 1)
    throw NotOneDimensionalError("pushforward needs a 1-dimensional fan");
  if (m.n_cols != f.n)
    throw DimensionMismatchError("map and fan dimensions differ");
  std::vector<std::pair<LatticeVector, Int>> contrib;
  for (std::size_t i = 0; i < f.cones.size(); ++i) {
    LatticeVector img = m.apply(f.rays[f.cones[i][0]]);
    if (img.is_zero()) continue;
    Int stretch = ivec_content(img.c);
    contrib.push_back({primitive(img), f.weights[i] * stretch});
  }
  return merge_1d(m.n_rows, contrib);
}

std::vector<std::size_t> cones_at_ray(const WeightedFan& f, std::size_t ray) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.cones.size(); ++i)
    for (std::size_t r : f.cones[i])
      if (r == ray) {
        out.push_back(i);
        break;
      }
  return out;
}

WeightedFan merge_1d(std::size_t n,
                     const std::vector<std::pair<LatticeVector, Int>>& contrib,
                     bool allow_negative) {
  std::map<IntVec, Int> acc;
  for (const auto& [v, w] : contrib) acc[v.c] += w;
  std::vector<LatticeVector> rays;
  std::vector<Int> weights;
  for (const auto& [v, w] : acc) {
    if (w == 0) continue;
    if (w < 0 && !allow_negative)
      throw NegativeWeightError("negative merged weight at " + vec_str(v));
    rays.push_back(LatticeVector(v));
    weights.push_back(w);
  }
  return make_fan_1d(n, std::move(rays), std::move(weights));
}

WeightedFan plane_fan(const LatticeVector& u, const LatticeVector& w) {
  PlaneCoords pc = plane_coords(u, w);
  std::vector<LatticeVector> rays = {pc.b1, pc.b2, -pc.b1, -pc.b2};
  std::vector<std::vector<std::size_t>> cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return make_fan_2d(u.dim(), std::move(rays), std::move(cones),
                     {Int(1), Int(1), Int(1), Int(1)});
}

bool cycles_equal_1d(const WeightedFan& a, const WeightedFan& b) {
  if (a.n != b.n) return false;
  auto canon = [](const WeightedFan& f) {
    std::vector<std::pair<LatticeVector, Int>> c;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
      const LatticeVector& r = f.rays[f.cones[i][0]];
      if (r.is_zero()) continue;
      c.push_back({primitive(r), f.weights[i]});
    }
    return merge_1d(f.n, c, true);
  };
  WeightedFan ca = canon(a), cb = canon(b);
  return ca.rays == cb.rays && ca.weights == cb.weights;
}

}  // namespace tropfan
