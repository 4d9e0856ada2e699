#include "tropfan/classify2d.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tropfan/errors.hpp"
#include "tropfan/rational.hpp"

namespace tropfan {

namespace {

using PlaneKey = std::vector<LatticeVector>;

// The complete fan on the four coordinate quadrants of the plane lattice.
WeightedFan quadrant_fan() {
  std::vector<LatticeVector> rays = {
      LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{-1, 0},
      LatticeVector{0, -1}};
  std::vector<std::vector<std::size_t>> cones = {{0, 1}, {1, 2}, {2, 3},
                                                 {0, 3}};
  return make_fan_2d(2, rays, cones, {1, 1, 1, 1});
}

TRFunction restrict_to(const TRFunction& t, const LatticeVector& b1,
                       const LatticeVector& b2) {
  std::vector<LinearFunctional> fs;
  for (const auto& l : t.functionals)
    fs.push_back(LinearFunctional(IntVec{l(b1), l(b2)}));
  return TRFunction(fs);
}

Profile profile_on_basis(const ConventionPair& p, const LatticeVector& b1,
                         const LatticeVector& b2) {
  WeightedFan sq = quadrant_fan();
  TRFunction r1 = restrict_to(p.t1, b1, b2);
  TRFunction r2 = restrict_to(p.t2, b1, b2);
  Profile pr;
  pr.a = intersection_number({r1, r1}, sq);
  pr.b = intersection_number({r1, r2}, sq);
  pr.c = intersection_number({r2, r2}, sq);
  return pr;
}

// Integral primitive solution of m x = rhs, when one exists.
std::optional<LatticeVector> solve_ray(const IntMatrix& m, const IntVec& rhs) {
  RatMatrix a(m.n_rows);
  for (std::size_t i = 0; i < m.n_rows; ++i) a[i] = to_rat(m.rows[i]);
  auto sol = solve_unique(a, to_rat(rhs));
  if (!sol) return std::nullopt;
  IntVec x(sol->size());
  for (std::size_t i = 0; i < sol->size(); ++i) {
    if (!is_integer((*sol)[i])) return std::nullopt;
    x[i] = rat_num((*sol)[i]);
  }
  if (ivec_is_zero(x) || ivec_content(x) != 1) return std::nullopt;
  return LatticeVector(x);
}

std::vector<std::size_t> mask_members(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i + 1);
  return out;
}

void check_pattern_scale(std::size_t bits) {
  if (bits > 16)
    throw SearchBoundExceededError("pattern space is beyond desk scale");
}

// Raw two-lines candidates: all integral primitive solutions of the unit
// value patterns, before any profile filtering.
void raw_two_lines(const ConventionPair& p,
                   std::map<PlaneKey, PlaneCandidate>& out) {
  std::size_t k = p.k, nk = p.n - p.k;
  if (k == 0 || nk == 0) return;
  check_pattern_scale(std::max(k, nk));
  std::vector<std::pair<std::uint32_t, LatticeVector>> rho2s, rho1s;
  for (std::uint32_t ma = 1; ma < (1u << k); ++ma) {
    IntVec rhs(p.n, 0);
    for (std::size_t i = 0; i < k; ++i)
      if (ma & (1u << i)) rhs[i] = 1;
    if (auto r = solve_ray(p.m, rhs)) rho2s.push_back({ma, *r});
  }
  for (std::uint32_t mb = 1; mb < (1u << nk); ++mb) {
    IntVec rhs(p.n, 0);
    for (std::size_t i = 0; i < nk; ++i)
      if (mb & (1u << i)) rhs[k + i] = 1;
    if (auto r = solve_ray(p.m, rhs)) rho1s.push_back({mb, *r});
  }
  for (const auto& [mb, rho1] : rho1s)
    for (const auto& [ma, rho2] : rho2s) {
      PlaneKey key = saturated_span_basis({rho1, rho2}, p.n);
      if (key.size() != 2 || out.count(key)) continue;
      PlaneCandidate c;
      c.span = key;
      c.branch = PlaneBranch::TwoLines;
      c.a_set = mask_members(ma);
      c.b_set = mask_members(mb);
      out.emplace(key, std::move(c));
    }
}

// Shared table machinery for the trivalent curve branches.  The curve has
// rays r1, r2, r3 summing to zero; `first_active` controls whether the
// first-side rows carry the case tables or are identically zero.
void raw_curve_tables(const ConventionPair& q, bool swapped_roles,
                      bool first_active, PlaneBranch branch,
                      std::map<PlaneKey, PlaneCandidate>& out) {
  std::size_t k = q.k, nk = q.n - q.k;
  if (nk == 0) return;
  if (first_active && k == 0) return;
  check_pattern_scale(std::max(k, nk));
  // Value tables for one side: the distinguished ray's rows take value 1 on
  // a nonempty support set, which splits between the two remaining rays as
  // the entries forced to -1.
  struct SideTable {
    std::array<IntVec, 3> cols;
  };
  auto side_tables = [](std::size_t size, std::size_t star) {
    std::vector<SideTable> ts;
    std::size_t o1 = star == 0 ? 1 : 0;
    std::size_t o2 = star == 2 ? 1 : 2;
    for (std::uint32_t d = 1; d < (1u << size); ++d) {
      for (std::uint32_t sub = d;; sub = (sub - 1) & d) {
        SideTable t;
        for (auto& c : t.cols) c.assign(size, 0);
        for (std::size_t i = 0; i < size; ++i) {
          if (!(d & (1u << i))) continue;
          t.cols[star][i] = 1;
          if (sub & (1u << i)) t.cols[o1][i] = -1;
          else t.cols[o2][i] = -1;
        }
        ts.push_back(t);
        if (sub == 0) break;
      }
    }
    return ts;
  };
  std::vector<SideTable> firsts;
  if (first_active) {
    firsts = side_tables(k, 0);
  } else {
    SideTable zero;
    for (auto& c : zero.cols) c.assign(k, 0);
    firsts.push_back(zero);
  }
  for (const auto& tv : firsts) {
    // The second side's unit ray may be any of the three curve rays when
    // the first side pins down r1; otherwise relabelling fixes it to r1.
    std::size_t star_hi = first_active ? 3 : 1;
    for (std::size_t star = 0; star < star_hi; ++star) {
      for (const auto& tw : side_tables(nk, star)) {
        std::array<LatticeVector, 3> r = {LatticeVector{}, LatticeVector{},
                                          LatticeVector{}};
        bool good = true;
        for (std::size_t j = 0; j < 3 && good; ++j) {
          IntVec rhs(q.n);
          for (std::size_t i = 0; i < k; ++i) rhs[i] = tv.cols[j][i];
          for (std::size_t i = 0; i < nk; ++i) rhs[k + i] = tw.cols[j][i];
          auto sol = solve_ray(q.m, rhs);
          if (!sol) good = false;
          else r[j] = *sol;
        }
        if (!good) continue;
        if (r[0] == r[1] || r[0] == -r[1] || r[0] == r[2] || r[0] == -r[2] ||
            r[1] == r[2] || r[1] == -r[2])
          continue;
        if (!(r[0] + r[1] + r[2]).is_zero()) continue;
        PlaneKey key = saturated_span_basis({r[0], r[1], r[2]}, q.n);
        if (key.size() != 2 || out.count(key)) continue;
        PlaneCandidate c;
        c.span = key;
        c.branch = branch;
        c.swapped_roles = swapped_roles;
        c.triple = {r[0], r[1], r[2]};
        out.emplace(key, std::move(c));
      }
    }
  }
}

std::vector<PlaneCandidate> finish(std::map<PlaneKey, PlaneCandidate>&& raw,
                                   const ConventionPair& p,
                                   bool (*keep)(const Profile&, bool)) {
  std::vector<PlaneCandidate> out;
  for (auto& [key, cand] : raw) {
    cand.profile = profile_on_basis(p, key[0], key[1]);
    if (keep(cand.profile, cand.swapped_roles)) out.push_back(cand);
  }
  return out;
}

}  // namespace

ConventionPair make_convention_pair(const TRFunction& t1,
                                    const TRFunction& t2) {
  ConventionPair p;
  p.t1 = t1;
  p.t2 = t2;
  p.n = t1.dim();
  if (t2.dim() != p.n)
    throw DimensionMismatchError("pair functions live in different spaces");
  for (const TRFunction* t : {&t1, &t2}) {
    if (t->functionals.empty() || !t->functionals.front().is_zero())
      throw MalformedInputError("pair function must start with the zero functional");
    for (std::size_t i = 1; i < t->functionals.size(); ++i)
      if (t->functionals[i].is_zero())
        throw MalformedInputError("pair function repeats the zero functional");
  }
  p.k = t1.functionals.size() - 1;
  std::size_t nk = t2.functionals.size() - 1;
  if (p.k + nk != p.n)
    throw MalformedInputError(
        "nonzero functionals must fill the ambient dimension");
  std::vector<LinearFunctional> rows;
  for (std::size_t i = 1; i <= p.k; ++i) rows.push_back(t1.functionals[i]);
  for (std::size_t i = 1; i <= nk; ++i) rows.push_back(t2.functionals[i]);
  p.m = IntMatrix::from_rows(rows);
  if (det(p.m) == 0)
    throw MalformedInputError("pair functionals are linearly dependent");
  return p;
}

ConventionPair swapped(const ConventionPair& p) {
  ConventionPair q;
  q.t1 = p.t2;
  q.t2 = p.t1;
  q.n = p.n;
  q.k = p.n - p.k;
  std::vector<LinearFunctional> rows;
  for (std::size_t i = p.k; i < p.n; ++i) rows.emplace_back(p.m.rows[i]);
  for (std::size_t i = 0; i < p.k; ++i) rows.emplace_back(p.m.rows[i]);
  q.m = IntMatrix::from_rows(rows);
  return q;
}

Profile plane_profile(const ConventionPair& p, const LatticeVector& g1,
                      const LatticeVector& g2) {
  if (g1.dim() != p.n || g2.dim() != p.n)
    throw DimensionMismatchError("plane generators have the wrong dimension");
  PlaneKey basis = saturated_span_basis({g1, g2}, p.n);
  if (basis.size() != 2)
    throw MalformedInputError("plane generators are not independent");
  return profile_on_basis(p, basis[0], basis[1]);
}

std::vector<PlaneCandidate> enumerate_planes_two_lines(
    const ConventionPair& p) {
  std::map<PlaneKey, PlaneCandidate> raw;
  raw_two_lines(p, raw);
  return finish(std::move(raw), p, [](const Profile& pr, bool) {
    return pr.a == 0 && pr.b == 1 && pr.c == 0;
  });
}

std::vector<PlaneCandidate> enumerate_planes_curve(const ConventionPair& p) {
  std::map<PlaneKey, PlaneCandidate> direct, mirrored;
  raw_curve_tables(p, false, true, PlaneBranch::Curve, direct);
  raw_curve_tables(swapped(p), true, true, PlaneBranch::Curve, mirrored);
  std::vector<PlaneCandidate> out = finish(
      std::move(direct), p, [](const Profile& pr, bool) {
        return pr.a == 1 && pr.b == 1 && pr.c <= 1;
      });
  std::set<PlaneKey> seen;
  for (const auto& c : out) seen.insert(c.span);
  std::vector<PlaneCandidate> swept = finish(
      std::move(mirrored), p, [](const Profile& pr, bool) {
        return pr.c == 1 && pr.b == 1 && pr.a <= 1;
      });
  for (auto& c : swept)
    if (!seen.count(c.span)) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.span < y.span;
  });
  return out;
}

std::vector<PlaneCandidate> enumerate_planes_one_sided(
    const ConventionPair& p) {
  std::map<PlaneKey, PlaneCandidate> raw;
  raw_curve_tables(p, false, false, PlaneBranch::OneSided, raw);
  std::vector<PlaneCandidate> out = finish(
      std::move(raw), p, [](const Profile& pr, bool) {
        return pr.a == 0 && pr.b == 0 && pr.c == 1;
      });
  for (const Profile& forbidden : {Profile{0, 0, 0}, Profile{1, 0, 1}}) {
    if (!sweep_profile(p, forbidden).empty())
      throw StructureViolationError(
          "a plane with a provably impossible profile was found");
  }
  return out;
}

std::vector<PlaneCandidate> sweep_profile(const ConventionPair& p,
                                          const Profile& target) {
  std::map<PlaneKey, PlaneCandidate> raw;
  raw_two_lines(p, raw);
  raw_curve_tables(p, false, true, PlaneBranch::Curve, raw);
  raw_curve_tables(swapped(p), true, true, PlaneBranch::Curve, raw);
  raw_curve_tables(p, false, false, PlaneBranch::OneSided, raw);
  raw_curve_tables(swapped(p), true, false, PlaneBranch::OneSided, raw);
  std::vector<PlaneCandidate> out;
  for (auto& [key, cand] : raw) {
    cand.profile = profile_on_basis(p, key[0], key[1]);
    if (cand.profile == target) out.push_back(cand);
  }
  return out;
}

Gallery2D gallery_2d(const WeightedFan& f, const TRFunction& l1,
                     const TRFunction& l2) {
  if (f.dim != 2)
    throw MalformedInputError("galleries are defined on 2-dimensional fans");
  for (const TRFunction* l : {&l1, &l2}) {
    if (l->dim() != f.n)
      throw DimensionMismatchError("binomial and fan dimensions differ");
    if (unique_functionals(*l).size() != 2)
      throw MalformedInputError("gallery inputs must be binomials");
  }
  Int num = intersection_number({l1, l2}, f);
  if (num != 1)
    throw NotRegularSequenceError("double product is " + num.str() +
                                  ", expected 1");
  auto diff = [](const TRFunction& l) {
    std::vector<LinearFunctional> u = unique_functionals(l);
    return u[1] - u[0];
  };
  std::vector<LatticeVector> lin =
      kernel_basis(IntMatrix::from_rows({diff(l1), diff(l2)}));
  Gallery2D g;
  g.l1 = l1;
  g.l2 = l2;
  for (std::size_t i = 0; i < f.cones.size(); ++i) {
    const LatticeVector& u = f.rays[f.cones[i][0]];
    const LatticeVector& w = f.rays[f.cones[i][1]];
    std::vector<LatticeVector> stacked = {u, w};
    for (const auto& b : lin) stacked.push_back(b);
    bool by_span = rank(IntMatrix::from_row_vectors(stacked)) == f.n;
    std::vector<LatticeVector> basis = saturated_span_basis({u, w}, f.n);
    WeightedFan sq = quadrant_fan();
    Int facet_num = intersection_number(
        {restrict_to(l1, basis[0], basis[1]),
         restrict_to(l2, basis[0], basis[1])},
        sq);
    bool by_product = facet_num == 1;
    if (by_span != by_product)
      throw StructureViolationError("facet criteria disagree on a cone");
    if (by_span) {
      if (f.weights[i] != 1)
        throw StructureViolationError("gallery facet with weight above one");
      g.facets.push_back(i);
    }
  }
  std::set<std::size_t> gallery_rays;
  for (std::size_t i : g.facets)
    for (std::size_t r : f.cones[i]) gallery_rays.insert(r);
  for (std::size_t r : gallery_rays) {
    std::size_t count = 0;
    for (std::size_t i : g.facets)
      if (f.cones[i][0] == r || f.cones[i][1] == r) ++count;
    if (count != 2)
      throw StructureViolationError(
          "gallery ray not shared by exactly two gallery facets");
  }
  return g;
}

FacetBoundReport facet_bound_check(const ConventionPair& p,
                                   const WeightedFan& f) {
  if (f.dim != 2)
    throw MalformedInputError("facet bounds need a 2-dimensional fan");
  BalanceReport br = check_balanced(f);
  if (!br.balanced) throw UnbalancedError(br.failures.front());
  FacetBoundReport rep;
  rep.fan_profile.a = intersection_number({p.t1, p.t1}, f);
  rep.fan_profile.b = intersection_number({p.t1, p.t2}, f);
  rep.fan_profile.c = intersection_number({p.t2, p.t2}, f);
  for (std::size_t i = 0; i < f.cones.size(); ++i) {
    Profile fp = plane_profile(p, f.rays[f.cones[i][0]], f.rays[f.cones[i][1]]);
    rep.facet_profiles.push_back(fp);
    if (fp.a > rep.fan_profile.a || fp.b > rep.fan_profile.b ||
        fp.c > rep.fan_profile.c) {
      rep.ok = false;
      rep.violations.push_back("facet " + std::to_string(i) +
                               " exceeds the fan profile");
    }
  }
  return rep;
}

WeightedFan fan_from_planes(
    const std::vector<std::vector<LatticeVector>>& planes, std::size_t n) {
  if (planes.empty()) throw MalformedInputError("no planes given");
  std::vector<PlaneKey> bases;
  for (const auto& pl : planes) {
    if (pl.size() != 2)
      throw MalformedInputError("each plane needs two generators");
    PlaneKey b = saturated_span_basis(pl, n);
    if (b.size() != 2)
      throw MalformedInputError("plane generators are not independent");
    for (const auto& prev : bases)
      if (prev == b) throw MalformedInputError("duplicate plane");
    bases.push_back(b);
  }
  // Intersection lines, in the intrinsic coordinates of each plane.
  std::vector<std::vector<LatticeVector>> anns;
  for (const auto& b : bases)
    anns.push_back(kernel_basis(IntMatrix::from_row_vectors(b)));
  std::vector<std::vector<IntVec>> extra(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i)
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      std::vector<LatticeVector> stacked;
      for (const auto& a : anns[i]) stacked.push_back(a);
      for (const auto& a : anns[j]) stacked.push_back(a);
      std::vector<LatticeVector> line =
          kernel_basis(IntMatrix::from_row_vectors(stacked));
      if (line.empty()) continue;
      if (line.size() > 1)
        throw MalformedInputError("duplicate plane");
      for (std::size_t t : {i, j}) {
        auto coords = integer_coords_in_span(line[0], bases[t]);
        if (!coords)
          throw StructureViolationError("intersection line escapes its plane");
        extra[t].push_back(*coords);
      }
    }
  std::map<LatticeVector, std::size_t> ray_index;
  std::vector<LatticeVector> rays;
  std::vector<std::vector<std::size_t>> cones;
  std::vector<Int> weights;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    std::set<IntVec> dirset = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto& d : extra[i]) {
      dirset.insert(d);
      dirset.insert(ivec_neg(d));
    }
    std::vector<IntVec> dirs(dirset.begin(), dirset.end());
    auto half = [](const IntVec& v) {
      return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1;
    };
    std::sort(dirs.begin(), dirs.end(), [&](const IntVec& x, const IntVec& y) {
      if (half(x) != half(y)) return half(x) < half(y);
      return sign(x[0] * y[1] - x[1] * y[0]) > 0;
    });
    std::vector<std::size_t> idx;
    for (const auto& d : dirs) {
      LatticeVector amb = Int(d[0]) * bases[i][0] + Int(d[1]) * bases[i][1];
      auto it = ray_index.find(amb);
      if (it == ray_index.end()) {
        it = ray_index.emplace(amb, rays.size()).first;
        rays.push_back(amb);
      }
      idx.push_back(it->second);
    }
    for (std::size_t t = 0; t < idx.size(); ++t) {
      std::size_t u = idx[t], v = idx[(t + 1) % idx.size()];
      cones.push_back({std::min(u, v), std::max(u, v)});
      weights.push_back(1);
    }
  }
  WeightedFan f = make_fan_2d(n, rays, cones, weights);
  std::vector<std::string> errs = validate(f);
  if (!errs.empty()) throw StructureViolationError(errs.front());
  BalanceReport br = check_balanced(f);
  if (!br.balanced) throw UnbalancedError(br.failures.front());
  return f;
}

AssembleResult assemble_strongly_regular(const ConventionPair& p,
                                         std::size_t max_planes) {
  AssembleResult res;
  std::map<PlaneKey, PlaneCandidate> pool_map;
  for (auto&& c : enumerate_planes_two_lines(p)) pool_map.emplace(c.span, c);
  for (auto&& c : enumerate_planes_curve(p)) pool_map.emplace(c.span, c);
  for (auto&& c : enumerate_planes_one_sided(p)) pool_map.emplace(c.span, c);
  {
    // The mirror of the one-sided branch: the second function restricts
    // linearly, profile (1, 0, 0).
    std::map<PlaneKey, PlaneCandidate> raw;
    raw_curve_tables(swapped(p), true, false, PlaneBranch::OneSided, raw);
    for (auto&& c : finish(std::move(raw), p, [](const Profile& pr, bool) {
           return pr.a == 1 && pr.b == 0 && pr.c == 0;
         }))
      pool_map.emplace(c.span, c);
  }
  for (auto& [key, cand] : pool_map) res.pool.push_back(cand);
  std::size_t np = res.pool.size();
  std::size_t limit = std::min(max_planes, np);
  // Desk-scale cap on the subset search.
  Int total = 0;
  {
    Int binom = 1;
    for (std::size_t s = 1; s <= limit; ++s) {
      binom = binom * Int(np - s + 1) / Int(s);
      total += binom;
      if (total > 200000)
        throw SearchBoundExceededError("plane subset search is too large");
    }
  }
  // Binomial pairs drawn from the two functions: mixed pairs and pairs of
  // two distinct binomials from the same side.  Galleries over these must
  // jointly cover every facet of a strongly regular cycle; a facet where one
  // function restricts to zero is only reachable through a same-side pair.
  struct BinomPair {
    TRFunction b1, b2;
    std::string tag;
  };
  std::vector<BinomPair> gpairs;
  auto side_binomials = [](const TRFunction& t, const std::string& name) {
    std::vector<std::pair<TRFunction, std::string>> out;
    for (std::size_t i = 0; i < t.functionals.size(); ++i)
      for (std::size_t j = i + 1; j < t.functionals.size(); ++j)
        out.emplace_back(binomial_pair(t.functionals[i], t.functionals[j]),
                         name + "(" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
    return out;
  };
  auto side1 = side_binomials(p.t1, "t1");
  auto side2 = side_binomials(p.t2, "t2");
  for (const auto& [b1, tag1] : side1)
    for (const auto& [b2, tag2] : side2)
      gpairs.push_back({b1, b2, tag1 + "x" + tag2});
  for (const auto& side : {side1, side2})
    for (std::size_t u = 0; u < side.size(); ++u)
      for (std::size_t v = u + 1; v < side.size(); ++v)
        gpairs.push_back(
            {side[u].first, side[v].first, side[u].second + "x" + side[v].second});
  std::vector<std::size_t> subset;
  auto process = [&](const std::vector<std::size_t>& pick) {
    std::vector<std::vector<LatticeVector>> planes;
    for (std::size_t idx : pick) planes.push_back(res.pool[idx].span);
    WeightedFan fan;
    try {
      fan = fan_from_planes(planes, p.n);
    } catch (const UnbalancedError&) {
      return;
    }
    AssembledCycle cyc;
    cyc.plane_subset = pick;
    cyc.fan = fan;
    cyc.profile.a = intersection_number({p.t1, p.t1}, fan);
    cyc.profile.b = intersection_number({p.t1, p.t2}, fan);
    cyc.profile.c = intersection_number({p.t2, p.t2}, fan);
    cyc.strongly_regular =
        cyc.profile.b == 1 && cyc.profile.a <= 1 && cyc.profile.c <= 1;
    cyc.hodge_counterexample =
        cyc.profile.b == 0 && cyc.profile.a == 1 && cyc.profile.c == 1;
    if (cyc.strongly_regular) {
      FacetBoundReport fb = facet_bound_check(p, fan);
      if (!fb.ok)
        throw StructureViolationError("facet bound fails on an assembled cycle");
      std::vector<Gallery2D> galleries;
      std::vector<std::string> tags;
      for (const auto& gp : gpairs) {
        if (intersection_number({gp.b1, gp.b2}, fan) != 1) continue;
        galleries.push_back(gallery_2d(fan, gp.b1, gp.b2));
        tags.push_back(gp.tag);
      }
      for (std::size_t ci = 0; ci < fan.cones.size(); ++ci) {
        std::string witness;
        for (std::size_t gi = 0; gi < galleries.size(); ++gi)
          if (std::find(galleries[gi].facets.begin(),
                        galleries[gi].facets.end(),
                        ci) != galleries[gi].facets.end()) {
            witness = tags[gi];
            break;
          }
        if (witness.empty())
          throw StructureViolationError(
              "assembled cycle facet lies in no gallery");
        cyc.gallery_coverage.push_back("facet " + std::to_string(ci) + ": " +
                                       witness);
      }
      res.cycles.push_back(cyc);
    } else if (cyc.hodge_counterexample) {
      res.hodge_records.push_back(cyc);
    }
  };
  for (std::size_t s = 1; s <= limit; ++s) {
    subset.assign(s, 0);
    for (std::size_t i = 0; i < s; ++i) subset[i] = i;
    while (true) {
      process(subset);
      std::size_t i = s;
      while (i > 0 && subset[i - 1] == np - s + (i - 1)) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < s; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return res;
}

}  // namespace tropfan
