#include "tropfan/classify1d.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "tropfan/errors.hpp"
#include "tropfan/product.hpp"

namespace tropfan {

namespace {

// Weight of each ray of a 1-dimensional fan, read off its singleton cones.
std::vector<Int> ray_weights_1d(const WeightedFan& f) {
  std::vector<Int> w(f.rays.size(), 0);
  for (std::size_t i = 0; i < f.cones.size(); ++i)
    if (f.cones[i].size() == 1) w[f.cones[i][0]] = f.weights[i];
  return w;
}

std::size_t find_class_of(const CanonicalPartition& p, std::size_t ray,
                          bool& found) {
  for (std::size_t c = 0; c < p.classes.size(); ++c)
    if (std::binary_search(p.classes[c].begin(), p.classes[c].end(), ray)) {
      found = true;
      return c;
    }
  found = false;
  return 0;
}

}  // namespace

std::vector<Gallery1D> find_galleries(const WeightedFan& f) {
  if (f.dim != 1)
    throw NotOneDimensionalError("galleries need a 1-dimensional fan");
  if (rank(IntMatrix::from_row_vectors(f.rays)) != f.n)
    throw AmbientSpaceNotSpannedError(
        "rays do not span the ambient space");
  std::vector<Int> w = ray_weights_1d(f);
  std::vector<Gallery1D> out;
  std::size_t r = f.rays.size();
  for (std::size_t a = 0; a < r; ++a) {
    if (w[a] != 1) continue;
    for (std::size_t b = a + 1; b < r; ++b) {
      if (w[b] != 1) continue;
      std::vector<DualConstraint> cs;
      cs.reserve(r);
      for (std::size_t i = 0; i < r; ++i) {
        Int val = 0;
        if (i == a) val = 1;
        else if (i == b) val = -1;
        cs.push_back({f.rays[i], val});
      }
      DualSolveResult sol = solve_dual(cs, f.n);
      if (sol.ok()) out.push_back({*sol.solution, a, b});
    }
  }
  return out;
}

CanonicalPartition canonical_partition(const WeightedFan& f) {
  std::vector<Gallery1D> gs = find_galleries(f);
  std::size_t r = f.rays.size();
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : gs) parent[find(g.a)] = find(g.b);
  std::map<std::size_t, std::vector<std::size_t>> comp;
  std::vector<bool> in_gallery(r, false);
  for (const auto& g : gs) in_gallery[g.a] = in_gallery[g.b] = true;
  for (std::size_t i = 0; i < r; ++i)
    if (in_gallery[i]) comp[find(i)].push_back(i);
  CanonicalPartition p;
  for (auto& [root, members] : comp) {
    std::sort(members.begin(), members.end());
    p.classes.push_back(members);
  }
  std::sort(p.classes.begin(), p.classes.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  for (std::size_t i = 0; i < r; ++i)
    if (!in_gallery[i]) p.nongallery.push_back(i);
  p.class_galleries.resize(p.classes.size());
  for (const auto& g : gs) {
    bool found = false;
    std::size_t c = find_class_of(p, g.a, found);
    p.class_galleries[c].push_back(g);
  }
  return p;
}

LinearFunctional pair_functional(const CanonicalPartition& p,
                                 std::size_t class_id, std::size_t a,
                                 std::size_t b) {
  if (class_id >= p.classes.size())
    throw RayNotInClassError("no such gallery class");
  if (a == b) throw RayNotInClassError("pair functional needs distinct rays");
  const auto& members = p.classes[class_id];
  if (!std::binary_search(members.begin(), members.end(), a) ||
      !std::binary_search(members.begin(), members.end(), b))
    throw RayNotInClassError("ray is not a member of the class");
  for (const auto& g : p.class_galleries[class_id]) {
    if (g.a == a && g.b == b) return g.l;
    if (g.a == b && g.b == a) return -g.l;
  }
  // Classes are gallery-complete; a missing pair means corrupted input.
  throw StructureViolationError("gallery class is missing a member pair");
}

TRFunction m_max(const WeightedFan& f, const CanonicalPartition& p,
                 std::size_t class_id, std::size_t i) {
  if (class_id >= p.classes.size())
    throw RayNotInClassError("no such gallery class");
  const auto& members = p.classes[class_id];
  if (!std::binary_search(members.begin(), members.end(), i))
    throw RayNotInClassError("ray is not a member of the class");
  std::vector<LinearFunctional> fs;
  fs.emplace_back(IntVec(f.n, 0));
  for (std::size_t j : members)
    if (j != i) fs.push_back(pair_functional(p, class_id, i, j));
  return TRFunction(fs);
}

RegularityResult is_regular_function(const WeightedFan& f,
                                     const TRFunction& t) {
  if (f.dim != 1)
    throw NotOneDimensionalError("regularity test needs a 1-dimensional fan");
  if (t.dim() != f.n)
    throw DimensionMismatchError("function and fan dimensions differ");
  BalanceReport br = check_balanced(f);
  if (!br.balanced) throw UnbalancedError(br.failures.front());
  TRFunction tn = normalize(t);
  RegularityResult res;
  res.value = product_1d(tn, f);
  if (res.value != 1) return res;
  std::vector<Int> w = ray_weights_1d(f);
  std::size_t a = f.rays.size();
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (w[i] * tn(f.rays[i]) != 0) {
      a = i;
      break;
    }
  if (a == f.rays.size())
    throw StructureViolationError("product one with no positive ray");
  res.witness_ray = a;
  CanonicalPartition p = canonical_partition(f);
  bool found = false;
  std::size_t c = find_class_of(p, a, found);
  if (!found)
    throw StructureViolationError("no gallery at the distinguished ray");
  res.class_id = c;
  for (std::size_t j : p.classes[c]) {
    if (j == a) continue;
    LinearFunctional l = pair_functional(p, c, a, j);
    CompareResult cr = compare(binomial(l), tn);
    if (cr == CompareResult::LE || cr == CompareResult::EQ) {
      res.witness = Gallery1D{l, a, j};
      break;
    }
  }
  if (!res.witness)
    throw StructureViolationError(
        "no gallery at the distinguished ray is dominated by the function");
  res.regular = true;
  return res;
}

bool characterize_class_functions(const WeightedFan& f, std::size_t class_id,
                                  std::size_t i, const TRFunction& t) {
  CanonicalPartition p = canonical_partition(f);
  TRFunction top = m_max(f, p, class_id, i);
  CompareResult cr = compare(normalize(t), top);
  return cr == CompareResult::LE || cr == CompareResult::EQ;
}

MinimalModel minimal_model(const WeightedFan& f) {
  CanonicalPartition p = canonical_partition(f);
  if (p.classes.empty())
    throw NotRegularError("fan has no galleries");
  std::vector<LinearFunctional> rows;
  MinimalModel mm;
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    const auto& members = p.classes[c];
    std::size_t rep = members.front();
    std::size_t start = rows.size();
    for (std::size_t j : members)
      if (j != rep) rows.push_back(pair_functional(p, c, j, rep));
    mm.class_blocks.push_back({start, rows.size()});
  }
  mm.matrix = IntMatrix::from_rows(rows);
  mm.image = pushforward(mm.matrix, f);
  BergmanSumResult bs = is_bergman_sum(mm.image);
  if (!bs.ok())
    throw StructureViolationError("model image is defective: " + bs.violation);
  return mm;
}

BergmanSumResult is_bergman_sum(const WeightedFan& f) {
  if (f.dim != 1)
    throw NotOneDimensionalError("sum decomposition needs a 1-dimensional fan");
  BergmanSumResult res;
  if (f.rays.empty()) {
    res.violation = "fan has no rays";
    return res;
  }
  std::vector<Int> w = ray_weights_1d(f);
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (w[i] != 1) {
      res.violation = "ray weights must all be one";
      return res;
    }
  std::vector<LatticeVector> kern =
      kernel_basis(IntMatrix::from_row_vectors(f.rays).transposed());
  if (kern.empty()) {
    res.violation = "rays admit no balancing relations";
    return res;
  }
  std::map<IntVec, std::vector<std::size_t>> by_col;
  for (std::size_t j = 0; j < f.rays.size(); ++j) {
    IntVec col(kern.size());
    for (std::size_t t = 0; t < kern.size(); ++t) col[t] = kern[t][j];
    if (ivec_is_zero(col)) {
      res.violation = "a ray lies in no balancing relation";
      return res;
    }
    by_col[col].push_back(j);
  }
  std::vector<std::vector<std::size_t>> groups;
  for (auto& [col, members] : by_col) groups.push_back(members);
  std::sort(groups.begin(), groups.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  std::vector<LatticeVector> combined;
  for (const auto& g : groups) {
    if (g.size() < 2) {
      res.violation = "a summand would have a single ray";
      return res;
    }
    LatticeVector sum(IntVec(f.n, 0));
    std::vector<LatticeVector> gens;
    for (std::size_t j : g) {
      sum = sum + f.rays[j];
      gens.push_back(f.rays[j]);
    }
    if (!sum.is_zero()) {
      res.violation = "summand rays do not sum to zero";
      return res;
    }
    std::vector<LatticeVector> basis = saturated_span_basis(gens, f.n);
    if (basis.size() != g.size() - 1) {
      res.violation = "summand span has the wrong dimension";
      return res;
    }
    // One dropped ray suffices: the zero-sum relation makes the minors of
    // all drop-one subsets agree up to sign.
    std::vector<IntVec> coords;
    for (std::size_t k = 0; k + 1 < g.size(); ++k) {
      auto c = integer_coords_in_span(f.rays[g[k]], basis);
      if (!c) {
        res.violation = "summand ray is off its saturated span";
        return res;
      }
      coords.push_back(*c);
    }
    if (abs_int(det(IntMatrix(coords))) != 1) {
      res.violation = "summand rays are not unimodular";
      return res;
    }
    for (const auto& b : basis) combined.push_back(b);
  }
  if (combined.size() != f.n) {
    res.violation = "summand spans do not decompose the ambient space";
    return res;
  }
  std::optional<Int> idx = lattice_index(combined);
  if (!idx || *idx != 1) {
    res.violation = "summand spans do not decompose the ambient space";
    return res;
  }
  res.groups = groups;
  return res;
}

IntMatrix factor_projection(const WeightedFan& f, const IntMatrix& pi) {
  if (pi.n_cols != f.n)
    throw DimensionMismatchError("projection and fan dimensions differ");
  WeightedFan image = pushforward(pi, f);
  BergmanSumResult bs = is_bergman_sum(image);
  if (!bs.ok()) throw NotBergmanImageError(bs.violation);
  MinimalModel mm = minimal_model(f);
  CanonicalPartition p = canonical_partition(f);
  // Each summand of the image must be hit by rays of a single gallery class.
  for (const auto& g : bs.groups) {
    std::size_t cls = p.classes.size();
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
      LatticeVector img = pi.apply(f.rays[i]);
      if (img.is_zero()) continue;
      LatticeVector dir = primitive(img);
      bool hits = false;
      for (std::size_t k : g)
        if (image.rays[k] == dir) {
          hits = true;
          break;
        }
      if (!hits) continue;
      bool found = false;
      std::size_t c = find_class_of(p, i, found);
      if (!found)
        throw StructureViolationError(
            "projection fibre contains a ray with no gallery");
      if (cls == p.classes.size()) cls = c;
      else if (cls != c)
        throw StructureViolationError(
            "projection fibre meets two gallery classes");
    }
  }
  std::size_t md = mm.matrix.n_rows;
  std::vector<LinearFunctional> psi_rows;
  for (std::size_t r = 0; r < pi.n_rows; ++r) {
    std::vector<DualConstraint> cs;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
      LatticeVector x = mm.matrix.apply(f.rays[i]);
      cs.push_back({x, pi.apply(f.rays[i])[r]});
    }
    DualSolveResult sol = solve_dual(cs, md);
    if (!sol.ok())
      throw FactorizationFailedError(
          "projection does not factor integrally through the model");
    psi_rows.push_back(*sol.solution);
  }
  IntMatrix psi = IntMatrix::from_rows(psi_rows);
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (!(psi.apply(mm.matrix.apply(f.rays[i])) == pi.apply(f.rays[i])))
      throw FactorizationFailedError("factored map disagrees on a ray");
  return psi;
}

LiftResult lift_function(const WeightedFan& f, const TRFunction& t) {
  RegularityResult rr = is_regular_function(f, t);
  if (!rr.regular)
    throw NotRegularFunctionError("function has product " +
                                  rr.value.str() + ", expected 1");
  TRFunction tn = normalize(t);
  MinimalModel mm = minimal_model(f);
  CanonicalPartition p = canonical_partition(f);
  std::size_t c = *rr.class_id;
  std::size_t a = *rr.witness_ray;
  const auto& members = p.classes[c];
  std::size_t rep = members.front();
  auto block_pos = [&](std::size_t ray) {
    std::size_t off = 0;
    for (std::size_t j : members) {
      if (j == rep) continue;
      if (j == ray) return mm.class_blocks[c].first + off;
      ++off;
    }
    throw StructureViolationError("ray is outside its class block");
  };
  std::size_t md = mm.matrix.n_rows;
  std::vector<LinearFunctional> lifted;
  for (const auto& eta : tn.functionals) {
    IntVec coords(md, 0);
    if (!eta.is_zero()) {
      std::size_t partner = f.rays.size();
      for (std::size_t j : members) {
        if (j == a) continue;
        if (eta == pair_functional(p, c, a, j)) {
          partner = j;
          break;
        }
      }
      if (partner == f.rays.size())
        throw NotRegularFunctionError(
            "function exceeds the maximum of its gallery class");
      if (a != rep) coords[block_pos(a)] += 1;
      if (partner != rep) coords[block_pos(partner)] -= 1;
    }
    lifted.emplace_back(coords);
  }
  return {TRFunction(lifted), c, a};
}

ClassSpanReport check_class_spans(const WeightedFan& f) {
  CanonicalPartition p = canonical_partition(f);
  ClassSpanReport rep;
  rep.hypothesis_excluded = p.classes.size() == 1 && p.nongallery.empty() &&
                            p.classes.front().size() == f.rays.size();
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    std::vector<LatticeVector> vs;
    for (std::size_t j : p.classes[c]) vs.push_back(f.rays[j]);
    ClassSpanEntry e;
    e.class_id = c;
    e.expected_dim = p.classes[c].size();
    e.computed_dim = rank(IntMatrix::from_row_vectors(vs));
    e.match = e.computed_dim == e.expected_dim;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace tropfan
