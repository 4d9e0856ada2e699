#pragma once

// Seeded random instance generators.  Everything draws from a caller-owned
// mt19937_64 so suites are reproducible across platforms.

#include <numeric>
#include <random>
#include <vector>

#include "tropfan/classify2d.hpp"
#include "tropfan/fan.hpp"
#include "tropfan/lattice.hpp"
#include "tropfan/trfunction.hpp"

namespace gen {

using namespace tropfan;
using Rng = std::mt19937_64;

inline long long rand_between(Rng& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<unsigned long long>(
                                         hi - lo + 1));
}

/** Random element of GL(n, Z) built from shears, swaps and sign flips. */
inline IntMatrix random_unimodular(std::size_t n, Rng& rng,
                                   std::size_t steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  for (std::size_t s = 0; s < steps; ++s) {
    std::size_t i = rng() % n, j = rng() % n;
    switch (rng() % 3) {
      case 0:
        if (i != j) {
          Int c(rand_between(rng, -3, 3));
          for (std::size_t k = 0; k < n; ++k) u.at(i, k) += c * u.at(j, k);
        }
        break;
      case 1:
        if (i != j)
          for (std::size_t k = 0; k < n; ++k) std::swap(u.at(i, k), u.at(j, k));
        break;
      default:
        for (std::size_t k = 0; k < n; ++k) u.at(i, k) = -u.at(i, k);
    }
  }
  return u;
}

/** Apply a unimodular map to all rays; cones and weights carry over. */
inline WeightedFan transform_fan(const IntMatrix& u, const WeightedFan& f) {
  std::vector<LatticeVector> rays;
  for (const auto& r : f.rays) rays.push_back(u.apply(r));
  if (f.dim == 1) return make_fan_1d(f.n, rays, f.weights);
  return make_fan_2d(f.n, rays, f.cones, f.weights);
}

/** Arrangement line with d + 1 rays spanning the first d coordinates. */
inline void append_line_block(std::size_t n, std::size_t offset, std::size_t d,
                              std::vector<LatticeVector>& rays) {
  LatticeVector sum(IntVec(n, Int(0)));
  for (std::size_t i = 0; i < d; ++i) {
    IntVec c(n, Int(0));
    c[offset + i] = 1;
    rays.emplace_back(std::move(c));
    sum = sum + rays.back();
  }
  rays.push_back(-sum);
}

struct Regular1DInstance {
  WeightedFan fan;
  std::vector<std::vector<std::size_t>> summands;  // ray indices per block
  std::size_t model_dim = 0;
  IntMatrix embedding{0, 0};  // the unimodular ambient change
};

/**
 * A regular 1-dimensional fan: a direct sum of arrangement lines spanning
 * the first m coordinates, plus weight-2 ray pairs spanning the rest, the
 * whole picture pushed through a random unimodular map.
 */
inline Regular1DInstance random_regular_1d(std::size_t n, Rng& rng) {
  std::size_t m = 1 + rng() % n;  // dimension of the gallery part
  std::vector<std::size_t> sizes;
  std::size_t left = m;
  while (left > 0) {
    std::size_t d = 1 + rng() % left;
    sizes.push_back(d);
    left -= d;
  }
  Regular1DInstance inst;
  inst.model_dim = m;
  std::vector<LatticeVector> rays;
  std::vector<Int> weights;
  std::size_t offset = 0;
  for (std::size_t d : sizes) {
    std::vector<std::size_t> block;
    for (std::size_t i = 0; i <= d; ++i) block.push_back(rays.size() + i);
    inst.summands.push_back(block);
    append_line_block(n, offset, d, rays);
    for (std::size_t i = 0; i <= d; ++i) weights.emplace_back(1);
    offset += d;
  }
  for (std::size_t j = m; j < n; ++j) {
    IntVec c(n, Int(0));
    c[j] = 1;
    rays.emplace_back(c);
    rays.push_back(-rays.back());
    Int w(2 + static_cast<long long>(rng() % 2));
    weights.push_back(w);
    weights.push_back(w);
  }
  inst.embedding = random_unimodular(n, rng);
  inst.fan = transform_fan(inst.embedding,
                           make_fan_1d(n, std::move(rays), std::move(weights)));
  return inst;
}

/** Product of two 1-dimensional balanced fans, embedded side by side. */
inline WeightedFan cross_fan(const WeightedFan& a, const WeightedFan& b) {
  std::size_t n = a.n + b.n;
  std::vector<LatticeVector> rays;
  for (const auto& r : a.rays) {
    IntVec c(n, Int(0));
    for (std::size_t i = 0; i < a.n; ++i) c[i] = r[i];
    rays.emplace_back(std::move(c));
  }
  for (const auto& r : b.rays) {
    IntVec c(n, Int(0));
    for (std::size_t i = 0; i < b.n; ++i) c[a.n + i] = r[i];
    rays.emplace_back(std::move(c));
  }
  std::vector<std::vector<std::size_t>> cones;
  std::vector<Int> weights;
  for (std::size_t i = 0; i < a.rays.size(); ++i)
    for (std::size_t j = 0; j < b.rays.size(); ++j) {
      cones.push_back({i, a.rays.size() + j});
      weights.push_back(a.weights[i] * b.weights[j]);
    }
  return make_fan_2d(n, rays, cones, weights);
}

/** A small balanced 1-dimensional fan in R^d: a line or a weighted pair. */
inline WeightedFan small_1d(std::size_t d, Rng& rng) {
  if (d == 1 || rng() % 2 == 0) {
    IntVec c(d, Int(0));
    c[0] = 1;
    LatticeVector v(c);
    Int w(1 + static_cast<long long>(rng() % 2));
    return make_fan_1d(d, {v, -v}, {w, w});
  }
  std::vector<LatticeVector> rays;
  append_line_block(d, 0, d, rays);
  return make_fan_1d(d, rays, std::vector<Int>(d + 1, Int(1)));
}

/** A balanced 2-dimensional fan in R^n under a random unimodular map. */
inline WeightedFan random_balanced_2d(std::size_t n, Rng& rng) {
  std::size_t n1 = 1 + rng() % (n - 1);
  WeightedFan base = cross_fan(small_1d(n1, rng), small_1d(n - n1, rng));
  return transform_fan(random_unimodular(n, rng), base);
}

/** A random function with up to k nonzero functionals in a small box. */
inline TRFunction random_function(std::size_t n, Rng& rng, std::size_t k = 3,
                                  long long bound = 3) {
  std::vector<LinearFunctional> fs = {LinearFunctional(IntVec(n, Int(0)))};
  std::size_t extra = 1 + rng() % k;
  for (std::size_t i = 0; i < extra; ++i) {
    IntVec c(n);
    for (std::size_t j = 0; j < n; ++j)
      c[j] = Int(rand_between(rng, -bound, bound));
    fs.emplace_back(std::move(c));
  }
  return TRFunction(std::move(fs));
}

/** A convention pair in R^n from a random unimodular matrix, split at k. */
inline ConventionPair random_convention_pair(std::size_t n, Rng& rng) {
  std::size_t k = 1 + rng() % (n - 1);
  IntMatrix u = random_unimodular(n, rng);
  std::vector<LinearFunctional> f1 = {LinearFunctional(IntVec(n, Int(0)))};
  std::vector<LinearFunctional> f2 = f1;
  for (std::size_t i = 0; i < n; ++i) {
    LinearFunctional l(u.rows[i]);
    (i < k ? f1 : f2).push_back(l);
  }
  return make_convention_pair(TRFunction(f1), TRFunction(f2));
}

}  // namespace gen
