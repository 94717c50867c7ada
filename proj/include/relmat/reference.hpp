//  Copyright 2026 The relmat Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

// Brute-force reference implementations, kept deliberately independent of
// the optimized code paths they are used to check. Everything here pays an
// exponential price for being obviously correct; use at desk scale only.

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "relmat/base.hpp"
#include "relmat/matrix.hpp"
#include "relmat/structures.hpp"

namespace relmat::reference {

/// Deterministic splittable generator (splitmix64). Hand-rolled so seeded
/// sweeps produce identical samples on every platform and standard library.
struct Rng {
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, n); bias is negligible at the sizes used.
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  bool coin() { return (next() & 1) != 0; }
};

/// Strict closedness decided by sweeping every assignment of every row's
/// variables over its component (the raw quantifier, no unification).
inline bool strictly_closed_all_assignments(const Relation& R, const ExtendedMatrix& M) {
  const int m = M.rows();
  const int w = M.width();
  std::vector<int> var_rows;  // flattened (row, var) slots
  std::vector<int> var_ids;
  for (int i = 0; i < m; ++i)
    for (int v = 0; v < M.variable_count(i); ++v) {
      var_rows.push_back(i);
      var_ids.push_back(v);
    }
  const std::size_t total = var_rows.size();
  std::vector<int> assignment(total, 0);
  std::vector<std::vector<int>> bound(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) bound[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(M.variable_count(i)), 0);
  while (true) {
    for (std::size_t s = 0; s < total; ++s)
      bound[static_cast<std::size_t>(var_rows[s])][static_cast<std::size_t>(var_ids[s])] = assignment[s];
    auto column = [&](int col) {
      Tuple t(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        int e = M.entry(i, col);
        t[static_cast<std::size_t>(i)] = e == ExtendedMatrix::kZero
                                             ? *R.signature()[static_cast<std::size_t>(i)].basepoint
                                             : bound[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
      }
      return t;
    };
    bool premises_hold = true;
    for (int j = 0; j < w && premises_hold; ++j) premises_hold = R.contains(column(j));
    if (premises_hold && !R.contains(column(w))) return false;
    int s = static_cast<int>(total) - 1;
    while (s >= 0) {
      int row = var_rows[static_cast<std::size_t>(s)];
      if (++assignment[static_cast<std::size_t>(s)] < R.signature()[static_cast<std::size_t>(row)].size) break;
      assignment[static_cast<std::size_t>(s--)] = 0;
    }
    if (s < 0) break;
    if (total == 0) break;
  }
  return true;
}

/// Difunctionality via the composite: R o R^T o R must stay inside R.
inline bool difunctional_by_composition(const Relation& R) {
  const auto& ts = R.tuples();
  for (const Tuple& p : ts)
    for (const Tuple& q : ts)
      for (const Tuple& r : ts)
        if (p[0] == q[0] && q[1] == r[1] && !R.contains({r[0], p[1]})) return false;
  return true;
}

/// Visits every relation over the signature (all subsets of the full tuple
/// grid), in mask order. The grid must stay small.
inline void for_each_relation(const std::vector<FiniteSet>& signature,
                              const std::function<void(const Relation&)>& fn) {
  std::vector<int> radices;
  long long grid = 1;
  for (const FiniteSet& c : signature) {
    radices.push_back(c.size);
    grid *= c.size;
  }
  if (grid > 24) throw error("for_each_relation: grid too large for exhaustive sweep");
  std::vector<Tuple> all;
  for (int code = 0; code < grid; ++code) all.push_back(mixed_radix_decode(code, radices));
  for (std::uint64_t mask = 0; mask < (1ULL << grid); ++mask) {
    std::vector<Tuple> tuples;
    for (int i = 0; i < grid; ++i)
      if (mask & (1ULL << i)) tuples.push_back(all[static_cast<std::size_t>(i)]);
    fn(Relation(signature, std::move(tuples)));
  }
}

/// Visits every superset of R within its grid.
inline void for_each_superset(const Relation& R, const std::function<void(const Relation&)>& fn) {
  std::vector<int> radices;
  long long grid = 1;
  for (const FiniteSet& c : R.signature()) {
    radices.push_back(c.size);
    grid *= c.size;
  }
  if (grid > 24) throw error("for_each_superset: grid too large for exhaustive sweep");
  std::vector<Tuple> absent;
  for (int code = 0; code < grid; ++code) {
    Tuple t = mixed_radix_decode(code, radices);
    if (!R.contains(t)) absent.push_back(std::move(t));
  }
  const std::size_t extra = absent.size();
  for (std::uint64_t mask = 0; mask < (1ULL << extra); ++mask) {
    std::vector<Tuple> tuples(R.tuples());
    for (std::size_t i = 0; i < extra; ++i)
      if (mask & (1ULL << i)) tuples.push_back(absent[i]);
    fn(Relation(R.signature(), std::move(tuples)));
  }
}

/// Object checks evaluated straight off the definition: materialize the
/// pattern subset of the cube, list the restricted relation by membership
/// tests, and check the canonical map tuple by tuple.
inline bool object_check_direct(const Structure& S, bool majority) {
  const auto& [name, R] = S.single_relation();
  const int k = R.arity();
  const int n = S.universe.size;
  std::vector<Tuple> domain;  // triples, in code order
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        bool in = majority ? (x == y || x == z || y == z) : (x == y || y == z);
        if (in) domain.push_back({x, y, z});
      }
  auto value = [&](const Tuple& t) {
    if (majority) return t[0] == t[1] || t[0] == t[2] ? t[0] : t[1];
    return t[0] == t[1] ? t[2] : t[0];
  };
  // every k-tuple of domain triples whose coordinate tuples are all in R
  std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
  if (domain.empty()) return true;
  while (true) {
    bool related = true;
    for (int j = 0; j < 3 && related; ++j) {
      Tuple coord(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) coord[static_cast<std::size_t>(i)] = domain[pick[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)];
      related = R.contains(coord);
    }
    if (related) {
      Tuple image(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) image[static_cast<std::size_t>(i)] = value(domain[pick[static_cast<std::size_t>(i)]]);
      if (!R.contains(image)) return false;
    }
    int i = k - 1;
    while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == domain.size()) pick[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  return true;
}

inline bool maltsev_object_direct(const Structure& S) { return object_check_direct(S, false); }
inline bool majority_object_direct(const Structure& S) { return object_check_direct(S, true); }

/// A seeded random structure with one k-ary relation; tuples are kept with
/// the given percentage.
inline Structure random_structure(int n, int k, int density_percent, Rng& rng,
                                  const std::string& name = "R") {
  FiniteSet u;
  u.size = n;
  std::vector<int> radices(static_cast<std::size_t>(k), n);
  long long grid = 1;
  for (int i = 0; i < k; ++i) grid *= n;
  std::vector<Tuple> tuples;
  for (int code = 0; code < grid; ++code)
    if (rng.below(100) < density_percent) tuples.push_back(mixed_radix_decode(code, radices));
  std::map<std::string, Relation> rels;
  rels.emplace(name, Relation(std::vector<FiniteSet>(static_cast<std::size_t>(k), u), std::move(tuples)));
  return Structure(u, std::move(rels));
}

}  // namespace relmat::reference
