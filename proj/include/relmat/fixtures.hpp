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

// The small reference inputs used across tests, demos and the bundled data
// directory: the separating ternary relation, cyclic groups, the named
// small lattices, and modular-arithmetic ring tables.

#include <map>
#include <string>
#include <vector>

#include "relmat/algebra.hpp"
#include "relmat/structures.hpp"

namespace relmat::fixtures {

/// ({0,1}, R) with R = {(1,1,0),(0,1,1),(0,0,0)}: a maltsev object whose
/// majority check fails.
inline Structure counterexample_structure() {
  FiniteSet u;
  u.size = 2;
  std::map<std::string, Relation> rels;
  rels.emplace("R", Relation(std::vector<FiniteSet>(3, u), {{1, 1, 0}, {0, 1, 1}, {0, 0, 0}}));
  return Structure(u, std::move(rels));
}

/// All k-tuples present.
inline Structure discrete_structure(int n, int k, const std::string& name = "R") {
  FiniteSet u;
  u.size = n;
  std::vector<int> radices(static_cast<std::size_t>(k), n);
  long long grid = 1;
  for (int i = 0; i < k; ++i) grid *= n;
  std::vector<Tuple> tuples;
  for (int code = 0; code < grid; ++code) tuples.push_back(mixed_radix_decode(code, radices));
  std::map<std::string, Relation> rels;
  rels.emplace(name, Relation(std::vector<FiniteSet>(static_cast<std::size_t>(k), u), std::move(tuples)));
  return Structure(u, std::move(rels));
}

inline Structure empty_relation_structure(int n, int k, const std::string& name = "R") {
  FiniteSet u;
  u.size = n;
  std::map<std::string, Relation> rels;
  rels.emplace(name, Relation(std::vector<FiniteSet>(static_cast<std::size_t>(k), u), {}));
  return Structure(u, std::move(rels));
}

/// The order relation of the chain 0 < 1 as a binary-relation structure.
inline Structure chain2_poset() {
  FiniteSet u;
  u.size = 2;
  std::map<std::string, Relation> rels;
  rels.emplace("le", Relation(std::vector<FiniteSet>(2, u), {{0, 0}, {0, 1}, {1, 1}}));
  return Structure(u, std::move(rels));
}

/// Cyclic group of order n, with addition and negation.
inline FiniteAlgebra cyclic_group(int n) {
  FiniteSet u;
  u.size = n;
  std::map<std::string, OperationTable> ops;
  ops.emplace("add", OperationTable::from_function(u, 2, [n](const Tuple& a) { return (a[0] + a[1]) % n; }));
  ops.emplace("neg", OperationTable::from_function(u, 1, [n](const Tuple& a) { return (n - a[0]) % n; }));
  return FiniteAlgebra(u, std::move(ops));
}

struct RingTables {
  OperationTable add;
  OperationTable sub;
  OperationTable mul;
};

/// Arithmetic modulo n.
inline RingTables modular_ring(int n) {
  FiniteSet u;
  u.size = n;
  return RingTables{
      OperationTable::from_function(u, 2, [n](const Tuple& a) { return (a[0] + a[1]) % n; }),
      OperationTable::from_function(u, 2, [n](const Tuple& a) { return ((a[0] - a[1]) % n + n) % n; }),
      OperationTable::from_function(u, 2, [n](const Tuple& a) { return (a[0] * a[1]) % n; }),
  };
}

/// Lattice operations computed from an order matrix; every pair must have
/// a greatest lower and least upper bound.
inline std::pair<OperationTable, OperationTable> lattice_from_order(const std::vector<std::vector<bool>>& leq) {
  const int n = static_cast<int>(leq.size());
  FiniteSet u;
  u.size = n;
  auto bound = [&](int x, int y, bool lower) {
    int best = -1;
    for (int c = 0; c < n; ++c) {
      bool is_bound = lower ? (leq[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] &&
                               leq[static_cast<std::size_t>(c)][static_cast<std::size_t>(y)])
                            : (leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(c)] &&
                               leq[static_cast<std::size_t>(y)][static_cast<std::size_t>(c)]);
      if (!is_bound) continue;
      if (best == -1)
        best = c;
      else if (lower ? leq[static_cast<std::size_t>(best)][static_cast<std::size_t>(c)]
                     : leq[static_cast<std::size_t>(c)][static_cast<std::size_t>(best)])
        best = c;
    }
    if (best == -1) throw error("lattice_from_order: missing bound");
    // confirm it really is the extremum
    for (int c = 0; c < n; ++c) {
      bool is_bound = lower ? (leq[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] &&
                               leq[static_cast<std::size_t>(c)][static_cast<std::size_t>(y)])
                            : (leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(c)] &&
                               leq[static_cast<std::size_t>(y)][static_cast<std::size_t>(c)]);
      bool comparable = lower ? leq[static_cast<std::size_t>(c)][static_cast<std::size_t>(best)]
                              : leq[static_cast<std::size_t>(best)][static_cast<std::size_t>(c)];
      if (is_bound && !comparable) throw error("lattice_from_order: bounds not unique");
    }
    return best;
  };
  OperationTable meet = OperationTable::from_function(u, 2, [&](const Tuple& a) { return bound(a[0], a[1], true); });
  OperationTable join = OperationTable::from_function(u, 2, [&](const Tuple& a) { return bound(a[0], a[1], false); });
  return {std::move(meet), std::move(join)};
}

/// The 2-element lattice, as an algebra with meet and join.
inline FiniteAlgebra two_chain_lattice() {
  FiniteSet u;
  u.size = 2;
  std::map<std::string, OperationTable> ops;
  ops.emplace("meet", OperationTable::from_function(u, 2, [](const Tuple& a) { return a[0] & a[1]; }));
  ops.emplace("join", OperationTable::from_function(u, 2, [](const Tuple& a) { return a[0] | a[1]; }));
  return FiniteAlgebra(u, std::move(ops));
}

/// The 2-element meet semilattice.
inline FiniteAlgebra two_semilattice() {
  FiniteSet u;
  u.size = 2;
  std::map<std::string, OperationTable> ops;
  ops.emplace("meet", OperationTable::from_function(u, 2, [](const Tuple& a) { return a[0] & a[1]; }));
  return FiniteAlgebra(u, std::move(ops));
}

/// Diamond: bottom 0, atoms 1,2,3, top 4.
inline FiniteAlgebra m3_lattice() {
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i) leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
  for (int a : {1, 2, 3}) {
    leq[0][static_cast<std::size_t>(a)] = true;
    leq[static_cast<std::size_t>(a)][4] = true;
  }
  leq[0][4] = true;
  auto [meet, join] = lattice_from_order(leq);
  FiniteSet u;
  u.size = 5;
  std::map<std::string, OperationTable> ops;
  ops.emplace("meet", std::move(meet));
  ops.emplace("join", std::move(join));
  return FiniteAlgebra(u, std::move(ops));
}

/// Pentagon: 0 < 1 < 3 < 4 and 0 < 2 < 4, with 2 incomparable to 1 and 3.
inline FiniteAlgebra n5_lattice() {
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i) leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
  auto set = [&](int a, int b) { leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true; };
  set(0, 1); set(0, 2); set(0, 3); set(0, 4);
  set(1, 3); set(1, 4);
  set(2, 4);
  set(3, 4);
  auto [meet, join] = lattice_from_order(leq);
  FiniteSet u;
  u.size = 5;
  std::map<std::string, OperationTable> ops;
  ops.emplace("meet", std::move(meet));
  ops.emplace("join", std::move(join));
  return FiniteAlgebra(u, std::move(ops));
}

/// The 4-element Boolean algebra on bitmasks {0,1,2,3}, with meet, join,
/// complement and both constants.
inline FiniteAlgebra bool4_algebra() {
  FiniteSet u;
  u.size = 4;
  std::map<std::string, OperationTable> ops;
  ops.emplace("and", OperationTable::from_function(u, 2, [](const Tuple& a) { return a[0] & a[1]; }));
  ops.emplace("or", OperationTable::from_function(u, 2, [](const Tuple& a) { return a[0] | a[1]; }));
  ops.emplace("not", OperationTable::from_function(u, 1, [](const Tuple& a) { return a[0] ^ 3; }));
  ops.emplace("bot", OperationTable(0, u, {0}));
  ops.emplace("top", OperationTable(0, u, {3}));
  return FiniteAlgebra(u, std::move(ops));
}

/// Majority vote on {0,1}.
inline OperationTable boolean_majority() {
  FiniteSet u;
  u.size = 2;
  return OperationTable::from_function(u, 3, [](const Tuple& a) { return (a[0] + a[1] + a[2]) >= 2 ? 1 : 0; });
}

/// x + y + z on the 2-element group.
inline OperationTable xor3_table() {
  FiniteSet u;
  u.size = 2;
  return OperationTable::from_function(u, 3, [](const Tuple& a) { return (a[0] + a[1] + a[2]) % 2; });
}

}  // namespace relmat::fixtures
