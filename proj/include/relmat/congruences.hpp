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

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relmat/algebra.hpp"
#include "relmat/base.hpp"
#include "relmat/structures.hpp"

namespace relmat {

/// A partition of 0..n-1, normalized so block ids appear in first
/// occurrence order. Congruences of an algebra are the partitions
/// compatible with all of its operations; compatibility is the caller's
/// concern (checked by is_congruence / guaranteed by congruences()).
struct Congruence {
  std::vector<int> block_of;

  explicit Congruence(std::vector<int> assignment) : block_of(std::move(assignment)) { normalize(); }

  static Congruence diagonal(int n) {
    std::vector<int> b(static_cast<std::size_t>(n));
    std::iota(b.begin(), b.end(), 0);
    return Congruence(std::move(b));
  }

  static Congruence full(int n) { return Congruence(std::vector<int>(static_cast<std::size_t>(n), 0)); }

  int size() const { return static_cast<int>(block_of.size()); }
  bool same(int a, int b) const {
    return block_of[static_cast<std::size_t>(a)] == block_of[static_cast<std::size_t>(b)];
  }
  int classes() const { return block_of.empty() ? 0 : *std::max_element(block_of.begin(), block_of.end()) + 1; }

  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(classes()));
    for (int e = 0; e < size(); ++e) out[static_cast<std::size_t>(block_of[static_cast<std::size_t>(e)])].push_back(e);
    return out;
  }

  bool operator==(const Congruence&) const = default;
  bool operator<(const Congruence& other) const { return block_of < other.block_of; }

 private:
  void normalize() {
    std::vector<int> rename(block_of.size(), -1);
    int next = 0;
    for (int& b : block_of) {
      if (b < 0 || b >= static_cast<int>(block_of.size())) throw error("Congruence: block id out of range");
      if (rename[static_cast<std::size_t>(b)] == -1) rename[static_cast<std::size_t>(b)] = next++;
      b = rename[static_cast<std::size_t>(b)];
    }
  }
};

inline std::string format_congruence(const Congruence& c) {
  std::string out = "{";
  auto blocks = c.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) out += "|";
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      if (j > 0) out += ",";
      out += std::to_string(blocks[i][j]);
    }
  }
  out += "}";
  return out;
}

/// Compatibility with every operation of A. Substituting one coordinate at
/// a time suffices: blockwise-equal argument tuples are connected by a
/// chain of single-coordinate substitutions.
inline bool is_congruence(const FiniteAlgebra& A, const Congruence& theta) {
  if (theta.size() != A.universe.size) throw error("is_congruence: partition size differs from universe");
  const int n = A.universe.size;
  for (const auto& [name, op] : A.operations) {
    const int m = op.arity;
    if (m == 0) continue;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (!theta.same(a, b)) continue;
        for (int posn = 0; posn < m; ++posn) {
          Tuple args(static_cast<std::size_t>(m), 0);
          while (true) {
            args[static_cast<std::size_t>(posn)] = a;
            int va = op.apply(args);
            args[static_cast<std::size_t>(posn)] = b;
            int vb = op.apply(args);
            if (!theta.same(va, vb)) return false;
            int i = m - 1;
            while (i >= 0) {
              if (i == posn) {
                --i;
                continue;
              }
              if (++args[static_cast<std::size_t>(i)] < n) break;
              args[static_cast<std::size_t>(i--)] = 0;
            }
            if (i < 0) break;
          }
        }
      }
  }
  return true;
}

/// Meet of two partitions: blocks are intersections.
inline Congruence cong_meet(const Congruence& a, const Congruence& b) {
  if (a.size() != b.size()) throw error("cong_meet: partitions over different universes");
  const int n = a.size();
  std::vector<int> assignment(static_cast<std::size_t>(n));
  std::vector<std::pair<int, int>> key_of(static_cast<std::size_t>(n));
  std::vector<std::pair<int, int>> seen;
  for (int e = 0; e < n; ++e) {
    std::pair<int, int> key{a.block_of[static_cast<std::size_t>(e)], b.block_of[static_cast<std::size_t>(e)]};
    auto it = std::find(seen.begin(), seen.end(), key);
    if (it == seen.end()) {
      seen.push_back(key);
      it = seen.end() - 1;
    }
    assignment[static_cast<std::size_t>(e)] = static_cast<int>(it - seen.begin());
  }
  return Congruence(std::move(assignment));
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    return true;
  }
  Congruence to_congruence() {
    std::vector<int> assignment(parent_.size());
    for (int e = 0; e < static_cast<int>(parent_.size()); ++e) assignment[static_cast<std::size_t>(e)] = find(e);
    return Congruence(std::move(assignment));
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

/// Join of two partitions: transitive closure of the union. For
/// congruences the join is again a congruence.
inline Congruence cong_join(const Congruence& a, const Congruence& b) {
  if (a.size() != b.size()) throw error("cong_join: partitions over different universes");
  const int n = a.size();
  detail::UnionFind uf(n);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (a.same(x, y) || b.same(x, y)) uf.unite(x, y);
  return uf.to_congruence();
}

/// Relational composition {(x,z) : exists y with x a y and y b z} as a
/// binary relation over the algebra's universe. Not a congruence in
/// general; equality with the join is a theorem in the permutable case,
/// not a definition.
inline Relation cong_compose(const FiniteAlgebra& A, const Congruence& a, const Congruence& b) {
  if (a.size() != A.universe.size || b.size() != A.universe.size)
    throw error("cong_compose: partition size differs from algebra universe");
  const int n = A.universe.size;
  std::vector<Tuple> pairs;
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      bool related = false;
      for (int y = 0; y < n && !related; ++y) related = a.same(x, y) && b.same(y, z);
      if (related) pairs.push_back({x, z});
    }
  return Relation(std::vector<FiniteSet>(2, A.universe), std::move(pairs));
}

/// A congruence viewed as the binary relation of its pairs.
inline Relation congruence_relation(const FiniteAlgebra& A, const Congruence& c) {
  if (c.size() != A.universe.size) throw error("congruence_relation: partition size differs from universe");
  std::vector<Tuple> pairs;
  for (int x = 0; x < A.universe.size; ++x)
    for (int y = 0; y < A.universe.size; ++y)
      if (c.same(x, y)) pairs.push_back({x, y});
  return Relation(std::vector<FiniteSet>(2, A.universe), std::move(pairs));
}

/// The least congruence identifying a and b, grown by closing under
/// single-coordinate operation substitutions.
inline Congruence principal_congruence(const FiniteAlgebra& A, int a, int b) {
  const int n = A.universe.size;
  if (a < 0 || a >= n || b < 0 || b >= n) throw error("principal_congruence: element out of range");
  detail::UnionFind uf(n);
  std::vector<std::pair<int, int>> queue;
  if (uf.unite(a, b)) queue.emplace_back(a, b);
  while (!queue.empty()) {
    auto [u, v] = queue.back();
    queue.pop_back();
    for (const auto& [name, op] : A.operations) {
      const int m = op.arity;
      if (m == 0) continue;
      for (int posn = 0; posn < m; ++posn) {
        Tuple args(static_cast<std::size_t>(m), 0);
        while (true) {
          args[static_cast<std::size_t>(posn)] = u;
          int fu = op.apply(args);
          args[static_cast<std::size_t>(posn)] = v;
          int fv = op.apply(args);
          if (uf.unite(fu, fv)) queue.emplace_back(fu, fv);
          int i = m - 1;
          while (i >= 0) {
            if (i == posn) {
              --i;
              continue;
            }
            if (++args[static_cast<std::size_t>(i)] < n) break;
            args[static_cast<std::size_t>(i--)] = 0;
          }
          if (i < 0) break;
        }
      }
    }
  }
  return uf.to_congruence();
}

/// All congruences of A, sorted canonically. For universes of size at most
/// 6 every partition is enumerated and filtered, which doubles as the
/// small-scale correctness oracle; above that, principal congruences are
/// generated and closed under join (every congruence is a join of the
/// principal congruences it contains).
inline std::vector<Congruence> congruences(const FiniteAlgebra& A, int cap = kDefaultUniverseCap) {
  const int n = A.universe.size;
  if (n > cap)
    throw universe_cap_error("congruences: universe size " + std::to_string(n) + " exceeds cap " +
                             std::to_string(cap));
  std::vector<Congruence> out;
  if (n == 0) return out;
  if (n <= 6) {
    // restricted growth strings enumerate partitions in canonical order
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    while (true) {
      Congruence candidate{std::vector<int>(rgs)};
      if (is_congruence(A, candidate)) out.push_back(std::move(candidate));
      int i = n - 1;
      for (; i > 0; --i) {
        int max_prefix = *std::max_element(rgs.begin(), rgs.begin() + i);
        if (rgs[static_cast<std::size_t>(i)] <= max_prefix) break;
      }
      if (i == 0) break;
      ++rgs[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) rgs[static_cast<std::size_t>(j)] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::set<Congruence> found;
  found.insert(Congruence::diagonal(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) found.insert(principal_congruence(A, a, b));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Congruence> snapshot(found.begin(), found.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j)
        if (found.insert(cong_join(snapshot[i], snapshot[j])).second) grew = true;
  }
  return std::vector<Congruence>(found.begin(), found.end());
}

struct LatticeCheckResult {
  bool distributive = false;
  /// Indices (i,j,k) into the input list of the least failing triple.
  std::optional<std::array<int, 3>> distributive_witness;
  bool permutable = false;
  std::optional<std::array<int, 2>> permutable_witness;
};

/// Distributivity and permutability of a full congruence list. Meets and
/// joins are computed on partitions; permutability compares the two
/// relational compositions.
inline LatticeCheckResult lattice_checks(const std::vector<Congruence>& congs) {
  LatticeCheckResult result;
  result.distributive = true;
  result.permutable = true;
  const int count = static_cast<int>(congs.size());
  for (int i = 0; i < count && result.distributive; ++i)
    for (int j = 0; j < count && result.distributive; ++j)
      for (int k = 0; k < count && result.distributive; ++k) {
        Congruence lhs = cong_meet(congs[static_cast<std::size_t>(i)],
                                   cong_join(congs[static_cast<std::size_t>(j)], congs[static_cast<std::size_t>(k)]));
        Congruence rhs = cong_join(cong_meet(congs[static_cast<std::size_t>(i)], congs[static_cast<std::size_t>(j)]),
                                   cong_meet(congs[static_cast<std::size_t>(i)], congs[static_cast<std::size_t>(k)]));
        if (!(lhs == rhs)) {
          result.distributive = false;
          result.distributive_witness = {i, j, k};
        }
      }
  if (count > 0) {
    const int n = congs[0].size();
    FiniteSet u;
    u.size = n;
    FiniteAlgebra shell(u, {});
    for (int i = 0; i < count && result.permutable; ++i)
      for (int j = i + 1; j < count && result.permutable; ++j) {
        Relation ab = cong_compose(shell, congs[static_cast<std::size_t>(i)], congs[static_cast<std::size_t>(j)]);
        Relation ba = cong_compose(shell, congs[static_cast<std::size_t>(j)], congs[static_cast<std::size_t>(i)]);
        if (!(ab == ba)) {
          result.permutable = false;
          result.permutable_witness = {i, j};
        }
      }
  }
  return result;
}

struct DistributivityIdentityCheck {
  bool ok = false;
  /// Least pair on which the two sides differ.
  std::optional<Tuple> witness_pair;
};

/// The identity K_b ∧ (K_a ∘ K_c) = (K_b ∧ K_a) ∘ (K_b ∧ K_c) on three
/// congruences, compared as relations. Holds whenever the algebra has a
/// maltsev term and a distributive congruence lattice; may fail otherwise,
/// in which case the least differing pair is reported.
inline DistributivityIdentityCheck distributivity_identity_check(const FiniteAlgebra& A, const Congruence& a,
                                                                 const Congruence& b, const Congruence& c) {
  const int n = A.universe.size;
  if (a.size() != n || b.size() != n || c.size() != n)
    throw error("distributivity_identity_check: partition size differs from algebra universe");
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      bool lhs = false;
      if (b.same(x, z))
        for (int y = 0; y < n && !lhs; ++y) lhs = a.same(x, y) && c.same(y, z);
      bool rhs = false;
      for (int y = 0; y < n && !rhs; ++y)
        rhs = b.same(x, y) && a.same(x, y) && b.same(y, z) && c.same(y, z);
      if (lhs != rhs) return {false, Tuple{x, z}};
    }
  return {true, std::nullopt};
}

}  // namespace relmat
