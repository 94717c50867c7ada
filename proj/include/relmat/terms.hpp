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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relmat/algebra.hpp"
#include "relmat/base.hpp"
#include "relmat/structures.hpp"
#include "relmat/witness.hpp"

namespace relmat {

struct CloneResult {
  /// Distinct ternary term tables found, in canonical (value-vector) order.
  std::vector<OperationTable> tables;
  /// True when the closure stabilized within the budget; a partial set is
  /// flagged incomplete rather than silently truncated.
  bool complete = false;
};

/// Closes the three ternary projections under pointwise application of the
/// algebra's basic operations, i.e. computes the ternary part of the term
/// clone, up to `budget` distinct tables.
inline CloneResult ternary_term_clone(const FiniteAlgebra& A, std::size_t budget = 10000) {
  if (budget < 3) throw error("ternary_term_clone: budget must be at least 3");
  const int n = A.universe.size;
  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);

  std::vector<std::vector<int>> tables;
  std::set<std::vector<int>> seen;
  auto add = [&](std::vector<int> t) {
    if (seen.insert(t).second) {
      tables.push_back(std::move(t));
      return true;
    }
    return false;
  };
  for (int pos = 0; pos < 3; ++pos)
    add(OperationTable::projection(A.universe, 3, pos).values);

  bool complete = true;
  bool grew = true;
  while (grew && complete) {
    grew = false;
    const std::size_t snapshot = tables.size();
    for (const auto& [op_name, op] : A.operations) {
      const int m = op.arity;
      std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
      while (true) {
        std::vector<int> composed(cells);
        for (std::size_t c = 0; c < cells; ++c) {
          Tuple inner(static_cast<std::size_t>(m));
          for (int j = 0; j < m; ++j) inner[static_cast<std::size_t>(j)] = tables[pick[static_cast<std::size_t>(j)]][c];
          composed[c] = op.apply(inner);
        }
        if (add(std::move(composed))) {
          grew = true;
          if (tables.size() > budget) {
            complete = false;
            break;
          }
        }
        int j = m - 1;
        while (j >= 0 && ++pick[static_cast<std::size_t>(j)] == snapshot) pick[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
        if (m == 0) break;
      }
      if (!complete) break;
    }
  }

  CloneResult result;
  result.complete = complete;
  std::sort(tables.begin(), tables.end());
  result.tables.reserve(tables.size());
  for (auto& t : tables) result.tables.emplace_back(3, A.universe, std::move(t));
  return result;
}

enum class Decision { yes, no, undecided };

inline std::string to_string(Decision d) {
  switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    case Decision::undecided: return "undecided";
  }
  return "unknown";
}

struct TermSearch {
  Decision decision = Decision::undecided;
  std::optional<OperationTable> table;
  std::size_t clone_size = 0;
  bool clone_complete = false;
};

namespace detail {

inline TermSearch scan_clone(const FiniteAlgebra& A, std::size_t budget,
                             const std::function<bool(const OperationTable&)>& accepts) {
  CloneResult clone = ternary_term_clone(A, budget);
  TermSearch result;
  result.clone_size = clone.tables.size();
  result.clone_complete = clone.complete;
  for (const OperationTable& t : clone.tables) {
    if (accepts(t)) {
      result.decision = Decision::yes;
      result.table = t;
      return result;
    }
  }
  result.decision = clone.complete ? Decision::no : Decision::undecided;
  return result;
}

}  // namespace detail

/// Scans the ternary term clone for a majority table. Answers `no` only
/// when the clone closure is complete within the budget.
inline TermSearch has_majority_term(const FiniteAlgebra& A, std::size_t budget = 10000) {
  return detail::scan_clone(A, budget, [](const OperationTable& t) { return verify_majority(t).ok; });
}

/// Same scan for a maltsev table.
inline TermSearch has_maltsev_term(const FiniteAlgebra& A, std::size_t budget = 10000) {
  return detail::scan_clone(A, budget, [](const OperationTable& t) { return verify_maltsev(t).ok; });
}

// --- polymorphism search ----------------------------------------------------

enum class PolymorphismKind { majority, maltsev };

inline std::string to_string(PolymorphismKind k) {
  return k == PolymorphismKind::majority ? "majority" : "maltsev";
}

/// Checks that applying the ternary table componentwise to any three tuples
/// of a relation of X lands back in that relation. The witness names the
/// relation and carries the three premise tuples and the failing image.
inline HomomorphismCheck preserves_relations(const OperationTable& p, const Structure& X) {
  if (p.arity != 3) throw error("preserves_relations: table must be ternary");
  if (!(p.universe == X.universe)) throw error("preserves_relations: table universe differs from structure");
  for (const auto& [name, rel] : X.relations) {
    const auto& ts = rel.tuples();
    const int k = rel.arity();
    Tuple image(static_cast<std::size_t>(k));
    for (std::size_t a = 0; a < ts.size(); ++a)
      for (std::size_t b = 0; b < ts.size(); ++b)
        for (std::size_t c = 0; c < ts.size(); ++c) {
          for (int i = 0; i < k; ++i)
            image[static_cast<std::size_t>(i)] =
                p.at3(ts[a][static_cast<std::size_t>(i)], ts[b][static_cast<std::size_t>(i)],
                      ts[c][static_cast<std::size_t>(i)]);
          if (!rel.contains(image)) {
            Witness w;
            w.kind = WitnessKind::homomorphism_violation;
            w.relation = name;
            w.premises = {ts[a], ts[b], ts[c]};
            w.conclusion = image;
            return {false, std::move(w)};
          }
        }
  }
  return {true, std::nullopt};
}

enum class SearchStatus { found, none, undecided };

inline std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::undecided: return "undecided";
  }
  return "unknown";
}

struct PolymorphismSearch {
  SearchStatus status = SearchStatus::undecided;
  std::optional<OperationTable> table;
  /// Work units spent (assignments plus constraint evaluations).
  std::uint64_t steps = 0;
  /// Complete candidate tables examined.
  std::uint64_t leaves = 0;
};

/// Backtracking search for a ternary table satisfying the kind's identities
/// and preserving every relation of X. The identities pin every cell they
/// mention, so the search ranges over the remaining cells in lexicographic
/// order with values ascending; the first solution is therefore canonical.
/// Each assignment propagates through the relation constraints whose cells
/// are fully determined. Exceeding the step budget yields an explicit
/// undecided outcome, never a silent none. Found tables are re-verified
/// from scratch before being returned.
inline PolymorphismSearch polymorphism_search(const Structure& X, PolymorphismKind kind,
                                              std::uint64_t budget = 10000000) {
  const int n = X.universe.size;
  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  PolymorphismSearch result;

  std::vector<int> table(cells, -1);
  auto cell_id = [&](int x, int y, int z) {
    return (static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)) *
               static_cast<std::size_t>(n) +
           static_cast<std::size_t>(z);
  };
  auto pin = [&](std::size_t id, int v) {
    if (table[id] != -1 && table[id] != v) throw error("polymorphism_search: inconsistent identity cells");
    table[id] = v;
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (kind == PolymorphismKind::majority) {
        pin(cell_id(x, x, y), x);
        pin(cell_id(x, y, x), x);
        pin(cell_id(y, x, x), x);
      } else {
        pin(cell_id(x, x, y), y);
        pin(cell_id(y, x, x), y);
      }
    }

  // constraint index: one entry per triple of tuples per relation
  struct Constraint {
    const Relation* rel;
    std::vector<std::size_t> cells;  // one per component
  };
  std::vector<Constraint> constraints;
  std::vector<std::vector<std::size_t>> by_cell(cells);
  for (const auto& [name, rel] : X.relations) {
    const auto& ts = rel.tuples();
    const int k = rel.arity();
    for (std::size_t a = 0; a < ts.size(); ++a)
      for (std::size_t b = 0; b < ts.size(); ++b)
        for (std::size_t c = 0; c < ts.size(); ++c) {
          if (++result.steps > budget) return result;
          Constraint con;
          con.rel = &rel;
          con.cells.resize(static_cast<std::size_t>(k));
          for (int i = 0; i < k; ++i)
            con.cells[static_cast<std::size_t>(i)] =
                cell_id(ts[a][static_cast<std::size_t>(i)], ts[b][static_cast<std::size_t>(i)],
                        ts[c][static_cast<std::size_t>(i)]);
          constraints.push_back(std::move(con));
        }
  }
  for (std::size_t ci = 0; ci < constraints.size(); ++ci)
    for (std::size_t cell : constraints[ci].cells) by_cell[cell].push_back(ci);

  Tuple scratch;
  auto satisfied = [&](const Constraint& con) {
    // three-valued: true if determined and inside, false if determined and
    // outside, true (no objection) while undetermined
    scratch.resize(con.cells.size());
    for (std::size_t i = 0; i < con.cells.size(); ++i) {
      int v = table[con.cells[i]];
      if (v == -1) return true;
      scratch[i] = v;
    }
    return con.rel->contains(scratch);
  };

  auto check_all_touching = [&](std::size_t cell) {
    for (std::size_t ci : by_cell[cell]) {
      ++result.steps;
      if (result.steps > budget) return false;
      if (!satisfied(constraints[ci])) return false;
    }
    return true;
  };

  std::vector<std::size_t> free_cells;
  for (std::size_t id = 0; id < cells; ++id)
    if (table[id] == -1) free_cells.push_back(id);

  // Constraints determined by the pinned cells alone are never re-checked
  // during the search, so they must hold up front; when one fails no
  // completion can exist.
  for (std::size_t id = 0; id < cells; ++id) {
    if (table[id] == -1) continue;
    if (!check_all_touching(id)) {
      if (result.steps > budget) return result;
      if (free_cells.empty()) result.leaves = 1;
      result.status = SearchStatus::none;
      return result;
    }
  }

  // depth-first over free cells, values ascending
  std::size_t depth = 0;
  std::vector<int> chosen(free_cells.size(), -1);
  while (true) {
    if (depth == free_cells.size()) {
      ++result.leaves;
      OperationTable candidate(3, X.universe, table);
      bool identities_ok = kind == PolymorphismKind::majority ? verify_majority(candidate).ok
                                                              : verify_maltsev(candidate).ok;
      if (identities_ok && preserves_relations(candidate, X).ok) {
        result.status = SearchStatus::found;
        result.table = std::move(candidate);
        return result;
      }
      if (free_cells.empty()) {
        result.status = SearchStatus::none;
        return result;
      }
      --depth;  // leaf rejected, back up and advance
    }
    std::size_t id = free_cells[depth];
    int next = chosen[depth] + 1;
    bool advanced = false;
    while (next < n) {
      if (++result.steps > budget) return result;
      table[id] = next;
      chosen[depth] = next;
      if (check_all_touching(id)) {
        advanced = true;
        break;
      }
      if (result.steps > budget) return result;
      ++next;
    }
    if (advanced) {
      ++depth;
      continue;
    }
    table[id] = -1;
    chosen[depth] = -1;
    if (depth == 0) {
      result.status = SearchStatus::none;
      return result;
    }
    --depth;
  }
}

}  // namespace relmat
