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
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "relmat/base.hpp"
#include "relmat/structures.hpp"
#include "relmat/witness.hpp"

namespace relmat {

/// A total finitary operation on a finite universe, tabulated in row-major
/// order (first argument most significant), matching the text format.
struct OperationTable {
  int arity = 0;
  FiniteSet universe;
  std::vector<int> values;

  OperationTable(int ar, FiniteSet u, std::vector<int> vals)
      : arity(ar), universe(std::move(u)), values(std::move(vals)) {
    universe.validate();
    if (arity < 0) throw error("OperationTable: negative arity");
    long long expect = 1;
    for (int i = 0; i < arity; ++i) {
      expect *= universe.size;
      if (expect > (1LL << 40)) throw error("OperationTable: table too large");
    }
    if (static_cast<long long>(values.size()) != expect)
      throw error("OperationTable: expected " + std::to_string(expect) + " values, got " +
                  std::to_string(values.size()));
    for (int v : values)
      if (v < 0 || v >= universe.size) throw error("OperationTable: value " + std::to_string(v) + " out of range");
  }

  static OperationTable from_function(const FiniteSet& u, int arity,
                                      const std::function<int(const Tuple&)>& fn) {
    long long count = 1;
    for (int i = 0; i < arity; ++i) count *= u.size;
    std::vector<int> vals;
    vals.reserve(static_cast<std::size_t>(count));
    Tuple args(static_cast<std::size_t>(arity), 0);
    for (long long idx = 0; idx < count; ++idx) {
      vals.push_back(fn(args));
      int i = arity - 1;
      while (i >= 0 && ++args[static_cast<std::size_t>(i)] == u.size) args[static_cast<std::size_t>(i--)] = 0;
    }
    return OperationTable(arity, u, std::move(vals));
  }

  static OperationTable projection(const FiniteSet& u, int arity, int position) {
    if (position < 0 || position >= arity) throw error("OperationTable: projection position out of range");
    return from_function(u, arity, [position](const Tuple& args) { return args[static_cast<std::size_t>(position)]; });
  }

  std::size_t index(const Tuple& args) const {
    std::size_t idx = 0;
    for (int v : args) idx = idx * static_cast<std::size_t>(universe.size) + static_cast<std::size_t>(v);
    return idx;
  }

  int apply(const Tuple& args) const { return values[index(args)]; }
  int at1(int x) const { return values[static_cast<std::size_t>(x)]; }
  int at2(int x, int y) const {
    return values[static_cast<std::size_t>(x) * static_cast<std::size_t>(universe.size) + static_cast<std::size_t>(y)];
  }
  int at3(int x, int y, int z) const {
    std::size_t n = static_cast<std::size_t>(universe.size);
    return values[(static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)) * n + static_cast<std::size_t>(z)];
  }

  bool operator==(const OperationTable&) const = default;
  bool operator<(const OperationTable& other) const { return values < other.values; }
};

/// A finite algebra: a universe plus named operation tables over it.
struct FiniteAlgebra {
  FiniteSet universe;
  std::map<std::string, OperationTable> operations;

  FiniteAlgebra(FiniteSet u, std::map<std::string, OperationTable> ops)
      : universe(std::move(u)), operations(std::move(ops)) {
    universe.validate();
    for (const auto& [name, op] : operations) {
      if (!detail::is_identifier(name)) throw error("FiniteAlgebra: bad operation name '" + name + "'");
      if (!(op.universe == universe))
        throw error("FiniteAlgebra: operation '" + name + "' is over a different universe");
    }
  }

  bool operator==(const FiniteAlgebra&) const = default;
};

// --- text format ---------------------------------------------------------
//
//   universe <n>
//   labels/basepoint        (optional, as for structures)
//   op <name> <arity>
//   <n^arity values in row-major order, n per line>

inline std::string serialize_algebra(const FiniteAlgebra& A) {
  std::ostringstream os;
  os << "universe " << A.universe.size << "\n";
  if (A.universe.labels) {
    os << "labels";
    for (const std::string& l : *A.universe.labels) os << " " << l;
    os << "\n";
  }
  if (A.universe.basepoint) os << "basepoint " << *A.universe.basepoint << "\n";
  for (const auto& [name, op] : A.operations) {
    os << "op " << name << " " << op.arity << "\n";
    if (op.arity == 0) {
      os << op.values[0] << "\n";
      continue;
    }
    std::size_t per_line = static_cast<std::size_t>(A.universe.size);
    for (std::size_t i = 0; i < op.values.size(); ++i) {
      os << op.values[i];
      os << ((i + 1) % per_line == 0 ? "\n" : " ");
    }
  }
  return os.str();
}

inline std::string canonical_digest(const FiniteAlgebra& A) { return hex64(fnv1a64(serialize_algebra(A))); }

inline FiniteAlgebra parse_algebra(const std::string& text) {
  auto lines = detail::tokenize_lines(text);
  if (lines.empty() || lines[0].tokens[0] != "universe" || lines[0].tokens.size() != 2)
    throw parse_error("expected 'universe <n>'", lines.empty() ? 0 : lines[0].number);
  FiniteSet u;
  u.size = detail::parse_int(lines[0].tokens[1], lines[0].number);
  std::size_t pos = 1;
  while (pos < lines.size() && (lines[pos].tokens[0] == "labels" || lines[pos].tokens[0] == "basepoint")) {
    const detail::Line& line = lines[pos];
    if (line.tokens[0] == "labels") {
      if (u.labels) throw parse_error("duplicate 'labels' line", line.number);
      u.labels = std::vector<std::string>(line.tokens.begin() + 1, line.tokens.end());
    } else {
      if (u.basepoint) throw parse_error("duplicate 'basepoint' line", line.number);
      if (line.tokens.size() != 2) throw parse_error("expected 'basepoint <i>'", line.number);
      u.basepoint = detail::parse_int(line.tokens[1], line.number);
    }
    ++pos;
  }
  try {
    u.validate();
  } catch (const error& e) {
    throw parse_error(e.what(), lines[0].number);
  }

  std::map<std::string, OperationTable> ops;
  while (pos < lines.size()) {
    const detail::Line& header = lines[pos];
    if (header.tokens[0] != "op" || header.tokens.size() != 3)
      throw parse_error("expected 'op <name> <arity>'", header.number);
    const std::string& name = header.tokens[1];
    if (!detail::is_identifier(name)) throw parse_error("operation name '" + name + "' is not an identifier", header.number);
    if (ops.count(name)) throw parse_error("duplicate operation '" + name + "'", header.number);
    int arity = detail::parse_int(header.tokens[2], header.number);
    if (arity < 0) throw parse_error("operation arity must be non-negative", header.number);
    long long expect = 1;
    for (int i = 0; i < arity; ++i) expect *= u.size;
    ++pos;
    std::vector<int> values;
    values.reserve(static_cast<std::size_t>(expect));
    int last_line = header.number;
    while (static_cast<long long>(values.size()) < expect) {
      if (pos >= lines.size())
        throw parse_error("operation '" + name + "': expected " + std::to_string(expect) + " values, got " +
                          std::to_string(values.size()), last_line);
      for (const std::string& tok : lines[pos].tokens) {
        int v = detail::parse_int(tok, lines[pos].number);
        if (v < 0 || v >= u.size)
          throw parse_error("value " + std::to_string(v) + " out of range for universe of size " +
                            std::to_string(u.size), lines[pos].number);
        values.push_back(v);
      }
      last_line = lines[pos].number;
      ++pos;
    }
    if (static_cast<long long>(values.size()) != expect)
      throw parse_error("operation '" + name + "': expected " + std::to_string(expect) + " values, got " +
                        std::to_string(values.size()), last_line);
    ops.emplace(name, OperationTable(arity, u, std::move(values)));
  }
  return FiniteAlgebra(std::move(u), std::move(ops));
}

// --- identity checks ------------------------------------------------------

struct IdentityCheck {
  bool ok = false;
  std::optional<Witness> witness;
};

namespace detail {

inline IdentityCheck check_ternary_identities(
    const OperationTable& t, const std::vector<std::pair<std::string, std::function<std::pair<int, int>(int, int)>>>& equations) {
  for (const auto& [text, eval] : equations) {
    for (int x = 0; x < t.universe.size; ++x)
      for (int y = 0; y < t.universe.size; ++y) {
        auto [got, want] = eval(x, y);
        if (got != want) {
          Witness w;
          w.kind = WitnessKind::identity_violation;
          w.equation = text;
          w.assignment = {{"x", x}, {"y", y}};
          w.conclusion = {got, want};
          return {false, std::move(w)};
        }
      }
  }
  return {true, std::nullopt};
}

}  // namespace detail

/// Majority identities: p(x,x,y) = p(x,y,x) = p(y,x,x) = x. The witness is
/// the least violating (equation, x, y), with the conclusion carrying
/// (got, want).
inline IdentityCheck verify_majority(const OperationTable& p) {
  if (p.arity != 3) throw error("verify_majority: arity must be 3");
  return detail::check_ternary_identities(
      p, {{"p(x,x,y) = x", [&](int x, int y) { return std::pair(p.at3(x, x, y), x); }},
          {"p(x,y,x) = x", [&](int x, int y) { return std::pair(p.at3(x, y, x), x); }},
          {"p(y,x,x) = x", [&](int x, int y) { return std::pair(p.at3(y, x, x), x); }}});
}

/// Maltsev identities: q(x,x,y) = y and q(y,x,x) = y.
inline IdentityCheck verify_maltsev(const OperationTable& q) {
  if (q.arity != 3) throw error("verify_maltsev: arity must be 3");
  return detail::check_ternary_identities(
      q, {{"q(x,x,y) = y", [&](int x, int y) { return std::pair(q.at3(x, x, y), y); }},
          {"q(y,x,x) = y", [&](int x, int y) { return std::pair(q.at3(y, x, x), y); }}});
}

// --- term builders --------------------------------------------------------

struct LatticeTermResult {
  OperationTable table;
  /// Whether both absorption laws held on the inputs; when they fail the
  /// inputs were not a lattice and the table comes with no guarantee.
  bool absorption_ok = false;
  std::optional<Witness> absorption_witness;
};

/// The table (x ∧ y) ∨ (x ∧ z) ∨ (y ∧ z). For lattice inputs this always
/// passes verify_majority; absorption is checked and flagged, not assumed.
inline LatticeTermResult lattice_majority_term(const OperationTable& meet, const OperationTable& join) {
  if (meet.arity != 2 || join.arity != 2) throw error("lattice_majority_term: meet/join must be binary");
  if (!(meet.universe == join.universe)) throw error("lattice_majority_term: meet/join universes differ");
  OperationTable table = OperationTable::from_function(meet.universe, 3, [&](const Tuple& a) {
    return join.at2(join.at2(meet.at2(a[0], a[1]), meet.at2(a[0], a[2])), meet.at2(a[1], a[2]));
  });
  LatticeTermResult result{std::move(table), true, std::nullopt};
  for (int x = 0; x < meet.universe.size && result.absorption_ok; ++x)
    for (int y = 0; y < meet.universe.size && result.absorption_ok; ++y) {
      const bool first = meet.at2(x, join.at2(x, y)) == x;
      const bool second = join.at2(x, meet.at2(x, y)) == x;
      if (first && second) continue;
      result.absorption_ok = false;
      Witness w;
      w.kind = WitnessKind::identity_violation;
      w.equation = first ? "x v (x ^ y) = x" : "x ^ (x v y) = x";
      w.assignment = {{"x", x}, {"y", y}};
      result.absorption_witness = std::move(w);
    }
  return result;
}

/// The table x - (x - y)(x - z)^(n-1) over explicit add/sub/mul tables.
/// Requires n >= 2 and the exponent law x^n = x, which is verified first;
/// a violation raises an error naming the offending element.
inline OperationTable ring_majority_term(const OperationTable& add, const OperationTable& sub,
                                         const OperationTable& mul, int n) {
  if (add.arity != 2 || sub.arity != 2 || mul.arity != 2)
    throw error("ring_majority_term: add/sub/mul must be binary");
  if (!(add.universe == sub.universe) || !(add.universe == mul.universe))
    throw error("ring_majority_term: add/sub/mul universes differ");
  if (n < 2) throw error("ring_majority_term: exponent must be at least 2");
  auto power = [&](int x, int e) {
    int acc = x;
    for (int i = 1; i < e; ++i) acc = mul.at2(acc, x);
    return acc;
  };
  for (int x = 0; x < add.universe.size; ++x)
    if (power(x, n) != x)
      throw error("ring_majority_term: exponent law x^" + std::to_string(n) + " = x fails at element " +
                  std::to_string(x) + " (got " + std::to_string(power(x, n)) + ")");
  return OperationTable::from_function(add.universe, 3, [&](const Tuple& a) {
    return sub.at2(a[0], mul.at2(sub.at2(a[0], a[1]), power(sub.at2(a[0], a[2]), n - 1)));
  });
}

// --- commutative majority operations ---------------------------------------

/// Whether the majority table p is itself a homomorphism from the cube:
/// p(p(row1), p(row2), p(row3)) = p(p(col1), p(col2), p(col3)) for every
/// 3x3 matrix of arguments. Requires verify_majority(p) to hold.
inline IdentityCheck is_commutative_majority(const OperationTable& p) {
  IdentityCheck majority = verify_majority(p);
  if (!majority.ok) throw error("is_commutative_majority: input is not a majority table");
  const int n = p.universe.size;
  if (n == 0) return {true, std::nullopt};
  Tuple a(9, 0);  // (a1,b1,c1,a2,b2,c2,a3,b3,c3), rows of the argument matrix
  while (true) {
    int lhs = p.at3(p.at3(a[0], a[1], a[2]), p.at3(a[3], a[4], a[5]), p.at3(a[6], a[7], a[8]));
    int rhs = p.at3(p.at3(a[0], a[3], a[6]), p.at3(a[1], a[4], a[7]), p.at3(a[2], a[5], a[8]));
    if (lhs != rhs) {
      Witness w;
      w.kind = WitnessKind::identity_violation;
      w.equation = "p(p(a1,b1,c1),p(a2,b2,c2),p(a3,b3,c3)) = p(p(a1,a2,a3),p(b1,b2,b3),p(c1,c2,c3))";
      static const char* names[] = {"a1", "b1", "c1", "a2", "b2", "c2", "a3", "b3", "c3"};
      for (int i = 0; i < 9; ++i) w.assignment.emplace_back(names[i], a[static_cast<std::size_t>(i)]);
      w.conclusion = {lhs, rhs};
      return {false, std::move(w)};
    }
    int i = 8;
    while (i >= 0 && ++a[static_cast<std::size_t>(i)] == n) a[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  return {true, std::nullopt};
}

struct ExhaustiveSearchResult {
  std::optional<OperationTable> table;
  std::uint64_t candidates = 0;
};

/// Exhaustive search for a commutative majority table on an n-element
/// universe. The majority identities pin every cell with a repeated
/// argument, so candidates range over the all-distinct cells only; every
/// candidate is counted. Supported exhaustively for n <= 3.
inline ExhaustiveSearchResult commutative_majority_search(int n) {
  if (n < 1 || n > 3)
    throw error("commutative_majority_search: exhaustive mode supports universe sizes 1..3, got " +
                std::to_string(n));
  FiniteSet u;
  u.size = n;
  std::vector<int> cells(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  auto cell = [&](int x, int y, int z) -> int& {
    return cells[(static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)) *
                     static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(z)];
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      cell(x, x, y) = x;
      cell(x, y, x) = x;
      cell(y, x, x) = x;
    }
  std::vector<std::size_t> free_cells;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i] == -1) free_cells.push_back(i);

  ExhaustiveSearchResult result;
  std::vector<int> choice(free_cells.size(), 0);
  while (true) {
    ++result.candidates;
    for (std::size_t i = 0; i < free_cells.size(); ++i) cells[free_cells[i]] = choice[i];
    OperationTable candidate(3, u, cells);
    if (is_commutative_majority(candidate).ok) {
      result.table = std::move(candidate);
      return result;
    }
    int i = static_cast<int>(free_cells.size()) - 1;
    while (i >= 0 && ++choice[static_cast<std::size_t>(i)] == n) choice[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  return result;
}

}  // namespace relmat
