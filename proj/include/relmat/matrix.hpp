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
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relmat/base.hpp"
#include "relmat/structures.hpp"
#include "relmat/witness.hpp"

namespace relmat {

/// An extended term matrix: one row per relation component, w premise
/// columns and one conclusion column. Entries are row-scoped variables or
/// the constant ZERO (which refers to the component's basepoint). Variable
/// namespaces of distinct rows are disjoint, matching the usual display
/// where each row uses its own letters.
class ExtendedMatrix {
 public:
  static constexpr int kZero = -1;

  ExtendedMatrix(std::vector<std::vector<int>> entries, std::vector<std::vector<std::string>> names)
      : entries_(std::move(entries)), names_(std::move(names)) {
    if (entries_.empty()) throw error("ExtendedMatrix: must have at least one row");
    if (entries_.size() != names_.size()) throw error("ExtendedMatrix: name table shape mismatch");
    std::size_t cols = entries_[0].size();
    if (cols < 2) throw error("ExtendedMatrix: must have at least one premise column");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].size() != cols) throw error("ExtendedMatrix: ragged rows");
      for (int e : entries_[i]) {
        if (e == kZero) continue;
        if (e < 0 || e >= static_cast<int>(names_[i].size()))
          throw error("ExtendedMatrix: variable id out of range");
      }
      for (const std::string& n : names_[i])
        if (!detail::is_identifier(n)) throw error("ExtendedMatrix: bad variable name '" + n + "'");
    }
  }

  int rows() const { return static_cast<int>(entries_.size()); }
  int width() const { return static_cast<int>(entries_[0].size()) - 1; }
  /// Entry at (row, column); column `width()` is the conclusion.
  int entry(int row, int column) const {
    return entries_[static_cast<std::size_t>(row)][static_cast<std::size_t>(column)];
  }
  int variable_count(int row) const { return static_cast<int>(names_[static_cast<std::size_t>(row)].size()); }
  const std::string& variable_name(int row, int var) const {
    return names_[static_cast<std::size_t>(row)][static_cast<std::size_t>(var)];
  }
  bool uses_zero(int row) const {
    for (int e : entries_[static_cast<std::size_t>(row)])
      if (e == kZero) return true;
    return false;
  }

  /// Name for (row, var), suffixed with "@<row>" when the bare name occurs
  /// in more than one row. Used for witness assignments.
  std::string display_name(int row, int var) const {
    const std::string& n = variable_name(row, var);
    int uses = 0;
    for (const auto& row_names : names_)
      for (const std::string& other : row_names)
        if (other == n) ++uses;
    return uses > 1 ? n + "@" + std::to_string(row) : n;
  }

  bool operator==(const ExtendedMatrix&) const = default;

 private:
  std::vector<std::vector<int>> entries_;
  std::vector<std::vector<std::string>> names_;
};

/// The named matrices of the matrix method.
///
///   majority:     (a1 a1 a2 | a1; b1 b2 b1 | b1; c2 c1 c1 | c1)
///   maltsev:      (x1 x1 x2 | x2; y2 y1 y1 | y2)
///   unital:       (x 0 | x; 0 x | x)
///   subtractive:  (x x | 0; x 0 | x)
inline ExtendedMatrix builtin_matrix(const std::string& name) {
  if (name == "majority")
    return ExtendedMatrix({{0, 0, 1, 0}, {0, 1, 0, 0}, {0, 1, 1, 1}},
                          {{"a1", "a2"}, {"b1", "b2"}, {"c2", "c1"}});
  if (name == "maltsev")
    return ExtendedMatrix({{0, 0, 1, 1}, {0, 1, 1, 0}}, {{"x1", "x2"}, {"y2", "y1"}});
  if (name == "unital")
    return ExtendedMatrix({{0, ExtendedMatrix::kZero, 0}, {ExtendedMatrix::kZero, 0, 0}}, {{"x"}, {"x"}});
  if (name == "subtractive")
    return ExtendedMatrix({{0, 0, ExtendedMatrix::kZero}, {0, ExtendedMatrix::kZero, 0}}, {{"x"}, {"x"}});
  throw error("builtin_matrix: unknown name '" + name + "'");
}

inline std::string serialize_matrix(const ExtendedMatrix& M) {
  std::ostringstream os;
  os << "matrix " << M.rows() << " " << M.width() + 1 << "\n";
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j <= M.width(); ++j) {
      if (j == M.width()) os << "| ";
      int e = M.entry(i, j);
      os << (e == ExtendedMatrix::kZero ? std::string("0") : M.variable_name(i, e));
      if (j < M.width()) os << " ";
    }
    os << "\n";
  }
  return os.str();
}

inline ExtendedMatrix parse_matrix(const std::string& text) {
  auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw parse_error("expected 'matrix <rows> <cols>'");
  const detail::Line& header = lines[0];
  if (header.tokens[0] != "matrix" || header.tokens.size() != 3)
    throw parse_error("expected 'matrix <rows> <cols>'", header.number);
  int rows = detail::parse_int(header.tokens[1], header.number);
  int cols = detail::parse_int(header.tokens[2], header.number);
  if (rows < 1 || cols < 2) throw parse_error("matrix must have at least 1 row and 2 columns", header.number);
  if (static_cast<int>(lines.size()) != rows + 1)
    throw parse_error("expected " + std::to_string(rows) + " matrix rows", header.number);
  std::vector<std::vector<int>> entries;
  std::vector<std::vector<std::string>> names;
  for (int i = 0; i < rows; ++i) {
    const detail::Line& line = lines[static_cast<std::size_t>(i) + 1];
    std::vector<std::string> symbols;
    for (const std::string& tok : line.tokens)
      if (tok != "|") symbols.push_back(tok);
    if (static_cast<int>(symbols.size()) != cols)
      throw parse_error("expected " + std::to_string(cols) + " symbols, got " +
                        std::to_string(symbols.size()), line.number);
    std::vector<int> row;
    std::vector<std::string> row_names;
    for (const std::string& sym : symbols) {
      if (sym == "0") {
        row.push_back(ExtendedMatrix::kZero);
        continue;
      }
      if (!detail::is_identifier(sym))
        throw parse_error("bad matrix symbol '" + sym + "'", line.number);
      auto it = std::find(row_names.begin(), row_names.end(), sym);
      if (it == row_names.end()) {
        row.push_back(static_cast<int>(row_names.size()));
        row_names.push_back(sym);
      } else {
        row.push_back(static_cast<int>(it - row_names.begin()));
      }
    }
    entries.push_back(std::move(row));
    names.push_back(std::move(row_names));
  }
  return ExtendedMatrix(std::move(entries), std::move(names));
}

struct ClosednessCheck {
  bool ok = false;
  std::optional<Witness> witness;
};

namespace detail {

inline void check_matrix_against(const Relation& R, const ExtendedMatrix& M) {
  if (M.rows() != R.arity())
    throw error("matrix has " + std::to_string(M.rows()) + " rows but relation has arity " +
                std::to_string(R.arity()));
  for (int i = 0; i < M.rows(); ++i)
    if (M.uses_zero(i) && !R.signature()[static_cast<std::size_t>(i)].basepoint)
      throw error("matrix uses the constant 0 but component " + std::to_string(i) + " has no basepoint");
}

// Enumerates, in canonical order, every assignment of the matrix variables
// whose premise columns all lie in R, and hands the forced conclusion to
// `sink` together with the premise tuples and the bindings. Returning false
// from the sink stops the sweep. Premise combinations are visited in
// lexicographic order of their tuple sequences, and conclusion completions
// in ascending order, so the first violation a sink sees is the canonical
// least one.
inline void scan_forced_conclusions(
    const Relation& R, const ExtendedMatrix& M,
    const std::function<bool(const std::vector<std::size_t>&, const std::vector<std::vector<int>>&,
                             const Tuple&)>& sink) {
  const auto& ts = R.tuples();
  const int w = M.width();
  const int m = M.rows();
  if (ts.empty()) return;

  std::vector<std::size_t> pick(static_cast<std::size_t>(w), 0);
  std::vector<std::vector<int>> bindings(static_cast<std::size_t>(m));
  while (true) {
    bool consistent = true;
    for (int i = 0; i < m; ++i)
      bindings[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(M.variable_count(i)), -1);
    for (int j = 0; j < w && consistent; ++j) {
      const Tuple& premise = ts[pick[static_cast<std::size_t>(j)]];
      for (int i = 0; i < m && consistent; ++i) {
        int e = M.entry(i, j);
        int val = premise[static_cast<std::size_t>(i)];
        if (e == ExtendedMatrix::kZero) {
          consistent = val == *R.signature()[static_cast<std::size_t>(i)].basepoint;
        } else {
          int& slot = bindings[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
          if (slot == -1)
            slot = val;
          else
            consistent = slot == val;
        }
      }
    }
    if (consistent) {
      // variables appearing only in the conclusion stay free; sweep them
      std::vector<int> free_rows;
      for (int i = 0; i < m; ++i) {
        int e = M.entry(i, w);
        if (e != ExtendedMatrix::kZero && bindings[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] == -1)
          free_rows.push_back(i);
      }
      std::vector<int> free_vals(free_rows.size(), 0);
      bool more = true;
      while (more) {
        Tuple conclusion(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
          int e = M.entry(i, w);
          conclusion[static_cast<std::size_t>(i)] =
              e == ExtendedMatrix::kZero ? *R.signature()[static_cast<std::size_t>(i)].basepoint
                                         : bindings[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
        }
        for (std::size_t f = 0; f < free_rows.size(); ++f) {
          int row = free_rows[f];
          conclusion[static_cast<std::size_t>(row)] = free_vals[f];
          bindings[static_cast<std::size_t>(row)][static_cast<std::size_t>(M.entry(row, w))] = free_vals[f];
        }
        if (!sink(pick, bindings, conclusion)) return;
        int f = static_cast<int>(free_rows.size()) - 1;
        while (f >= 0) {
          int row = free_rows[static_cast<std::size_t>(f)];
          if (++free_vals[static_cast<std::size_t>(f)] < R.signature()[static_cast<std::size_t>(row)].size) break;
          free_vals[static_cast<std::size_t>(f--)] = 0;
        }
        more = f >= 0;
      }
    }
    int j = w - 1;
    while (j >= 0 && ++pick[static_cast<std::size_t>(j)] == ts.size()) pick[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
  }
}

inline Witness make_closure_witness(const Relation& R, const ExtendedMatrix& M,
                                    const std::vector<std::size_t>& pick,
                                    const std::vector<std::vector<int>>& bindings, const Tuple& conclusion) {
  Witness out;
  out.kind = WitnessKind::closure_violation;
  for (int i = 0; i < M.rows(); ++i)
    for (int v = 0; v < M.variable_count(i); ++v)
      if (bindings[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] != -1)
        out.assignment.emplace_back(M.display_name(i, v),
                                    bindings[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)]);
  for (std::size_t idx : pick) out.premises.push_back(R.tuples()[idx]);
  out.conclusion = conclusion;
  return out;
}

}  // namespace detail

/// Decides strict closedness of R under M: for every assignment of each
/// row's variables to elements of that row's component (with 0 reading as
/// the basepoint), whenever all premise columns lie in R, the conclusion
/// column must lie in R. Premise enumeration unifies tuples of R against
/// the matrix pattern rather than sweeping raw assignments, which is
/// equivalent and much cheaper on sparse relations. On failure, the
/// returned witness is the lexicographically least in (premise tuples,
/// conclusion) order.
inline ClosednessCheck is_strictly_closed(const Relation& R, const ExtendedMatrix& M) {
  detail::check_matrix_against(R, M);
  ClosednessCheck result{true, std::nullopt};
  detail::scan_forced_conclusions(
      R, M,
      [&](const std::vector<std::size_t>& pick, const std::vector<std::vector<int>>& bindings,
          const Tuple& conclusion) {
        if (R.contains(conclusion)) return true;
        result.ok = false;
        result.witness = detail::make_closure_witness(R, M, pick, bindings, conclusion);
        return false;
      });
  return result;
}

/// The least superset of R that is strictly M-closed, computed as a
/// worklist fixpoint: every forced-but-absent conclusion of the current
/// relation is added, rounds repeat until stable.
inline Relation strict_closure(const Relation& R, const ExtendedMatrix& M) {
  detail::check_matrix_against(R, M);
  std::set<Tuple> current(R.tuples().begin(), R.tuples().end());
  bool grew = true;
  while (grew) {
    grew = false;
    Relation stage(R.signature(), std::vector<Tuple>(current.begin(), current.end()));
    std::set<Tuple> missing;
    detail::scan_forced_conclusions(stage, M,
                                    [&](const std::vector<std::size_t>&, const std::vector<std::vector<int>>&,
                                        const Tuple& conclusion) {
                                      if (!stage.contains(conclusion)) missing.insert(conclusion);
                                      return true;
                                    });
    if (!missing.empty()) {
      grew = true;
      current.insert(missing.begin(), missing.end());
    }
  }
  return Relation(R.signature(), std::vector<Tuple>(current.begin(), current.end()));
}

/// Difunctionality of a binary relation: (x1,y2),(x1,y1),(x2,y1) in R
/// forces (x2,y2) in R. This is exactly strict closedness under the
/// maltsev matrix.
inline ClosednessCheck is_difunctional(const Relation& R) {
  if (R.arity() != 2) throw error("is_difunctional: relation must be binary");
  return is_strictly_closed(R, builtin_matrix("maltsev"));
}

/// Recomputes the violation described by a closure witness: all premise
/// columns must land in R and the conclusion must be absent. Used by the
/// CLI's witness audit mode.
inline bool replay_closure_witness(const Relation& R, const ExtendedMatrix& M, const Witness& w) {
  if (w.kind != WitnessKind::closure_violation) return false;
  std::map<std::string, int> by_name(w.assignment.begin(), w.assignment.end());
  auto lookup = [&](int row, int var) -> std::optional<int> {
    auto it = by_name.find(M.display_name(row, var));
    if (it == by_name.end()) return std::nullopt;
    return it->second;
  };
  auto column = [&](int col) -> std::optional<Tuple> {
    Tuple t(static_cast<std::size_t>(M.rows()));
    for (int i = 0; i < M.rows(); ++i) {
      int e = M.entry(i, col);
      if (e == ExtendedMatrix::kZero) {
        const auto& bp = R.signature()[static_cast<std::size_t>(i)].basepoint;
        if (!bp) return std::nullopt;
        t[static_cast<std::size_t>(i)] = *bp;
      } else {
        auto v = lookup(i, e);
        if (!v) return std::nullopt;
        t[static_cast<std::size_t>(i)] = *v;
      }
    }
    return t;
  };
  for (int j = 0; j < M.width(); ++j) {
    auto premise = column(j);
    if (!premise || !R.contains(*premise)) return false;
    if (j >= static_cast<int>(w.premises.size()) || *premise != w.premises[static_cast<std::size_t>(j)])
      return false;
  }
  auto conclusion = column(M.width());
  return conclusion && *conclusion == w.conclusion && !R.contains(*conclusion);
}

}  // namespace relmat
