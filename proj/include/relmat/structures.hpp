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
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relmat/base.hpp"
#include "relmat/witness.hpp"

namespace relmat {

/// A finite set. Elements are the indices 0..size-1; optional display
/// labels, and an optional basepoint (the designated "zero" of pointed
/// checks). Immutable by convention once built.
struct FiniteSet {
  int size = 0;
  std::optional<std::vector<std::string>> labels;
  std::optional<int> basepoint;

  void validate() const {
    if (size < 0) throw error("FiniteSet: negative size");
    if (labels) {
      if (static_cast<int>(labels->size()) != size)
        throw error("FiniteSet: expected " + std::to_string(size) + " labels, got " +
                    std::to_string(labels->size()));
      std::set<std::string> seen;
      for (const std::string& l : *labels) {
        if (l.empty() || l.find_first_of(" \t\r\n") != std::string::npos)
          throw error("FiniteSet: label '" + l + "' is empty or contains whitespace");
        if (!seen.insert(l).second) throw error("FiniteSet: duplicate label '" + l + "'");
      }
    }
    if (basepoint && (*basepoint < 0 || *basepoint >= size))
      throw error("FiniteSet: basepoint " + std::to_string(*basepoint) + " out of range");
  }

  std::string label(int element) const {
    return labels ? (*labels)[static_cast<std::size_t>(element)] : std::to_string(element);
  }

  bool operator==(const FiniteSet&) const = default;
};

/// A finite relation: an ordered signature of component sets and a set of
/// tuples. Tuples are stored sorted lexicographically without duplicates,
/// which fixes the canonical form used by serialization and witnesses.
/// Components may differ (heterogeneous relations are allowed).
class Relation {
 public:
  Relation(std::vector<FiniteSet> signature, std::vector<Tuple> tuples)
      : signature_(std::move(signature)), tuples_(std::move(tuples)) {
    if (signature_.empty()) throw error("Relation: arity must be at least 1");
    for (const FiniteSet& c : signature_) c.validate();
    for (const Tuple& t : tuples_) {
      if (t.size() != signature_.size())
        throw error("Relation: tuple arity " + std::to_string(t.size()) + " does not match signature arity " +
                    std::to_string(signature_.size()));
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] < 0 || t[i] >= signature_[i].size)
          throw error("Relation: entry " + std::to_string(t[i]) + " out of range for component " +
                      std::to_string(i));
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  }

  int arity() const { return static_cast<int>(signature_.size()); }
  const std::vector<FiniteSet>& signature() const { return signature_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }

  bool contains(const Tuple& t) const {
    return std::binary_search(tuples_.begin(), tuples_.end(), t);
  }

  /// Number of cells in the full product of the signature, or -1 when it
  /// exceeds `cap` (used to guard exhaustive sweeps).
  long long full_size(long long cap = 1LL << 62) const {
    long long n = 1;
    for (const FiniteSet& c : signature_) {
      n *= c.size;
      if (n > cap) return -1;
    }
    return n;
  }

  bool operator==(const Relation&) const = default;

 private:
  std::vector<FiniteSet> signature_;
  std::vector<Tuple> tuples_;
};

/// A relational structure: one universe, finitely many named relations,
/// all of whose components are the universe.
struct Structure {
  FiniteSet universe;
  std::map<std::string, Relation> relations;

  Structure(FiniteSet u, std::map<std::string, Relation> rels)
      : universe(std::move(u)), relations(std::move(rels)) {
    universe.validate();
    for (const auto& [name, rel] : relations) {
      if (!detail::is_identifier(name))
        throw error("Structure: relation name '" + name + "' is not an identifier");
      for (const FiniteSet& c : rel.signature())
        if (!(c == universe))
          throw error("Structure: relation '" + name + "' has a component differing from the universe");
    }
  }

  /// The single relation of a Rel_k structure. Errors when the structure
  /// does not have exactly one relation. Deleted on temporaries: the
  /// reference must not outlive the structure.
  const std::pair<const std::string, Relation>& single_relation() const& {
    if (relations.size() != 1)
      throw error("Structure: expected exactly one relation, found " + std::to_string(relations.size()));
    return *relations.begin();
  }
  const std::pair<const std::string, Relation>& single_relation() const&& = delete;

  bool operator==(const Structure&) const = default;
};

/// A total function between finite sets, tabulated on the domain.
struct FiniteMap {
  FiniteSet domain;
  FiniteSet codomain;
  std::vector<int> values;

  FiniteMap(FiniteSet dom, FiniteSet cod, std::vector<int> vals)
      : domain(std::move(dom)), codomain(std::move(cod)), values(std::move(vals)) {
    domain.validate();
    codomain.validate();
    if (static_cast<int>(values.size()) != domain.size)
      throw error("FiniteMap: expected " + std::to_string(domain.size) + " values, got " +
                  std::to_string(values.size()));
    for (int v : values)
      if (v < 0 || v >= codomain.size) throw error("FiniteMap: value " + std::to_string(v) + " out of range");
  }

  static FiniteMap identity(const FiniteSet& s) {
    std::vector<int> vals(static_cast<std::size_t>(s.size));
    for (int i = 0; i < s.size; ++i) vals[static_cast<std::size_t>(i)] = i;
    return FiniteMap(s, s, std::move(vals));
  }

  int operator()(int element) const { return values[static_cast<std::size_t>(element)]; }

  Tuple apply(const Tuple& t) const {
    Tuple out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = values[static_cast<std::size_t>(t[i])];
    return out;
  }

  /// Composition `after(this(x))`.
  FiniteMap then(const FiniteMap& after) const {
    if (!(codomain == after.domain)) throw error("FiniteMap: composition domain mismatch");
    std::vector<int> vals(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      vals[i] = after.values[static_cast<std::size_t>(values[i])];
    return FiniteMap(domain, after.codomain, std::move(vals));
  }

  bool operator==(const FiniteMap&) const = default;
};

struct HomomorphismCheck {
  bool ok = false;
  std::optional<Witness> witness;
};

/// Checks that f maps every tuple of every relation of X into the
/// corresponding relation of Y. On failure returns the lexicographically
/// least violating (relation name, tuple), with the image as conclusion.
inline HomomorphismCheck is_homomorphism(const FiniteMap& f, const Structure& X, const Structure& Y) {
  if (!(f.domain == X.universe)) throw error("is_homomorphism: map domain is not the source universe");
  if (!(f.codomain == Y.universe)) throw error("is_homomorphism: map codomain is not the target universe");
  if (X.relations.size() != Y.relations.size())
    throw error("is_homomorphism: structures have different relation counts");
  for (const auto& [name, rx] : X.relations) {
    auto it = Y.relations.find(name);
    if (it == Y.relations.end()) throw error("is_homomorphism: relation '" + name + "' missing from target");
    if (rx.arity() != it->second.arity())
      throw error("is_homomorphism: relation '" + name + "' has mismatched arity");
  }
  for (const auto& [name, rx] : X.relations) {
    const Relation& ry = Y.relations.at(name);
    for (const Tuple& t : rx.tuples()) {
      Tuple image = f.apply(t);
      if (!ry.contains(image)) {
        Witness w;
        w.kind = WitnessKind::homomorphism_violation;
        w.relation = name;
        w.premises = {t};
        w.conclusion = image;
        return {false, std::move(w)};
      }
    }
  }
  return {true, std::nullopt};
}

namespace detail {

inline long long checked_power(int base, int exponent, int cap) {
  long long n = 1;
  for (int i = 0; i < exponent; ++i) {
    n *= base;
    if (n > cap)
      throw universe_cap_error("product universe of size " + std::to_string(base) + "^" +
                               std::to_string(exponent) + " exceeds cap " + std::to_string(cap));
  }
  return n;
}

inline FiniteSet power_universe(const FiniteSet& u, int n, int cap) {
  long long size = checked_power(u.size, n, cap);
  std::vector<int> radices(static_cast<std::size_t>(n), u.size);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(size));
  for (int code = 0; code < size; ++code) {
    Tuple coords = mixed_radix_decode(code, radices);
    std::string l = "(";
    for (int i = 0; i < n; ++i) {
      if (i > 0) l += ",";
      l += u.label(coords[static_cast<std::size_t>(i)]);
    }
    l += ")";
    labels.push_back(std::move(l));
  }
  FiniteSet pu;
  pu.size = static_cast<int>(size);
  pu.labels = std::move(labels);
  if (u.basepoint) {
    Tuple diag(static_cast<std::size_t>(n), *u.basepoint);
    pu.basepoint = mixed_radix_encode(diag, radices);
  }
  return pu;
}

}  // namespace detail

/// The n-fold power of X. The universe is U^n with tuples encoded in
/// mixed radix, coordinate 0 least significant, labelled "(a,b,c)". For
/// each relation of arity k, a k-tuple of power elements is related iff
/// all n coordinate k-tuples are related in X; this is the largest
/// relation making the n projections homomorphisms.
inline Structure product_power(const Structure& X, int n, int cap = kDefaultUniverseCap) {
  if (n < 1) throw error("product_power: exponent must be at least 1");
  FiniteSet pu = detail::power_universe(X.universe, n, cap);
  std::vector<int> radices(static_cast<std::size_t>(n), X.universe.size);
  std::map<std::string, Relation> rels;
  for (const auto& [name, rel] : X.relations) {
    const int k = rel.arity();
    const auto& ts = rel.tuples();
    std::vector<Tuple> power_tuples;
    // one power tuple per n-combination of relation tuples
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    if (!ts.empty()) {
      while (true) {
        Tuple pt(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
          Tuple coords(static_cast<std::size_t>(n));
          for (int j = 0; j < n; ++j) coords[static_cast<std::size_t>(j)] = ts[pick[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)];
          pt[static_cast<std::size_t>(i)] = mixed_radix_encode(coords, radices);
        }
        power_tuples.push_back(std::move(pt));
        int j = n - 1;
        while (j >= 0 && ++pick[static_cast<std::size_t>(j)] == ts.size()) pick[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
      }
    }
    std::vector<FiniteSet> sig(static_cast<std::size_t>(k), pu);
    rels.emplace(name, Relation(std::move(sig), std::move(power_tuples)));
  }
  return Structure(pu, std::move(rels));
}

/// Projection of the n-fold power onto coordinate i.
inline FiniteMap power_projection(const Structure& X, int n, int coordinate, int cap = kDefaultUniverseCap) {
  if (coordinate < 0 || coordinate >= n) throw error("power_projection: coordinate out of range");
  FiniteSet pu = detail::power_universe(X.universe, n, cap);
  std::vector<int> radices(static_cast<std::size_t>(n), X.universe.size);
  std::vector<int> vals(static_cast<std::size_t>(pu.size));
  for (int e = 0; e < pu.size; ++e)
    vals[static_cast<std::size_t>(e)] = mixed_radix_decode(e, radices)[static_cast<std::size_t>(coordinate)];
  return FiniteMap(pu, X.universe, std::move(vals));
}

/// Restriction of X to a list of universe elements, re-indexed in list
/// order. Labels (when X carries them) follow the chosen elements, so the
/// inclusion is label-preserving; the basepoint is kept only when it is in
/// the subset. Each relation keeps exactly the tuples lying in the subset,
/// making the inclusion relation-reflecting.
inline Structure restrict(const Structure& X, const std::vector<int>& subset) {
  std::vector<int> old_to_new(static_cast<std::size_t>(X.universe.size), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    int e = subset[i];
    if (e < 0 || e >= X.universe.size) throw error("restrict: element " + std::to_string(e) + " out of range");
    if (old_to_new[static_cast<std::size_t>(e)] != -1)
      throw error("restrict: duplicate element " + std::to_string(e));
    old_to_new[static_cast<std::size_t>(e)] = static_cast<int>(i);
  }
  FiniteSet su;
  su.size = static_cast<int>(subset.size());
  if (X.universe.labels) {
    std::vector<std::string> labels;
    labels.reserve(subset.size());
    for (int e : subset) labels.push_back((*X.universe.labels)[static_cast<std::size_t>(e)]);
    su.labels = std::move(labels);
  }
  if (X.universe.basepoint && old_to_new[static_cast<std::size_t>(*X.universe.basepoint)] != -1)
    su.basepoint = old_to_new[static_cast<std::size_t>(*X.universe.basepoint)];
  std::map<std::string, Relation> rels;
  for (const auto& [name, rel] : X.relations) {
    std::vector<Tuple> kept;
    for (const Tuple& t : rel.tuples()) {
      Tuple mapped(t.size());
      bool inside = true;
      for (std::size_t i = 0; i < t.size() && inside; ++i) {
        mapped[i] = old_to_new[static_cast<std::size_t>(t[i])];
        inside = mapped[i] != -1;
      }
      if (inside) kept.push_back(std::move(mapped));
    }
    std::vector<FiniteSet> sig(static_cast<std::size_t>(rel.arity()), su);
    rels.emplace(name, Relation(std::move(sig), std::move(kept)));
  }
  return Structure(su, std::move(rels));
}

// --- canonical text format ---------------------------------------------
//
//   universe <n>
//   labels <l0> <l1> ...        (optional)
//   basepoint <i>               (optional)
//   rel <name> <arity>
//   <tuple entries, one tuple per line, sorted>
//   end
//
// Serialization always emits this canonical form; parsing accepts blank
// lines and '#' comments in addition.

inline std::string serialize_structure(const Structure& X) {
  std::ostringstream os;
  os << "universe " << X.universe.size << "\n";
  if (X.universe.labels) {
    os << "labels";
    for (const std::string& l : *X.universe.labels) os << " " << l;
    os << "\n";
  }
  if (X.universe.basepoint) os << "basepoint " << *X.universe.basepoint << "\n";
  for (const auto& [name, rel] : X.relations) {
    os << "rel " << name << " " << rel.arity() << "\n";
    for (const Tuple& t : rel.tuples()) {
      for (std::size_t i = 0; i < t.size(); ++i) os << (i > 0 ? " " : "") << t[i];
      os << "\n";
    }
    os << "end\n";
  }
  return os.str();
}

inline std::string canonical_digest(const Structure& X) { return hex64(fnv1a64(serialize_structure(X))); }

namespace detail {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line;
    line.number = number;
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline int parse_int(const std::string& tok, int line) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw parse_error("expected an integer, got '" + tok + "'", line);
  }
}

}  // namespace detail

inline Structure parse_structure(const std::string& text) {
  auto lines = detail::tokenize_lines(text);
  std::size_t pos = 0;
  auto need = [&](const char* what) -> const detail::Line& {
    if (pos >= lines.size()) throw parse_error(std::string("unexpected end of input, expected ") + what,
                                               lines.empty() ? 0 : lines.back().number);
    return lines[pos];
  };

  const detail::Line& first = need("'universe <n>'");
  if (first.tokens[0] != "universe" || first.tokens.size() != 2)
    throw parse_error("expected 'universe <n>'", first.number);
  FiniteSet u;
  u.size = detail::parse_int(first.tokens[1], first.number);
  ++pos;

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
    throw parse_error(e.what(), first.number);
  }

  std::map<std::string, Relation> rels;
  while (pos < lines.size()) {
    const detail::Line& header = lines[pos];
    if (header.tokens[0] != "rel" || header.tokens.size() != 3)
      throw parse_error("expected 'rel <name> <arity>'", header.number);
    const std::string& name = header.tokens[1];
    if (!detail::is_identifier(name)) throw parse_error("relation name '" + name + "' is not an identifier", header.number);
    if (rels.count(name)) throw parse_error("duplicate relation '" + name + "'", header.number);
    int arity = detail::parse_int(header.tokens[2], header.number);
    if (arity < 1) throw parse_error("relation arity must be at least 1", header.number);
    ++pos;
    std::vector<Tuple> tuples;
    std::set<Tuple> seen;
    bool terminated = false;
    while (pos < lines.size()) {
      const detail::Line& line = lines[pos];
      if (line.tokens[0] == "end") {
        if (line.tokens.size() != 1) throw parse_error("unexpected tokens after 'end'", line.number);
        ++pos;
        terminated = true;
        break;
      }
      if (static_cast<int>(line.tokens.size()) != arity)
        throw parse_error("expected " + std::to_string(arity) + " entries, got " +
                          std::to_string(line.tokens.size()), line.number);
      Tuple t(line.tokens.size());
      for (std::size_t i = 0; i < line.tokens.size(); ++i) {
        t[i] = detail::parse_int(line.tokens[i], line.number);
        if (t[i] < 0 || t[i] >= u.size)
          throw parse_error("entry " + std::to_string(t[i]) + " out of range for universe of size " +
                            std::to_string(u.size), line.number);
      }
      if (!seen.insert(t).second) throw parse_error("duplicate tuple", line.number);
      tuples.push_back(std::move(t));
      ++pos;
    }
    if (!terminated) throw parse_error("relation '" + name + "' not terminated by 'end'",
                                       lines.back().number);
    std::vector<FiniteSet> sig(static_cast<std::size_t>(arity), u);
    rels.emplace(name, Relation(std::move(sig), std::move(tuples)));
  }
  return Structure(std::move(u), std::move(rels));
}

}  // namespace relmat
