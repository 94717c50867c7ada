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

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relmat/base.hpp"
#include "relmat/structures.hpp"
#include "relmat/witness.hpp"

namespace relmat {

struct DomainResult {
  Structure domain;
  FiniteMap map;
};

struct ObjectCheck {
  bool ok = false;
  std::optional<Witness> witness;
};

/// Verdict of both object-level checks for a Rel_k structure. A witness is
/// present exactly when the corresponding flag is false.
struct ObjectVerdict {
  bool maltsev = false;
  bool majority = false;
  std::optional<Witness> maltsev_witness;
  std::optional<Witness> majority_witness;
};

namespace detail {

// Triple patterns carved out of the cube: the maltsev domain keeps triples
// whose first two or last two entries agree, the majority domain keeps any
// triple with a repeated entry.
inline bool maltsev_pattern(int x, int y, int z) { return x == y || y == z; }
inline bool majority_pattern(int x, int y, int z) { return x == y || x == z || y == z; }

// Value of the canonical map on a pattern triple, evaluated clause by
// clause; overlapping clauses must agree, which is checked rather than
// assumed.
inline int maltsev_value(int x, int y, int z) {
  std::optional<int> value;
  auto take = [&](int v) {
    if (value && *value != v) throw error("maltsev pattern map: clauses disagree");
    value = v;
  };
  if (x == y) take(z);
  if (y == z) take(x);
  if (!value) throw error("maltsev pattern map: triple not in domain");
  return *value;
}

inline int majority_value(int x, int y, int z) {
  std::optional<int> value;
  auto take = [&](int v) {
    if (value && *value != v) throw error("majority pattern map: clauses disagree");
    value = v;
  };
  if (x == y) take(x);
  if (x == z) take(x);
  if (y == z) take(y);
  if (!value) throw error("majority pattern map: triple not in domain");
  return *value;
}

// Enumerates the violations of the object condition directly on triples of
// relation tuples, without materializing the cube. For tuples r,s,t of R,
// the i-th premise triple is v_i = (r_i, s_i, t_i); the combination is a
// tuple of the restricted cube relation exactly when every v_i matches the
// pattern, and the condition requires the image under the pattern map to
// lie in R. `fn` receives the premise triples and the image; returning
// false stops the scan.
inline void scan_object_violations(
    const Relation& R, bool majority,
    const std::function<bool(const std::vector<Tuple>&, const Tuple&)>& fn) {
  const int k = R.arity();
  const auto& ts = R.tuples();
  const std::size_t m = ts.size();
  if (m == 0) return;

  long long space = 1;
  bool use_bitset = true;
  for (int i = 0; i < k && use_bitset; ++i) {
    space *= R.signature()[static_cast<std::size_t>(i)].size;
    use_bitset = space <= (1LL << 22);
  }
  std::vector<char> member;
  if (use_bitset) {
    member.assign(static_cast<std::size_t>(space), 0);
    for (const Tuple& t : ts) {
      long long code = 0;
      for (int i = k - 1; i >= 0; --i)
        code = code * R.signature()[static_cast<std::size_t>(i)].size + t[static_cast<std::size_t>(i)];
      member[static_cast<std::size_t>(code)] = 1;
    }
  }
  Tuple image(static_cast<std::size_t>(k));
  auto contains = [&](const Tuple& t) {
    if (!use_bitset) return R.contains(t);
    long long code = 0;
    for (int i = k - 1; i >= 0; --i)
      code = code * R.signature()[static_cast<std::size_t>(i)].size + t[static_cast<std::size_t>(i)];
    return member[static_cast<std::size_t>(code)] != 0;
  };

  std::vector<Tuple> premises(static_cast<std::size_t>(k), Tuple(3));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c) {
        const Tuple& ra = ts[a];
        const Tuple& rb = ts[b];
        const Tuple& rc = ts[c];
        bool applicable = true;
        for (int i = 0; i < k && applicable; ++i) {
          int x = ra[static_cast<std::size_t>(i)];
          int y = rb[static_cast<std::size_t>(i)];
          int z = rc[static_cast<std::size_t>(i)];
          if (majority) {
            if (x == y || x == z)
              image[static_cast<std::size_t>(i)] = x;
            else if (y == z)
              image[static_cast<std::size_t>(i)] = y;
            else
              applicable = false;
          } else {
            if (x == y)
              image[static_cast<std::size_t>(i)] = z;
            else if (y == z)
              image[static_cast<std::size_t>(i)] = x;
            else
              applicable = false;
          }
        }
        if (!applicable || contains(image)) continue;
        for (int i = 0; i < k; ++i) {
          premises[static_cast<std::size_t>(i)][0] = ra[static_cast<std::size_t>(i)];
          premises[static_cast<std::size_t>(i)][1] = rb[static_cast<std::size_t>(i)];
          premises[static_cast<std::size_t>(i)][2] = rc[static_cast<std::size_t>(i)];
        }
        if (!fn(premises, image)) return;
      }
}

// Key for canonical witness selection: the sequence of cube element codes
// of the premise triples (coordinate 0 least significant), which is the
// order the tuples of the restricted cube relation carry.
inline std::vector<long long> violation_key(const std::vector<Tuple>& premises, int n) {
  std::vector<long long> key;
  key.reserve(premises.size());
  for (const Tuple& v : premises)
    key.push_back(v[0] + static_cast<long long>(n) * v[1] + static_cast<long long>(n) * n * v[2]);
  return key;
}

inline ObjectCheck check_object(const Structure& S, bool majority) {
  const auto& [rel_name, R] = S.single_relation();
  const int n = S.universe.size;
  bool found = false;
  std::vector<long long> best_key;
  std::vector<Tuple> best_premises;
  Tuple best_image;
  scan_object_violations(R, majority, [&](const std::vector<Tuple>& premises, const Tuple& image) {
    auto key = violation_key(premises, n);
    if (!found || key < best_key) {
      found = true;
      best_key = std::move(key);
      best_premises = premises;
      best_image = image;
    }
    return true;
  });
  if (!found) return {true, std::nullopt};
  Witness w;
  w.kind = WitnessKind::homomorphism_violation;
  w.relation = rel_name;
  w.premises = std::move(best_premises);
  w.conclusion = std::move(best_image);
  return {false, std::move(w)};
}

inline DomainResult pattern_domain(const Structure& S, bool majority, int cap) {
  S.single_relation();
  const int n = S.universe.size;
  Structure cube = product_power(S, 3, cap);
  std::vector<int> radices(3, n);
  std::vector<int> subset;
  std::vector<int> values;
  for (int e = 0; e < cube.universe.size; ++e) {
    Tuple t = mixed_radix_decode(e, radices);
    bool in = majority ? majority_pattern(t[0], t[1], t[2]) : maltsev_pattern(t[0], t[1], t[2]);
    if (!in) continue;
    subset.push_back(e);
    values.push_back(majority ? majority_value(t[0], t[1], t[2]) : maltsev_value(t[0], t[1], t[2]));
  }
  Structure domain = restrict(cube, subset);
  FiniteMap map(domain.universe, S.universe, std::move(values));
  return {std::move(domain), std::move(map)};
}

}  // namespace detail

/// The maltsev test domain of a Rel_k structure: the restriction of the
/// cube to triples (x,x,y) and (y,x,x), together with the canonical map
/// sending each triple to its non-repeated value.
inline DomainResult maltsev_domain(const Structure& S, int cap = kDefaultUniverseCap) {
  return detail::pattern_domain(S, false, cap);
}

/// The majority test domain: the restriction of the cube to triples with a
/// repeated value, together with the map voting out that value.
inline DomainResult majority_domain(const Structure& S, int cap = kDefaultUniverseCap) {
  return detail::pattern_domain(S, true, cap);
}

/// Whether the canonical map of maltsev_domain is a homomorphism into S.
/// Computed by scanning triples of relation tuples directly, which agrees
/// with materializing the domain and running is_homomorphism; the witness
/// is the canonical least one, with premises given as cube triples.
inline ObjectCheck is_maltsev_object(const Structure& S) { return detail::check_object(S, false); }

/// Whether the canonical map of majority_domain is a homomorphism into S.
inline ObjectCheck is_majority_object(const Structure& S) { return detail::check_object(S, true); }

/// How maltsev_coreflection grows the relation: all current violation
/// images per round, or only the canonical least one. The two strategies
/// reach the same fixpoint; batch is the default.
enum class CoreflectionMode { batch, single_step };

/// The least enlargement of the relation of S under which S becomes a
/// maltsev object. Same universe; terminates because the relation grows
/// inside a finite cube.
inline Structure maltsev_coreflection(const Structure& S, CoreflectionMode mode = CoreflectionMode::batch) {
  const auto& [rel_name, R0] = S.single_relation();
  const std::string name = rel_name;
  const int n = S.universe.size;
  std::set<Tuple> current(R0.tuples().begin(), R0.tuples().end());
  const std::vector<FiniteSet> sig = R0.signature();
  while (true) {
    Relation stage(sig, std::vector<Tuple>(current.begin(), current.end()));
    std::set<Tuple> missing;
    if (mode == CoreflectionMode::batch) {
      detail::scan_object_violations(stage, false, [&](const std::vector<Tuple>&, const Tuple& image) {
        missing.insert(image);
        return true;
      });
    } else {
      bool found = false;
      std::vector<long long> best_key;
      Tuple best_image;
      detail::scan_object_violations(stage, false, [&](const std::vector<Tuple>& premises, const Tuple& image) {
        auto key = detail::violation_key(premises, n);
        if (!found || key < best_key) {
          found = true;
          best_key = std::move(key);
          best_image = image;
        }
        return true;
      });
      if (found) missing.insert(best_image);
    }
    if (missing.empty()) break;
    current.insert(missing.begin(), missing.end());
  }
  std::map<std::string, Relation> rels;
  rels.emplace(name, Relation(sig, std::vector<Tuple>(current.begin(), current.end())));
  return Structure(S.universe, std::move(rels));
}

/// Recomputes the violation described by an object-check witness: the
/// premises must be pattern triples whose coordinate tuples all lie in the
/// relation, and the image under the pattern map must be the recorded,
/// absent conclusion.
inline bool replay_object_witness(const Structure& S, const Witness& w, bool majority) {
  if (w.kind != WitnessKind::homomorphism_violation) return false;
  const auto& [name, R] = S.single_relation();
  if (w.relation != name) return false;
  const int k = R.arity();
  if (static_cast<int>(w.premises.size()) != k || static_cast<int>(w.conclusion.size()) != k) return false;
  Tuple image(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const Tuple& v = w.premises[static_cast<std::size_t>(i)];
    if (v.size() != 3) return false;
    bool in = majority ? detail::majority_pattern(v[0], v[1], v[2]) : detail::maltsev_pattern(v[0], v[1], v[2]);
    if (!in) return false;
    image[static_cast<std::size_t>(i)] =
        majority ? detail::majority_value(v[0], v[1], v[2]) : detail::maltsev_value(v[0], v[1], v[2]);
  }
  for (int j = 0; j < 3; ++j) {
    Tuple coordinate(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) coordinate[static_cast<std::size_t>(i)] = w.premises[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (!R.contains(coordinate)) return false;
  }
  return image == w.conclusion && !R.contains(image);
}

/// Runs both object checks and bundles the verdicts.
inline ObjectVerdict classify(const Structure& S) {
  ObjectCheck mal = is_maltsev_object(S);
  ObjectCheck maj = is_majority_object(S);
  ObjectVerdict v;
  v.maltsev = mal.ok;
  v.majority = maj.ok;
  v.maltsev_witness = std::move(mal.witness);
  v.majority_witness = std::move(maj.witness);
  return v;
}

}  // namespace relmat
