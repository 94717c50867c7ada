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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relmat/base.hpp"

namespace relmat {

enum class WitnessKind {
  closure_violation,
  homomorphism_violation,
  identity_violation,
  search_certificate,
};

inline std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::closure_violation: return "closure-violation";
    case WitnessKind::homomorphism_violation: return "homomorphism-violation";
    case WitnessKind::identity_violation: return "identity-violation";
    case WitnessKind::search_certificate: return "search-certificate";
  }
  return "unknown";
}

/// A concrete certificate for a failed (or found) property. Every boolean
/// verdict in the library that can fail carries one of these, so verdicts
/// are auditable: replaying the assignment/premises against the inputs
/// reproduces the violation.
///
/// Not every field is meaningful for every kind; unused fields stay empty.
struct Witness {
  WitnessKind kind = WitnessKind::closure_violation;
  /// Variable (or slot) name -> element index, sorted by name insertion
  /// order chosen by the producing check.
  std::vector<std::pair<std::string, int>> assignment;
  /// Premise tuples, in the order the producing check defines.
  std::vector<Tuple> premises;
  /// The tuple that failed to be present (or was produced).
  Tuple conclusion;
  /// Relation name, for checks ranging over named relations.
  std::string relation;
  /// Human-readable equation, for identity checks.
  std::string equation;

  bool operator==(const Witness&) const = default;
};

/// "(0,1,0)" rendering; labels override indices when provided.
inline std::string format_tuple(const Tuple& t, const std::vector<std::string>* labels = nullptr) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ",";
    if (labels != nullptr)
      out += (*labels)[static_cast<std::size_t>(t[i])];
    else
      out += std::to_string(t[i]);
  }
  out += ")";
  return out;
}

inline std::string format_witness(const Witness& w) {
  std::string out = to_string(w.kind);
  if (!w.relation.empty()) out += " relation=" + w.relation;
  if (!w.equation.empty()) out += " equation=[" + w.equation + "]";
  if (!w.assignment.empty()) {
    out += " assignment{";
    for (std::size_t i = 0; i < w.assignment.size(); ++i) {
      if (i > 0) out += " ";
      out += w.assignment[i].first + "=" + std::to_string(w.assignment[i].second);
    }
    out += "}";
  }
  if (!w.premises.empty()) {
    out += " premises";
    for (const Tuple& p : w.premises) out += " " + format_tuple(p);
  }
  if (!w.conclusion.empty()) out += " conclusion " + format_tuple(w.conclusion);
  return out;
}

}  // namespace relmat
