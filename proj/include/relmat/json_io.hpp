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

#include <string>
#include <vector>

#include <json.hpp>

#include "relmat/algebra.hpp"
#include "relmat/relobjects.hpp"
#include "relmat/structures.hpp"
#include "relmat/witness.hpp"

namespace relmat {

using ordered_json = nlohmann::ordered_json;

inline ordered_json structure_to_json(const Structure& X) {
  ordered_json j;
  j["universe"] = X.universe.size;
  if (X.universe.labels) j["labels"] = *X.universe.labels;
  if (X.universe.basepoint) j["basepoint"] = *X.universe.basepoint;
  ordered_json rels = ordered_json::object();
  for (const auto& [name, rel] : X.relations) {
    ordered_json r;
    r["arity"] = rel.arity();
    r["tuples"] = rel.tuples();
    rels[name] = std::move(r);
  }
  j["relations"] = std::move(rels);
  return j;
}

inline Structure structure_from_json(const ordered_json& j) {
  try {
    FiniteSet u;
    u.size = j.at("universe").get<int>();
    if (j.contains("labels")) u.labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("basepoint")) u.basepoint = j.at("basepoint").get<int>();
    u.validate();
    std::map<std::string, Relation> rels;
    if (j.contains("relations")) {
      for (const auto& [name, r] : j.at("relations").items()) {
        int arity = r.at("arity").get<int>();
        if (arity < 1) throw parse_error("relation arity must be at least 1");
        auto tuples = r.at("tuples").get<std::vector<Tuple>>();
        std::vector<FiniteSet> sig(static_cast<std::size_t>(arity), u);
        rels.emplace(name, Relation(std::move(sig), std::move(tuples)));
      }
    }
    return Structure(std::move(u), std::move(rels));
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("bad structure JSON: ") + e.what());
  } catch (const error&) {
    throw;
  }
}

inline ordered_json algebra_to_json(const FiniteAlgebra& A) {
  ordered_json j;
  j["universe"] = A.universe.size;
  if (A.universe.labels) j["labels"] = *A.universe.labels;
  if (A.universe.basepoint) j["basepoint"] = *A.universe.basepoint;
  ordered_json ops = ordered_json::object();
  for (const auto& [name, op] : A.operations) {
    ordered_json o;
    o["arity"] = op.arity;
    o["values"] = op.values;
    ops[name] = std::move(o);
  }
  j["operations"] = std::move(ops);
  return j;
}

inline FiniteAlgebra algebra_from_json(const ordered_json& j) {
  try {
    FiniteSet u;
    u.size = j.at("universe").get<int>();
    if (j.contains("labels")) u.labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("basepoint")) u.basepoint = j.at("basepoint").get<int>();
    u.validate();
    std::map<std::string, OperationTable> ops;
    if (j.contains("operations")) {
      for (const auto& [name, o] : j.at("operations").items()) {
        int arity = o.at("arity").get<int>();
        auto values = o.at("values").get<std::vector<int>>();
        ops.emplace(name, OperationTable(arity, u, std::move(values)));
      }
    }
    return FiniteAlgebra(std::move(u), std::move(ops));
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("bad algebra JSON: ") + e.what());
  } catch (const error&) {
    throw;
  }
}

inline ordered_json witness_to_json(const Witness& w) {
  ordered_json j;
  j["kind"] = to_string(w.kind);
  if (!w.relation.empty()) j["relation"] = w.relation;
  if (!w.equation.empty()) j["equation"] = w.equation;
  if (!w.assignment.empty()) {
    ordered_json a = ordered_json::object();
    for (const auto& [name, value] : w.assignment) a[name] = value;
    j["assignment"] = std::move(a);
  }
  if (!w.premises.empty()) j["premises"] = w.premises;
  if (!w.conclusion.empty()) j["conclusion"] = w.conclusion;
  return j;
}

inline ordered_json verdict_to_json(const ObjectVerdict& v) {
  ordered_json j;
  j["maltsev"] = v.maltsev;
  j["majority"] = v.majority;
  ordered_json w = ordered_json::object();
  if (v.maltsev_witness) w["maltsev"] = witness_to_json(*v.maltsev_witness);
  if (v.majority_witness) w["majority"] = witness_to_json(*v.majority_witness);
  j["witnesses"] = std::move(w);
  return j;
}

inline ordered_json table_to_json(const OperationTable& t) {
  ordered_json j;
  j["arity"] = t.arity;
  j["universe"] = t.universe.size;
  j["values"] = t.values;
  return j;
}

}  // namespace relmat
