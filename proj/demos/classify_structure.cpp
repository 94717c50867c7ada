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

// Minimal library walkthrough: build a ternary relation, classify it, and
// repair it with the coreflection.

#include <iostream>

#include "relmat/relmat.hpp"

int main() {
  using namespace relmat;

  FiniteSet u;
  u.size = 2;
  std::map<std::string, Relation> rels;
  rels.emplace("R", Relation(std::vector<FiniteSet>(3, u), {{1, 1, 0}, {0, 1, 1}, {0, 0, 0}}));
  Structure S(u, std::move(rels));

  ObjectVerdict verdict = classify(S);
  std::cout << "maltsev object: " << (verdict.maltsev ? "yes" : "no") << "\n";
  std::cout << "majority object: " << (verdict.majority ? "yes" : "no") << "\n";
  if (verdict.majority_witness) std::cout << "  " << format_witness(*verdict.majority_witness) << "\n";

  Structure repaired = maltsev_coreflection(S);
  std::cout << "coreflection relation size: " << repaired.single_relation().second.size() << "\n";
  std::cout << serialize_structure(repaired);
  return 0;
}
