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

// Walkthrough of the matrix method and the term-clone scan: close a binary
// relation under the maltsev matrix, then separate majority from maltsev
// terms on two small algebras.

#include <iostream>

#include "relmat/fixtures.hpp"
#include "relmat/relmat.hpp"

int main() {
  using namespace relmat;

  FiniteSet u;
  u.size = 2;
  Relation half(std::vector<FiniteSet>(2, u), {{0, 0}, {0, 1}, {1, 0}});
  std::cout << "difunctional: " << (is_difunctional(half).ok ? "yes" : "no") << "\n";
  Relation closed = strict_closure(half, builtin_matrix("maltsev"));
  std::cout << "closure size: " << closed.size() << " (was " << half.size() << ")\n";

  for (const auto& [label, algebra] :
       {std::pair{"2-chain lattice", fixtures::two_chain_lattice()},
        std::pair{"2-element group", fixtures::cyclic_group(2)}}) {
    TermSearch majority = has_majority_term(algebra);
    TermSearch maltsev = has_maltsev_term(algebra);
    std::cout << label << ": majority=" << to_string(majority.decision)
              << " maltsev=" << to_string(maltsev.decision) << " (clone " << majority.clone_size << ")\n";
  }
  return 0;
}
