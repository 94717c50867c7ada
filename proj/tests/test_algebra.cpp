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

#include <catch2/catch_amalgamated.hpp>

#include "relmat/algebra.hpp"
#include "relmat/fixtures.hpp"

using namespace relmat;

TEST_CASE("operation tables: shape, indexing, invariants") {
  FiniteSet u;
  u.size = 3;
  OperationTable first = OperationTable::projection(u, 2, 0);
  REQUIRE(first.at2(1, 2) == 1);
  OperationTable second = OperationTable::projection(u, 2, 1);
  REQUIRE(second.at2(1, 2) == 2);

  REQUIRE_THROWS_AS(OperationTable(2, u, {0, 1}), error);          // wrong count
  REQUIRE_THROWS_AS(OperationTable(1, u, {0, 1, 3}), error);       // out of range
  REQUIRE_THROWS_AS(OperationTable::projection(u, 2, 2), error);   // bad position

  OperationTable constant(0, u, {2});
  REQUIRE(constant.apply({}) == 2);
}

TEST_CASE("verify_majority on the boolean vote, a projection, and the lattice term") {
  REQUIRE(verify_majority(fixtures::boolean_majority()).ok);

  FiniteSet u;
  u.size = 2;
  IdentityCheck first = verify_majority(OperationTable::projection(u, 3, 0));
  REQUIRE_FALSE(first.ok);
  REQUIRE(first.witness->equation == "p(y,x,x) = x");
  REQUIRE(first.witness->assignment == std::vector<std::pair<std::string, int>>{{"x", 0}, {"y", 1}});

  FiniteAlgebra lat = fixtures::two_chain_lattice();
  LatticeTermResult lattice_term = lattice_majority_term(lat.operations.at("meet"), lat.operations.at("join"));
  REQUIRE(verify_majority(lattice_term.table).ok);

  REQUIRE_THROWS_AS(verify_majority(OperationTable::projection(u, 2, 0)), error);
}

TEST_CASE("verify_maltsev on x-y+z, a projection, and the boolean vote") {
  FiniteSet u4;
  u4.size = 4;
  OperationTable xyz = OperationTable::from_function(u4, 3, [](const Tuple& a) { return ((a[0] - a[1] + a[2]) % 4 + 4) % 4; });
  REQUIRE(verify_maltsev(xyz).ok);

  FiniteSet u2;
  u2.size = 2;
  IdentityCheck third = verify_maltsev(OperationTable::projection(u2, 3, 2));
  REQUIRE_FALSE(third.ok);
  REQUIRE(third.witness->equation == "q(y,x,x) = y");
  REQUIRE(third.witness->assignment == std::vector<std::pair<std::string, int>>{{"x", 0}, {"y", 1}});

  IdentityCheck vote = verify_maltsev(fixtures::boolean_majority());
  REQUIRE_FALSE(vote.ok);
  REQUIRE(vote.witness->equation == "q(x,x,y) = y");
  REQUIRE(vote.witness->conclusion == Tuple{0, 1});  // got 0, wanted 1
}

TEST_CASE("lattice majority term on the named small lattices") {
  FiniteAlgebra chain = fixtures::two_chain_lattice();
  LatticeTermResult two = lattice_majority_term(chain.operations.at("meet"), chain.operations.at("join"));
  REQUIRE(two.absorption_ok);
  REQUIRE(two.table == fixtures::boolean_majority());

  for (FiniteAlgebra L : {fixtures::m3_lattice(), fixtures::n5_lattice()}) {
    LatticeTermResult r = lattice_majority_term(L.operations.at("meet"), L.operations.at("join"));
    REQUIRE(r.absorption_ok);
    REQUIRE(verify_majority(r.table).ok);
  }
}

TEST_CASE("lattice term flags absorption failures but still returns the table") {
  FiniteSet u;
  u.size = 2;
  OperationTable meet = OperationTable::from_function(u, 2, [](const Tuple& a) { return a[0] & a[1]; });
  // "join" that is actually another meet: absorption x v (x ^ y) = x fails
  LatticeTermResult r = lattice_majority_term(meet, meet);
  REQUIRE_FALSE(r.absorption_ok);
  REQUIRE(r.absorption_witness.has_value());
  REQUIRE(r.table.arity == 3);
}

TEST_CASE("ring majority term: fields and x^n = x rings") {
  fixtures::RingTables gf2 = fixtures::modular_ring(2);
  OperationTable p2 = ring_majority_term(gf2.add, gf2.sub, gf2.mul, 2);
  REQUIRE(verify_majority(p2).ok);
  REQUIRE(p2 == fixtures::boolean_majority());  // on GF(2) the formula is the vote

  fixtures::RingTables z6 = fixtures::modular_ring(6);
  REQUIRE(verify_majority(ring_majority_term(z6.add, z6.sub, z6.mul, 3)).ok);

  fixtures::RingTables z4 = fixtures::modular_ring(4);
  REQUIRE_THROWS_WITH(ring_majority_term(z4.add, z4.sub, z4.mul, 2),
                      Catch::Matchers::ContainsSubstring("element 2"));
  REQUIRE_THROWS_AS(ring_majority_term(z4.add, z4.sub, z4.mul, 1), error);
}

TEST_CASE("commutativity of majority tables") {
  FiniteSet u1;
  u1.size = 1;
  OperationTable trivial(3, u1, {0});
  REQUIRE(is_commutative_majority(trivial).ok);

  IdentityCheck vote = is_commutative_majority(fixtures::boolean_majority());
  REQUIRE_FALSE(vote.ok);
  REQUIRE(vote.witness.has_value());
  REQUIRE(vote.witness->conclusion.size() == 2);
  REQUIRE(vote.witness->conclusion[0] != vote.witness->conclusion[1]);

  // the collapsing chain at x=0, y=1, step by step
  const OperationTable p = fixtures::boolean_majority();
  int x = 0, y = 1;
  REQUIRE(p.at3(x, x, y) == x);
  int rowwise = p.at3(p.at3(x, x, y), p.at3(x, y, x), p.at3(y, y, y));
  int columnwise = p.at3(p.at3(x, x, y), p.at3(x, y, y), p.at3(y, x, y));
  REQUIRE(rowwise == x);
  REQUIRE(columnwise == p.at3(x, y, y));
  REQUIRE(columnwise == y);
  REQUIRE(rowwise != columnwise);  // the swap the commutativity law would need

  FiniteSet u2;
  u2.size = 2;
  REQUIRE_THROWS_AS(is_commutative_majority(OperationTable::projection(u2, 3, 0)), error);
}

TEST_CASE("exhaustive commutative majority search") {
  ExhaustiveSearchResult one = commutative_majority_search(1);
  REQUIRE(one.table.has_value());
  REQUIRE(one.candidates == 1);
  REQUIRE(verify_majority(*one.table).ok);

  ExhaustiveSearchResult two = commutative_majority_search(2);
  REQUIRE_FALSE(two.table.has_value());
  REQUIRE(two.candidates == 1);

  ExhaustiveSearchResult three = commutative_majority_search(3);
  REQUIRE_FALSE(three.table.has_value());
  REQUIRE(three.candidates == 729);

  REQUIRE_THROWS_AS(commutative_majority_search(4), error);
  REQUIRE_THROWS_AS(commutative_majority_search(0), error);
}
