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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "relmat/fixtures.hpp"
#include "relmat/reference.hpp"
#include "relmat/terms.hpp"

using namespace relmat;

namespace {

bool clone_contains(const CloneResult& clone, const OperationTable& t) {
  return std::find(clone.tables.begin(), clone.tables.end(), t) != clone.tables.end();
}

Structure wrap(const FiniteSet& u, Relation r) {
  std::map<std::string, Relation> rels;
  rels.emplace("R", std::move(r));
  return Structure(u, std::move(rels));
}

}  // namespace

TEST_CASE("clone of the 2-element meet semilattice is the 7 meets of variable subsets") {
  FiniteAlgebra semi = fixtures::two_semilattice();
  CloneResult clone = ternary_term_clone(semi);
  REQUIRE(clone.complete);
  REQUIRE(clone.tables.size() == 7);

  FiniteSet u;
  u.size = 2;
  std::vector<OperationTable> expected;
  for (int pos = 0; pos < 3; ++pos) expected.push_back(OperationTable::projection(u, 3, pos));
  expected.push_back(OperationTable::from_function(u, 3, [](const Tuple& a) { return a[0] & a[1]; }));
  expected.push_back(OperationTable::from_function(u, 3, [](const Tuple& a) { return a[0] & a[2]; }));
  expected.push_back(OperationTable::from_function(u, 3, [](const Tuple& a) { return a[1] & a[2]; }));
  expected.push_back(OperationTable::from_function(u, 3, [](const Tuple& a) { return a[0] & a[1] & a[2]; }));
  for (const OperationTable& t : expected) REQUIRE(clone_contains(clone, t));
}

TEST_CASE("clone of the 2-element lattice contains the boolean vote") {
  CloneResult clone = ternary_term_clone(fixtures::two_chain_lattice());
  REQUIRE(clone.complete);
  REQUIRE(clone.tables.size() == 18);
  REQUIRE(clone_contains(clone, fixtures::boolean_majority()));
}

TEST_CASE("clone of the 2-element group is the zero-constant affine maps") {
  CloneResult clone = ternary_term_clone(fixtures::cyclic_group(2));
  REQUIRE(clone.complete);
  // negation is the identity on this group, so terms are the GF(2)-linear
  // combinations: 8 tables, x+y+z among them, the vote not
  REQUIRE(clone.tables.size() == 8);
  REQUIRE(clone_contains(clone, fixtures::xor3_table()));
  REQUIRE_FALSE(clone_contains(clone, fixtures::boolean_majority()));

  FiniteSet u;
  u.size = 2;
  for (const OperationTable& t : clone.tables) {
    // linearity: t(a+b) = t(a) + t(b) pointwise
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        Tuple ta = mixed_radix_decode(a, {2, 2, 2});
        Tuple tb = mixed_radix_decode(b, {2, 2, 2});
        Tuple sum = {ta[0] ^ tb[0], ta[1] ^ tb[1], ta[2] ^ tb[2]};
        REQUIRE(t.apply(sum) == (t.apply(ta) ^ t.apply(tb)));
      }
  }
}

TEST_CASE("clone generation respects the budget and flags incompleteness") {
  CloneResult partial = ternary_term_clone(fixtures::two_chain_lattice(), 5);
  REQUIRE_FALSE(partial.complete);
  REQUIRE(partial.tables.size() >= 5);
  REQUIRE_THROWS_AS(ternary_term_clone(fixtures::two_chain_lattice(), 2), error);

  TermSearch undecided = has_majority_term(fixtures::m3_lattice(), 4);
  REQUIRE(undecided.decision == Decision::undecided);
}

TEST_CASE("term existence separates the small algebras") {
  TermSearch lattice = has_majority_term(fixtures::two_chain_lattice());
  REQUIRE(lattice.decision == Decision::yes);
  REQUIRE(verify_majority(*lattice.table).ok);

  REQUIRE(has_majority_term(fixtures::two_semilattice()).decision == Decision::no);

  FiniteAlgebra z2 = fixtures::cyclic_group(2);
  REQUIRE(has_majority_term(z2).decision == Decision::no);
  TermSearch z2mal = has_maltsev_term(z2);
  REQUIRE(z2mal.decision == Decision::yes);
  REQUIRE(*z2mal.table == fixtures::xor3_table());

  // lattices have no maltsev term; groups have no majority term
  REQUIRE(has_maltsev_term(fixtures::two_chain_lattice()).decision == Decision::no);
  TermSearch z4mal = has_maltsev_term(fixtures::cyclic_group(4));
  REQUIRE(z4mal.decision == Decision::yes);
  REQUIRE(verify_maltsev(*z4mal.table).ok);
  REQUIRE(has_majority_term(fixtures::cyclic_group(4)).decision == Decision::no);

  // the diamond and the pentagon admit the lattice term
  REQUIRE(has_majority_term(fixtures::m3_lattice()).decision == Decision::yes);
}

TEST_CASE("majority polymorphism on the 2-chain order is the boolean vote") {
  Structure chain = fixtures::chain2_poset();
  PolymorphismSearch found = polymorphism_search(chain, PolymorphismKind::majority);
  REQUIRE(found.status == SearchStatus::found);
  REQUIRE(*found.table == fixtures::boolean_majority());
  REQUIRE(verify_majority(*found.table).ok);
  REQUIRE(preserves_relations(*found.table, chain).ok);
}

TEST_CASE("no majority or maltsev polymorphism on the separating relation") {
  Structure S = fixtures::counterexample_structure();
  PolymorphismSearch majority = polymorphism_search(S, PolymorphismKind::majority);
  REQUIRE(majority.status == SearchStatus::none);
  REQUIRE(majority.leaves == 1);  // the identities pin the whole table on two elements

  // the only candidate maps some triple of relation tuples outside
  HomomorphismCheck preserved = preserves_relations(fixtures::boolean_majority(), S);
  REQUIRE_FALSE(preserved.ok);
  REQUIRE(preserved.witness->conclusion == Tuple{0, 1, 0});

  // stronger than the object condition: S is a maltsev object, yet no
  // maltsev table preserves its relation
  PolymorphismSearch maltsev = polymorphism_search(S, PolymorphismKind::maltsev);
  REQUIRE(maltsev.status == SearchStatus::none);
}

TEST_CASE("polymorphism search with no relations always succeeds") {
  FiniteSet u;
  u.size = 3;
  Structure free(u, {});
  PolymorphismSearch majority = polymorphism_search(free, PolymorphismKind::majority);
  REQUIRE(majority.status == SearchStatus::found);
  REQUIRE(verify_majority(*majority.table).ok);
  PolymorphismSearch maltsev = polymorphism_search(free, PolymorphismKind::maltsev);
  REQUIRE(maltsev.status == SearchStatus::found);
  REQUIRE(verify_maltsev(*maltsev.table).ok);
}

TEST_CASE("polymorphism search reports budget exhaustion explicitly") {
  Structure chain = fixtures::chain2_poset();
  PolymorphismSearch starved = polymorphism_search(chain, PolymorphismKind::majority, 3);
  REQUIRE(starved.status == SearchStatus::undecided);
  REQUIRE(starved.steps > 3);
  REQUIRE_FALSE(starved.table.has_value());
}

TEST_CASE("polymorphism search is deterministic and self-verifying") {
  reference::Rng rng(31004);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + rng.below(3);
    Structure X = reference::random_structure(n, 2, 1 + rng.below(99), rng);
    PolymorphismSearch first = polymorphism_search(X, PolymorphismKind::majority);
    PolymorphismSearch second = polymorphism_search(X, PolymorphismKind::majority);
    REQUIRE(first.status == second.status);
    REQUIRE(first.steps == second.steps);
    if (first.status == SearchStatus::found) {
      REQUIRE(*first.table == *second.table);
      REQUIRE(verify_majority(*first.table).ok);
      REQUIRE(preserves_relations(*first.table, X).ok);
    }
  }
}

TEST_CASE("exhaustive two-element sweep: found tables always verify") {
  FiniteSet u;
  u.size = 2;
  for (int k : {2, 3}) {
    reference::for_each_relation(std::vector<FiniteSet>(static_cast<std::size_t>(k), u), [&](const Relation& R) {
      std::map<std::string, Relation> rels;
      rels.emplace("R", R);
      Structure X(u, std::move(rels));
      for (PolymorphismKind kind : {PolymorphismKind::majority, PolymorphismKind::maltsev}) {
        PolymorphismSearch result = polymorphism_search(X, kind);
        REQUIRE(result.status != SearchStatus::undecided);
        if (result.status == SearchStatus::found) {
          bool identities = kind == PolymorphismKind::majority ? verify_majority(*result.table).ok
                                                               : verify_maltsev(*result.table).ok;
          REQUIRE(identities);
          REQUIRE(preserves_relations(*result.table, X).ok);
        }
      }
    });
  }
}

TEST_CASE("found polymorphisms preserve componentwise application") {
  // on a two-relation structure, to exercise multiple constraints
  FiniteSet u;
  u.size = 2;
  std::map<std::string, Relation> rels;
  rels.emplace("le", Relation(std::vector<FiniteSet>(2, u), {{0, 0}, {0, 1}, {1, 1}}));
  rels.emplace("eq", Relation(std::vector<FiniteSet>(2, u), {{0, 0}, {1, 1}}));
  Structure X(u, std::move(rels));
  PolymorphismSearch found = polymorphism_search(X, PolymorphismKind::majority);
  REQUIRE(found.status == SearchStatus::found);
  REQUIRE(preserves_relations(*found.table, X).ok);
}
