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

#include "relmat/congruences.hpp"
#include "relmat/fixtures.hpp"
#include "relmat/terms.hpp"

using namespace relmat;

namespace {

// three-element meet semilattice on the chain 0 < 1 < 2
FiniteAlgebra chain3_semilattice() {
  FiniteSet u;
  u.size = 3;
  std::map<std::string, OperationTable> ops;
  ops.emplace("meet", OperationTable::from_function(u, 2, [](const Tuple& a) { return std::min(a[0], a[1]); }));
  return FiniteAlgebra(u, std::move(ops));
}

}  // namespace

TEST_CASE("partition normalization, blocks, and bounds") {
  Congruence c({2, 2, 0, 1});
  REQUIRE(c.block_of == std::vector<int>{0, 0, 1, 2});
  REQUIRE(c.classes() == 3);
  REQUIRE(c.same(0, 1));
  REQUIRE_FALSE(c.same(0, 2));
  REQUIRE(c.blocks() == std::vector<std::vector<int>>{{0, 1}, {2}, {3}});
  REQUIRE(format_congruence(c) == "{0,1|2|3}");
  REQUIRE_THROWS_AS(Congruence({0, 5}), error);

  REQUIRE(Congruence::diagonal(3).classes() == 3);
  REQUIRE(Congruence::full(3).classes() == 1);
}

TEST_CASE("congruences of the small named algebras") {
  std::vector<Congruence> z4 = congruences(fixtures::cyclic_group(4));
  REQUIRE(z4.size() == 3);
  REQUIRE(std::find(z4.begin(), z4.end(), Congruence({0, 1, 0, 1})) != z4.end());  // mod-2 blocks

  REQUIRE(congruences(fixtures::cyclic_group(6)).size() == 4);
  REQUIRE(congruences(fixtures::two_chain_lattice()).size() == 2);
  REQUIRE(congruences(fixtures::bool4_algebra()).size() == 4);

  // with no operations every partition is compatible
  FiniteSet u3;
  u3.size = 3;
  REQUIRE(congruences(FiniteAlgebra(u3, {})).size() == 5);
}

TEST_CASE("every enumerated congruence is compatible, diagonal and full always present") {
  for (const FiniteAlgebra& A : {fixtures::cyclic_group(4), fixtures::cyclic_group(6),
                                 fixtures::bool4_algebra(), fixtures::m3_lattice(), chain3_semilattice()}) {
    std::vector<Congruence> congs = congruences(A);
    const int n = A.universe.size;
    REQUIRE(std::find(congs.begin(), congs.end(), Congruence::diagonal(n)) != congs.end());
    REQUIRE(std::find(congs.begin(), congs.end(), Congruence::full(n)) != congs.end());
    for (const Congruence& c : congs) REQUIRE(is_congruence(A, c));
    REQUIRE(std::is_sorted(congs.begin(), congs.end()));
  }
}

TEST_CASE("principal generation agrees with exhaustive filtering") {
  // compare the two strategies where both are feasible
  for (const FiniteAlgebra& A :
       {fixtures::cyclic_group(6), fixtures::m3_lattice(), fixtures::n5_lattice(), chain3_semilattice()}) {
    std::vector<Congruence> exhaustive = congruences(A);  // |A| <= 6 path
    std::set<Congruence> generated;
    generated.insert(Congruence::diagonal(A.universe.size));
    for (int a = 0; a < A.universe.size; ++a)
      for (int b = a + 1; b < A.universe.size; ++b) generated.insert(principal_congruence(A, a, b));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Congruence> snapshot(generated.begin(), generated.end());
      for (std::size_t i = 0; i < snapshot.size(); ++i)
        for (std::size_t j = i + 1; j < snapshot.size(); ++j)
          if (generated.insert(cong_join(snapshot[i], snapshot[j])).second) grew = true;
    }
    REQUIRE(std::vector<Congruence>(generated.begin(), generated.end()) == exhaustive);
  }

  // the >6 path itself: a 7-element cyclic group is congruence-simple
  std::vector<Congruence> z7 = congruences(fixtures::cyclic_group(7));
  REQUIRE(z7.size() == 2);
}

TEST_CASE("compose, meet, join basics") {
  FiniteAlgebra z4 = fixtures::cyclic_group(4);
  Congruence diag = Congruence::diagonal(4);
  Congruence mod2({0, 1, 0, 1});
  Congruence full = Congruence::full(4);

  REQUIRE(cong_compose(z4, mod2, diag) == congruence_relation(z4, mod2));
  REQUIRE(cong_compose(z4, mod2, mod2) == congruence_relation(z4, mod2));
  REQUIRE(cong_meet(mod2, full) == mod2);
  REQUIRE(cong_join(mod2, diag) == mod2);
  REQUIRE(cong_join(mod2, full) == full);
  REQUIRE_THROWS_AS(cong_meet(mod2, Congruence::diagonal(3)), error);
  REQUIRE_THROWS_AS(cong_compose(z4, mod2, Congruence::diagonal(3)), error);
}

TEST_CASE("composition of congruences need not be a congruence or symmetric") {
  FiniteAlgebra semi = chain3_semilattice();
  std::vector<Congruence> congs = congruences(semi);
  Congruence low({0, 0, 1});   // {0,1|2}
  Congruence high({0, 1, 1});  // {0|1,2}
  REQUIRE(std::find(congs.begin(), congs.end(), low) != congs.end());
  REQUIRE(std::find(congs.begin(), congs.end(), high) != congs.end());

  Relation low_high = cong_compose(semi, low, high);
  Relation high_low = cong_compose(semi, high, low);
  REQUIRE(low_high.contains({0, 2}));
  REQUIRE_FALSE(high_low.contains({0, 2}));
  REQUIRE(!(low_high == high_low));
  // and neither composite equals the join, which is full
  REQUIRE(!(low_high == congruence_relation(semi, cong_join(low, high))));
}

TEST_CASE("lattice laws of meet and join on enumerated congruence lattices") {
  for (const FiniteAlgebra& A : {fixtures::cyclic_group(6), fixtures::bool4_algebra(), fixtures::n5_lattice()}) {
    std::vector<Congruence> congs = congruences(A);
    for (const Congruence& a : congs)
      for (const Congruence& b : congs) {
        REQUIRE(cong_meet(a, b) == cong_meet(b, a));
        REQUIRE(cong_join(a, b) == cong_join(b, a));
        REQUIRE(cong_meet(a, cong_join(a, b)) == a);
        REQUIRE(cong_join(a, cong_meet(a, b)) == a);
        REQUIRE(is_congruence(A, cong_meet(a, b)));
        REQUIRE(is_congruence(A, cong_join(a, b)));
      }
  }
}

TEST_CASE("join equals composition in the permutable algebras") {
  for (const FiniteAlgebra& A : {fixtures::cyclic_group(4), fixtures::cyclic_group(6), fixtures::bool4_algebra()}) {
    REQUIRE(has_maltsev_term(A).decision == Decision::yes);
    std::vector<Congruence> congs = congruences(A);
    for (const Congruence& a : congs)
      for (const Congruence& b : congs) {
        Relation ab = cong_compose(A, a, b);
        Relation ba = cong_compose(A, b, a);
        REQUIRE(ab == ba);
        REQUIRE(ab == congruence_relation(A, cong_join(a, b)));
      }
  }
}

TEST_CASE("lattice checks: distributive/permutable verdicts and witnesses") {
  LatticeCheckResult z4 = lattice_checks(congruences(fixtures::cyclic_group(4)));
  REQUIRE(z4.distributive);
  REQUIRE(z4.permutable);

  REQUIRE(lattice_checks(congruences(fixtures::bool4_algebra())).distributive);

  // two congruences are always distributive
  REQUIRE(lattice_checks(congruences(fixtures::two_chain_lattice())).distributive);

  // the four-element elementary abelian group: permutable but not
  // distributive (its congruence lattice is the diamond)
  FiniteSet u4;
  u4.size = 4;
  std::map<std::string, OperationTable> ops;
  ops.emplace("add", OperationTable::from_function(u4, 2, [](const Tuple& a) { return a[0] ^ a[1]; }));
  FiniteAlgebra klein(u4, std::move(ops));
  std::vector<Congruence> congs = congruences(klein);
  REQUIRE(congs.size() == 5);
  LatticeCheckResult checks = lattice_checks(congs);
  REQUIRE(checks.permutable);
  REQUIRE_FALSE(checks.distributive);
  REQUIRE(checks.distributive_witness.has_value());

  // the chain semilattice: distributive but not permutable
  LatticeCheckResult semi = lattice_checks(congruences(chain3_semilattice()));
  REQUIRE(semi.distributive);
  REQUIRE_FALSE(semi.permutable);
  REQUIRE(semi.permutable_witness.has_value());
}

TEST_CASE("the meet-compose identity holds under maltsev plus distributivity") {
  for (const FiniteAlgebra& A : {fixtures::cyclic_group(4), fixtures::cyclic_group(6), fixtures::bool4_algebra()}) {
    std::vector<Congruence> congs = congruences(A);
    for (const Congruence& a : congs)
      for (const Congruence& b : congs)
        for (const Congruence& c : congs) REQUIRE(distributivity_identity_check(A, a, b, c).ok);
  }

  // trivial instances: diagonal/diagonal/full collapse both sides
  FiniteAlgebra z4 = fixtures::cyclic_group(4);
  REQUIRE(distributivity_identity_check(z4, Congruence::diagonal(4), Congruence::diagonal(4), Congruence::full(4)).ok);
}

TEST_CASE("the meet-compose identity can fail without the preconditions") {
  FiniteSet u4;
  u4.size = 4;
  std::map<std::string, OperationTable> ops;
  ops.emplace("add", OperationTable::from_function(u4, 2, [](const Tuple& a) { return a[0] ^ a[1]; }));
  FiniteAlgebra klein(u4, std::move(ops));
  std::vector<Congruence> congs = congruences(klein);
  bool some_failure = false;
  for (const Congruence& a : congs)
    for (const Congruence& b : congs)
      for (const Congruence& c : congs) {
        DistributivityIdentityCheck check = distributivity_identity_check(klein, a, b, c);
        if (!check.ok) {
          some_failure = true;
          REQUIRE(check.witness_pair.has_value());
          REQUIRE(check.witness_pair->size() == 2);
        }
      }
  REQUIRE(some_failure);

  REQUIRE_THROWS_AS(
      distributivity_identity_check(klein, Congruence::diagonal(3), Congruence::diagonal(4), Congruence::full(4)),
      error);
}

TEST_CASE("congruence enumeration respects the universe cap") {
  REQUIRE_THROWS_AS(congruences(fixtures::cyclic_group(8), 7), universe_cap_error);
}
