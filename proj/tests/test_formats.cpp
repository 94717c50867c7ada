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

#include "relmat/fixtures.hpp"
#include "relmat/json_io.hpp"
#include "relmat/reference.hpp"
#include "relmat/relmat.hpp"

using namespace relmat;

TEST_CASE("structure text round trip is byte-exact on canonical forms") {
  reference::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Structure S = reference::random_structure(1 + rng.below(4), 1 + rng.below(3), 1 + rng.below(99), rng);
    std::string text = serialize_structure(S);
    Structure back = parse_structure(text);
    REQUIRE(back == S);
    REQUIRE(serialize_structure(back) == text);
  }

  // labels and basepoint survive, and powers serialize canonically
  Structure cube = product_power(fixtures::counterexample_structure(), 2);
  std::string text = serialize_structure(cube);
  REQUIRE(parse_structure(text) == cube);
  REQUIRE(serialize_structure(parse_structure(text)) == text);
}

TEST_CASE("structure parser accepts comments, rejects malformed input") {
  Structure S = parse_structure("# comment\nuniverse 2\n\nrel R 2\n0 1\nend\n");
  REQUIRE(S.universe.size == 2);
  REQUIRE(S.relations.at("R").contains({0, 1}));

  REQUIRE_THROWS_AS(parse_structure(""), parse_error);
  REQUIRE_THROWS_AS(parse_structure("universe\n"), parse_error);
  REQUIRE_THROWS_AS(parse_structure("universe 2\nrel R 2\n0 1\n"), parse_error);        // missing end
  REQUIRE_THROWS_AS(parse_structure("universe 2\nrel R 2\n0\nend\n"), parse_error);     // short tuple
  REQUIRE_THROWS_AS(parse_structure("universe 2\nrel R 2\n0 2\nend\n"), parse_error);   // out of range
  REQUIRE_THROWS_AS(parse_structure("universe 2\nrel R 2\n0 1\n0 1\nend\n"), parse_error);  // duplicate
  REQUIRE_THROWS_AS(parse_structure("universe 2\nrel R 0\nend\n"), parse_error);        // zero arity
  REQUIRE_THROWS_AS(parse_structure("universe 2\nrel 9bad 2\nend\n"), parse_error);     // bad name
  REQUIRE_THROWS_AS(parse_structure("universe 2\nlabels a\nrel R 1\nend\n"), parse_error);
  REQUIRE_THROWS_AS(parse_structure("universe 2\nbasepoint 5\n"), parse_error);

  try {
    parse_structure("universe 2\nrel R 2\n0 1\nx y\nend\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    REQUIRE(e.line() == 4);
  }
}

TEST_CASE("algebra text round trip and parse errors") {
  for (const FiniteAlgebra& A : {fixtures::cyclic_group(4), fixtures::bool4_algebra(), fixtures::n5_lattice()}) {
    std::string text = serialize_algebra(A);
    REQUIRE(parse_algebra(text) == A);
    REQUIRE(serialize_algebra(parse_algebra(text)) == text);
  }

  // nullary operations occupy a single line
  FiniteAlgebra b4 = fixtures::bool4_algebra();
  std::string text = serialize_algebra(b4);
  REQUIRE(text.find("op bot 0\n0\n") != std::string::npos);

  REQUIRE_THROWS_AS(parse_algebra(""), parse_error);
  REQUIRE_THROWS_AS(parse_algebra("universe 2\nop f 1\n0\n"), parse_error);      // short table
  REQUIRE_THROWS_AS(parse_algebra("universe 2\nop f 1\n0 1 0\n"), parse_error);  // long table
  REQUIRE_THROWS_AS(parse_algebra("universe 2\nop f 1\n0 2\n"), parse_error);    // out of range
  REQUIRE_THROWS_AS(parse_algebra("universe 2\nop f -1\n"), parse_error);
}

TEST_CASE("JSON mirrors parse to identical values") {
  Structure S = fixtures::counterexample_structure();
  REQUIRE(structure_from_json(structure_to_json(S)) == S);
  Structure cube = product_power(S, 2);
  REQUIRE(structure_from_json(structure_to_json(cube)) == cube);

  FiniteAlgebra A = fixtures::bool4_algebra();
  REQUIRE(algebra_from_json(algebra_to_json(A)) == A);

  // hand-written JSON parses to the same structure as the text form
  ordered_json j = ordered_json::parse(R"({
    "universe": 2,
    "relations": {"R": {"arity": 3, "tuples": [[0,0,0],[0,1,1],[1,1,0]]}}
  })");
  REQUIRE(structure_from_json(j) == S);

  REQUIRE_THROWS_AS(structure_from_json(ordered_json::parse(R"({"universe": "x"})")), parse_error);
  REQUIRE_THROWS_AS(structure_from_json(ordered_json::parse(R"({})")), parse_error);
  REQUIRE_THROWS_AS(algebra_from_json(ordered_json::parse(R"({"universe": 2, "operations": 3})")), parse_error);
}

TEST_CASE("witness JSON carries all populated fields") {
  Structure S = fixtures::counterexample_structure();
  Witness w = *is_majority_object(S).witness;
  ordered_json j = witness_to_json(w);
  REQUIRE(j["kind"] == "homomorphism-violation");
  REQUIRE(j["relation"] == "R");
  REQUIRE(j["premises"].size() == 3);
  REQUIRE(j["conclusion"] == ordered_json::array({0, 1, 0}));

  ordered_json v = verdict_to_json(classify(S));
  REQUIRE(v["maltsev"] == true);
  REQUIRE(v["majority"] == false);
  REQUIRE(v["witnesses"].contains("majority"));
  REQUIRE_FALSE(v["witnesses"].contains("maltsev"));
}

TEST_CASE("bundled data files are the canonical serializations of the fixtures") {
  const std::string dir = RELMAT_DATA_DIR;
  REQUIRE(read_file(dir + "/counterexample.rel") == serialize_structure(fixtures::counterexample_structure()));
  REQUIRE(read_file(dir + "/chain2.rel") == serialize_structure(fixtures::chain2_poset()));
  REQUIRE(read_file(dir + "/lattice2.alg") == serialize_algebra(fixtures::two_chain_lattice()));
  REQUIRE(read_file(dir + "/semilattice2.alg") == serialize_algebra(fixtures::two_semilattice()));
  REQUIRE(read_file(dir + "/z2.alg") == serialize_algebra(fixtures::cyclic_group(2)));
  REQUIRE(read_file(dir + "/z4.alg") == serialize_algebra(fixtures::cyclic_group(4)));
  REQUIRE(read_file(dir + "/z6.alg") == serialize_algebra(fixtures::cyclic_group(6)));
  REQUIRE(read_file(dir + "/m3.alg") == serialize_algebra(fixtures::m3_lattice()));
  REQUIRE(read_file(dir + "/n5.alg") == serialize_algebra(fixtures::n5_lattice()));
  REQUIRE(read_file(dir + "/bool4.alg") == serialize_algebra(fixtures::bool4_algebra()));
}

TEST_CASE("digests are stable and content-sensitive") {
  Structure S = fixtures::counterexample_structure();
  std::string d1 = canonical_digest(S);
  REQUIRE(d1 == canonical_digest(S));
  REQUIRE(d1.size() == 16);

  std::vector<Tuple> enlarged = S.single_relation().second.tuples();
  enlarged.push_back({0, 1, 0});
  std::map<std::string, Relation> rels;
  rels.emplace("R", Relation(S.single_relation().second.signature(), std::move(enlarged)));
  REQUIRE(canonical_digest(Structure(S.universe, std::move(rels))) != d1);
}
