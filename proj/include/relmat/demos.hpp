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

// The reproduction suite: every desk-scale construction the toolkit is
// built around, packaged as deterministic pass/fail demos. The CLI's
// paper-demos command and the acceptance binary both run this registry.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "relmat/fixtures.hpp"
#include "relmat/json_io.hpp"
#include "relmat/reference.hpp"
#include "relmat/relmat.hpp"

namespace relmat::demos {

struct Options {
  std::string data_dir = "data";
  std::uint64_t seed = 20260810;
};

struct DemoResult {
  std::string id;
  bool pass = false;
  std::string detail;  // deterministic: no timings, no paths
};

struct Demo {
  std::string id;
  std::string summary;
  /// Wall-clock bound enforced by the acceptance suite (seconds; 0 = none).
  double time_budget = 0.0;
  std::function<DemoResult(const Options&)> run;
};

/// Files shipped in the data directory, in report order.
inline const std::vector<std::string>& data_files() {
  static const std::vector<std::string> files = {
      "counterexample.rel", "chain2.rel",       "lattice2.alg", "semilattice2.alg", "z2.alg",
      "z4.alg",             "z6.alg",           "m3.alg",       "n5.alg",           "bool4.alg",
  };
  return files;
}

inline Structure load_structure(const Options& opts, const std::string& name) {
  return parse_structure(read_file(opts.data_dir + "/" + name));
}

inline FiniteAlgebra load_algebra(const Options& opts, const std::string& name) {
  return parse_algebra(read_file(opts.data_dir + "/" + name));
}

namespace detail {

class Check {
 public:
  void expect(bool condition, const std::string& label) {
    if (!condition) {
      if (!failures_.empty()) failures_ += "; ";
      failures_ += label;
    }
  }
  bool ok() const { return failures_.empty(); }
  const std::string& failures() const { return failures_; }

 private:
  std::string failures_;
};

inline DemoResult finish(const std::string& id, const Check& check, const std::string& detail) {
  if (check.ok()) return {id, true, detail};
  return {id, false, check.failures()};
}

}  // namespace detail

// --- the demos -------------------------------------------------------------

inline DemoResult demo_counterexample(const Options& opts) {
  detail::Check check;
  Structure S = load_structure(opts, "counterexample.rel");
  ObjectVerdict v = classify(S);
  check.expect(v.maltsev, "expected maltsev object");
  check.expect(!v.majority, "expected majority check to fail");
  check.expect(v.majority_witness.has_value(), "expected a majority witness");
  if (v.majority_witness) {
    const Witness& w = *v.majority_witness;
    std::vector<Tuple> premises = {{1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    check.expect(w.premises == premises, "canonical witness premises mismatch");
    check.expect(w.conclusion == Tuple{0, 1, 0}, "canonical witness conclusion mismatch");
  }
  std::string detail = "maltsev=true majority=false";
  if (v.majority_witness) detail += "; " + format_witness(*v.majority_witness);
  return detail::finish("counterexample-classification", check, detail);
}

inline DemoResult demo_binary_majority_sweep(const Options& opts) {
  detail::Check check;
  FiniteSet u4;
  u4.size = 4;
  long long total = 0;
  long long failures = 0;
  reference::for_each_relation(std::vector<FiniteSet>(2, u4), [&](const Relation& R) {
    ++total;
    std::map<std::string, Relation> rels;
    rels.emplace("R", R);
    if (!is_majority_object(Structure(u4, std::move(rels))).ok) ++failures;
  });
  check.expect(total == 65536, "expected 65536 binary relations on 4 elements");
  check.expect(failures == 0, "majority check failed on an exhaustive case");

  long long sampled = 0;
  long long sample_failures = 0;
  reference::Rng rng(opts.seed);
  for (int n : {5, 6}) {
    for (int i = 0; i < 10000; ++i) {
      int density = 1 + rng.below(99);
      Structure S = reference::random_structure(n, 2, density, rng);
      ++sampled;
      if (!is_majority_object(S).ok) ++sample_failures;
    }
  }
  check.expect(sample_failures == 0, "majority check failed on a sampled case");
  std::ostringstream detail;
  detail << "exhaustive |U|=4: " << total << " relations, " << failures << " failures; sampled |U|=5,6: "
         << sampled << " relations, " << sample_failures << " failures";
  return detail::finish("binary-relation-majority-sweep", check, detail.str());
}

inline DemoResult demo_closedness_oracle_agreement(const Options&) {
  detail::Check check;
  ExtendedMatrix majority = builtin_matrix("majority");
  FiniteSet a, b, c;
  a.size = b.size = c.size = 2;
  long long total = 0;
  long long verdict_mismatches = 0;
  long long leastness_failures = 0;
  reference::for_each_relation({a, b, c}, [&](const Relation& R) {
    ++total;
    bool fast = is_strictly_closed(R, majority).ok;
    bool brute = reference::strictly_closed_all_assignments(R, majority);
    if (fast != brute) ++verdict_mismatches;
    Relation closed = strict_closure(R, majority);
    bool least = reference::strictly_closed_all_assignments(closed, majority);
    for (const Tuple& t : R.tuples())
      if (!closed.contains(t)) least = false;
    reference::for_each_superset(R, [&](const Relation& candidate) {
      if (!reference::strictly_closed_all_assignments(candidate, majority)) return;
      for (const Tuple& t : closed.tuples())
        if (!candidate.contains(t)) least = false;
    });
    if (!least) ++leastness_failures;
  });
  check.expect(total == 256, "expected 256 ternary relations over 2x2x2");
  check.expect(verdict_mismatches == 0, "tuple-unification disagreed with the all-assignments oracle");
  check.expect(leastness_failures == 0, "closure not least against superset enumeration");
  std::ostringstream detail;
  detail << total << " relations; verdict mismatches " << verdict_mismatches << "; least-closure failures "
         << leastness_failures;
  return detail::finish("closedness-oracle-agreement", check, detail.str());
}

inline DemoResult demo_term_builders(const Options& opts) {
  detail::Check check;

  FiniteAlgebra lattice2 = load_algebra(opts, "lattice2.alg");
  LatticeTermResult chain = lattice_majority_term(lattice2.operations.at("meet"), lattice2.operations.at("join"));
  check.expect(chain.absorption_ok, "2-chain absorption");
  check.expect(verify_majority(chain.table).ok, "2-chain lattice term fails the majority identities");
  check.expect(chain.table == fixtures::boolean_majority(), "2-chain lattice term is not boolean majority");

  for (const char* file : {"m3.alg", "n5.alg"}) {
    FiniteAlgebra L = load_algebra(opts, file);
    LatticeTermResult r = lattice_majority_term(L.operations.at("meet"), L.operations.at("join"));
    check.expect(r.absorption_ok, std::string(file) + " absorption");
    check.expect(verify_majority(r.table).ok, std::string(file) + " lattice term fails the majority identities");
  }

  fixtures::RingTables gf2 = fixtures::modular_ring(2);
  check.expect(verify_majority(ring_majority_term(gf2.add, gf2.sub, gf2.mul, 2)).ok,
               "mod-2 ring term fails the majority identities");
  fixtures::RingTables z6 = fixtures::modular_ring(6);
  check.expect(verify_majority(ring_majority_term(z6.add, z6.sub, z6.mul, 3)).ok,
               "mod-6 ring term fails the majority identities");
  fixtures::RingTables z4 = fixtures::modular_ring(4);
  bool rejected = false;
  std::string message;
  try {
    ring_majority_term(z4.add, z4.sub, z4.mul, 2);
  } catch (const error& e) {
    rejected = true;
    message = e.what();
  }
  check.expect(rejected, "mod-4 exponent law should be rejected");
  check.expect(message.find("element 2") != std::string::npos, "rejection should name element 2");

  return detail::finish("term-builders", check,
                        "lattice term on 2-chain/M3/N5; ring term on mod-2 (n=2), mod-6 (n=3); mod-4 rejected at "
                        "the exponent law (element 2)");
}

inline DemoResult demo_term_separation(const Options& opts) {
  detail::Check check;

  TermSearch lat = has_majority_term(load_algebra(opts, "lattice2.alg"));
  check.expect(lat.decision == Decision::yes, "2-chain should have a majority term");
  check.expect(lat.table && verify_majority(*lat.table).ok, "returned table must verify");

  TermSearch semi = has_majority_term(load_algebra(opts, "semilattice2.alg"));
  check.expect(semi.decision == Decision::no, "semilattice should have no majority term");
  check.expect(semi.clone_complete, "semilattice clone should be complete");
  check.expect(semi.clone_size == 7, "semilattice clone should have 7 tables");

  FiniteAlgebra z2 = load_algebra(opts, "z2.alg");
  TermSearch z2maj = has_majority_term(z2);
  TermSearch z2mal = has_maltsev_term(z2);
  check.expect(z2maj.decision == Decision::no, "2-element group should have no majority term");
  check.expect(z2maj.clone_complete, "group clone should be complete");
  check.expect(z2mal.decision == Decision::yes, "2-element group should have a maltsev term");
  check.expect(z2mal.table && *z2mal.table == fixtures::xor3_table(), "maltsev term should be x+y+z");

  std::ostringstream detail;
  detail << "majority term: 2-chain yes, semilattice no (complete clone of " << semi.clone_size
         << "), group no (clone " << z2maj.clone_size << "); maltsev term on the group: yes via x+y+z";
  return detail::finish("majority-maltsev-separation", check, detail.str());
}

inline DemoResult demo_congruence_calculus(const Options& opts) {
  detail::Check check;
  std::ostringstream detail;
  const std::vector<std::pair<std::string, std::size_t>> expected = {
      {"z4.alg", 3}, {"z6.alg", 4}, {"bool4.alg", 4}};
  for (const auto& [file, expected_count] : expected) {
    FiniteAlgebra A = load_algebra(opts, file);
    std::vector<Congruence> congs = congruences(A);
    check.expect(congs.size() == expected_count,
                 file + ": expected " + std::to_string(expected_count) + " congruences, got " +
                     std::to_string(congs.size()));
    for (const Congruence& theta : congs)
      check.expect(is_congruence(A, theta), file + ": enumerated partition is not compatible");

    bool join_is_composition = true;
    for (const Congruence& alpha : congs)
      for (const Congruence& beta : congs) {
        Relation ab = cong_compose(A, alpha, beta);
        Relation ba = cong_compose(A, beta, alpha);
        Relation join = congruence_relation(A, cong_join(alpha, beta));
        if (!(ab == ba) || !(ab == join)) join_is_composition = false;
      }
    check.expect(join_is_composition, file + ": join of congruences differs from their composition");

    LatticeCheckResult lattice = lattice_checks(congs);
    check.expect(lattice.distributive, file + ": congruence lattice not distributive");
    check.expect(lattice.permutable, file + ": congruences do not permute");

    bool identity_holds = true;
    for (const Congruence& alpha : congs)
      for (const Congruence& beta : congs)
        for (const Congruence& gamma : congs)
          if (!distributivity_identity_check(A, alpha, beta, gamma).ok) identity_holds = false;
    check.expect(identity_holds, file + ": distributivity identity failed on a congruence triple");

    if (detail.tellp() > 0) detail << "; ";
    detail << file << ": " << congs.size() << " congruences, join=composition, distributive, permutable";
  }
  return detail::finish("congruence-calculus", check, detail.str());
}

inline DemoResult demo_commutative_majority(const Options&) {
  detail::Check check;

  ExhaustiveSearchResult one = commutative_majority_search(1);
  check.expect(one.table.has_value() && one.candidates == 1, "singleton search should find the constant table");

  ExhaustiveSearchResult two = commutative_majority_search(2);
  check.expect(!two.table && two.candidates == 1, "2-element search should exhaust 1 candidate");

  ExhaustiveSearchResult three = commutative_majority_search(3);
  check.expect(!three.table && three.candidates == 729, "3-element search should exhaust 729 candidates");

  OperationTable maj = fixtures::boolean_majority();
  IdentityCheck commutative = is_commutative_majority(maj);
  check.expect(!commutative.ok && commutative.witness.has_value(), "boolean majority should fail with a witness");

  // replay of the collapsing chain at x=0, y=1: evaluating the two sides of
  // the swapped application shows 0 on one side and 1 on the other
  int lhs = maj.at3(maj.at3(0, 0, 1), maj.at3(0, 1, 0), maj.at3(1, 1, 1));
  int rhs = maj.at3(maj.at3(0, 0, 1), maj.at3(0, 1, 1), maj.at3(1, 0, 1));
  check.expect(lhs == 0 && rhs == 1, "witness chain replay should yield 0 vs 1");
  if (commutative.witness) {
    const Witness& w = *commutative.witness;
    check.expect(w.conclusion.size() == 2 && w.conclusion[0] != w.conclusion[1],
                 "witness should record differing sides");
  }

  std::ostringstream detail;
  detail << "n=1 found (1 candidate); n=2 none (" << two.candidates << " candidate); n=3 none ("
         << three.candidates << " candidates); boolean majority not commutative, chain replays 0 vs 1";
  return detail::finish("commutative-majority-triviality", check, detail.str());
}

inline DemoResult demo_closure_laws(const Options& opts) {
  detail::Check check;
  reference::Rng rng(opts.seed ^ 0xc105edULL);

  long long closure_inputs = 0;
  for (int i = 0; i < 500; ++i) {
    bool use_majority = rng.coin();
    ExtendedMatrix M = builtin_matrix(use_majority ? "majority" : "maltsev");
    int n = 1 + rng.below(3);
    int k = use_majority ? 3 : 2;
    Structure S = reference::random_structure(n, k, 1 + rng.below(99), rng);
    const Relation& R = S.single_relation().second;
    ++closure_inputs;

    Relation closed = strict_closure(R, M);
    for (const Tuple& t : R.tuples())
      check.expect(closed.contains(t), "closure not extensive");
    check.expect(strict_closure(closed, M) == closed, "closure not idempotent");
    check.expect(is_strictly_closed(closed, M).ok, "closure result not closed");

    // enlarge R and compare
    std::vector<Tuple> enlarged = R.tuples();
    std::vector<int> radices(static_cast<std::size_t>(k), n);
    long long grid = 1;
    for (int q = 0; q < k; ++q) grid *= n;
    for (int add = 0; add < 3; ++add) enlarged.push_back(mixed_radix_decode(rng.below(static_cast<int>(grid)), radices));
    Relation bigger_closure = strict_closure(Relation(R.signature(), std::move(enlarged)), M);
    for (const Tuple& t : closed.tuples())
      check.expect(bigger_closure.contains(t), "closure not monotone");
    if (!check.ok()) break;
  }

  long long coreflection_inputs = 0;
  for (int i = 0; i < 500; ++i) {
    int n = 1 + rng.below(3);
    Structure S = reference::random_structure(n, 3, 1 + rng.below(99), rng);
    ++coreflection_inputs;

    Structure r = maltsev_coreflection(S);
    const Relation& before = S.single_relation().second;
    const Relation& after = r.single_relation().second;
    for (const Tuple& t : before.tuples())
      check.expect(after.contains(t), "coreflection not extensive");
    check.expect(is_maltsev_object(r).ok, "coreflection result not a maltsev object");
    check.expect(maltsev_coreflection(r) == r, "coreflection not idempotent");
    check.expect(maltsev_coreflection(S, CoreflectionMode::single_step) == r,
                 "single-step and batch coreflection disagree");

    std::vector<Tuple> enlarged = before.tuples();
    std::vector<int> radices(3, n);
    for (int add = 0; add < 2; ++add)
      enlarged.push_back(mixed_radix_decode(rng.below(n * n * n), radices));
    std::map<std::string, Relation> rels;
    rels.emplace(S.single_relation().first, Relation(before.signature(), std::move(enlarged)));
    Structure bigger = maltsev_coreflection(Structure(S.universe, std::move(rels)));
    for (const Tuple& t : after.tuples())
      check.expect(bigger.single_relation().second.contains(t), "coreflection not monotone");
    if (!check.ok()) break;
  }

  // least-ness, exhaustively on the 2-element universe
  ExtendedMatrix majority = builtin_matrix("majority");
  FiniteSet u2;
  u2.size = 2;
  long long closure_least_failures = 0;
  reference::for_each_relation(std::vector<FiniteSet>(3, u2), [&](const Relation& R) {
    Relation closed = strict_closure(R, majority);
    reference::for_each_superset(R, [&](const Relation& candidate) {
      if (!reference::strictly_closed_all_assignments(candidate, majority)) return;
      for (const Tuple& t : closed.tuples())
        if (!candidate.contains(t)) ++closure_least_failures;
    });
  });
  check.expect(closure_least_failures == 0, "strict_closure not least at |U|=2");

  long long coreflection_least_failures = 0;
  reference::for_each_relation(std::vector<FiniteSet>(3, u2), [&](const Relation& R) {
    std::map<std::string, Relation> rels;
    rels.emplace("R", R);
    Structure S(u2, std::move(rels));
    Structure coreflected = maltsev_coreflection(S);
    const Relation& reflected = coreflected.single_relation().second;
    reference::for_each_superset(R, [&](const Relation& candidate) {
      std::map<std::string, Relation> crels;
      crels.emplace("R", candidate);
      if (!reference::maltsev_object_direct(Structure(u2, std::move(crels)))) return;
      for (const Tuple& t : reflected.tuples())
        if (!candidate.contains(t)) ++coreflection_least_failures;
    });
  });
  check.expect(coreflection_least_failures == 0, "maltsev_coreflection not least at |U|=2");

  std::ostringstream detail;
  detail << closure_inputs << " closure inputs and " << coreflection_inputs
         << " coreflection inputs pass extensivity/idempotence/monotonicity; least-ness exhaustive at |U|=2";
  return detail::finish("closure-operator-laws", check, detail.str());
}

// forward declaration; demo_determinism re-runs the rest of the suite
inline const std::vector<Demo>& registry();

struct SuiteReport {
  std::vector<DemoResult> results;
  bool all_pass = true;
};

inline SuiteReport run_suite(const Options& opts, bool include_determinism = true) {
  SuiteReport report;
  for (const Demo& demo : registry()) {
    if (!include_determinism && demo.id == "report-determinism") continue;
    DemoResult result;
    try {
      result = demo.run(opts);
    } catch (const std::exception& e) {
      result = {demo.id, false, std::string("error: ") + e.what()};
    }
    report.all_pass = report.all_pass && result.pass;
    report.results.push_back(std::move(result));
  }
  return report;
}

inline ordered_json suite_to_json(const SuiteReport& report) {
  ordered_json demos = ordered_json::array();
  for (const DemoResult& r : report.results) {
    ordered_json d;
    d["id"] = r.id;
    d["pass"] = r.pass;
    d["detail"] = r.detail;
    demos.push_back(std::move(d));
  }
  ordered_json j;
  j["pass"] = report.all_pass;
  j["demos"] = std::move(demos);
  return j;
}

inline DemoResult demo_determinism(const Options& opts) {
  detail::Check check;
  std::string first = suite_to_json(run_suite(opts, false)).dump(2);
  std::string second = suite_to_json(run_suite(opts, false)).dump(2);
  check.expect(first == second, "suite reports differ between two in-process runs");
  std::ostringstream detail;
  detail << "two in-process suite executions rendered " << first.size() << " identical bytes";
  return detail::finish("report-determinism", check, detail.str());
}

inline const std::vector<Demo>& registry() {
  static const std::vector<Demo> demos = {
      {"counterexample-classification",
       "the separating ternary relation: maltsev object, not a majority object, canonical witness", 1.0,
       demo_counterexample},
      {"binary-relation-majority-sweep",
       "every binary relation on 4 elements is a majority object; seeded samples at 5 and 6 elements", 60.0,
       demo_binary_majority_sweep},
      {"closedness-oracle-agreement",
       "tuple-unification closedness equals the all-assignments oracle; closure is least", 30.0,
       demo_closedness_oracle_agreement},
      {"term-builders", "lattice and ring majority-term constructions, with the exponent-law rejection", 1.0,
       demo_term_builders},
      {"majority-maltsev-separation",
       "majority terms: 2-chain yes, semilattice no, 2-element group no but maltsev yes", 5.0,
       demo_term_separation},
      {"congruence-calculus",
       "join equals composition, distributive and permutable congruence lattices, the meet-compose identity", 5.0,
       demo_congruence_calculus},
      {"commutative-majority-triviality",
       "exhaustive search finds no commutative majority table beyond one element", 5.0, demo_commutative_majority},
      {"closure-operator-laws",
       "extensivity, idempotence, monotonicity and least-ness of both closure operators", 60.0, demo_closure_laws},
      {"report-determinism", "the suite report is byte-identical across runs", 0.0, demo_determinism},
  };
  return demos;
}

}  // namespace relmat::demos
