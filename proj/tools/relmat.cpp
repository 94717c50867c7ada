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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relmat/demos.hpp"
#include "relmat/relmat.hpp"

namespace {

using namespace relmat;

// Exit codes: 0 property holds / found, 1 property fails / not found,
// 2 undecided (budget), 3 input error.
constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitInputError = 3;

struct GlobalOptions {
  bool json = false;
  bool verify_witness = false;
  std::uint64_t budget = 0;  // 0 = command default
  int max_universe = kDefaultUniverseCap;
  std::uint64_t seed = 20260810;
};

struct Report {
  std::string command;
  ordered_json inputs = ordered_json::object();
  ordered_json verdict = ordered_json::object();
  ordered_json witnesses = ordered_json::array();
  std::vector<std::string> lines;
  int exit_code = kExitHolds;

  void emit(bool json_mode) const {
    if (json_mode) {
      ordered_json j;
      j["command"] = command;
      j["inputs"] = inputs;
      j["verdict"] = verdict;
      j["witnesses"] = witnesses;
      j["exit_code"] = exit_code;
      std::cout << j.dump(2) << "\n";
      return;
    }
    for (const std::string& line : lines) std::cout << line << "\n";
  }
};

ExtendedMatrix resolve_matrix(const std::string& spec, std::string& label) {
  for (const char* name : {"majority", "maltsev", "unital", "subtractive"})
    if (spec == name) {
      label = name;
      return builtin_matrix(spec);
    }
  label = std::filesystem::path(spec).filename().string();
  return parse_matrix(read_file(spec));
}

std::string serialize_table(const OperationTable& t, const std::string& name) {
  FiniteAlgebra wrapper(t.universe, {{name, t}});
  return serialize_algebra(wrapper);
}

void require_witness_replay(Report& report, bool replayed) {
  report.verdict["witness_verified"] = replayed;
  if (replayed) {
    report.lines.push_back("witness: verified by replay");
    return;
  }
  report.lines.push_back("witness: replay FAILED");
  report.exit_code = kExitInputError;
}

int cmd_check_closed(const GlobalOptions& global, const std::string& structure_file,
                     const std::string& matrix_spec, const std::string& relation_name) {
  Report report;
  report.command = "check-closed";
  Structure X = parse_structure(read_file(structure_file));
  std::string matrix_label;
  ExtendedMatrix M = resolve_matrix(matrix_spec, matrix_label);
  auto it = X.relations.find(relation_name);
  if (it == X.relations.end()) throw error("structure has no relation named '" + relation_name + "'");
  const Relation& R = it->second;

  report.inputs["structure"] = canonical_digest(X);
  report.inputs["matrix"] = hex64(fnv1a64(serialize_matrix(M)));
  ClosednessCheck result = is_strictly_closed(R, M);
  report.verdict["closed"] = result.ok;
  report.lines.push_back("check-closed: relation '" + relation_name + "' under matrix '" + matrix_label + "'");
  report.lines.push_back(std::string("verdict: ") + (result.ok ? "strictly closed" : "not closed"));
  if (result.witness) {
    report.witnesses.push_back(witness_to_json(*result.witness));
    report.lines.push_back("witness: " + format_witness(*result.witness));
    if (global.verify_witness) require_witness_replay(report, replay_closure_witness(R, M, *result.witness));
  }
  if (report.exit_code == kExitHolds && !result.ok) report.exit_code = kExitFails;
  report.emit(global.json);
  return report.exit_code;
}

int cmd_classify(const GlobalOptions& global, const std::string& structure_file) {
  Report report;
  report.command = "classify";
  Structure S = parse_structure(read_file(structure_file));
  report.inputs["structure"] = canonical_digest(S);
  ObjectVerdict v = classify(S);
  report.verdict = verdict_to_json(v);
  report.lines.push_back("classify: universe " + std::to_string(S.universe.size) + ", relation '" +
                         S.single_relation().first + "' (arity " +
                         std::to_string(S.single_relation().second.arity()) + ")");
  report.lines.push_back(std::string("maltsev object: ") + (v.maltsev ? "yes" : "no"));
  report.lines.push_back(std::string("majority object: ") + (v.majority ? "yes" : "no"));
  if (v.maltsev_witness) {
    report.witnesses.push_back(witness_to_json(*v.maltsev_witness));
    report.lines.push_back("maltsev witness: " + format_witness(*v.maltsev_witness));
    if (global.verify_witness) require_witness_replay(report, replay_object_witness(S, *v.maltsev_witness, false));
  }
  if (v.majority_witness) {
    report.witnesses.push_back(witness_to_json(*v.majority_witness));
    report.lines.push_back("majority witness: " + format_witness(*v.majority_witness));
    if (global.verify_witness) require_witness_replay(report, replay_object_witness(S, *v.majority_witness, true));
  }
  if (report.exit_code == kExitHolds && !(v.maltsev && v.majority)) report.exit_code = kExitFails;
  report.emit(global.json);
  return report.exit_code;
}

int cmd_coreflect(const GlobalOptions& global, const std::string& structure_file, const std::string& out_file) {
  Report report;
  report.command = "coreflect";
  Structure S = parse_structure(read_file(structure_file));
  report.inputs["structure"] = canonical_digest(S);
  Structure r = maltsev_coreflection(S);
  std::size_t added = r.single_relation().second.size() - S.single_relation().second.size();
  write_file(out_file, serialize_structure(r));
  report.verdict["added_tuples"] = added;
  report.verdict["output"] = canonical_digest(r);
  report.lines.push_back("coreflect: added " + std::to_string(added) + " tuples; result is a maltsev object");
  report.lines.push_back("wrote " + out_file);
  report.emit(global.json);
  return report.exit_code;
}

int cmd_poly(const GlobalOptions& global, const std::string& structure_file, const std::string& kind_name) {
  Report report;
  report.command = "poly";
  if (kind_name != "majority" && kind_name != "maltsev")
    throw error("kind must be 'majority' or 'maltsev', got '" + kind_name + "'");
  PolymorphismKind kind = kind_name == "majority" ? PolymorphismKind::majority : PolymorphismKind::maltsev;
  Structure X = parse_structure(read_file(structure_file));
  report.inputs["structure"] = canonical_digest(X);
  std::uint64_t budget = global.budget ? global.budget : 10000000;
  PolymorphismSearch result = polymorphism_search(X, kind, budget);
  report.verdict["status"] = to_string(result.status);
  report.verdict["steps"] = result.steps;
  report.verdict["candidates"] = result.leaves;
  switch (result.status) {
    case SearchStatus::found: {
      report.verdict["table"] = table_to_json(*result.table);
      report.lines.push_back("poly " + kind_name + ": found");
      report.lines.push_back(serialize_table(*result.table, kind_name));
      report.exit_code = kExitHolds;
      break;
    }
    case SearchStatus::none:
      report.lines.push_back("poly " + kind_name + ": none (search space exhausted, " +
                             std::to_string(result.leaves) + " candidate(s) examined)");
      report.exit_code = kExitFails;
      break;
    case SearchStatus::undecided:
      report.lines.push_back("poly " + kind_name + ": undecided (budget of " + std::to_string(budget) +
                             " steps exhausted)");
      report.exit_code = kExitUndecided;
      break;
  }
  report.emit(global.json);
  return report.exit_code;
}

int cmd_terms(const GlobalOptions& global, const std::string& algebra_file, const std::string& kind_name) {
  Report report;
  report.command = "terms";
  if (kind_name != "majority" && kind_name != "maltsev")
    throw error("kind must be 'majority' or 'maltsev', got '" + kind_name + "'");
  FiniteAlgebra A = parse_algebra(read_file(algebra_file));
  report.inputs["algebra"] = canonical_digest(A);
  std::size_t budget = global.budget ? static_cast<std::size_t>(global.budget) : 10000;
  TermSearch result =
      kind_name == "majority" ? has_majority_term(A, budget) : has_maltsev_term(A, budget);
  report.verdict["decision"] = to_string(result.decision);
  report.verdict["clone_size"] = result.clone_size;
  report.verdict["clone_complete"] = result.clone_complete;
  report.lines.push_back("terms " + kind_name + ": " + to_string(result.decision));
  report.lines.push_back("clone: " + std::to_string(result.clone_size) + " tables (" +
                         (result.clone_complete ? "complete" : "budget exhausted") + ")");
  switch (result.decision) {
    case Decision::yes:
      report.verdict["table"] = table_to_json(*result.table);
      report.lines.push_back(serialize_table(*result.table, "term"));
      report.exit_code = kExitHolds;
      break;
    case Decision::no:
      report.exit_code = kExitFails;
      break;
    case Decision::undecided:
      report.exit_code = kExitUndecided;
      break;
  }
  report.emit(global.json);
  return report.exit_code;
}

int cmd_congruences(const GlobalOptions& global, const std::string& algebra_file, bool run_checks) {
  Report report;
  report.command = "congruences";
  FiniteAlgebra A = parse_algebra(read_file(algebra_file));
  report.inputs["algebra"] = canonical_digest(A);
  std::vector<Congruence> congs = congruences(A, global.max_universe);
  report.verdict["count"] = congs.size();
  ordered_json list = ordered_json::array();
  for (const Congruence& c : congs) list.push_back(c.block_of);
  report.verdict["congruences"] = std::move(list);
  report.lines.push_back("congruences: " + std::to_string(congs.size()));
  for (const Congruence& c : congs) report.lines.push_back("  " + format_congruence(c));
  if (run_checks) {
    LatticeCheckResult checks = lattice_checks(congs);
    report.verdict["distributive"] = checks.distributive;
    report.verdict["permutable"] = checks.permutable;
    std::string line = std::string("checks: distributive=") + (checks.distributive ? "yes" : "no") +
                       " permutable=" + (checks.permutable ? "yes" : "no");
    if (checks.distributive_witness) {
      const auto& w = *checks.distributive_witness;
      line += " distributive-counterexample=(" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
              std::to_string(w[2]) + ")";
    }
    if (checks.permutable_witness) {
      const auto& w = *checks.permutable_witness;
      line += " permutable-counterexample=(" + std::to_string(w[0]) + "," + std::to_string(w[1]) + ")";
    }
    report.lines.push_back(line);
    if (!(checks.distributive && checks.permutable)) report.exit_code = kExitFails;
  }
  report.emit(global.json);
  return report.exit_code;
}

int cmd_commutative_majority(const GlobalOptions& global, int n) {
  Report report;
  report.command = "commutative-majority";
  report.inputs["n"] = n;
  ExhaustiveSearchResult result = commutative_majority_search(n);
  report.verdict["found"] = result.table.has_value();
  report.verdict["candidates"] = result.candidates;
  if (result.table) {
    report.verdict["table"] = table_to_json(*result.table);
    report.lines.push_back("commutative-majority " + std::to_string(n) + ": found (" +
                           std::to_string(result.candidates) + " candidate(s))");
    report.lines.push_back(serialize_table(*result.table, "p"));
  } else {
    report.lines.push_back("commutative-majority " + std::to_string(n) + ": none (" +
                           std::to_string(result.candidates) +
                           (result.candidates == 1 ? " candidate)" : " candidates)"));
    report.exit_code = kExitFails;
  }
  report.emit(global.json);
  return report.exit_code;
}

int cmd_paper_demos(const GlobalOptions& global, const std::string& data_dir, bool list_only) {
  Report report;
  report.command = "paper-demos";
  const auto& registry = demos::registry();
  if (list_only) {
    ordered_json inventory = ordered_json::array();
    std::size_t index = 1;
    for (const demos::Demo& demo : registry) {
      ordered_json d;
      d["id"] = demo.id;
      d["summary"] = demo.summary;
      inventory.push_back(std::move(d));
      report.lines.push_back("[" + std::to_string(index) + "/" + std::to_string(registry.size()) + "] " +
                             demo.id + ": " + demo.summary);
      ++index;
    }
    report.verdict["demos"] = std::move(inventory);
    report.emit(global.json);
    return kExitHolds;
  }

  if (!std::filesystem::is_directory(data_dir))
    throw error("data directory '" + data_dir + "' not found (run from the repository root or pass --data)");
  demos::Options opts;
  opts.data_dir = data_dir;
  opts.seed = global.seed;
  for (const std::string& file : demos::data_files()) {
    std::string path = data_dir + "/" + file;
    if (file.ends_with(".rel"))
      report.inputs[file] = canonical_digest(parse_structure(read_file(path)));
    else
      report.inputs[file] = canonical_digest(parse_algebra(read_file(path)));
  }

  demos::SuiteReport suite = demos::run_suite(opts);
  report.verdict = demos::suite_to_json(suite);
  std::size_t index = 1;
  for (const demos::DemoResult& r : suite.results) {
    report.lines.push_back("[" + std::to_string(index) + "/" + std::to_string(suite.results.size()) + "] " +
                           r.id + ": " + (r.pass ? "PASS" : "FAIL"));
    report.lines.push_back("      " + r.detail);
    ++index;
  }
  report.lines.push_back(suite.all_pass ? "all demos passed" : "some demos FAILED");
  report.exit_code = suite.all_pass ? kExitHolds : kExitFails;
  report.emit(global.json);
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relmat: finite relational structures, the matrix method, and term search"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOptions global;
  app.add_flag("--json", global.json, "emit a machine-readable report");
  app.add_flag("--verify-witness", global.verify_witness, "replay returned witnesses through the library");
  app.add_option("--budget", global.budget, "search budget (clone tables / search steps)");
  app.add_option("--max-universe", global.max_universe, "cap on constructed universe sizes");
  app.add_option("--seed", global.seed, "seed for sampled sweeps");

  std::string structure_file, matrix_spec, relation_name, out_file, kind_name, algebra_file;
  std::string data_dir = "data";
  bool run_checks = false;
  bool list_only = false;
  int small_n = 0;

  CLI::App* check = app.add_subcommand("check-closed", "decide strict closedness of a relation under a matrix");
  check->add_option("structure", structure_file, "structure file")->required();
  check->add_option("matrix", matrix_spec, "matrix file or builtin name")->required();
  check->add_option("relation", relation_name, "relation name")->required();

  CLI::App* classify_cmd = app.add_subcommand("classify", "maltsev/majority object classification");
  classify_cmd->add_option("structure", structure_file, "structure file")->required();

  CLI::App* coreflect = app.add_subcommand("coreflect", "write the maltsev coreflection of a structure");
  coreflect->add_option("structure", structure_file, "structure file")->required();
  coreflect->add_option("out", out_file, "output structure file")->required();

  CLI::App* poly = app.add_subcommand("poly", "search for a compatible majority/maltsev operation");
  poly->add_option("structure", structure_file, "structure file")->required();
  poly->add_option("kind", kind_name, "majority or maltsev")->required();

  CLI::App* terms = app.add_subcommand("terms", "scan the ternary term clone for majority/maltsev terms");
  terms->add_option("algebra", algebra_file, "algebra file")->required();
  terms->add_option("kind", kind_name, "majority or maltsev")->required();

  CLI::App* congruences_cmd = app.add_subcommand("congruences", "list congruences, optionally with lattice checks");
  congruences_cmd->add_option("algebra", algebra_file, "algebra file")->required();
  congruences_cmd->add_flag("--checks", run_checks, "check distributivity and permutability");

  CLI::App* commutative = app.add_subcommand("commutative-majority",
                                             "exhaustive search for a commutative majority table");
  commutative->add_option("n", small_n, "universe size (1..3)")->required();

  CLI::App* paper_demos = app.add_subcommand("paper-demos", "run the bundled reproduction suite");
  paper_demos->add_option("--data", data_dir, "data directory with the bundled inputs");
  paper_demos->add_flag("--list", list_only, "print the demo inventory without running");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (app.got_subcommand(check)) return cmd_check_closed(global, structure_file, matrix_spec, relation_name);
    if (app.got_subcommand(classify_cmd)) return cmd_classify(global, structure_file);
    if (app.got_subcommand(coreflect)) return cmd_coreflect(global, structure_file, out_file);
    if (app.got_subcommand(poly)) return cmd_poly(global, structure_file, kind_name);
    if (app.got_subcommand(terms)) return cmd_terms(global, algebra_file, kind_name);
    if (app.got_subcommand(congruences_cmd)) return cmd_congruences(global, algebra_file, run_checks);
    if (app.got_subcommand(commutative)) return cmd_commutative_majority(global, small_n);
    if (app.got_subcommand(paper_demos)) return cmd_paper_demos(global, data_dir, list_only);
  } catch (const std::exception& e) {
    if (global.json) {
      ordered_json j;
      j["error"] = e.what();
      j["exit_code"] = kExitInputError;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kExitInputError;
  }
  return kExitInputError;
}
