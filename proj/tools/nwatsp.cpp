// SPDX-License-Identifier: Apache-2.0
// nwatsp: generate, solve, sweep, exact, validate.
//
// Exit codes: 0 ok, 1 invalid instance, spec or flags, 2 invariant breach, 3 I/O or parse.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nwatsp/error.hpp"
#include "nwatsp/exact.hpp"
#include "nwatsp/graph.hpp"
#include "nwatsp/harness.hpp"
#include "nwatsp/held_karp.hpp"
#include "nwatsp/local_connectivity.hpp"
#include "nwatsp/merge_engine.hpp"

namespace {

using nwatsp::Error;
using nwatsp::ErrorCategory;

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::InvalidInput: return 1;
    case ErrorCategory::InvariantBreach: return 2;
    case ErrorCategory::Io: return 3;
  }
  return 2;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    nwatsp::write_text_file(path, text);
  }
}

struct GenArgs {
  std::string kind = "random";
  int n = 8;
  double density = 0.3;
  std::string weights = "uniform";
  double max_weight = 10.0;
  std::uint64_t seed = 1;
};

nwatsp::GeneratorSpec to_spec(const GenArgs& a) {
  nwatsp::GeneratorSpec spec;
  spec.kind = nwatsp::parse_instance_kind(a.kind);
  spec.n = a.n;
  spec.density = a.density;
  spec.law = a.weights == "constant" ? nwatsp::WeightLaw::Constant : nwatsp::WeightLaw::Uniform;
  spec.max_weight = a.max_weight;
  spec.seed = a.seed;
  return spec;
}

void add_gen_flags(CLI::App* cmd, GenArgs& a) {
  cmd->add_option("--kind", a.kind, "cycle|digon-chain|random|unweighted-random|bidirected-complete");
  cmd->add_option("--n", a.n, "vertex count");
  cmd->add_option("--density", a.density, "extra-edge probability in (0, 1]");
  cmd->add_option("--weights", a.weights, "uniform|constant")
      ->check(CLI::IsMember({"uniform", "constant"}));
  cmd->add_option("--max-weight", a.max_weight, "upper end of uniform vertex weights");
  cmd->add_option("--seed", a.seed, "generator seed");
}

std::string walk_text(const nwatsp::Instance& g, const std::vector<nwatsp::EdgeId>& circuit) {
  std::string out;
  if (circuit.empty()) return "\n";
  out += std::to_string(g.edge(circuit.front()).tail);
  for (nwatsp::EdgeId e : circuit) out += " " + std::to_string(g.edge(e).head);
  return out + "\n";
}

nlohmann::ordered_json lc_debug_json(const nwatsp::Instance& g, const nwatsp::LpSolution& lp) {
  nwatsp::Partition singletons;
  for (nwatsp::Vertex v = 0; v < g.vertex_count(); ++v) singletons.parts.push_back({v});
  const auto aux = nwatsp::build_aux(g, singletons);
  const auto y = nwatsp::integral_circulation(g, aux, lp);
  const auto f = nwatsp::solve_lc(g, lp, singletons);
  nlohmann::ordered_json j;
  j["partition"] = singletons.parts;
  nlohmann::ordered_json ys = nlohmann::ordered_json::object();
  for (int a = 0; a < aux.arc_count(); ++a) {
    if (y[a] != 0) ys[std::to_string(a)] = y[a];
  }
  j["y"] = std::move(ys);
  nlohmann::ordered_json fs = nlohmann::ordered_json::object();
  for (const auto& [e, count] : f) fs[std::to_string(e)] = count;
  j["F"] = std::move(fs);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Node-weighted ATSP approximation toolkit"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  double epsilon = 0.25;
  std::string mode = "standard";

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate an instance");
  add_gen_flags(gen, gen_args);
  gen->add_option("--output", output, "instance path (stdout if omitted)");

  std::string lp_dump;
  std::string lc_dump;
  auto* solve = app.add_subcommand("solve", "run the full pipeline on an instance");
  solve->add_option("--input", input, "instance path")->required();
  solve->add_option("--output", output, "report path (stdout if omitted)");
  solve->add_option("--epsilon", epsilon, "merge epsilon in (0, 1]");
  solve->add_option("--mode", mode, "standard|nw-cycle-rule")
      ->check(CLI::IsMember({"standard", "nw-cycle-rule"}));
  solve->add_option("--lp-dump", lp_dump, "write x*, lb and value as JSON");
  solve->add_option("--lc-dump", lc_dump, "write y and F for the singleton partition as JSON");

  GenArgs sweep_args;
  int count = 10;
  auto* sweep = app.add_subcommand("sweep", "run the pipeline over a batch of generated instances");
  sweep->add_option("--input", input, "JSON array of generator specs");
  sweep->add_option("--output", output, "output prefix for .csv and .json (CSV to stdout if omitted)");
  sweep->add_option("--epsilon", epsilon, "merge epsilon in (0, 1]");
  sweep->add_option("--mode", mode, "standard|nw-cycle-rule")
      ->check(CLI::IsMember({"standard", "nw-cycle-rule"}));
  sweep->add_option("--count", count, "batch size when no --input is given")
      ->check(CLI::NonNegativeNumber);
  add_gen_flags(sweep, sweep_args);

  auto* exact = app.add_subcommand("exact", "exact optimum on the closure (n <= 15)");
  exact->add_option("--input", input, "instance path")->required();
  exact->add_option("--output", output, "result path (stdout if omitted)");

  auto* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("--input", input, "instance path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      const auto g = nwatsp::generate(to_spec(gen_args));
      emit(output, nwatsp::instance_to_json(g).dump(2) + "\n");
    } else if (solve->parsed()) {
      const auto g = nwatsp::read_instance(input);
      nwatsp::validate(g);
      const auto lp = nwatsp::solve_held_karp(g);
      if (!lp_dump.empty()) nwatsp::write_text_file(lp_dump, nwatsp::lp_to_json(lp).dump(2) + "\n");
      if (!lc_dump.empty()) nwatsp::write_text_file(lc_dump, lc_debug_json(g, lp).dump(2) + "\n");
      nwatsp::MergeOptions options;
      options.epsilon = epsilon;
      options.mode = nwatsp::parse_merge_mode(mode);
      const auto result = nwatsp::run(g, lp, options);
      const std::string report = nwatsp::report_to_json(result.report).dump(2) + "\n";
      if (output.empty()) {
        std::cout << report;
      } else {
        nwatsp::write_text_file(output, report);
      }
      std::cout << walk_text(g, nwatsp::eulerian_circuit(g, result.tour));
    } else if (sweep->parsed()) {
      std::vector<nwatsp::GeneratorSpec> specs;
      if (!input.empty()) {
        const auto j = nwatsp::read_json_file(input);
        if (!j.is_array()) throw Error(nwatsp::Errc::Parse, "spec file must hold a JSON array");
        for (const auto& item : j) specs.push_back(nwatsp::spec_from_json(item));
      } else {
        auto spec = to_spec(sweep_args);
        for (int i = 0; i < count; ++i) {
          specs.push_back(spec);
          ++spec.seed;
        }
      }
      const auto merge_mode = nwatsp::parse_merge_mode(mode);
      const auto result = nwatsp::sweep(specs, epsilon, merge_mode);
      const std::string csv = nwatsp::sweep_to_csv(result);
      if (output.empty()) {
        std::cout << csv;
      } else {
        nwatsp::write_text_file(output + ".csv", csv);
        nwatsp::write_text_file(output + ".json",
                                nwatsp::sweep_to_json(result, epsilon, merge_mode).dump(2) + "\n");
      }
      const auto& s = result.summary;
      std::cerr << "rows " << s.count << ", failed " << s.failed << ", max ratio " << s.max_ratio
                << ", mean ratio " << s.mean_ratio << ", restarts " << s.total_restarts
                << ", oracle " << s.oracle_checked << " checked / " << s.oracle_violations
                << " violations\n";
      if (s.oracle_violations > 0) return 2;
    } else if (exact->parsed()) {
      const auto g = nwatsp::read_instance(input);
      nwatsp::validate(g);
      const auto tour = nwatsp::exact_atsp(g);
      nlohmann::ordered_json j;
      j["weight"] = tour.weight;
      j["order"] = tour.order;
      emit(output, j.dump(2) + "\n");
    } else if (validate->parsed()) {
      const auto g = nwatsp::read_instance(input);
      nwatsp::validate(g);
      std::cout << "ok: n=" << g.vertex_count() << " m=" << g.edge_count() << "\n";
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_code(err.category());
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
