// SPDX-License-Identifier: Apache-2.0
#pragma once

// Instance generation, JSON/CSV serialization and batch sweeps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nwatsp/graph.hpp"
#include "nwatsp/held_karp.hpp"
#include "nwatsp/merge_engine.hpp"

namespace nwatsp {

enum class InstanceKind { Cycle, DigonChain, Random, UnweightedRandom, BidirectedComplete };
enum class WeightLaw { Uniform, Constant };

std::string_view to_string(InstanceKind kind);
InstanceKind parse_instance_kind(std::string_view text);  // throws BadSpec

struct GeneratorSpec {
  InstanceKind kind = InstanceKind::Random;
  int n = 8;
  double density = 0.3;   // extra-edge probability for random kinds
  WeightLaw law = WeightLaw::Uniform;
  double max_weight = 10.0;  // uniform weights are drawn from [1, max_weight]
  std::uint64_t seed = 1;
};

// Deterministic for a fixed spec; the result always passes validate().
// Random kinds lay a Hamiltonian cycle over a random permutation before
// sampling extra edges. Throws BadSpec.
Instance generate(const GeneratorSpec& spec);

nlohmann::ordered_json spec_to_json(const GeneratorSpec& spec);
GeneratorSpec spec_from_json(const nlohmann::json& j);  // throws BadSpec / Parse

// {"n": int, "f": [real...], "edges": [[u, v]...]}
nlohmann::ordered_json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);  // throws Parse

// {"x": {edgeId: real}, "lb": [real...], "value": real}
nlohmann::ordered_json lp_to_json(const LpSolution& lp);

// {"lp_value", "tour_weight", "ratio", "merges", "restarts", "marks",
//  "potential_trace", "epsilon", "mode"}
nlohmann::ordered_json report_to_json(const RunReport& report);

// File helpers; Io on open/write failure, Parse on malformed JSON.
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Instance read_instance(const std::string& path);

struct SweepRow {
  GeneratorSpec spec;
  bool ok = false;
  std::string error;
  double lp = 0.0;
  std::optional<double> opt;  // exact optimum when n <= kSweepOracleMax
  double shortcut = 0.0;
  double tour = 0.0;
  double ratio = 0.0;
  int merges = 0;
  int restarts = 0;
  MergeMode mode = MergeMode::Standard;
};

inline constexpr int kSweepOracleMax = 10;

struct SweepSummary {
  int count = 0;
  int failed = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  int total_restarts = 0;
  int oracle_checked = 0;
  int oracle_violations = 0;  // rows breaking lp <= opt <= shortcut <= tour
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

// Runs the whole pipeline per spec. A failing spec yields a failed row and
// does not affect the others.
SweepResult sweep(const std::vector<GeneratorSpec>& specs, double epsilon, MergeMode mode);

// Columns: n,seed,lp,opt,tour,ratio,merges,restarts,mode
std::string sweep_to_csv(const SweepResult& result);
nlohmann::ordered_json sweep_to_json(const SweepResult& result, double epsilon, MergeMode mode);

}  // namespace nwatsp
