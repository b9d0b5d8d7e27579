// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nwatsp/harness.hpp"

using namespace nwatsp;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "nwatsp_harness_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(NWATSP_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool same_edges(const Instance& a, const Instance& b) {
  if (a.edge_count() != b.edge_count()) return false;
  for (int e = 0; e < a.edge_count(); ++e)
    if (a.edge(e).tail != b.edge(e).tail || a.edge(e).head != b.edge(e).head) return false;
  return true;
}

}  // namespace

TEST_CASE("generator kinds") {
  GeneratorSpec spec;
  spec.kind = InstanceKind::Cycle;
  spec.n = 4;
  spec.law = WeightLaw::Constant;
  const auto c4 = generate(spec);
  REQUIRE(c4.edge_count() == 4);
  for (int v = 0; v < 4; ++v) {
    CHECK(c4.edge(v).tail == v);
    CHECK(c4.edge(v).head == (v + 1) % 4);
    CHECK(c4.vertex_weight(v) == 1.0);
  }

  spec = {};
  spec.kind = InstanceKind::UnweightedRandom;
  spec.n = 20;
  const auto u = generate(spec);
  for (double f : u.vertex_weights()) CHECK(f == 1.0);

  spec = {};
  spec.kind = InstanceKind::DigonChain;
  spec.n = 5;
  CHECK(generate(spec).edge_count() == 8);
  spec.kind = InstanceKind::BidirectedComplete;
  CHECK(generate(spec).edge_count() == 20);
}

TEST_CASE("generator is deterministic and valid") {
  GeneratorSpec spec;
  spec.n = 8;
  spec.density = 0.4;
  spec.seed = 11;
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(same_edges(a, b));
  for (int v = 0; v < 8; ++v) CHECK(a.vertex_weight(v) == b.vertex_weight(v));
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    spec.seed = seed;
    spec.n = 2 + static_cast<int>(seed % 30);
    const auto g = generate(spec);
    CHECK_NOTHROW(validate(g));
    for (double f : g.vertex_weights()) CHECK((f >= 1.0 && f <= 10.0));
  }
}

TEST_CASE("generator rejects bad specs") {
  GeneratorSpec spec;
  spec.n = 1;
  CHECK_THROWS_AS(generate(spec), Error);
  spec.n = 5;
  spec.density = 0.0;
  CHECK_THROWS_AS(generate(spec), Error);
  spec.density = 0.5;
  spec.max_weight = 0.5;
  CHECK_THROWS_AS(generate(spec), Error);
  CHECK_THROWS_AS(parse_instance_kind("tree"), Error);
}

TEST_CASE("instance json round trip") {
  GeneratorSpec spec;
  spec.seed = 4;
  const auto g = generate(spec);
  const auto j = instance_to_json(g);
  CHECK(j.begin().key() == "n");
  const auto back = instance_from_json(nlohmann::json::parse(j.dump()));
  CHECK(same_edges(g, back));
  for (int v = 0; v < g.vertex_count(); ++v) CHECK(back.vertex_weight(v) == g.vertex_weight(v));
  try {
    instance_from_json(nlohmann::json::parse(R"({"n": 2, "f": [1, 1], "edges": [[0]]})"));
    FAIL("expected Parse");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Parse);
  }
}

TEST_CASE("report json fields in order") {
  RunReport r;
  const auto j = report_to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"lp_value", "tour_weight", "ratio", "merges", "restarts", "marks",
                                         "potential_trace", "epsilon", "mode"});
}

TEST_CASE("sweep: empty list, failing spec isolation, oracle sandwich") {
  const auto empty = sweep({}, 0.25, MergeMode::Standard);
  CHECK(empty.rows.empty());
  CHECK(sweep_to_csv(empty) == "n,seed,lp,opt,tour,ratio,merges,restarts,mode\n");

  std::vector<GeneratorSpec> specs(3);
  specs[0].seed = 1;
  specs[1].n = 1;  // invalid
  specs[2].seed = 2;
  const auto mixed = sweep(specs, 0.25, MergeMode::Standard);
  REQUIRE(mixed.rows.size() == 3);
  CHECK(mixed.rows[0].ok);
  CHECK(!mixed.rows[1].ok);
  CHECK(!mixed.rows[1].error.empty());
  CHECK(mixed.rows[2].ok);
  CHECK(mixed.summary.failed == 1);

  std::vector<GeneratorSpec> batch;
  const InstanceKind kinds[] = {InstanceKind::Random, InstanceKind::UnweightedRandom,
                                InstanceKind::BidirectedComplete, InstanceKind::DigonChain,
                                InstanceKind::Cycle};
  for (int i = 0; i < 100; ++i) {
    GeneratorSpec s;
    s.kind = kinds[i % 5];
    s.n = 2 + i % 9;
    s.density = 0.15 + 0.1 * (i % 4);
    s.seed = 1000 + i;
    batch.push_back(s);
  }
  const auto res = sweep(batch, 0.25, MergeMode::Standard);
  CHECK(res.summary.failed == 0);
  CHECK(res.summary.oracle_checked == 100);
  CHECK(res.summary.oracle_violations == 0);
  for (const auto& row : res.rows) {
    REQUIRE(row.opt.has_value());
    CHECK(row.lp <= *row.opt + 1e-6);
    CHECK(*row.opt <= row.tour + 1e-6);
    CHECK(row.tour <= 27.5 * row.lp + 1e-6);
  }
}

TEST_CASE("cli exit codes and outputs") {
  const auto dir = scratch();
  const auto inst = (dir / "c4.json").string();
  CHECK(cli("gen --kind cycle --n 4 --weights constant --output " + inst) == 0);
  const auto report = (dir / "c4_report.json").string();
  CHECK(cli("solve --input " + inst + " --epsilon 0.25 --output " + report) == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["ratio"].get<double>() == doctest::Approx(1.0));
  CHECK(j["mode"] == "standard");

  {
    std::ofstream bad(dir / "bad.json");
    bad << "{\"n\": 2, \"f\": [1,";
  }
  CHECK(cli("solve --input " + (dir / "bad.json").string()) == 3);
  CHECK(cli("solve --input " + (dir / "missing.json").string()) == 3);
  {
    std::ofstream path(dir / "path.json");
    path << R"({"n": 2, "f": [1, 1], "edges": [[0, 1]]})";
  }
  CHECK(cli("solve --input " + (dir / "path.json").string()) == 1);
  CHECK(cli("validate --input " + (dir / "path.json").string()) == 1);
  CHECK(cli("validate --input " + inst) == 0);

  const auto exact_out = (dir / "exact.json").string();
  CHECK(cli("exact --input " + inst + " --output " + exact_out) == 0);
  CHECK(nlohmann::json::parse(slurp(exact_out))["weight"].get<double>() == 4.0);

  const auto lp_out = (dir / "lp.json").string();
  const auto lc_out = (dir / "lc.json").string();
  CHECK(cli("solve --input " + inst + " --output " + report + " --lp-dump " + lp_out + " --lc-dump " +
            lc_out) == 0);
  const auto lp = nlohmann::json::parse(slurp(lp_out));
  CHECK(lp["value"].get<double>() == doctest::Approx(4.0));
  CHECK(lp["x"].size() == 4);
  CHECK(nlohmann::json::parse(slurp(lc_out))["F"].size() == 4);

  {
    std::ofstream specs(dir / "specs.json");
    specs << R"([{"kind": "random", "n": 6, "seed": 3}, {"kind": "cycle", "n": 1}])";
  }
  const auto prefix = (dir / "sweep").string();
  CHECK(cli("sweep --input " + (dir / "specs.json").string() + " --output " + prefix) == 0);
  const auto csv = slurp(prefix + ".csv");
  CHECK(csv.rfind("n,seed,lp,opt,tour,ratio,merges,restarts,mode\n", 0) == 0);
  const auto sj = nlohmann::json::parse(slurp(prefix + ".json"));
  CHECK(sj["rows"].size() == 2);
  CHECK(sj["rows"][1]["status"] == "failed");
  {
    std::ofstream none(dir / "none.json");
    none << "[]";
  }
  CHECK(cli("sweep --input " + (dir / "none.json").string() + " --output " + prefix) == 0);
  CHECK(cli("sweep --kind random --n 7 --count 3 --seed 5 --output " + prefix) == 0);
  CHECK(cli("solve --input " + inst + " --mode bogus") == 1);
  CHECK(cli("--help") == 0);
}

TEST_CASE("cli reports are byte-identical across runs") {
  const auto dir = scratch();
  const auto inst = (dir / "det.json").string();
  REQUIRE(cli("gen --kind random --n 15 --density 0.3 --seed 42 --output " + inst) == 0);
  std::string first;
  for (int i = 0; i < 3; ++i) {
    const auto out = (dir / ("det_" + std::to_string(i) + ".json")).string();
    REQUIRE(cli("solve --input " + inst + " --mode nw-cycle-rule --output " + out) == 0);
    if (i == 0) first = slurp(out);
    else CHECK(slurp(out) == first);
  }
}
