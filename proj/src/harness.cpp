// SPDX-License-Identifier: Apache-2.0
#include "nwatsp/harness.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "nwatsp/exact.hpp"

namespace nwatsp {

namespace {

// mt19937_64 output is fixed by the standard; the std distributions are not,
// so the draws below are derived from raw output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
};

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::Cycle: return "cycle";
    case InstanceKind::DigonChain: return "digon-chain";
    case InstanceKind::Random: return "random";
    case InstanceKind::UnweightedRandom: return "unweighted-random";
    case InstanceKind::BidirectedComplete: return "bidirected-complete";
  }
  return "unknown";
}

InstanceKind parse_instance_kind(std::string_view text) {
  for (auto kind : {InstanceKind::Cycle, InstanceKind::DigonChain, InstanceKind::Random,
                    InstanceKind::UnweightedRandom, InstanceKind::BidirectedComplete}) {
    if (text == to_string(kind)) return kind;
  }
  throw Error(Errc::BadSpec, "unknown instance kind '" + std::string(text) + "'");
}

Instance generate(const GeneratorSpec& spec) {
  if (spec.n < 2) throw Error(Errc::BadSpec, "n must be at least 2");
  if (!(spec.density > 0.0 && spec.density <= 1.0)) throw Error(Errc::BadSpec, "density must lie in (0, 1]");
  if (!(spec.max_weight >= 1.0)) throw Error(Errc::BadSpec, "max weight must be at least 1");

  const int n = spec.n;
  Rng rng(spec.seed);
  const bool constant =
      spec.law == WeightLaw::Constant || spec.kind == InstanceKind::UnweightedRandom;
  std::vector<double> f(n, 1.0);
  if (!constant) {
    for (double& w : f) w = 1.0 + (spec.max_weight - 1.0) * rng.uniform01();
  }

  std::vector<Edge> edges;
  switch (spec.kind) {
    case InstanceKind::Cycle:
      for (Vertex v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
      break;
    case InstanceKind::DigonChain:
      for (Vertex v = 0; v + 1 < n; ++v) {
        edges.push_back({v, v + 1});
        edges.push_back({v + 1, v});
      }
      break;
    case InstanceKind::BidirectedComplete:
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
          if (u != v) edges.push_back({u, v});
        }
      }
      break;
    case InstanceKind::Random:
    case InstanceKind::UnweightedRandom: {
      std::vector<Vertex> perm(n);
      for (Vertex v = 0; v < n; ++v) perm[v] = v;
      for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
      std::set<std::pair<Vertex, Vertex>> present;
      for (int i = 0; i < n; ++i) {
        const Edge e{perm[i], perm[(i + 1) % n]};
        if (present.insert({e.tail, e.head}).second) edges.push_back(e);
      }
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
          if (u == v || present.count({u, v})) continue;
          if (rng.uniform01() < spec.density) edges.push_back({u, v});
        }
      }
      break;
    }
  }
  Instance instance(n, std::move(f), std::move(edges));
  validate(instance);
  return instance;
}

nlohmann::ordered_json spec_to_json(const GeneratorSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(spec.kind));
  j["n"] = spec.n;
  j["density"] = spec.density;
  j["weights"] = spec.law == WeightLaw::Uniform ? "uniform" : "constant";
  j["max_weight"] = spec.max_weight;
  j["seed"] = spec.seed;
  return j;
}

GeneratorSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::Parse, "generator spec must be a JSON object");
  GeneratorSpec spec;
  try {
    if (j.contains("kind")) spec.kind = parse_instance_kind(j.at("kind").get<std::string>());
    if (j.contains("n")) spec.n = j.at("n").get<int>();
    if (j.contains("density")) spec.density = j.at("density").get<double>();
    if (j.contains("max_weight")) spec.max_weight = j.at("max_weight").get<double>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("weights")) {
      const auto law = j.at("weights").get<std::string>();
      if (law == "uniform") spec.law = WeightLaw::Uniform;
      else if (law == "constant") spec.law = WeightLaw::Constant;
      else throw Error(Errc::BadSpec, "unknown weight law '" + law + "'");
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::Parse, ex.what());
  }
  return spec;
}

nlohmann::ordered_json instance_to_json(const Instance& g) {
  nlohmann::ordered_json j;
  j["n"] = g.vertex_count();
  j["f"] = std::vector<double>(g.vertex_weights().begin(), g.vertex_weights().end());
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) edges.push_back({e.tail, e.head});
  j["edges"] = std::move(edges);
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    auto f = j.at("f").get<std::vector<double>>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::Parse, "edge entries must be [u, v]");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return Instance(n, std::move(f), std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::Parse, ex.what());
  }
}

nlohmann::ordered_json lp_to_json(const LpSolution& lp) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json x = nlohmann::ordered_json::object();
  for (std::size_t e = 0; e < lp.x.size(); ++e) x[std::to_string(e)] = lp.x[e];
  j["x"] = std::move(x);
  j["lb"] = lp.lb;
  j["value"] = lp.value;
  return j;
}

nlohmann::ordered_json report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["lp_value"] = r.lp_value;
  j["tour_weight"] = r.tour_weight;
  j["ratio"] = r.ratio;
  j["merges"] = r.merges;
  j["restarts"] = r.restarts;
  j["marks"] = r.marks;
  j["potential_trace"] = r.potential_trace;
  j["epsilon"] = r.epsilon;
  j["mode"] = std::string(to_string(r.mode));
  return j;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(Errc::Parse, "'" + path + "': " + ex.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(Errc::Io, "write to '" + path + "' failed");
}

Instance read_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

SweepResult sweep(const std::vector<GeneratorSpec>& specs, double epsilon, MergeMode mode) {
  SweepResult result;
  double ratio_sum = 0.0;
  for (const auto& spec : specs) {
    SweepRow row;
    row.spec = spec;
    row.mode = mode;
    try {
      const Instance g = generate(spec);
      const LpSolution lp = solve_held_karp(g);
      MergeOptions options;
      options.epsilon = epsilon;
      options.mode = mode;
      const RunResult run_result = run(g, lp, options);
      row.lp = lp.value;
      row.tour = run_result.report.tour_weight;
      row.ratio = run_result.report.ratio;
      row.merges = run_result.report.merges;
      row.restarts = run_result.report.restarts;
      row.shortcut = shortcut(g, eulerian_circuit(g, run_result.tour)).weight;
      if (g.vertex_count() <= kSweepOracleMax) row.opt = exact_atsp(g).weight;
      row.ok = true;
    } catch (const Error& err) {
      row.error = err.what();
    }

    ++result.summary.count;
    if (row.ok) {
      result.summary.max_ratio = std::max(result.summary.max_ratio, row.ratio);
      ratio_sum += row.ratio;
      result.summary.total_restarts += row.restarts;
      if (row.opt) {
        ++result.summary.oracle_checked;
        constexpr double tol = 1e-6;
        const bool sandwich = row.lp <= *row.opt + tol && *row.opt <= row.shortcut + tol &&
                              row.shortcut <= row.tour + tol;
        if (!sandwich) ++result.summary.oracle_violations;
      }
    } else {
      ++result.summary.failed;
    }
    result.rows.push_back(std::move(row));
  }
  const int ok_rows = result.summary.count - result.summary.failed;
  result.summary.mean_ratio = ok_rows > 0 ? ratio_sum / ok_rows : 0.0;
  return result;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "n,seed,lp,opt,tour,ratio,merges,restarts,mode\n";
  for (const auto& row : result.rows) {
    os << row.spec.n << ',' << row.spec.seed << ',';
    if (row.ok) {
      os << format_double(row.lp) << ',' << (row.opt ? format_double(*row.opt) : "") << ','
         << format_double(row.tour) << ',' << format_double(row.ratio) << ',' << row.merges << ','
         << row.restarts << ',';
    } else {
      os << ",,,,,,";
    }
    os << to_string(row.mode) << '\n';
  }
  return os.str();
}

nlohmann::ordered_json sweep_to_json(const SweepResult& result, double epsilon, MergeMode mode) {
  nlohmann::ordered_json j;
  j["epsilon"] = epsilon;
  j["mode"] = std::string(to_string(mode));
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json r;
    r["spec"] = spec_to_json(row.spec);
    r["status"] = row.ok ? "ok" : "failed";
    if (row.ok) {
      r["lp"] = row.lp;
      r["opt"] = row.opt ? nlohmann::ordered_json(*row.opt) : nlohmann::ordered_json(nullptr);
      r["shortcut"] = row.shortcut;
      r["tour"] = row.tour;
      r["ratio"] = row.ratio;
      r["merges"] = row.merges;
      r["restarts"] = row.restarts;
    } else {
      r["error"] = row.error;
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  const auto& s = result.summary;
  j["summary"] = {{"count", s.count},
                  {"failed", s.failed},
                  {"max_ratio", s.max_ratio},
                  {"mean_ratio", s.mean_ratio},
                  {"total_restarts", s.total_restarts},
                  {"oracle_checked", s.oracle_checked},
                  {"oracle_violations", s.oracle_violations}};
  return j;
}

}  // namespace nwatsp
