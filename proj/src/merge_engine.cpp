// SPDX-License-Identifier: Apache-2.0
#include "nwatsp/merge_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace nwatsp {

namespace {

// lb on a 1e-9 grid, so that float noise does not override the vertex-id
// tiebreak while the comparison stays a strict weak ordering.
long long lb_key(double lb) { return std::llround(lb * 1e9); }

std::vector<bool> mask_of(int n, std::span<const Vertex> vertices) {
  std::vector<bool> mask(n, false);
  for (Vertex v : vertices) mask[v] = true;
  return mask;
}

double rel_tol(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

}  // namespace

std::string_view to_string(MergeMode mode) {
  return mode == MergeMode::Standard ? "standard" : "nw-cycle-rule";
}

MergeMode parse_merge_mode(std::string_view text) {
  if (text == "standard") return MergeMode::Standard;
  if (text == "nw-cycle-rule") return MergeMode::NwCycleRule;
  throw Error(Errc::BadSpec, "unknown mode '" + std::string(text) + "'");
}

EulerianPartition::EulerianPartition(const Instance& g, const LpSolution& lp,
                                     std::vector<PartitionMember> members, double beta)
    : members_(std::move(members)), beta_(beta) {
  for (auto& m : members_) {
    std::sort(m.vertices.begin(), m.vertices.end());
    m.lb = lb_of(lp, m.vertices);
    m.weight = weight_of(g, m.edges);
  }
  std::sort(members_.begin(), members_.end(), [](const PartitionMember& a, const PartitionMember& b) {
    const long long ka = lb_key(a.lb);
    const long long kb = lb_key(b.lb);
    if (ka != kb) return ka > kb;
    return a.vertices.front() < b.vertices.front();
  });
  index_of_.assign(g.vertex_count(), -1);
  for (int i = 0; i < size(); ++i) {
    for (Vertex v : members_[i].vertices) {
      if (index_of_[v] >= 0) {
        throw Error(Errc::InvariantBreach, "vertex " + std::to_string(v) + " in two partition members");
      }
      index_of_[v] = i;
    }
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (index_of_[v] < 0) throw Error(Errc::InvariantBreach, "vertex " + std::to_string(v) + " uncovered");
  }
}

double EulerianPartition::potential() const {
  double total = 0.0;
  for (const auto& m : members_) total += m.lb * m.lb;
  return total;
}

EdgeMultiset EulerianPartition::edges() const {
  EdgeMultiset all;
  for (const auto& m : members_) all += m.edges;
  return all;
}

void EulerianPartition::check(const Instance& g) const {
  for (int i = 0; i < size(); ++i) {
    const auto& m = members_[i];
    if (m.weight > beta_ * m.lb + rel_tol(m.lb)) {
      throw Error(Errc::LightnessBreach, "partition member " + std::to_string(i) + " has w = " +
                                             std::to_string(m.weight) + " > beta lb = " +
                                             std::to_string(beta_ * m.lb));
    }
    if (m.edges.empty()) {
      if (m.vertices.size() != 1) {
        throw Error(Errc::InvariantBreach, "edgeless partition member with several vertices");
      }
      continue;
    }
    if (!is_balanced(g, m.edges)) throw Error(Errc::InvariantBreach, "partition member not Eulerian");
    const auto view = components(g, m.edges);
    const auto& comp = view.components[view.component_of[m.vertices.front()]];
    if (comp.vertices != m.vertices || comp.edges != m.edges) {
      throw Error(Errc::InvariantBreach, "partition member " + std::to_string(i) + " not connected");
    }
  }
}

EulerianPartition init_trivial(const Instance& g, const LpSolution& lp, double beta) {
  std::vector<PartitionMember> members(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) members[v].vertices = {v};
  return EulerianPartition(g, lp, std::move(members), beta);
}

int low(const EulerianPartition& partition, std::span<const Vertex> vertices) {
  int best = std::numeric_limits<int>::max();
  for (Vertex v : vertices) best = std::min(best, partition.index_of(v));
  if (vertices.empty()) throw Error(Errc::InvariantBreach, "low() of an empty vertex set");
  return best;
}

std::optional<Cycle> find_connecting_cycle(const Instance& g, const std::vector<bool>& mask,
                                           double threshold) {
  EdgeId best_edge = -1;
  double best = std::numeric_limits<double>::infinity();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    if (!mask[u] || mask[v]) continue;
    const double w = g.weight(e) + g.closure()(v, u);
    if (w < best - kWeightTol) {
      best = w;
      best_edge = e;
    }
  }
  if (best_edge < 0 || best > threshold + kWeightTol) return std::nullopt;

  const auto [u, v] = g.edge(best_edge);
  const Path back = shortest_path(g, v, u);
  Cycle cycle;
  cycle.edges.add(best_edge);
  for (EdgeId e : back.edges) cycle.edges.add(e);
  cycle.weight = g.weight(best_edge) + back.weight;
  return cycle;
}

double cycle_threshold(const MergeOptions& options, double low_lb, double lb_total, int n) {
  if (options.mode == MergeMode::NwCycleRule) return low_lb;
  return options.alpha * (3.0 * low_lb + options.epsilon * lb_total / n);
}

EdgeMultiset strip_contained(const Instance& g, const ComponentView& e_star_view,
                             const EdgeMultiset& f) {
  EdgeMultiset kept;
  for (const auto& comp : components(g, f).components) {
    if (comp.edges.empty()) continue;
    const int owner = e_star_view.component_of[comp.vertices.front()];
    const bool inside = std::all_of(comp.vertices.begin(), comp.vertices.end(), [&](Vertex v) {
      return e_star_view.component_of[v] == owner;
    });
    if (!inside) kept += comp.edges;
  }
  return kept;
}

UpdateResult update_phase(const Instance& g, const LpSolution& lp,
                          const EulerianPartition& partition, const EdgeMultiset& e_star,
                          const EdgeMultiset& f, const MergeOptions& options) {
  const int n = g.vertex_count();
  const EdgeMultiset base = e_star + f;
  EdgeMultiset x;
  struct Added {
    Cycle cycle;
    MarkRecord mark;
  };
  std::vector<Added> added;

  for (;;) {
    const auto view = components(g, base + x);
    // Smallest lb(low(.)) means the largest low index.
    int selected = 0;
    int selected_low = -1;
    for (int c = 0; c < static_cast<int>(view.size()); ++c) {
      const int l = low(partition, view.components[c].vertices);
      if (l > selected_low) {
        selected_low = l;
        selected = c;
      }
    }
    const auto& comp = view.components[selected];
    const auto mask = mask_of(n, comp.vertices);

    if (view.size() > 1) {
      const double threshold = cycle_threshold(options, partition[selected_low].lb, lp.value, n);
      if (auto cycle = find_connecting_cycle(g, mask, threshold)) {
        const double w = cycle->weight;
        x += cycle->edges;
        added.push_back({std::move(*cycle), {selected_low, w, threshold}});
        if (static_cast<int>(added.size()) > n) {
          throw Error(Errc::InvariantBreach, "more than n X-cycles in one update phase");
        }
        continue;
      }
    }

    UpdateResult result;
    result.selected = comp.vertices;
    result.f_tilde = restrict_to(g, f, mask);
    result.x_tilde = restrict_to(g, x, mask);
    result.cycles_added = static_cast<int>(added.size());
    for (const auto& a : added) {
      const EdgeId first = a.cycle.edges.begin()->first;
      if (mask[g.edge(first).tail]) result.marks.push_back(a.mark);
    }
    return result;
  }
}

std::vector<std::vector<Component>> lc_family(const Instance& g, const EulerianPartition& partition,
                                              const EdgeMultiset& f_tilde) {
  std::vector<std::vector<Component>> family(partition.size());
  for (auto& comp : components(g, f_tilde).components) {
    if (comp.edges.empty()) continue;
    const int i = low(partition, comp.vertices);
    family[i].push_back(std::move(comp));
  }
  return family;
}

ConditionResult check_condition(const Instance& g, const LpSolution& lp,
                                const EulerianPartition& partition, const EdgeMultiset& f_tilde,
                                double epsilon) {
  auto family = lc_family(g, partition, f_tilde);
  ConditionResult result;
  const double slack = epsilon * lp.value / g.vertex_count();
  for (int i = 0; i < partition.size(); ++i) {
    double lb = 0.0;
    for (const auto& comp : family[i]) lb += lb_of(lp, comp.vertices);
    result.family_lb.push_back(lb);
    result.bound.push_back(3.0 * partition[i].lb + slack);
    if (!result.violated && lb > result.bound.back() + kWeightTol) {
      result.violated = i;
      result.violating_family = std::move(family[i]);
    }
  }
  return result;
}

EulerianPartition reinitialize(const Instance& g, const LpSolution& lp,
                               const EulerianPartition& partition, int part,
                               const std::vector<Component>& family, double epsilon,
                               ReinitRecord* record) {
  const int n = g.vertex_count();
  std::vector<bool> in_family(n, false);
  EdgeMultiset family_edges;
  double family_lb = 0.0;
  for (const auto& comp : family) {
    for (Vertex v : comp.vertices) {
      in_family[v] = true;
      family_lb += lp.lb[v];
    }
    family_edges += comp.edges;
  }

  // I: members touching the family; each contributes lb inside / outside it.
  std::vector<double> inside(partition.size(), 0.0);
  std::vector<bool> touched(partition.size(), false);
  for (Vertex v = 0; v < n; ++v) {
    if (!in_family[v]) continue;
    const int j = partition.index_of(v);
    touched[j] = true;
    inside[j] += lp.lb[v];
  }
  if (!touched[part]) throw Error(Errc::InvariantBreach, "violating family does not touch its low member");
  for (int j = 0; j < part; ++j) {
    if (touched[j]) throw Error(Errc::InvariantBreach, "family touches a member below its low index");
  }
  const double lb_low = partition[part].lb;
  if (lb_low > family_lb / 3.0 + rel_tol(family_lb)) {
    throw Error(Errc::InvariantBreach, "reinitialize called without a condition violation");
  }

  std::vector<int> item_part;
  std::vector<KnapsackItem> items;
  double size_total = 0.0;
  double profit_total = 0.0;
  double profit_max = 0.0;
  for (int j = part + 1; j < partition.size(); ++j) {
    if (!touched[j]) continue;
    item_part.push_back(j);
    items.push_back({inside[j], partition[j].lb - inside[j]});
    size_total += items.back().size;
    profit_total += items.back().profit;
    profit_max = std::max(profit_max, items.back().profit);
  }
  const double capacity = std::max(0.0, 2.0 * family_lb / 3.0 - inside[part]);
  // z = 1/3 on every item must be feasible for the rounding bound below.
  if (size_total / 3.0 > capacity + rel_tol(family_lb)) {
    throw Error(Errc::InvariantBreach, "uniform one-third packing infeasible");
  }
  const auto selection = knapsack_select(items, capacity);
  if (selection.profit < profit_total / 3.0 - profit_max - rel_tol(profit_total)) {
    throw Error(Errc::InvariantBreach, "knapsack rounding lost more than one item");
  }

  std::vector<bool> merged(partition.size(), false);
  merged[part] = true;
  std::vector<int> chosen_parts;
  for (int idx : selection.chosen) {
    merged[item_part[idx]] = true;
    chosen_parts.push_back(item_part[idx]);
  }

  PartitionMember grown;
  grown.edges = family_edges;
  std::vector<bool> covered(n, false);
  for (Vertex v = 0; v < n; ++v) {
    if (in_family[v] || merged[partition.index_of(v)]) {
      grown.vertices.push_back(v);
      covered[v] = true;
    }
  }
  for (int j = 0; j < partition.size(); ++j) {
    if (merged[j]) grown.edges += partition[j].edges;
  }

  std::vector<PartitionMember> members{std::move(grown)};
  for (int j = 0; j < partition.size(); ++j) {
    if (touched[j]) continue;
    members.push_back(partition[j]);
    for (Vertex v : partition[j].vertices) covered[v] = true;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!covered[v]) members.push_back(PartitionMember{{v}, {}, 0.0, 0.0});
  }
  EulerianPartition next(g, lp, std::move(members), partition.beta());

  // The grown member must be beta-light; check() covers every member.
  next.check(g);

  const double before = partition.potential();
  const double after = next.potential();
  const double required = epsilon * epsilon * lp.value * lp.value / (3.0 * n * n);
  if (after - before < required - rel_tol(lp.value * lp.value)) {
    throw Error(Errc::PotentialStalled, "potential grew by " + std::to_string(after - before) +
                                            " < " + std::to_string(required));
  }
  if (record != nullptr) {
    record->part = part;
    record->potential_before = before;
    record->potential_after = after;
    record->required_increase = required;
    record->knapsack_chosen = std::move(chosen_parts);
  }
  return next;
}

RunResult run(const Instance& g, const LpSolution& lp, MergeOptions options) {
  validate(g);
  if (!(options.epsilon > 0.0 && options.epsilon <= 1.0)) {
    throw Error(Errc::BadSpec, "epsilon must lie in (0, 1]");
  }
  if (!options.subroutine) options.subroutine = solve_lc;
  const int n = g.vertex_count();
  const double lb_total = lp.value;
  const double restart_limit = 3.0 * n * n / (options.epsilon * options.epsilon);

  RunReport report;
  report.lp_value = lb_total;
  report.epsilon = options.epsilon;
  report.mode = options.mode;
  report.bound = options.mode == MergeMode::Standard
                     ? (9.0 + 2.0 * options.epsilon) * options.alpha * lb_total
                     : (4.0 * options.alpha + 1.0) * lb_total;

  EulerianPartition partition = init_trivial(g, lp, 3.0 * options.alpha);
  partition.check(g);
  report.potential_trace.push_back(partition.potential());

  for (;;) {
    auto& epoch = report.epochs.emplace_back();
    EdgeMultiset e_star = partition.edges();
    std::set<int> marked;
    std::vector<int> marks;
    bool restarted = false;

    for (;;) {
      const ComponentView view = components(g, e_star);
      if (view.size() == 1) break;

      Partition lc_parts;
      for (const auto& comp : view.components) lc_parts.parts.push_back(comp.vertices);
      const EdgeMultiset f = strip_contained(g, view, options.subroutine(g, lp, lc_parts));

      UpdateResult update = update_phase(g, lp, partition, e_star, f, options);
      RepetitionRecord rep;
      rep.components_before = static_cast<int>(view.size());
      rep.cycles_added = update.cycles_added;
      rep.f_weight = weight_of(g, update.f_tilde);
      rep.x_weight = weight_of(g, update.x_tilde);
      rep.marks = update.marks;

      const ConditionResult condition =
          check_condition(g, lp, partition, update.f_tilde, options.epsilon);
      if (condition.violated) {
        rep.components_after = rep.components_before;
        epoch.push_back(std::move(rep));
        ReinitRecord record;
        partition = reinitialize(g, lp, partition, *condition.violated, condition.violating_family,
                                 options.epsilon, &record);
        report.reinits.push_back(std::move(record));
        report.potential_trace.push_back(partition.potential());
        ++report.restarts;
        if (report.restarts > restart_limit) {
          throw Error(Errc::RestartLimitExceeded, std::to_string(report.restarts) + " restarts");
        }
        restarted = true;
        break;
      }

      e_star += update.f_tilde;
      e_star += update.x_tilde;
      if (!is_balanced(g, e_star)) throw Error(Errc::InvariantBreach, "E* lost its Eulerian balance");
      rep.components_after = static_cast<int>(components(g, e_star).size());
      if (rep.components_after >= rep.components_before) {
        throw Error(Errc::NoProgress, "component count " + std::to_string(rep.components_before) +
                                          " -> " + std::to_string(rep.components_after));
      }
      for (const auto& mark : update.marks) {
        if (!marked.insert(mark.part).second) {
          throw Error(Errc::InvariantBreach, "partition member " + std::to_string(mark.part) +
                                                " marked twice");
        }
        if (mark.weight > mark.threshold + kWeightTol) {
          throw Error(Errc::InvariantBreach, "X-cycle heavier than its threshold");
        }
        marks.push_back(mark.part);
      }
      rep.accepted = true;
      epoch.push_back(std::move(rep));
      if (static_cast<int>(epoch.size()) > n - 1) {
        throw Error(Errc::InvariantBreach, "more than n - 1 merge repetitions");
      }
    }
    if (restarted) continue;

    report.merges = static_cast<int>(epoch.size());
    report.marks = std::move(marks);
    report.tour_weight = weight_of(g, e_star);
    report.ratio = lb_total > 0.0 ? report.tour_weight / lb_total : 1.0;
    if (report.tour_weight > report.bound + rel_tol(report.bound)) {
      throw Error(Errc::InvariantBreach, "tour weight " + std::to_string(report.tour_weight) +
                                             " exceeds certified bound " + std::to_string(report.bound));
    }
    // Connected and Eulerian, or this throws.
    (void)eulerian_circuit(g, e_star);
    return {std::move(e_star), std::move(report)};
  }
}

}  // namespace nwatsp
