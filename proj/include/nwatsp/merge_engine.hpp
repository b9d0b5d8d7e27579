// SPDX-License-Identifier: Apache-2.0
#pragma once

// Local-to-global merge procedure. Starting from the trivial Eulerian
// partition, repeatedly call an alpha-light Local-Connectivity subroutine on
// the components of the current Eulerian set E*, grow E* through the update
// phase (with connecting X-cycles), and reinitialize the partition whenever
// the F-lower-bound condition fails. Every proved guarantee is asserted at
// runtime; a failed assertion throws an invariant-breach Error.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nwatsp/graph.hpp"
#include "nwatsp/held_karp.hpp"
#include "nwatsp/knapsack.hpp"
#include "nwatsp/local_connectivity.hpp"

namespace nwatsp {

enum class MergeMode { Standard, NwCycleRule };

std::string_view to_string(MergeMode mode);
MergeMode parse_merge_mode(std::string_view text);  // throws BadSpec

struct PartitionMember {
  std::vector<Vertex> vertices;  // ascending
  EdgeMultiset edges;
  double lb = 0.0;
  double weight = 0.0;
};

// Disjoint connected Eulerian subgraphs covering V, ordered by lb descending
// with ties broken by smallest contained vertex.
class EulerianPartition {
 public:
  EulerianPartition(const Instance& instance, const LpSolution& lp,
                    std::vector<PartitionMember> members, double beta);

  int size() const { return static_cast<int>(members_.size()); }
  const PartitionMember& operator[](int i) const { return members_[i]; }
  std::span<const PartitionMember> members() const { return members_; }
  double beta() const { return beta_; }
  int index_of(Vertex v) const { return index_of_[v]; }

  // Sum over members of lb^2.
  double potential() const;
  // Union of member edge sets.
  EdgeMultiset edges() const;

  // Throws LightnessBreach / InvariantBreach unless every member is connected,
  // Eulerian and beta-light.
  void check(const Instance& instance) const;

 private:
  std::vector<PartitionMember> members_;
  std::vector<int> index_of_;
  double beta_;
};

EulerianPartition init_trivial(const Instance& instance, const LpSolution& lp, double beta = 9.0);

// Lowest partition index intersecting a nonempty vertex set.
int low(const EulerianPartition& partition, std::span<const Vertex> vertices);

struct Cycle {
  EdgeMultiset edges;
  double weight = 0.0;
};

// Cheapest cycle formed by an edge (u,v) leaving the masked component plus a
// shortest v->u path, if its weight is at most threshold.
std::optional<Cycle> find_connecting_cycle(const Instance& instance,
                                           const std::vector<bool>& component_mask,
                                           double threshold);

struct MarkRecord {
  int part = 0;          // index of low(G~) when the cycle was added
  double weight = 0.0;
  double threshold = 0.0;
};

struct UpdateResult {
  std::vector<Vertex> selected;  // vertex set of the final component G~_t
  EdgeMultiset f_tilde;          // F restricted to G~_t
  EdgeMultiset x_tilde;          // X restricted to G~_t
  std::vector<MarkRecord> marks;  // X-cycles inside G~_t
  int cycles_added = 0;          // all X-cycles of the phase
};

struct MergeOptions {
  double epsilon = 0.25;
  MergeMode mode = MergeMode::Standard;
  double alpha = 3.0;
  // Alpha-light subroutine; defaults to the node-weighted 3-light algorithm.
  std::function<EdgeMultiset(const Instance&, const LpSolution&, const Partition&)> subroutine;
};

// X-cycle acceptance threshold for a component whose low member has lb `low_lb`.
double cycle_threshold(const MergeOptions& options, double low_lb, double lb_total, int n);

// Drops components of F that lie entirely inside one component of E*.
EdgeMultiset strip_contained(const Instance& instance, const ComponentView& e_star_view,
                             const EdgeMultiset& f);

UpdateResult update_phase(const Instance& instance, const LpSolution& lp,
                          const EulerianPartition& partition, const EdgeMultiset& e_star,
                          const EdgeMultiset& f, const MergeOptions& options);

// Nontrivial components of F~_t grouped by their low index.
std::vector<std::vector<Component>> lc_family(const Instance& instance,
                                              const EulerianPartition& partition,
                                              const EdgeMultiset& f_tilde);

struct ConditionResult {
  std::vector<double> family_lb;  // lb(F_i) per partition index
  std::vector<double> bound;      // 3 lb(H*_i) + eps lb(V) / n
  std::optional<int> violated;    // smallest violating index
  std::vector<Component> violating_family;
};

ConditionResult check_condition(const Instance& instance, const LpSolution& lp,
                                const EulerianPartition& partition, const EdgeMultiset& f_tilde,
                                double epsilon);

struct ReinitRecord {
  int part = 0;
  double potential_before = 0.0;
  double potential_after = 0.0;
  double required_increase = 0.0;
  std::vector<int> knapsack_chosen;  // partition indices merged via the knapsack
};

EulerianPartition reinitialize(const Instance& instance, const LpSolution& lp,
                               const EulerianPartition& partition, int part,
                               const std::vector<Component>& family, double epsilon,
                               ReinitRecord* record = nullptr);

struct RepetitionRecord {
  int components_before = 0;
  int components_after = 0;
  int cycles_added = 0;
  double f_weight = 0.0;
  double x_weight = 0.0;
  std::vector<MarkRecord> marks;
  bool accepted = false;
};

struct RunReport {
  double lp_value = 0.0;
  double tour_weight = 0.0;
  double ratio = 0.0;
  int merges = 0;    // accepted repetitions of the final epoch
  int restarts = 0;
  std::vector<int> marks;              // marked partition indices, final epoch
  std::vector<double> potential_trace; // potential of every partition held
  double epsilon = 0.0;
  MergeMode mode = MergeMode::Standard;
  double bound = 0.0;                  // certified upper bound on tour_weight

  std::vector<std::vector<RepetitionRecord>> epochs;
  std::vector<ReinitRecord> reinits;
};

struct RunResult {
  EdgeMultiset tour;
  RunReport report;
};

RunResult run(const Instance& instance, const LpSolution& lp, MergeOptions options = {});

}  // namespace nwatsp
