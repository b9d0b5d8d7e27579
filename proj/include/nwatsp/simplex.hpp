// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

namespace nwatsp {

// Dense-tableau dual simplex for
//
//   minimize c.x  subject to  A x <= b,  x >= 0,   with c >= 0.
//
// Every row gets a slack; the all-slack basis is dual feasible because c >= 0,
// so the dual simplex runs from the first solve onward and rows added later
// (cutting planes) are absorbed without leaving dual feasibility. Pivot
// selection follows Bland's rule on both sides, so results are deterministic
// and the method cannot cycle.
class DualSimplex {
 public:
  enum class Status { Optimal, Infeasible, IterationLimit };

  explicit DualSimplex(std::vector<double> costs, double tol = 1e-9);

  int structural_count() const { return structural_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  long long pivot_count() const { return pivots_; }

  // Adds the row sum_j coeff_j x_j <= rhs; valid before or after solve().
  void add_row(const std::vector<std::pair<int, double>>& coeffs, double rhs);

  Status solve(long long max_pivots = 1'000'000);

  // Values of the structural variables at the current basis.
  std::vector<double> primal() const;
  double objective() const { return objective_; }

 private:
  void pivot(int row, int col);

  int structural_;
  double tol_;
  std::vector<double> costs_;
  std::vector<std::vector<double>> rows_;  // tableau rows over all columns
  std::vector<double> rhs_;
  std::vector<int> basis_;                 // basic column per row
  std::vector<int> row_of_;                // basic row per column, -1 if nonbasic
  std::vector<double> reduced_;            // reduced costs per column
  double objective_ = 0.0;
  long long pivots_ = 0;
};

}  // namespace nwatsp
