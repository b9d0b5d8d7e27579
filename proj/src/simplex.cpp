// SPDX-License-Identifier: Apache-2.0
#include "nwatsp/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace nwatsp {

DualSimplex::DualSimplex(std::vector<double> costs, double tol)
    : structural_(static_cast<int>(costs.size())), tol_(tol), costs_(std::move(costs)) {
  for (double c : costs_) {
    if (c < 0.0) throw std::invalid_argument("DualSimplex requires nonnegative costs");
  }
  reduced_ = costs_;
  row_of_.assign(structural_, -1);
}

void DualSimplex::add_row(const std::vector<std::pair<int, double>>& coeffs, double rhs) {
  const int slack = static_cast<int>(reduced_.size());
  for (auto& row : rows_) row.push_back(0.0);
  reduced_.push_back(0.0);
  row_of_.push_back(-1);

  std::vector<double> row(slack + 1, 0.0);
  for (const auto& [j, a] : coeffs) {
    if (j < 0 || j >= structural_) throw std::out_of_range("DualSimplex::add_row column");
    row[j] += a;
  }
  row[slack] = 1.0;

  // Express the new row in terms of the current nonbasic columns.
  for (int j = 0; j < slack; ++j) {
    const int r = row_of_[j];
    if (r < 0 || row[j] == 0.0) continue;
    const double factor = row[j];
    const auto& basic_row = rows_[r];
    for (std::size_t c = 0; c < basic_row.size(); ++c) {
      if (basic_row[c] != 0.0) row[c] -= factor * basic_row[c];
    }
    row[j] = 0.0;
    rhs -= factor * rhs_[r];
  }

  rows_.push_back(std::move(row));
  rhs_.push_back(rhs);
  basis_.push_back(slack);
  row_of_[slack] = static_cast<int>(rows_.size()) - 1;
}

void DualSimplex::pivot(int r, int c) {
  auto& prow = rows_[r];
  const double inv = 1.0 / prow[c];
  for (double& a : prow) a *= inv;
  prow[c] = 1.0;
  rhs_[r] *= inv;

  std::vector<int> nz;
  nz.reserve(prow.size());
  for (int j = 0; j < static_cast<int>(prow.size()); ++j) {
    if (prow[j] != 0.0) nz.push_back(j);
  }
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
    if (i == r) continue;
    auto& row = rows_[i];
    const double factor = row[c];
    if (factor == 0.0) continue;
    for (int j : nz) row[j] -= factor * prow[j];
    row[c] = 0.0;
    rhs_[i] -= factor * rhs_[r];
  }
  const double dc = reduced_[c];
  if (dc != 0.0) {
    for (int j : nz) reduced_[j] -= dc * prow[j];
    reduced_[c] = 0.0;
    objective_ += dc * rhs_[r];
  }

  row_of_[basis_[r]] = -1;
  basis_[r] = c;
  row_of_[c] = r;
  ++pivots_;
}

DualSimplex::Status DualSimplex::solve(long long max_pivots) {
  for (long long iter = 0;; ++iter) {
    // Leaving row: primal infeasible row whose basic column has the smallest index.
    int leave = -1;
    for (int r = 0; r < row_count(); ++r) {
      if (rhs_[r] < -tol_ && (leave < 0 || basis_[r] < basis_[leave])) leave = r;
    }
    if (leave < 0) return Status::Optimal;
    if (iter >= max_pivots) return Status::IterationLimit;

    const auto& row = rows_[leave];
    int enter = -1;
    double best = 0.0;
    for (int j = 0; j < static_cast<int>(row.size()); ++j) {
      if (row_of_[j] >= 0 || row[j] >= -tol_) continue;
      const double ratio = std::max(reduced_[j], 0.0) / -row[j];
      if (enter < 0 || ratio < best - tol_) {
        enter = j;
        best = ratio;
      }
    }
    if (enter < 0) return Status::Infeasible;
    pivot(leave, enter);
  }
}

std::vector<double> DualSimplex::primal() const {
  std::vector<double> x(structural_, 0.0);
  for (int r = 0; r < row_count(); ++r) {
    if (basis_[r] < structural_) x[basis_[r]] = rhs_[r];
  }
  return x;
}

}  // namespace nwatsp
