// Copyright 2026 The preorder Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense bounded-variable primal simplex for small LPs of the form
//
//   maximize c'x  subject to  a_i'x <= b_i or a_i'x = b_i,  l <= x <= u.
//
// Nonbasic variables sit at a bound; a phase 1 on artificial variables finds a
// first basis when the lower bounds violate a row. Dantzig pricing is used
// until a run of degenerate pivots, then Bland's rule until progress resumes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "preorder/error.hpp"

namespace preorder {

enum class RowSense { kLessEqual, kEqual };

struct LinearRow {
  std::vector<std::pair<std::size_t, double>> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

class LinearProgram {
 public:
  LinearProgram() = default;
  explicit LinearProgram(std::size_t num_vars)
      : objective_(num_vars, 0.0), lower_(num_vars, 0.0), upper_(num_vars, 1.0) {}

  std::size_t num_vars() const { return objective_.size(); }
  std::size_t num_rows() const { return rows_.size(); }

  void set_objective(std::size_t j, double c) { objective_.at(j) = c; }
  void set_bounds(std::size_t j, double lo, double hi) {
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw InputError("variable bounds must be finite with lo <= hi");
    }
    lower_.at(j) = lo;
    upper_.at(j) = hi;
  }
  void add_row(LinearRow row) {
    for (const auto& [j, a] : row.terms) {
      if (j >= num_vars()) throw InputError("row references unknown variable");
      if (!std::isfinite(a)) throw InputError("row coefficients must be finite");
    }
    if (!std::isfinite(row.rhs)) throw InputError("row rhs must be finite");
    rows_.push_back(std::move(row));
  }

  const std::vector<double>& objective() const { return objective_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<LinearRow>& rows() const { return rows_; }

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<LinearRow> rows_;
};

enum class LpStatus { kOptimal, kInfeasible };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-6;
  double optimality_tolerance = 1e-9;
  // Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_limit = 50;
  // 0 selects a limit proportional to the tableau size.
  std::size_t max_iterations = 0;
};

namespace detail {

class BoundedTableau {
 public:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  BoundedTableau(const LinearProgram& lp, const SimplexOptions& options)
      : options_(options), nv_(lp.num_vars()), m_(lp.num_rows()) {
    const auto& rows = lp.rows();
    std::size_t slacks = 0;
    for (const auto& row : rows) slacks += row.sense == RowSense::kLessEqual;

    // Residual rhs after shifting every structural variable to its lower bound.
    std::vector<double> residual(m_);
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      double r = rows[i].rhs;
      for (const auto& [j, a] : rows[i].terms) r -= a * lp.lower()[j];
      residual[i] = r;
      if (rows[i].sense == RowSense::kEqual || r < 0.0) ++artificials;
    }

    ncol_ = nv_ + slacks + artificials;
    first_artificial_ = nv_ + slacks;
    a_.assign(m_ * ncol_, 0.0);
    beta_.assign(m_, 0.0);
    basis_.assign(m_, 0);
    basic_row_.assign(ncol_, kNonbasic);
    at_upper_.assign(ncol_, 0);
    upper_.assign(ncol_, kInf);
    for (std::size_t j = 0; j < nv_; ++j) upper_[j] = lp.upper()[j] - lp.lower()[j];

    std::size_t next_slack = nv_;
    std::size_t next_art = first_artificial_;
    for (std::size_t i = 0; i < m_; ++i) {
      double* row = &a_[i * ncol_];
      for (const auto& [j, a] : rows[i].terms) row[j] += a;
      std::size_t slack = ncol_;
      if (rows[i].sense == RowSense::kLessEqual) {
        slack = next_slack++;
        row[slack] = 1.0;
      }
      const bool needs_art = rows[i].sense == RowSense::kEqual || residual[i] < 0.0;
      if (!needs_art) {
        set_basic(i, slack, residual[i]);
        continue;
      }
      if (residual[i] < 0.0) {
        for (std::size_t j = 0; j < ncol_; ++j) row[j] = -row[j];
        residual[i] = -residual[i];
      }
      const std::size_t art = next_art++;
      row[art] = 1.0;
      set_basic(i, art, residual[i]);
    }

    max_iterations_ = options_.max_iterations != 0
                          ? options_.max_iterations
                          : 200 * (m_ + ncol_) + 1000;
  }

  LpSolution solve(const LinearProgram& lp) {
    LpSolution out;
    if (first_artificial_ < ncol_) {
      std::vector<double> phase1(ncol_, 0.0);
      for (std::size_t j = first_artificial_; j < ncol_; ++j) phase1[j] = -1.0;
      optimize(phase1);
      double infeasibility = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= first_artificial_) infeasibility += std::max(0.0, beta_[i]);
      }
      if (infeasibility > options_.feasibility_tolerance) {
        out.status = LpStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      for (std::size_t j = first_artificial_; j < ncol_; ++j) upper_[j] = 0.0;
    }
    std::vector<double> cost(ncol_, 0.0);
    for (std::size_t j = 0; j < nv_; ++j) cost[j] = lp.objective()[j];
    optimize(cost);

    out.status = LpStatus::kOptimal;
    out.iterations = iterations_;
    out.x.resize(nv_);
    for (std::size_t j = 0; j < nv_; ++j) {
      double y = basic_row_[j] != kNonbasic ? beta_[basic_row_[j]]
                                            : (at_upper_[j] ? upper_[j] : 0.0);
      y = std::clamp(y, 0.0, upper_[j]);
      out.x[j] = lp.lower()[j] + y;
    }
    out.value = 0.0;
    for (std::size_t j = 0; j < nv_; ++j) out.value += lp.objective()[j] * out.x[j];
    check_feasible(lp, out.x);
    return out;
  }

 private:
  static constexpr std::size_t kNonbasic = static_cast<std::size_t>(-1);

  void set_basic(std::size_t row, std::size_t col, double value) {
    basis_[row] = col;
    basic_row_[col] = row;
    beta_[row] = value;
  }

  double value_of(std::size_t j) const {
    if (basic_row_[j] != kNonbasic) return beta_[basic_row_[j]];
    return at_upper_[j] ? upper_[j] : 0.0;
  }

  void optimize(const std::vector<double>& cost) {
    // Reduced costs d_j = cost_j - sum_i cost_{B_i} a_ij.
    d_.assign(cost.begin(), cost.end());
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &a_[i * ncol_];
      for (std::size_t j = 0; j < ncol_; ++j) d_[j] -= cb * row[j];
    }
    std::size_t degenerate_run = 0;
    while (true) {
      if (++iterations_ > max_iterations_) {
        throw NumericalError("simplex iteration limit reached");
      }
      const bool bland = degenerate_run >= options_.degenerate_limit;
      const std::size_t q = choose_entering(bland);
      if (q == ncol_) return;
      const double sigma = at_upper_[q] ? -1.0 : 1.0;

      double theta = upper_[q];
      std::size_t leave = m_;
      bool leave_to_upper = false;
      double best_alpha = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = sigma * a_[i * ncol_ + q];
        double t;
        bool to_upper;
        if (alpha > options_.pivot_tolerance) {
          t = beta_[i] / alpha;
          to_upper = false;
        } else if (alpha < -options_.pivot_tolerance && upper_[basis_[i]] < kInf) {
          t = (upper_[basis_[i]] - beta_[i]) / -alpha;
          to_upper = true;
        } else {
          continue;
        }
        t = std::max(t, 0.0);
        bool better = t < theta;
        if (!better && t == theta && leave != m_) {
          better = bland ? basis_[i] < basis_[leave]
                         : std::abs(alpha) > std::abs(best_alpha);
        }
        if (better) {
          theta = t;
          leave = i;
          leave_to_upper = to_upper;
          best_alpha = alpha;
        }
      }
      if (theta == kInf) throw std::logic_error("LP is unbounded");
      degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;

      const double entering_value = value_of(q) + sigma * theta;
      for (std::size_t i = 0; i < m_; ++i) {
        beta_[i] -= sigma * theta * a_[i * ncol_ + q];
      }
      if (leave == m_) {
        at_upper_[q] = at_upper_[q] ? 0 : 1;
        continue;
      }
      const std::size_t old = basis_[leave];
      basic_row_[old] = kNonbasic;
      at_upper_[old] = leave_to_upper ? 1 : 0;
      at_upper_[q] = 0;
      set_basic(leave, q, entering_value);
      pivot(leave, q);
    }
  }

  std::size_t choose_entering(bool bland) const {
    std::size_t best = ncol_;
    double best_score = 0.0;
    for (std::size_t j = 0; j < ncol_; ++j) {
      if (basic_row_[j] != kNonbasic || upper_[j] <= 0.0) continue;
      const double dj = d_[j];
      const bool improving = at_upper_[j] ? dj < -options_.optimality_tolerance
                                          : dj > options_.optimality_tolerance;
      if (!improving) continue;
      if (bland) return j;
      if (std::abs(dj) > best_score) {
        best_score = std::abs(dj);
        best = j;
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t q) {
    double* prow = &a_[r * ncol_];
    const double inv = 1.0 / prow[q];
    for (std::size_t j = 0; j < ncol_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &a_[i * ncol_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < ncol_; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    const double f = d_[q];
    if (f != 0.0) {
      for (std::size_t j = 0; j < ncol_; ++j) d_[j] -= f * prow[j];
      d_[q] = 0.0;
    }
  }

  void check_feasible(const LinearProgram& lp, const std::vector<double>& x) const {
    for (const auto& row : lp.rows()) {
      double lhs = 0.0;
      for (const auto& [j, a] : row.terms) lhs += a * x[j];
      const double slack = row.rhs - lhs;
      const double tol = options_.feasibility_tolerance * std::max(1.0, std::abs(row.rhs));
      const bool ok = row.sense == RowSense::kEqual ? std::abs(slack) <= tol
                                                    : slack >= -tol;
      if (!ok) throw NumericalError("simplex returned a point violating a row");
    }
  }

  SimplexOptions options_;
  std::size_t nv_;
  std::size_t m_;
  std::size_t ncol_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<double> a_;
  std::vector<double> beta_;
  std::vector<double> d_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> basic_row_;
  std::vector<char> at_upper_;
  std::vector<double> upper_;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
};

}  // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {}) {
  detail::BoundedTableau tableau(lp, options);
  return tableau.solve(lp);
}

}  // namespace preorder
