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

// Greedy arc insertion: starting from a feasible relation, repeatedly insert
// the pair whose insertion, together with every pair it forces by
// transitivity, increases the objective the most.

#include <chrono>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "preorder/core.hpp"
#include "preorder/error.hpp"

namespace preorder {

// g_ij = sum over k, l of c_kl (1 - x_kl) x_ki x_jl, the exact objective change
// of insert_with_closure(x, ij). Entries for related pairs are zero.
class GainTable {
 public:
  GainTable() = default;
  GainTable(std::size_t n, std::vector<double> gains)
      : n_(n), gains_(std::move(gains)) {}

  std::size_t size() const { return n_; }
  double operator()(NodeId i, NodeId j) const { return gains_[i * n_ + j]; }
  std::span<const double> row(NodeId i) const {
    return {gains_.data() + i * n_, n_};
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> gains_;
};

namespace detail {

// Two sparse passes over the 0/1 matrix:
//   h_kj = sum_{l : x_jl = 1} m_kl          with m = c (.) (1 - x)
//   g_ij = sum_{k : x_ki = 1} h_kj
// Each cell is summed in a fixed index order, so the result is deterministic.
inline GainTable compute_gains(const Instance& inst, const Relation& rel) {
  const std::size_t n = inst.size();
  // masked_t[l][k] = c_kl if x_kl = 0 else 0
  std::vector<double> masked_t(n * n, 0.0);
  for (NodeId k = 0; k < n; ++k) {
    const auto row = inst.row(k);
    for (NodeId l = 0; l < n; ++l) {
      if (!rel.test(k, l)) masked_t[l * n + k] = row[l];
    }
  }
  // h_t[j][k] = h_kj
  std::vector<double> h_t(n * n, 0.0);
  for (NodeId j = 0; j < n; ++j) {
    double* dst = h_t.data() + j * n;
    rel.for_each_in_row(j, [&](NodeId l) {
      const double* src = masked_t.data() + l * n;
      for (NodeId k = 0; k < n; ++k) dst[k] += src[k];
    });
  }
  masked_t.clear();
  masked_t.shrink_to_fit();
  std::vector<double> h(n * n);
  for (NodeId j = 0; j < n; ++j) {
    for (NodeId k = 0; k < n; ++k) h[k * n + j] = h_t[j * n + k];
  }
  h_t.clear();
  h_t.shrink_to_fit();

  const Relation pred = rel.transposed();
  std::vector<double> g(n * n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    double* dst = g.data() + i * n;
    pred.for_each_in_row(i, [&](NodeId k) {
      const double* src = h.data() + k * n;
      for (NodeId j = 0; j < n; ++j) dst[j] += src[j];
    });
    rel.for_each_in_row(i, [&](NodeId j) { dst[j] = 0.0; });
  }
  return GainTable(n, std::move(g));
}

// x_kl := 1 for all k with x_ki = 1 and l with x_jl = 1.
inline void insert_in_place(Relation& rel, NodeId i, NodeId j) {
  const std::size_t n = rel.size();
  std::vector<NodeId> preds;
  for (NodeId k = 0; k < n; ++k) {
    if (rel.test(k, i)) preds.push_back(k);
  }
  for (NodeId k : preds) rel.merge_row(k, j);
}

}  // namespace detail

inline GainTable gain_matrix(const Instance& inst, const Relation& rel) {
  detail::require_same_size(inst, rel);
  if (!verify_preorder(rel)) throw InputError("gain_matrix requires a preorder");
  return detail::compute_gains(inst, rel);
}

// Inserts ij and every pair kl with x_ki = x_jl = 1.
inline Relation insert_with_closure(const Relation& rel, Pair p) {
  if (p.tail >= rel.size() || p.head >= rel.size() || p.tail == p.head) {
    throw InputError("invalid pair for insertion");
  }
  if (rel.test(p.tail, p.head)) throw InputError("pair is already related");
  if (!verify_preorder(rel)) {
    throw InputError("insert_with_closure requires a preorder");
  }
  Relation out = rel;
  detail::insert_in_place(out, p.tail, p.head);
  return out;
}

struct GaiOptions {
  // Insertions need gain strictly above this threshold.
  double min_gain = 0.0;
  std::size_t max_iterations = std::numeric_limits<std::size_t>::max();
};

inline SolveResult run_gai(const Instance& inst, const Relation& init,
                           const GaiOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::require_same_size(inst, init);
  if (!verify_preorder(init)) throw InputError("run_gai requires a feasible start");
  const std::size_t n = inst.size();

  SolveResult result{init, {}};
  result.report.algorithm = "gai";
  result.report.objective_trace.push_back(evaluate_objective(inst, init));
  std::size_t iterations = 0;
  while (iterations < options.max_iterations) {
    const GainTable gains = detail::compute_gains(inst, result.relation);
    double best = options.min_gain;
    Pair best_pair{n, n};
    for (NodeId i = 0; i < n; ++i) {
      const auto row = gains.row(i);
      for (NodeId j = 0; j < n; ++j) {
        if (j != i && !result.relation.test(i, j) && row[j] > best) {
          best = row[j];
          best_pair = {i, j};
        }
      }
    }
    if (best_pair.tail == n) break;
    Relation next = result.relation;
    detail::insert_in_place(next, best_pair.tail, best_pair.head);
    // Guards strict ascent against rounding in the computed gain.
    const double value = evaluate_objective(inst, next);
    if (!(value > result.report.objective_trace.back())) break;
    result.relation = std::move(next);
    ++iterations;
    result.report.objective_trace.push_back(value);
  }
  result.report.iterations = iterations;
  finalize_report(inst, result.relation, result.report);
  result.report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace preorder
