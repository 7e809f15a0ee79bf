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

// Greedy arc fixation. Every pair starts unfixed. Each step fixes the unfixed
// pair whose larger induced cost is maximal: to 1 if the cost of excluding it
// (ice) exceeds the cost of inserting it (ici), otherwise to 0. A fixed pair's
// value becomes +inf (fixed to 1) or -inf (fixed to 0), which forces the
// remaining decisions to be consistent with transitivity.
//
// For an unfixed pair ij with effective values c~:
//   ice(ij) = max(0, c~_ij) + sum_k max(0, min(c~_ik, c~_kj))
//   ici(ij) = max(0, -c~_ij)
//           + sum_k [max(0, min(c~_ki, -c~_kj)) + max(0, min(c~_jk, -c~_ik))]
// with k ranging over V \ {i, j}.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "preorder/core.hpp"
#include "preorder/error.hpp"
#include "preorder/extended_real.hpp"

namespace preorder {

enum class FixStatus : std::int8_t { kUnfixed, kFixed0, kFixed1 };

struct InducedCosts {
  ExtendedReal ice;
  ExtendedReal ici;
};

struct Fixation {
  Pair pair;
  bool value = false;
  ExtendedReal ice;
  ExtendedReal ici;
};

struct GafOptions {
  // Compare the incrementally maintained costs with a full re-evaluation after
  // every fixation; throws std::logic_error on disagreement.
  bool cross_check = false;
  double cross_check_tolerance = 1e-9;
};

class FixationState {
 public:
  explicit FixationState(const Instance& inst)
      : n_(inst.size()),
        effective_(n_ * n_),
        status_(n_ * n_, FixStatus::kUnfixed),
        ice_(n_ * n_),
        ici_(n_ * n_),
        version_(n_ * n_, 0) {
    for (NodeId i = 0; i < n_; ++i) {
      for (NodeId j = 0; j < n_; ++j) effective_[i * n_ + j] = inst(i, j);
    }
    for (NodeId a = 0; a < n_; ++a) {
      for (NodeId b = 0; b < n_; ++b) {
        if (a == b) continue;
        for (NodeId k = 0; k < n_; ++k) {
          if (k == a || k == b) continue;
          const InducedCosts t = term(a, b, k);
          ice_[a * n_ + b].add(t.ice);
          ici_[a * n_ + b].add(t.ici);
        }
      }
    }
  }

  std::size_t size() const { return n_; }
  FixStatus status(NodeId i, NodeId j) const { return status_[i * n_ + j]; }
  const ExtendedReal& effective(NodeId i, NodeId j) const {
    return effective_[i * n_ + j];
  }

  // Induced costs evaluated directly from the effective values.
  InducedCosts induced_costs(Pair p) const {
    check_unfixed(p);
    NonnegativeSum ice, ici;
    for (NodeId k = 0; k < n_; ++k) {
      if (k == p.tail || k == p.head) continue;
      const InducedCosts t = term(p.tail, p.head, k);
      ice.add(t.ice);
      ici.add(t.ici);
    }
    return with_own_terms(p, ice, ici);
  }

  // Induced costs from the incrementally maintained sums.
  InducedCosts maintained_costs(Pair p) const {
    check_unfixed(p);
    const std::size_t idx = p.tail * n_ + p.head;
    return with_own_terms(p, ice_[idx], ici_[idx]);
  }

  // Fixes p and updates the sums of every pair whose costs reference c~_p:
  // pairs leaving or entering i or j.
  void fix(Pair p, bool value) {
    check_unfixed(p);
    const NodeId i = p.tail;
    const NodeId j = p.head;
    std::vector<std::pair<Pair, NodeId>> touched;
    touched.reserve(4 * n_);
    for (NodeId v = 0; v < n_; ++v) {
      if (v == i || v == j) continue;
      touched.push_back({{i, v}, j});
      touched.push_back({{j, v}, i});
      touched.push_back({{v, j}, i});
      touched.push_back({{v, i}, j});
    }
    for (const auto& [q, k] : touched) {
      const InducedCosts t = term(q.tail, q.head, k);
      ice_[q.tail * n_ + q.head].remove(t.ice);
      ici_[q.tail * n_ + q.head].remove(t.ici);
    }
    status_[i * n_ + j] = value ? FixStatus::kFixed1 : FixStatus::kFixed0;
    effective_[i * n_ + j] = value ? ExtendedReal::pos_inf() : ExtendedReal::neg_inf();
    ++version_[i * n_ + j];
    for (const auto& [q, k] : touched) {
      const InducedCosts t = term(q.tail, q.head, k);
      ice_[q.tail * n_ + q.head].add(t.ice);
      ici_[q.tail * n_ + q.head].add(t.ici);
      ++version_[q.tail * n_ + q.head];
    }
    last_touched_.clear();
    for (const auto& [q, k] : touched) last_touched_.push_back(q);
  }

  // Pairs whose costs changed in the most recent fix().
  const std::vector<Pair>& last_touched() const { return last_touched_; }
  std::uint32_t version(Pair p) const { return version_[p.tail * n_ + p.head]; }

 private:
  void check_unfixed(Pair p) const {
    if (p.tail >= n_ || p.head >= n_ || p.tail == p.head) {
      throw InputError("invalid pair for induced costs");
    }
    if (status_[p.tail * n_ + p.head] != FixStatus::kUnfixed) {
      throw InputError("induced costs queried for a fixed pair");
    }
  }

  // Contribution of third node k to the costs of pair (a, b).
  InducedCosts term(NodeId a, NodeId b, NodeId k) const {
    const ExtendedReal& c_ak = effective_[a * n_ + k];
    const ExtendedReal& c_kb = effective_[k * n_ + b];
    const ExtendedReal& c_ka = effective_[k * n_ + a];
    const ExtendedReal& c_bk = effective_[b * n_ + k];
    const ExtendedReal ice = positive_part(min(c_ak, c_kb));
    const ExtendedReal ici_in = positive_part(min(c_ka, -c_kb));
    const ExtendedReal ici_out = positive_part(min(c_bk, -c_ak));
    ExtendedReal ici;
    if (ici_in.is_pos_inf() || ici_out.is_pos_inf()) {
      ici = ExtendedReal::pos_inf();
    } else {
      ici = ExtendedReal(ici_in.value() + ici_out.value());
    }
    return {ice, ici};
  }

  InducedCosts with_own_terms(Pair p, NonnegativeSum ice, NonnegativeSum ici) const {
    const ExtendedReal& own = effective_[p.tail * n_ + p.head];
    ice.add(positive_part(own));
    ici.add(positive_part(-own));
    return {ice.total(), ici.total()};
  }

  std::size_t n_;
  std::vector<ExtendedReal> effective_;
  std::vector<FixStatus> status_;
  std::vector<NonnegativeSum> ice_;
  std::vector<NonnegativeSum> ici_;
  std::vector<std::uint32_t> version_;
  std::vector<Pair> last_touched_;
};

// Induced costs of an unfixed pair.
inline InducedCosts induced_costs(const FixationState& state, Pair p) {
  return state.induced_costs(p);
}

struct GafResult {
  Relation relation;
  RunReport report;
  std::vector<Fixation> trace;
};

namespace detail {

struct GafQueueEntry {
  ExtendedReal key;
  std::size_t pair_index;
  std::uint32_t version;
};

// Max-heap order: larger key first, then smaller canonical pair index.
struct GafQueueLess {
  bool operator()(const GafQueueEntry& a, const GafQueueEntry& b) const {
    if (a.key < b.key) return true;
    if (b.key < a.key) return false;
    return a.pair_index > b.pair_index;
  }
};

inline bool nearly_equal(const ExtendedReal& a, const ExtendedReal& b, double tol) {
  if (a.kind() != b.kind()) return false;
  if (!a.is_finite()) return true;
  return std::abs(a.value() - b.value()) <= tol * std::max(1.0, std::abs(a.value()));
}

}  // namespace detail

inline GafResult run_gaf(const Instance& inst, const GafOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = inst.size();
  FixationState state(inst);

  std::priority_queue<detail::GafQueueEntry, std::vector<detail::GafQueueEntry>,
                      detail::GafQueueLess>
      queue;
  auto push = [&](Pair p) {
    const InducedCosts costs = state.maintained_costs(p);
    queue.push({max(costs.ice, costs.ici), pair_index(n, p.tail, p.head),
                state.version(p)});
  };
  for (std::size_t p = 0; p < pair_count(n); ++p) push(pair_from_index(n, p));

  GafResult result{Relation::identity(n), {}, {}};
  result.trace.reserve(pair_count(n));
  while (!queue.empty()) {
    const detail::GafQueueEntry top = queue.top();
    queue.pop();
    const Pair p = pair_from_index(n, top.pair_index);
    if (state.status(p.tail, p.head) != FixStatus::kUnfixed ||
        state.version(p) != top.version) {
      continue;
    }
    const InducedCosts costs = state.maintained_costs(p);
    const bool value = costs.ici < costs.ice;
    result.trace.push_back({p, value, costs.ice, costs.ici});
    state.fix(p, value);
    if (value) result.relation.set(p.tail, p.head);
    for (const Pair& q : state.last_touched()) {
      if (state.status(q.tail, q.head) == FixStatus::kUnfixed) push(q);
    }
    if (options.cross_check) {
      for (std::size_t idx = 0; idx < pair_count(n); ++idx) {
        const Pair q = pair_from_index(n, idx);
        if (state.status(q.tail, q.head) != FixStatus::kUnfixed) continue;
        const InducedCosts a = state.maintained_costs(q);
        const InducedCosts b = state.induced_costs(q);
        if (!detail::nearly_equal(a.ice, b.ice, options.cross_check_tolerance) ||
            !detail::nearly_equal(a.ici, b.ici, options.cross_check_tolerance)) {
          throw std::logic_error("incremental induced costs diverged");
        }
      }
    }
  }

  if (!verify_preorder(result.relation)) {
    throw std::logic_error("greedy arc fixation produced an infeasible relation");
  }
  result.report.algorithm = "gaf";
  result.report.iterations = result.trace.size();
  finalize_report(inst, result.relation, result.report);
  result.report.objective_trace.push_back(result.report.objective);
  result.report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace preorder
