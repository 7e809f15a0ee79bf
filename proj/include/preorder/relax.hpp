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

// LP upper bounds for the preordering problem. Variables are the pair values
// x_ij in [0, 1] indexed canonically; triangle inequalities
//   x_ij + x_jk - x_ik <= 1
// and odd closed walk inequalities, for a closed walk v_0 .. v_{k-1} with k odd,
//   sum_t (x_{v_t v_{t+1}} - x_{v_t v_{t+2}}) <= (k - 1) / 2   (indices mod k)
// are separated lazily and added in rounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "preorder/core.hpp"
#include "preorder/error.hpp"
#include "preorder/simplex.hpp"

namespace preorder {

enum class Mode { kPreorder, kClustering, kPartialOrder };

inline const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::kPreorder:
      return "preorder";
    case Mode::kClustering:
      return "clustering";
    case Mode::kPartialOrder:
      return "partial-order";
  }
  return "unknown";
}

class OddClosedWalk {
 public:
  explicit OddClosedWalk(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
    const std::size_t k = nodes_.size();
    if (k < 3 || k % 2 == 0) throw InputError("odd closed walk needs odd length >= 3");
    for (std::size_t t = 0; t < k; ++t) {
      if (nodes_[t] == nodes_[(t + 1) % k] || nodes_[t] == nodes_[(t + 2) % k]) {
        throw InputError("odd closed walk needs v_t != v_{t+1} and v_t != v_{t+2}");
      }
    }
  }

  std::size_t length() const { return nodes_.size(); }
  const std::vector<NodeId>& nodes() const { return nodes_; }

  // Aggregated row over n nodes; repeated pairs add up.
  LinearRow row(std::size_t n) const {
    std::map<std::size_t, double> coef;
    const std::size_t k = nodes_.size();
    for (std::size_t t = 0; t < k; ++t) {
      const NodeId a = nodes_[t];
      const NodeId b = nodes_[(t + 1) % k];
      const NodeId c = nodes_[(t + 2) % k];
      if (a >= n || b >= n || c >= n) throw InputError("walk node out of range");
      coef[pair_index(n, a, b)] += 1.0;
      coef[pair_index(n, a, c)] -= 1.0;
    }
    LinearRow r;
    for (const auto& [j, a] : coef) {
      if (a != 0.0) r.terms.emplace_back(j, a);
    }
    r.rhs = static_cast<double>((k - 1) / 2);
    return r;
  }

 private:
  std::vector<NodeId> nodes_;
};

inline LinearRow triangle_row(std::size_t n, NodeId i, NodeId j, NodeId k) {
  LinearRow r;
  r.terms = {{pair_index(n, i, j), 1.0},
             {pair_index(n, j, k), 1.0},
             {pair_index(n, i, k), -1.0}};
  std::sort(r.terms.begin(), r.terms.end());
  r.rhs = 1.0;
  return r;
}

struct Cut {
  LinearRow row;
  double violation = 0.0;
};

struct SeparationOptions {
  double violation_tolerance = 1e-6;
  std::size_t batch_cap = 500;
};

namespace detail {

inline double row_activity(const LinearRow& row, std::span<const double> x) {
  double lhs = 0.0;
  for (const auto& [j, a] : row.terms) lhs += a * x[j];
  return lhs;
}

// Canonical form for deduplication: sorted terms, sense, rhs.
using RowKey = std::pair<std::vector<std::pair<std::size_t, double>>,
                         std::pair<int, double>>;

inline RowKey row_key(const LinearRow& row) {
  auto terms = row.terms;
  std::sort(terms.begin(), terms.end());
  return {std::move(terms), {static_cast<int>(row.sense), row.rhs}};
}

// Most violated first; stable on the enumeration order otherwise.
inline std::vector<Cut> finish_cuts(std::vector<Cut> cuts,
                                    const SeparationOptions& options) {
  std::stable_sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
    return a.violation > b.violation;
  });
  if (cuts.size() > options.batch_cap) cuts.resize(options.batch_cap);
  return cuts;
}

inline std::size_t node_count_for(std::size_t num_vars) {
  std::size_t n = 1;
  while (pair_count(n) < num_vars) ++n;
  if (pair_count(n) != num_vars) throw InputError("point size is not n(n-1)");
  return n;
}

}  // namespace detail

// All triangle inequalities violated by more than the tolerance.
inline std::vector<Cut> separate_triangles(std::span<const double> x,
                                           const SeparationOptions& options = {}) {
  const std::size_t n = detail::node_count_for(x.size());
  std::vector<Cut> cuts;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (j == i) continue;
      const double xij = x[pair_index(n, i, j)];
      for (NodeId k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double v = xij + x[pair_index(n, j, k)] - x[pair_index(n, i, k)] - 1.0;
        if (v > options.violation_tolerance) cuts.push_back({triangle_row(n, i, j, k), v});
      }
    }
  }
  return detail::finish_cuts(std::move(cuts), options);
}

namespace detail {

// Odd closed walks of length 3 on distinct nodes, each cyclic rotation once
// (smallest node first).
inline void three_walk_cuts(std::size_t n, std::span<const double> x,
                            const SeparationOptions& options,
                            std::vector<Cut>& out) {
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      for (NodeId c = a + 1; c < n; ++c) {
        if (c == b) continue;
        const double lhs = x[pair_index(n, a, b)] + x[pair_index(n, b, c)] +
                           x[pair_index(n, c, a)] - x[pair_index(n, a, c)] -
                           x[pair_index(n, b, a)] - x[pair_index(n, c, b)];
        const double v = lhs - 1.0;
        if (v > options.violation_tolerance) {
          out.push_back({OddClosedWalk({a, b, c}).row(n), v});
        }
      }
    }
  }
}

// Shortest odd closed walks in the graph on ordered pairs: (a, b) -> (b, c)
// for c not in {a, b}, step weight max(0, 1/2 - x_ab + x_ac). A closed walk of
// length k with total weight below 1/2 violates its inequality; the clamped
// weights only overestimate, so every candidate is re-evaluated exactly.
inline void long_walk_cuts(std::size_t n, std::span<const double> x,
                           std::size_t max_k, const SeparationOptions& options,
                           std::vector<Cut>& out) {
  const std::size_t pairs = pair_count(n);
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(2 * pairs);
  std::vector<std::size_t> parent(2 * pairs);
  std::vector<std::uint32_t> steps(2 * pairs);
  std::set<RowKey> seen;
  using Item = std::pair<double, std::size_t>;

  auto weight = [&](NodeId a, NodeId b, NodeId c) {
    return std::max(0.0, 0.5 - x[pair_index(n, a, b)] + x[pair_index(n, a, c)]);
  };

  for (std::size_t source = 0; source < pairs; ++source) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    const std::size_t start = 2 * source;  // parity 0
    const std::size_t goal = 2 * source + 1;
    dist[start] = 0.0;
    steps[start] = 0;
    heap.push({0.0, start});
    while (!heap.empty()) {
      const auto [d, state] = heap.top();
      heap.pop();
      if (d > dist[state] || d >= 0.5) continue;
      if (state == goal) break;
      const std::size_t pidx = state / 2;
      const std::size_t parity = state % 2;
      const Pair p = pair_from_index(n, pidx);
      for (NodeId c = 0; c < n; ++c) {
        if (c == p.tail || c == p.head) continue;
        const std::size_t next = 2 * pair_index(n, p.head, c) + (parity ^ 1U);
        const double nd = d + weight(p.tail, p.head, c);
        if (nd < dist[next]) {
          dist[next] = nd;
          parent[next] = state;
          steps[next] = steps[state] + 1;
          heap.push({nd, next});
        }
      }
    }
    if (!(dist[goal] < 0.5)) continue;
    const std::size_t k = steps[goal];
    if (k < 5 || k > max_k) continue;
    // Walk nodes are the tails of the visited pairs.
    std::vector<NodeId> nodes;
    for (std::size_t s = goal; nodes.size() < k; s = parent[s]) {
      nodes.push_back(pair_from_index(n, s / 2).tail);
    }
    std::reverse(nodes.begin(), nodes.end());
    std::rotate(nodes.begin(), nodes.end() - 1, nodes.end());
    const OddClosedWalk walk(nodes);
    LinearRow row = walk.row(n);
    const double v = row_activity(row, x) - row.rhs;
    if (v > options.violation_tolerance && seen.insert(row_key(row)).second) {
      out.push_back({std::move(row), v});
    }
  }
}

}  // namespace detail

// Violated odd closed walk inequalities: exact for length 3, shortest-walk
// heuristic for lengths 5..max_k.
inline std::vector<Cut> separate_odd_closed_walks(std::span<const double> x,
                                                  std::size_t max_k,
                                                  const SeparationOptions& options = {}) {
  if (max_k < 3 || max_k % 2 == 0) throw InputError("max walk length must be odd and >= 3");
  const std::size_t n = detail::node_count_for(x.size());
  std::vector<Cut> cuts;
  detail::three_walk_cuts(n, x, options, cuts);
  if (max_k >= 5) {
    std::vector<Cut> longer;
    detail::long_walk_cuts(n, x, max_k, options, longer);
    std::set<detail::RowKey> have;
    for (const Cut& c : cuts) have.insert(detail::row_key(c.row));
    for (Cut& c : longer) {
      if (have.insert(detail::row_key(c.row)).second) cuts.push_back(std::move(c));
    }
  }
  return detail::finish_cuts(std::move(cuts), options);
}

// Per-variable fixing for branch-and-bound: -1 free, 0 or 1 fixed.
using Fixings = std::vector<std::int8_t>;

struct CuttingPlaneOptions {
  bool use_ocw = false;
  Mode mode = Mode::kPreorder;
  std::size_t max_walk_length = 3;
  std::size_t round_cap = 100;
  SeparationOptions separation;
  SimplexOptions simplex;
};

struct CuttingPlaneResult {
  bool feasible = true;
  double upper_bound = 0.0;
  std::size_t rounds = 0;
  bool round_cap_reached = false;
  std::size_t rows = 0;
  std::vector<double> x;
  // LP value after each solve; nonincreasing.
  std::vector<double> history;
};

// Solve, separate, add, repeat. The last LP value bounds the mode optimum
// (restricted to the fixings) from above.
inline CuttingPlaneResult cutting_plane_bound(const Instance& inst,
                                              const CuttingPlaneOptions& options = {},
                                              const Fixings* fixings = nullptr) {
  const std::size_t n = inst.size();
  const std::size_t vars = pair_count(n);
  CuttingPlaneResult result;
  if (vars == 0) {
    result.x.clear();
    result.history.push_back(0.0);
    return result;
  }
  LinearProgram lp(vars);
  for (std::size_t p = 0; p < vars; ++p) {
    const Pair pr = pair_from_index(n, p);
    lp.set_objective(p, inst(pr.tail, pr.head));
  }
  if (fixings != nullptr) {
    if (fixings->size() != vars) throw InputError("fixings size mismatch");
    for (std::size_t p = 0; p < vars; ++p) {
      if ((*fixings)[p] >= 0) {
        const double v = (*fixings)[p];
        lp.set_bounds(p, v, v);
      }
    }
  }
  std::set<detail::RowKey> pool;
  auto add = [&](LinearRow row) {
    if (pool.insert(detail::row_key(row)).second) lp.add_row(std::move(row));
  };
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const std::size_t ij = pair_index(n, i, j);
      const std::size_t ji = pair_index(n, j, i);
      if (options.mode == Mode::kClustering) {
        add({{{ij, 1.0}, {ji, -1.0}}, RowSense::kEqual, 0.0});
      } else if (options.mode == Mode::kPartialOrder) {
        add({{{ij, 1.0}, {ji, 1.0}}, RowSense::kLessEqual, 1.0});
      }
    }
  }

  while (true) {
    const LpSolution sol = solve_lp(lp, options.simplex);
    if (sol.status == LpStatus::kInfeasible) {
      result.feasible = false;
      result.rows = lp.num_rows();
      return result;
    }
    result.upper_bound = sol.value;
    result.x = sol.x;
    result.history.push_back(sol.value);

    std::vector<Cut> cuts = separate_triangles(sol.x, options.separation);
    if (cuts.empty() && options.use_ocw) {
      cuts = separate_odd_closed_walks(sol.x, options.max_walk_length, options.separation);
    }
    std::vector<LinearRow> fresh;
    for (Cut& c : cuts) {
      if (pool.count(detail::row_key(c.row)) == 0) fresh.push_back(std::move(c.row));
    }
    if (fresh.empty()) break;
    if (result.rounds == options.round_cap) {
      result.round_cap_reached = true;
      break;
    }
    for (LinearRow& r : fresh) add(std::move(r));
    ++result.rounds;
  }
  result.rows = lp.num_rows();
  return result;
}

}  // namespace preorder
