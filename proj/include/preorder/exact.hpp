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

// Exact solvers for small instances: a depth-first enumeration of preorders
// with transitive-closure propagation, an LP-guided branch-and-bound, and the
// two-stage cluster-then-order pipeline.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "preorder/core.hpp"
#include "preorder/error.hpp"
#include "preorder/relax.hpp"

namespace preorder {

struct ExactOptions {
  std::size_t max_nodes = 7;
};

struct ExactResult {
  double value = 0.0;
  Relation relation;
  std::size_t search_nodes = 0;
};

namespace detail {

// Enumerates the feasible relations of a mode. Pairs are decided in canonical
// order; the set of 1-pairs is kept transitively closed, so leaving every
// undecided pair at 0 is always feasible. Inserting is tried before excluding.
class PreorderEnumerator {
 public:
  PreorderEnumerator(std::size_t n, Mode mode) : n_(n), mode_(mode) {}

  // visit(ones, fixed0, next_pair) returns false to prune the subtree. Leaves
  // are reported to leaf(ones).
  template <typename Visit, typename Leaf>
  void run(Visit&& visit, Leaf&& leaf) {
    Relation ones = Relation::identity(n_);
    Relation zeros = empty();
    recurse(ones, zeros, 0, visit, leaf);
  }

  std::size_t nodes() const { return nodes_; }

 private:
  Relation empty() const {
    Relation r = Relation::identity(n_);
    for (NodeId i = 0; i < n_; ++i) r.set(i, i, false);
    return r;
  }

  // Adds pair (i, j) and its transitive consequences; false if a 0-fixed pair
  // or a mode constraint is hit.
  bool insert(Relation& ones, const Relation& zeros, NodeId i, NodeId j) const {
    for (NodeId k = 0; k < n_; ++k) {
      if (ones.test(k, i)) ones.merge_row(k, j);
    }
    for (NodeId k = 0; k < n_; ++k) {
      const auto r1 = ones.row(k);
      const auto r0 = zeros.row(k);
      for (std::size_t w = 0; w < r1.size(); ++w) {
        if ((r1[w] & r0[w]) != 0) return false;
      }
    }
    if (mode_ == Mode::kPartialOrder) {
      for (NodeId a = 0; a < n_; ++a) {
        for (NodeId b = a + 1; b < n_; ++b) {
          if (ones.test(a, b) && ones.test(b, a)) return false;
        }
      }
    }
    return true;
  }

  template <typename Visit, typename Leaf>
  void recurse(const Relation& ones, const Relation& zeros, std::size_t from,
               Visit& visit, Leaf& leaf) {
    ++nodes_;
    std::size_t p = from;
    const std::size_t total = pair_count(n_);
    while (p < total) {
      const Pair q = pair_from_index(n_, p);
      if (!ones.test(q.tail, q.head) && !zeros.test(q.tail, q.head)) break;
      ++p;
    }
    if (p == total) {
      leaf(ones);
      return;
    }
    if (!visit(ones, zeros, p)) return;
    const Pair q = pair_from_index(n_, p);
    {
      Relation next = ones;
      bool ok = insert(next, zeros, q.tail, q.head);
      if (ok && mode_ == Mode::kClustering && !next.test(q.head, q.tail)) {
        ok = insert(next, zeros, q.head, q.tail);
      }
      if (ok) recurse(next, zeros, p + 1, visit, leaf);
    }
    {
      Relation next_zeros = zeros;
      next_zeros.set(q.tail, q.head);
      if (mode_ == Mode::kClustering) next_zeros.set(q.head, q.tail);
      recurse(ones, next_zeros, p + 1, visit, leaf);
    }
  }

  std::size_t n_;
  Mode mode_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

// Global optimum by enumeration, pruned by current value plus the positive
// values of all undecided pairs. The identity is the starting incumbent; after
// it, the first optimum in search order is kept.
inline ExactResult brute_force_optimal(const Instance& inst, Mode mode = Mode::kPreorder,
                                       const ExactOptions& options = {}) {
  const std::size_t n = inst.size();
  if (n > options.max_nodes) {
    throw LimitError("brute force limited to " + std::to_string(options.max_nodes) +
                     " nodes, instance has " + std::to_string(n));
  }
  ExactResult best{0.0, Relation::identity(n), 0};
  const std::size_t total = pair_count(n);

  auto value_of = [&](const Relation& ones) { return evaluate_objective(inst, ones); };
  auto visit = [&](const Relation& ones, const Relation& zeros, std::size_t) {
    double bound = value_of(ones);
    for (std::size_t p = 0; p < total; ++p) {
      const Pair q = pair_from_index(n, p);
      if (!ones.test(q.tail, q.head) && !zeros.test(q.tail, q.head)) {
        bound += std::max(0.0, inst(q.tail, q.head));
      }
    }
    return bound > best.value;
  };
  auto leaf = [&](const Relation& ones) {
    const double v = value_of(ones);
    if (v > best.value) {
      best.value = v;
      best.relation = ones;
    }
  };
  detail::PreorderEnumerator search(n, mode);
  search.run(visit, leaf);
  best.search_nodes = search.nodes();
  return best;
}

// Number of preorders on n labeled nodes.
inline std::uint64_t count_preorders(std::size_t n, std::size_t limit = 6) {
  if (n == 0) throw InputError("count_preorders needs n >= 1");
  if (n > limit) {
    throw LimitError("count_preorders limited to n <= " + std::to_string(limit));
  }
  std::uint64_t count = 0;
  detail::PreorderEnumerator search(n, Mode::kPreorder);
  search.run([](const Relation&, const Relation&, std::size_t) { return true; },
             [&](const Relation&) { ++count; });
  return count;
}

// LP bound at a branch-and-bound node: infeasible, or a value with the point
// attaining it.
struct NodeBound {
  bool feasible = true;
  double value = 0.0;
  std::vector<double> x;
};

using BoundProvider = std::function<NodeBound(const Instance&, Mode, const Fixings&)>;

// Cutting-plane LP bound honoring the node's fixings.
inline BoundProvider lp_bound_provider(CuttingPlaneOptions options = {}) {
  return [options](const Instance& inst, Mode mode, const Fixings& fixings) {
    CuttingPlaneOptions local = options;
    local.mode = mode;
    const CuttingPlaneResult r = cutting_plane_bound(inst, local, &fixings);
    return NodeBound{r.feasible, r.upper_bound, r.x};
  };
}

struct BranchAndBoundOptions {
  std::size_t max_nodes = 15;
  double integrality_tolerance = 1e-6;
  // A node is pruned when its bound does not exceed the incumbent by more
  // than this.
  double prune_tolerance = 1e-9;
  std::size_t max_search_nodes = 1'000'000;
};

namespace detail {

inline bool satisfies_mode(const Relation& rel, Mode mode) {
  const std::size_t n = rel.size();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const bool a = rel.test(i, j);
      const bool b = rel.test(j, i);
      if (mode == Mode::kClustering && a != b) return false;
      if (mode == Mode::kPartialOrder && a && b) return false;
    }
  }
  return true;
}

}  // namespace detail

// Depth-first branch-and-bound on the pair variables. Branches on the most
// fractional variable (smallest canonical index on ties), 1-branch first.
inline ExactResult branch_and_bound(const Instance& inst, Mode mode = Mode::kPreorder,
                                    BoundProvider bound_provider = lp_bound_provider(),
                                    const BranchAndBoundOptions& options = {}) {
  const std::size_t n = inst.size();
  if (n > options.max_nodes) {
    throw LimitError("branch-and-bound limited to " + std::to_string(options.max_nodes) +
                     " nodes, instance has " + std::to_string(n));
  }
  const std::size_t vars = pair_count(n);
  ExactResult best{0.0, Relation::identity(n), 0};

  std::vector<Fixings> stack;
  stack.emplace_back(vars, static_cast<std::int8_t>(-1));
  while (!stack.empty()) {
    if (++best.search_nodes > options.max_search_nodes) {
      throw LimitError("branch-and-bound node limit reached");
    }
    const Fixings fix = std::move(stack.back());
    stack.pop_back();
    const NodeBound bound = bound_provider(inst, mode, fix);
    if (!bound.feasible) continue;
    if (bound.value <= best.value + options.prune_tolerance) continue;

    std::size_t branch = vars;
    double best_frac = options.integrality_tolerance;
    for (std::size_t p = 0; p < vars; ++p) {
      const double frac = std::min(bound.x[p], 1.0 - bound.x[p]);
      if (frac > best_frac) {
        best_frac = frac;
        branch = p;
      }
    }
    if (branch == vars) {
      Relation rel = Relation::identity(n);
      for (std::size_t p = 0; p < vars; ++p) {
        if (bound.x[p] > 0.5) {
          const Pair q = pair_from_index(n, p);
          rel.set(q.tail, q.head);
        }
      }
      if (verify_preorder(rel) && detail::satisfies_mode(rel, mode)) {
        const double v = evaluate_objective(inst, rel);
        if (v > best.value) {
          best.value = v;
          best.relation = std::move(rel);
        }
        continue;
      }
      // Integral but not yet cut off (round cap): branch on the first free pair.
      for (std::size_t p = 0; p < vars && branch == vars; ++p) {
        if (fix[p] < 0) branch = p;
      }
      if (branch == vars) continue;
    }
    Fixings zero = fix;
    zero[branch] = 0;
    Fixings one = fix;
    one[branch] = 1;
    stack.push_back(std::move(zero));
    stack.push_back(std::move(one));
  }
  return best;
}

// Exact solver signature used by the two-stage pipeline.
using ExactSolver = std::function<ExactResult(const Instance&, Mode)>;

inline ExactSolver brute_force_solver(ExactOptions options = {}) {
  return [options](const Instance& inst, Mode mode) {
    return brute_force_optimal(inst, mode, options);
  };
}

struct SuccessiveResult {
  double value = 0.0;
  Relation relation;
  double clustering_value = 0.0;
  std::size_t cluster_count = 0;
};

// Sum of values between two clusters: c'_AB = sum_{i in A, j in B} c_ij.
inline Instance cluster_instance(const Instance& inst, const ClusteredOrder& order) {
  const std::size_t k = order.classes.size();
  std::vector<double> values(k * k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      double total = 0.0;
      for (NodeId i : order.classes[a]) {
        for (NodeId j : order.classes[b]) total += inst(i, j);
      }
      values[a * k + b] = total;
    }
  }
  return Instance(k, std::move(values));
}

// Optimal clustering first, then an optimal partial order on its clusters.
inline SuccessiveResult successive_cluster_then_order(const Instance& inst,
                                                      const ExactSolver& solver) {
  const ExactResult clustering = solver(inst, Mode::kClustering);
  const ClusteredOrder order = decompose(clustering.relation);
  const Instance reduced = cluster_instance(inst, order);
  const ExactResult ordering = solver(reduced, Mode::kPartialOrder);

  Relation rel = clustering.relation;
  for (std::size_t a = 0; a < order.classes.size(); ++a) {
    for (std::size_t b = 0; b < order.classes.size(); ++b) {
      if (a == b || !ordering.relation.test(a, b)) continue;
      for (NodeId i : order.classes[a]) {
        for (NodeId j : order.classes[b]) rel.set(i, j);
      }
    }
  }
  SuccessiveResult out;
  out.value = evaluate_objective(inst, rel);
  out.relation = std::move(rel);
  out.clustering_value = clustering.value;
  out.cluster_count = order.classes.size();
  return out;
}

inline SuccessiveResult successive_cluster_then_order(const Instance& inst,
                                                      const ExactOptions& options = {}) {
  return successive_cluster_then_order(inst, brute_force_solver(options));
}

}  // namespace preorder
