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

// Greedy moving: local search over arc insertions and four families of moves
// that can also remove arcs while keeping the relation a preorder.
//
//   move_up(i)          detach i from its class, directly above it: x_ji := 0
//                       for every classmate j
//   move_down(i)        detach i, directly below its class: x_ij := 0
//   move_to_class(i, j) make i a copy of j: x_ik := x_jk, x_ki := x_kj
//   remove_reduction_arc(A, B)
//                       drop a covering arc of the class order: x_ab := 0
//                       for a in A, b in B

#include <chrono>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "preorder/core.hpp"
#include "preorder/error.hpp"
#include "preorder/gai.hpp"

namespace preorder {

// Declaration order is the tie-breaking order between move kinds.
enum class MoveKind {
  kInsert,
  kMoveUp,
  kMoveDown,
  kMoveToClass,
  kRemoveReductionArc,
};

inline const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::kInsert:
      return "insert";
    case MoveKind::kMoveUp:
      return "move_up";
    case MoveKind::kMoveDown:
      return "move_down";
    case MoveKind::kMoveToClass:
      return "move_to_class";
    case MoveKind::kRemoveReductionArc:
      return "remove_reduction_arc";
  }
  return "unknown";
}

// For kInsert, (first, second) is the pair; for kMoveUp/kMoveDown only first
// is used; for kMoveToClass it is (node, target node); for
// kRemoveReductionArc it is a pair of class indices of decompose(rel).
struct Move {
  MoveKind kind = MoveKind::kInsert;
  std::size_t first = 0;
  std::size_t second = 0;
  double delta = 0.0;
};

namespace detail {

inline std::vector<Move> moves_for(const Instance& inst, const Relation& rel,
                                   const ClusteredOrder& order,
                                   const GainTable& gains) {
  const std::size_t n = inst.size();
  std::vector<Move> moves;

  for (NodeId i = 0; i < n; ++i) {
    const auto row = gains.row(i);
    for (NodeId j = 0; j < n; ++j) {
      if (j != i && !rel.test(i, j) && row[j] > 0.0) {
        moves.push_back({MoveKind::kInsert, i, j, row[j]});
      }
    }
  }

  for (NodeId i = 0; i < n; ++i) {
    const auto& members = order.classes[order.class_of[i]];
    if (members.size() < 2) continue;
    double up = 0.0;
    for (NodeId j : members) {
      if (j != i) up -= inst(j, i);
    }
    moves.push_back({MoveKind::kMoveUp, i, i, up});
  }
  for (NodeId i = 0; i < n; ++i) {
    const auto& members = order.classes[order.class_of[i]];
    if (members.size() < 2) continue;
    double down = 0.0;
    for (NodeId j : members) {
      if (j != i) down -= inst(i, j);
    }
    moves.push_back({MoveKind::kMoveDown, i, i, down});
  }

  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (j == i) continue;
      double delta = 0.0;
      for (NodeId k = 0; k < n; ++k) {
        if (k == i) continue;
        const bool out_new = k == j ? true : rel.test(j, k);
        const bool in_new = k == j ? true : rel.test(k, j);
        delta += (static_cast<int>(out_new) - static_cast<int>(rel.test(i, k))) *
                 inst(i, k);
        delta += (static_cast<int>(in_new) - static_cast<int>(rel.test(k, i))) *
                 inst(k, i);
      }
      moves.push_back({MoveKind::kMoveToClass, i, j, delta});
    }
  }

  for (const auto& [a, b] : order.reduction) {
    double delta = 0.0;
    for (NodeId u : order.classes[a]) {
      for (NodeId v : order.classes[b]) delta -= inst(u, v);
    }
    moves.push_back({MoveKind::kRemoveReductionArc, a, b, delta});
  }
  return moves;
}

inline Relation apply_unchecked(const Relation& rel, const ClusteredOrder& order,
                                const Move& m) {
  const std::size_t n = rel.size();
  Relation out = rel;
  switch (m.kind) {
    case MoveKind::kInsert:
      insert_in_place(out, m.first, m.second);
      break;
    case MoveKind::kMoveUp:
      for (NodeId j : order.classes[order.class_of[m.first]]) {
        if (j != m.first) out.set(j, m.first, false);
      }
      break;
    case MoveKind::kMoveDown:
      for (NodeId j : order.classes[order.class_of[m.first]]) {
        if (j != m.first) out.set(m.first, j, false);
      }
      break;
    case MoveKind::kMoveToClass: {
      const NodeId i = m.first;
      const NodeId j = m.second;
      for (NodeId k = 0; k < n; ++k) {
        if (k == i) continue;
        out.set(i, k, k == j ? true : rel.test(j, k));
        out.set(k, i, k == j ? true : rel.test(k, j));
      }
      break;
    }
    case MoveKind::kRemoveReductionArc:
      for (NodeId u : order.classes[m.first]) {
        for (NodeId v : order.classes[m.second]) out.set(u, v, false);
      }
      break;
  }
  return out;
}

inline void check_move(const Relation& rel, const ClusteredOrder& order,
                       const Move& m) {
  const std::size_t n = rel.size();
  switch (m.kind) {
    case MoveKind::kInsert:
      if (m.first >= n || m.second >= n || m.first == m.second ||
          rel.test(m.first, m.second)) {
        throw InputError("insert move does not apply to this relation");
      }
      break;
    case MoveKind::kMoveUp:
    case MoveKind::kMoveDown:
      if (m.first >= n) throw InputError("move node out of range");
      break;
    case MoveKind::kMoveToClass:
      if (m.first >= n || m.second >= n || m.first == m.second) {
        throw InputError("move_to_class needs two distinct nodes");
      }
      break;
    case MoveKind::kRemoveReductionArc: {
      bool found = false;
      for (const auto& arc : order.reduction) {
        found = found || (arc.first == m.first && arc.second == m.second);
      }
      if (!found) throw InputError("arc is not in the transitive reduction");
      break;
    }
  }
}

}  // namespace detail

// Every move candidate with its exact objective change; insertions are listed
// only when their gain is positive.
inline std::vector<Move> enumerate_moves(const Instance& inst, const Relation& rel) {
  detail::require_same_size(inst, rel);
  if (!verify_preorder(rel)) throw InputError("enumerate_moves requires a preorder");
  const ClusteredOrder order = decompose(rel);
  return detail::moves_for(inst, rel, order, detail::compute_gains(inst, rel));
}

inline Relation apply_move(const Relation& rel, const Move& m) {
  if (!verify_preorder(rel)) throw InputError("apply_move requires a preorder");
  const ClusteredOrder order = decompose(rel);
  detail::check_move(rel, order, m);
  Relation out = detail::apply_unchecked(rel, order, m);
  if (!verify_preorder(out)) {
    throw std::logic_error(std::string("move ") + to_string(m.kind) +
                           " broke transitivity");
  }
  return out;
}

struct GmOptions {
  // Moves need delta strictly above this threshold.
  double min_delta = 0.0;
  std::size_t max_iterations = std::numeric_limits<std::size_t>::max();
};

inline SolveResult run_gm(const Instance& inst, const Relation& init,
                          const GmOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::require_same_size(inst, init);
  if (!verify_preorder(init)) throw InputError("run_gm requires a feasible start");

  SolveResult result{init, {}};
  result.report.algorithm = "gm";
  result.report.objective_trace.push_back(evaluate_objective(inst, init));
  std::size_t iterations = 0;
  while (iterations < options.max_iterations) {
    const ClusteredOrder order = decompose(result.relation);
    const std::vector<Move> moves = detail::moves_for(
        inst, result.relation, order, detail::compute_gains(inst, result.relation));
    // moves_for emits kinds in tie-breaking order, each in canonical order.
    const Move* best = nullptr;
    double best_delta = options.min_delta;
    for (const Move& m : moves) {
      if (m.delta > best_delta) {
        best = &m;
        best_delta = m.delta;
      }
    }
    if (best == nullptr) break;
    Relation next = detail::apply_unchecked(result.relation, order, *best);
    if (!verify_preorder(next)) {
      throw std::logic_error(std::string("move ") + to_string(best->kind) +
                             " broke transitivity");
    }
    // Guards strict ascent against rounding in the computed delta.
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
