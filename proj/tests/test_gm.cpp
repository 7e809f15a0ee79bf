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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "preorder/exact.hpp"
#include "preorder/gm.hpp"

namespace preorder {
namespace {

void expect_moves_exact(const Instance& inst, const Relation& rel) {
  const double base = testing::objective_naive(inst, rel);
  for (const Move& m : enumerate_moves(inst, rel)) {
    const Relation next = apply_move(rel, m);
    EXPECT_TRUE(testing::is_preorder_naive(next)) << to_string(m.kind);
    EXPECT_NEAR(m.delta, testing::objective_naive(inst, next) - base, 1e-9)
        << to_string(m.kind) << " " << m.first << " " << m.second;
  }
}

const Move* find_move(const std::vector<Move>& moves, MoveKind kind, std::size_t first,
                      std::size_t second) {
  for (const Move& m : moves) {
    if (m.kind == kind && m.first == first && m.second == second) return &m;
  }
  return nullptr;
}

TEST(EnumerateMoves, IdentityOffersOnlyInsertionsAndClassMoves) {
  const Instance inst = testing::five_node();
  for (const Move& m : enumerate_moves(inst, Relation::identity(5))) {
    EXPECT_TRUE(m.kind == MoveKind::kInsert || m.kind == MoveKind::kMoveToClass);
  }
}

TEST(EnumerateMoves, FiveNodeOptimumSplitsOfClassZeroOne) {
  const auto moves = enumerate_moves(testing::five_node(), testing::five_node_optimum());
  // move_up(i) clears x_ji for classmates j; move_down(i) clears x_ij.
  const Move* up = find_move(moves, MoveKind::kMoveUp, 1, 1);
  const Move* down = find_move(moves, MoveKind::kMoveDown, 1, 1);
  ASSERT_NE(up, nullptr);
  ASSERT_NE(down, nullptr);
  EXPECT_EQ(up->delta, -3.0);
  EXPECT_EQ(down->delta, -4.0);
  for (const Move& m : moves) EXPECT_LE(m.delta, 0.0) << to_string(m.kind);
}

TEST(EnumerateMoves, ExhaustiveOverAllPreordersUpToFour) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto preorders = testing::all_preorders_naive(n);
    std::mt19937_64 rng(200 + n);
    for (int t = 0; t < 3; ++t) {
      const Instance inst = testing::random_integer_instance(n, rng, -4, 4);
      for (const Relation& rel : preorders) expect_moves_exact(inst, rel);
    }
  }
}

TEST(EnumerateMoves, UpDownPreserveFeasibilityForAllPreordersOfFive) {
  const Instance inst(5);
  for (const Relation& rel : testing::all_preorders_naive(5)) {
    for (const Move& m : enumerate_moves(inst, rel)) {
      if (m.kind != MoveKind::kMoveUp && m.kind != MoveKind::kMoveDown) continue;
      EXPECT_TRUE(testing::is_preorder_naive(apply_move(rel, m)));
    }
  }
}

TEST(EnumerateMoves, RandomSixNodeStates) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 5 + t % 2;
    expect_moves_exact(testing::random_instance(n, rng), testing::random_preorder(n, rng));
  }
}

TEST(ApplyMove, MoveToClassmateIsNoOp) {
  const Relation rel = testing::five_node_optimum();
  EXPECT_EQ(apply_move(rel, {MoveKind::kMoveToClass, 0, 1, 0.0}), rel);
}

TEST(ApplyMove, RemoveReductionArcOfChain) {
  Relation chain = Relation::identity(2);
  chain.set(0, 1);
  EXPECT_EQ(apply_move(chain, {MoveKind::kRemoveReductionArc, 0, 1, 0.0}),
            Relation::identity(2));
  EXPECT_THROW(apply_move(chain, {MoveKind::kRemoveReductionArc, 1, 0, 0.0}), InputError);
}

TEST(RunGm, FiveNodeOptimumIsLocallyOptimal) {
  const SolveResult r = run_gm(testing::five_node(), testing::five_node_optimum());
  EXPECT_EQ(r.relation, testing::five_node_optimum());
  EXPECT_EQ(r.report.iterations, 0U);
  EXPECT_EQ(r.report.objective, 14.0);
}

TEST(RunGm, AllNegativeDismantlesComplete) {
  const Instance inst = Instance::from_rows({{0, -1, -2, -1}, {-3, 0, -1, -1},
                                             {-1, -1, 0, -2}, {-1, -2, -1, 0}});
  const SolveResult r = run_gm(inst, Relation::complete(4));
  EXPECT_EQ(r.relation, Relation::identity(4));
  EXPECT_EQ(r.report.objective, 0.0);
}

TEST(RunGm, StrictAscentBetweenStartAndOptimum) {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 4;
    const Instance inst = testing::random_instance(n, rng);
    const Relation init = testing::random_preorder(n, rng);
    const SolveResult r = run_gm(inst, init);
    EXPECT_TRUE(verify_preorder(r.relation));
    const auto& trace = r.report.objective_trace;
    for (std::size_t s = 1; s < trace.size(); ++s) EXPECT_GT(trace[s], trace[s - 1]);
    EXPECT_GE(r.report.objective, evaluate_objective(inst, init));
    EXPECT_LE(r.report.objective, brute_force_optimal(inst).value + 1e-9);
  }
}

}  // namespace
}  // namespace preorder
