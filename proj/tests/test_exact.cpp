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

namespace preorder {
namespace {

bool satisfies(const Relation& rel, Mode mode) {
  for (NodeId i = 0; i < rel.size(); ++i) {
    for (NodeId j = 0; j < rel.size(); ++j) {
      if (i == j) continue;
      if (mode == Mode::kClustering && rel(i, j) != rel(j, i)) return false;
      if (mode == Mode::kPartialOrder && rel(i, j) && rel(j, i)) return false;
    }
  }
  return true;
}

// Maximum over the explicit list of all preorders of the given mode.
double enumeration_optimum(const Instance& inst, const std::vector<Relation>& all,
                           Mode mode) {
  double best = 0.0;
  for (const Relation& rel : all) {
    if (satisfies(rel, mode)) best = std::max(best, testing::objective_naive(inst, rel));
  }
  return best;
}

TEST(BruteForce, Fixtures) {
  const ExactResult five = brute_force_optimal(testing::five_node());
  EXPECT_EQ(five.value, 14.0);
  EXPECT_EQ(evaluate_objective(testing::five_node(), five.relation), 14.0);
  EXPECT_EQ(brute_force_optimal(testing::three_cycle()).value, 1.0);
  EXPECT_EQ(brute_force_optimal(testing::two_pairs()).value, 4.0);
  EXPECT_EQ(brute_force_optimal(testing::fixation_trap()).value, 50130.0);
}

TEST(BruteForce, LimitEnforced) {
  EXPECT_THROW(brute_force_optimal(Instance(8)), LimitError);
  ExactOptions opts;
  opts.max_nodes = 3;
  EXPECT_THROW(brute_force_optimal(testing::two_pairs(), Mode::kPreorder, opts), LimitError);
}

TEST(BruteForce, MatchesEnumerationInEveryMode) {
  std::mt19937_64 rng(103);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = testing::all_preorders_naive(n);
    for (int t = 0; t < 30; ++t) {
      const Instance inst = testing::random_instance(n, rng);
      for (Mode mode : {Mode::kPreorder, Mode::kClustering, Mode::kPartialOrder}) {
        const ExactResult r = brute_force_optimal(inst, mode);
        EXPECT_NEAR(r.value, enumeration_optimum(inst, all, mode), 1e-12);
        EXPECT_TRUE(verify_preorder(r.relation));
        EXPECT_TRUE(satisfies(r.relation, mode));
        EXPECT_NEAR(evaluate_objective(inst, r.relation), r.value, 1e-12);
      }
    }
  }
}

TEST(CountPreorders, MatchesFilterOracle) {
  const std::uint64_t expected[] = {1, 4, 29, 355};
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(count_preorders(n), expected[n - 1]);
    EXPECT_EQ(count_preorders(n), testing::all_preorders_naive(n).size());
  }
  EXPECT_EQ(count_preorders(5), 6942U);
  EXPECT_EQ(count_preorders(6), 209527U);
  EXPECT_THROW(count_preorders(7), LimitError);
}

TEST(BranchAndBound, Fixtures) {
  EXPECT_NEAR(branch_and_bound(testing::five_node()).value, 14.0, 1e-9);
  EXPECT_NEAR(branch_and_bound(testing::three_cycle()).value, 1.0, 1e-9);
  EXPECT_NEAR(branch_and_bound(testing::two_pairs()).value, 4.0, 1e-9);
  EXPECT_NEAR(branch_and_bound(testing::fixation_trap()).value, 50130.0, 1e-6);
}

TEST(BranchAndBound, AllNegativeGivesIdentity) {
  const Instance inst = Instance::from_rows({{0, -1, -2}, {-3, 0, -1}, {-1, -1, 0}});
  const ExactResult r = branch_and_bound(inst);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.relation, Relation::identity(3));
}

TEST(BranchAndBound, ExhaustiveSignInstancesUpToFour) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << pair_count(n)); ++code) {
      const Instance inst = testing::sign_instance(n, code);
      EXPECT_EQ(branch_and_bound(inst).value, brute_force_optimal(inst).value) << code;
    }
  }
}

TEST(BranchAndBound, RandomSixNodeInstancesInEveryMode) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 30; ++t) {
    const Instance inst = testing::random_integer_instance(6, rng, -5, 5);
    for (Mode mode : {Mode::kPreorder, Mode::kClustering, Mode::kPartialOrder}) {
      const ExactResult r = branch_and_bound(inst, mode);
      EXPECT_EQ(r.value, brute_force_optimal(inst, mode).value) << t;
      EXPECT_TRUE(satisfies(r.relation, mode));
    }
  }
}

TEST(BranchAndBound, LimitEnforced) {
  EXPECT_THROW(branch_and_bound(Instance(16)), LimitError);
}

TEST(Successive, ThreeCycle) {
  const SuccessiveResult r = successive_cluster_then_order(testing::three_cycle());
  EXPECT_EQ(r.clustering_value, 0.0);
  EXPECT_EQ(r.cluster_count, 3U);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_TRUE(verify_preorder(r.relation));
}

TEST(Successive, EquivalenceOptimumIsKept) {
  // Two attracting blocks with repulsion in both directions between them.
  const Instance inst = Instance::from_rows(
      {{0, 2, -1, -1}, {2, 0, -1, -1}, {-1, -1, 0, 3}, {-1, -1, 3, 0}});
  EXPECT_EQ(successive_cluster_then_order(inst).value, brute_force_optimal(inst).value);
}

TEST(Successive, ClusterInstanceSumsBlocks) {
  const ClusteredOrder order = decompose(testing::five_node_optimum());
  const Instance reduced = cluster_instance(testing::five_node(), order);
  ASSERT_EQ(reduced.size(), 4U);
  EXPECT_EQ(reduced(0, 2), 3.0 - 1.0);
  EXPECT_EQ(reduced(2, 0), -1.0);
}

TEST(VariantOrdering, OptimaAreNested) {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 60; ++t) {
    const Instance inst = testing::random_instance(2 + t % 5, rng);
    const double pre = brute_force_optimal(inst, Mode::kPreorder).value;
    const double clu = brute_force_optimal(inst, Mode::kClustering).value;
    const double po = brute_force_optimal(inst, Mode::kPartialOrder).value;
    const SuccessiveResult s = successive_cluster_then_order(inst);
    EXPECT_NEAR(s.value, evaluate_objective(inst, s.relation), 1e-12);
    EXPECT_LE(clu, s.value + 1e-12);
    EXPECT_LE(s.value, pre + 1e-12);
    EXPECT_LE(po, pre + 1e-12);
  }
}

}  // namespace
}  // namespace preorder
