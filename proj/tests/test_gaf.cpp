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

#include <cmath>
#include <limits>
#include <random>

#include "fixtures.hpp"
#include "preorder/exact.hpp"
#include "preorder/gaf.hpp"

namespace preorder {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double as_double(const ExtendedReal& x) {
  if (x.is_pos_inf()) return kInf;
  if (x.is_neg_inf()) return -kInf;
  return x.value();
}

// Every summand is clamped at zero, so IEEE infinities never cancel.
std::pair<double, double> naive_costs(const std::vector<double>& c, std::size_t n, NodeId i,
                                      NodeId j) {
  auto at = [&](NodeId a, NodeId b) { return c[a * n + b]; };
  double ice = std::max(0.0, at(i, j));
  double ici = std::max(0.0, -at(i, j));
  for (NodeId k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    ice += std::max(0.0, std::min(at(i, k), at(k, j)));
    ici += std::max(0.0, std::min(at(k, i), -at(k, j)));
    ici += std::max(0.0, std::min(at(j, k), -at(i, k)));
  }
  return {ice, ici};
}

TEST(ExtendedReal, OrderingAndNegation) {
  const ExtendedReal inf = ExtendedReal::pos_inf();
  const ExtendedReal ninf = ExtendedReal::neg_inf();
  EXPECT_LT(ninf, ExtendedReal(-1e300));
  EXPECT_LT(ExtendedReal(1e300), inf);
  EXPECT_EQ(-inf, ninf);
  EXPECT_EQ(min(inf, ExtendedReal(2.0)), ExtendedReal(2.0));
  EXPECT_EQ(max(ninf, ExtendedReal(-2.0)), ExtendedReal(-2.0));
  EXPECT_EQ(positive_part(ninf), ExtendedReal(0.0));
  EXPECT_TRUE(positive_part(inf).is_pos_inf());
}

TEST(ExtendedReal, NonnegativeSumTracksInfiniteTerms) {
  NonnegativeSum s;
  s.add(ExtendedReal(2.0));
  s.add(ExtendedReal::pos_inf());
  EXPECT_TRUE(s.total().is_pos_inf());
  s.remove(ExtendedReal::pos_inf());
  EXPECT_EQ(s.total(), ExtendedReal(2.0));
}

TEST(InducedCosts, TwoPairsPairZeroOne) {
  const FixationState state(testing::two_pairs());
  const InducedCosts costs = induced_costs(state, {0, 1});
  EXPECT_EQ(costs.ice, ExtendedReal(2.0));
  EXPECT_EQ(costs.ici, ExtendedReal(2.0));
}

TEST(InducedCosts, IsolatedPair) {
  const Instance inst = Instance::from_rows({{0, 5, 0}, {0, 0, 0}, {0, 0, 0}});
  const FixationState state(inst);
  const InducedCosts costs = induced_costs(state, {0, 1});
  EXPECT_EQ(costs.ice, ExtendedReal(5.0));
  EXPECT_EQ(costs.ici, ExtendedReal(0.0));
}

TEST(InducedCosts, FixedPairQueryThrows) {
  FixationState state(testing::two_pairs());
  state.fix({0, 1}, false);
  EXPECT_THROW(induced_costs(state, {0, 1}), InputError);
  EXPECT_THROW(induced_costs(state, {2, 2}), InputError);
}

TEST(InducedCosts, MatchNaiveOracleAlongRandomFixations) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 5;
    const Instance inst = testing::random_integer_instance(n, rng, -5, 5);
    FixationState state(inst);
    std::vector<double> c(inst.values().begin(), inst.values().end());
    std::vector<std::size_t> order(pair_count(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t idx : order) {
      for (std::size_t q = 0; q < pair_count(n); ++q) {
        const Pair p = pair_from_index(n, q);
        if (state.status(p.tail, p.head) != FixStatus::kUnfixed) continue;
        const auto [ice, ici] = naive_costs(c, n, p.tail, p.head);
        const InducedCosts direct = state.induced_costs(p);
        const InducedCosts kept = state.maintained_costs(p);
        EXPECT_EQ(as_double(direct.ice), ice);
        EXPECT_EQ(as_double(direct.ici), ici);
        EXPECT_EQ(as_double(kept.ice), ice);
        EXPECT_EQ(as_double(kept.ici), ici);
      }
      const Pair p = pair_from_index(n, idx);
      const bool value = coin(rng);
      state.fix(p, value);
      c[p.tail * n + p.head] = value ? kInf : -kInf;
    }
  }
}

TEST(RunGaf, FixationTrapTraceVerbatim) {
  const GafResult r = run_gaf(testing::fixation_trap());
  const auto expected = testing::fixation_trap_trace();
  ASSERT_EQ(r.trace.size(), expected.size());
  for (std::size_t s = 0; s < expected.size(); ++s) {
    EXPECT_EQ(r.trace[s].pair, (Pair{expected[s].tail, expected[s].head})) << "step " << s;
    EXPECT_EQ(r.trace[s].value, expected[s].value) << "step " << s;
  }
  EXPECT_EQ(r.report.objective, 10280.0);
  EXPECT_EQ(r.trace[0].ice, ExtendedReal(9996.0));
  EXPECT_EQ(r.trace[0].ici, ExtendedReal(50053.0));
  EXPECT_GT(50130.0 / r.report.objective, 4.0);
}

TEST(RunGaf, FixationTrapEachFixationIsUniqueBest) {
  const Instance inst = testing::fixation_trap();
  const std::size_t n = inst.size();
  const GafResult r = run_gaf(inst);
  FixationState state(inst);
  for (const Fixation& f : r.trace) {
    const ExtendedReal chosen = max(f.ice, f.ici);
    EXPECT_NE(f.ice, f.ici);
    for (std::size_t q = 0; q < pair_count(n); ++q) {
      const Pair p = pair_from_index(n, q);
      if (p == f.pair || state.status(p.tail, p.head) != FixStatus::kUnfixed) continue;
      const InducedCosts other = state.induced_costs(p);
      EXPECT_LT(max(other.ice, other.ici), chosen);
    }
    state.fix(f.pair, f.value);
  }
}

TEST(RunGaf, TwoPairsFeasibleAndBounded) {
  const GafResult r = run_gaf(testing::two_pairs());
  EXPECT_TRUE(verify_preorder(r.relation));
  EXPECT_LE(r.report.objective, 4.0);
}

TEST(RunGaf, AllNegativeGivesIdentity) {
  const Instance inst = Instance::from_rows({{0, -1, -2}, {-3, 0, -1}, {-1, -1, 0}});
  EXPECT_EQ(run_gaf(inst).relation, Relation::identity(3));
}

TEST(RunGaf, RandomFeasibleBoundedAndCrossChecked) {
  std::mt19937_64 rng(41);
  GafOptions options;
  options.cross_check = true;
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + t % 5;
    const Instance inst = t % 2 ? testing::random_instance(n, rng)
                                : testing::random_integer_instance(n, rng, -3, 3);
    const GafResult r = run_gaf(inst, options);
    EXPECT_TRUE(verify_preorder(r.relation));
    EXPECT_EQ(r.trace.size(), pair_count(n));
    EXPECT_LE(r.report.objective, brute_force_optimal(inst).value + 1e-9);
  }
}

TEST(RunGaf, Deterministic) {
  std::mt19937_64 rng(43);
  const Instance inst = testing::random_integer_instance(12, rng, -2, 2);
  EXPECT_EQ(run_gaf(inst).relation, run_gaf(inst).relation);
}

}  // namespace
}  // namespace preorder
