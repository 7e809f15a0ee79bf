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

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "preorder/core.hpp"

namespace preorder::testing {

// Five-node instance with optimum 14 and B(c) = 17.
inline Instance five_node() {
  return Instance::from_rows({
      {0, 3, 0, 3, 0},
      {4, 0, -1, -1, 1},
      {-1, 0, 0, 2, 1},
      {-1, 0, 0, 0, 1},
      {-1, -1, 2, -1, 0},
  });
}

// Optimal preorder of five_node(): classes {0,1}, {2}, {3}, {4}.
inline Relation five_node_optimum() {
  Relation rel = Relation::identity(5);
  const std::vector<Pair> arcs = {{0, 1}, {1, 0}, {0, 3}, {0, 4}, {1, 3}, {1, 4},
                                  {2, 3}, {2, 4}, {3, 4}};
  for (const Pair& p : arcs) rel.set(p.tail, p.head);
  return rel;
}

// Directed three-cycle: optimum 1, B(c) = 3.
inline Instance three_cycle() {
  return Instance::from_rows({
      {0, 1, -1},
      {-1, 0, 1},
      {1, -1, 0},
  });
}

// Two attracting pairs that repel each other: optimum 4.
inline Instance two_pairs() {
  return Instance::from_rows({
      {0, -2, 1, 1},
      {-2, 0, 1, 1},
      {1, 1, 0, -2},
      {1, 1, -2, 0},
  });
}

// Instance on which greedy fixation reaches less than a quarter of the optimum.
inline Instance fixation_trap() {
  return Instance::from_rows({
      {0, -9976, -20009, -10060, -20099, 10033},
      {-9908, 0, 10025, -19965, 9996, 6},
      {10049, -10048, 0, 10018, -19971, -20025},
      {-19943, -9914, -10076, 0, -19984, 10014},
      {9950, -91, -19988, 10021, 0, -19934},
      {-20025, 10086, 9947, -10032, -10035, 0},
  });
}

struct TraceStep {
  NodeId tail;
  NodeId head;
  bool value;
};

// Fixation order of greedy fixation on fixation_trap().
inline std::vector<TraceStep> fixation_trap_trace() {
  return {{5, 4, 0}, {0, 4, 0}, {0, 1, 0}, {5, 2, 0}, {3, 1, 0}, {5, 1, 0},
          {0, 2, 0}, {3, 4, 0}, {3, 2, 0}, {5, 0, 0}, {5, 3, 0}, {2, 1, 0},
          {2, 5, 1}, {4, 2, 0}, {1, 3, 1}, {3, 0, 0}, {1, 5, 1}, {4, 1, 0},
          {1, 0, 1}, {2, 4, 0}, {4, 5, 1}, {0, 3, 0}, {2, 0, 1}, {0, 5, 1},
          {1, 2, 1}, {4, 3, 1}, {2, 3, 1}, {3, 5, 1}, {1, 4, 1}, {4, 0, 1}};
}

inline Instance random_instance(std::size_t n, std::mt19937_64& rng, double lo = -1.0,
                                double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) values[i * n + j] = dist(rng);
    }
  }
  return Instance(n, std::move(values));
}

inline Instance random_integer_instance(std::size_t n, std::mt19937_64& rng, int lo,
                                        int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) values[i * n + j] = dist(rng);
    }
  }
  return Instance(n, std::move(values));
}

// Instance whose off-diagonal entries are the bits of code mapped to -1 / +1.
inline Instance sign_instance(std::size_t n, std::uint64_t code) {
  std::vector<double> values(n * n, 0.0);
  for (std::size_t p = 0; p < pair_count(n); ++p) {
    const Pair q = pair_from_index(n, p);
    values[q.tail * n + q.head] = (code >> p) & 1U ? 1.0 : -1.0;
  }
  return Instance(n, std::move(values));
}

// Relation whose off-diagonal entries are the bits of code.
inline Relation relation_from_code(std::size_t n, std::uint64_t code) {
  Relation rel = Relation::identity(n);
  for (std::size_t p = 0; p < pair_count(n); ++p) {
    if ((code >> p) & 1U) {
      const Pair q = pair_from_index(n, p);
      rel.set(q.tail, q.head);
    }
  }
  return rel;
}

// Closure-under-composition check written independently of verify_preorder.
inline bool is_preorder_naive(const Relation& rel) {
  const std::size_t n = rel.size();
  for (NodeId i = 0; i < n; ++i) {
    if (!rel(i, i)) return false;
    for (NodeId j = 0; j < n; ++j) {
      for (NodeId k = 0; k < n; ++k) {
        if (rel(i, j) && rel(j, k) && !rel(i, k)) return false;
      }
    }
  }
  return true;
}

// Every preorder on n nodes by filtering all 2^{n(n-1)} relations.
inline std::vector<Relation> all_preorders_naive(std::size_t n) {
  std::vector<Relation> out;
  const std::uint64_t total = std::uint64_t{1} << pair_count(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    Relation rel = relation_from_code(n, code);
    if (is_preorder_naive(rel)) out.push_back(std::move(rel));
  }
  return out;
}

inline double objective_naive(const Instance& inst, const Relation& rel) {
  double sum = 0.0;
  for (NodeId i = 0; i < inst.size(); ++i) {
    for (NodeId j = 0; j < inst.size(); ++j) {
      if (i != j && rel(i, j)) sum += inst(i, j);
    }
  }
  return sum;
}

inline Relation random_preorder(std::size_t n, std::mt19937_64& rng) {
  // Random weak order of random classes plus extra comparabilities, closed.
  std::uniform_int_distribution<std::size_t> cls(0, n == 0 ? 0 : n - 1);
  std::bernoulli_distribution coin(0.3);
  std::vector<std::size_t> label(n);
  for (auto& l : label) l = cls(rng);
  Relation rel = Relation::identity(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (label[i] == label[j] || (label[i] < label[j] && coin(rng))) rel.set(i, j);
    }
  }
  return transitive_closure(rel);
}

}  // namespace preorder::testing
