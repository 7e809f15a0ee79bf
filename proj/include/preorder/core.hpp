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

// Instance and relation data model for the maximum-value preordering problem,
// together with objective evaluation, preorder verification, decomposition into
// clusters plus a partial order, and the dicut-cover characterization of
// preorders.

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "preorder/error.hpp"

namespace preorder {

using NodeId = std::size_t;

// An ordered pair (arc) of distinct nodes.
struct Pair {
  NodeId tail = 0;
  NodeId head = 0;
  auto operator<=>(const Pair&) const = default;
};

// Number of ordered pairs of distinct nodes.
inline constexpr std::size_t pair_count(std::size_t n) {
  return n == 0 ? 0 : n * (n - 1);
}

// Canonical pair index: row-major over the n x n grid with the diagonal
// skipped. This order is the tie-breaking order used by every algorithm.
inline constexpr std::size_t pair_index(std::size_t n, NodeId i, NodeId j) {
  return i * (n - 1) + (j < i ? j : j - 1);
}

inline constexpr Pair pair_from_index(std::size_t n, std::size_t p) {
  const NodeId i = p / (n - 1);
  NodeId j = p % (n - 1);
  if (j >= i) ++j;
  return {i, j};
}

// Values c on ordered pairs of distinct nodes, stored as a dense n x n matrix
// with a zero diagonal.
class Instance {
 public:
  Instance() = default;

  // All-zero instance.
  explicit Instance(std::size_t n) : n_(n), values_(n * n, 0.0) {
    if (n == 0) throw InputError("instance must have at least one node");
  }

  Instance(std::size_t n, std::vector<double> values,
           std::vector<std::string> labels = {})
      : n_(n), values_(std::move(values)), labels_(std::move(labels)) {
    if (n == 0) throw InputError("instance must have at least one node");
    if (values_.size() != n * n) {
      throw InputError("instance value matrix must have n*n entries");
    }
    if (!labels_.empty() && labels_.size() != n) {
      throw InputError("instance label table must have n entries");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (values_[i * n + i] != 0.0) {
        throw InputError("instance diagonal must be zero (node " +
                         std::to_string(i) + ")");
      }
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw InputError("instance values must be finite");
    }
  }

  static Instance from_rows(const std::vector<std::vector<double>>& rows,
                            std::vector<std::string> labels = {}) {
    const std::size_t n = rows.size();
    std::vector<double> values;
    values.reserve(n * n);
    for (const auto& row : rows) {
      if (row.size() != n) throw InputError("instance matrix must be square");
      values.insert(values.end(), row.begin(), row.end());
    }
    return Instance(n, std::move(values), std::move(labels));
  }

  std::size_t size() const { return n_; }
  double operator()(NodeId i, NodeId j) const { return values_[i * n_ + j]; }
  std::span<const double> row(NodeId i) const {
    return {values_.data() + i * n_, n_};
  }
  std::span<const double> values() const { return values_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(NodeId i) const {
    return labels_.empty() ? std::to_string(i) : labels_[i];
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
  std::vector<std::string> labels_;
};

// Characteristic matrix of a reflexive binary relation, one bit-packed row per
// node. Bit j of row i is x_ij.
class Relation {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Relation() = default;

  static Relation identity(std::size_t n) {
    Relation r(n);
    for (NodeId i = 0; i < n; ++i) r.set(i, i);
    return r;
  }

  static Relation complete(std::size_t n) {
    Relation r(n);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) r.set(i, j);
    }
    return r;
  }

  // Builds a relation from a 0/1 matrix; the diagonal is forced to 1.
  static Relation from_matrix(const std::vector<std::vector<int>>& m) {
    Relation r = identity(m.size());
    for (NodeId i = 0; i < m.size(); ++i) {
      if (m[i].size() != m.size()) throw InputError("relation must be square");
      for (NodeId j = 0; j < m.size(); ++j) {
        if (i != j && m[i][j] != 0) r.set(i, j);
      }
    }
    return r;
  }

  // Identity plus the listed arcs.
  static Relation from_arcs(std::size_t n, std::span<const Pair> arcs) {
    Relation r = identity(n);
    for (const Pair& a : arcs) r.set(a.tail, a.head);
    return r;
  }

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  bool test(NodeId i, NodeId j) const {
    return (bits_[i * words_ + j / kWordBits] >> (j % kWordBits)) & 1U;
  }
  bool operator()(NodeId i, NodeId j) const { return test(i, j); }

  void set(NodeId i, NodeId j, bool value = true) {
    Word& w = bits_[i * words_ + j / kWordBits];
    const Word mask = Word{1} << (j % kWordBits);
    if (value) {
      w |= mask;
    } else {
      w &= ~mask;
    }
  }

  std::span<const Word> row(NodeId i) const {
    return {bits_.data() + i * words_, words_};
  }
  std::span<Word> row(NodeId i) { return {bits_.data() + i * words_, words_}; }

  // row(i) |= row(j)
  void merge_row(NodeId i, NodeId j) {
    Word* dst = bits_.data() + i * words_;
    const Word* src = bits_.data() + j * words_;
    for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
  }

  // Calls f(j) for every j with x_ij = 1, in increasing j.
  template <typename F>
  void for_each_in_row(NodeId i, F&& f) const {
    const Word* r = bits_.data() + i * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      Word word = r[w];
      while (word != 0) {
        const int b = std::countr_zero(word);
        f(static_cast<NodeId>(w * kWordBits + static_cast<std::size_t>(b)));
        word &= word - 1;
      }
    }
  }

  std::size_t row_count(NodeId i) const {
    std::size_t c = 0;
    for (Word w : row(i)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Number of related ordered pairs of distinct nodes.
  std::size_t arc_count() const {
    std::size_t c = 0;
    for (NodeId i = 0; i < n_; ++i) c += row_count(i) - (test(i, i) ? 1 : 0);
    return c;
  }

  bool is_reflexive() const {
    for (NodeId i = 0; i < n_; ++i) {
      if (!test(i, i)) return false;
    }
    return true;
  }

  Relation transposed() const {
    Relation t(n_);
    for (NodeId i = 0; i < n_; ++i) {
      for_each_in_row(i, [&](NodeId j) { t.set(j, i); });
    }
    return t;
  }

  std::vector<Pair> arcs() const {
    std::vector<Pair> out;
    for (NodeId i = 0; i < n_; ++i) {
      for_each_in_row(i, [&](NodeId j) {
        if (j != i) out.push_back({i, j});
      });
    }
    return out;
  }

  bool operator==(const Relation&) const = default;

 private:
  explicit Relation(std::size_t n)
      : n_(n), words_((n + kWordBits - 1) / kWordBits), bits_(n * words_, 0) {}

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

// Human-readable form of a preorder: equivalence classes plus a partial order
// on them. Class indices follow the smallest member id.
struct ClusteredOrder {
  std::vector<std::vector<NodeId>> classes;
  std::vector<std::size_t> class_of;
  std::vector<std::pair<std::size_t, std::size_t>> dag;
  std::vector<std::pair<std::size_t, std::size_t>> reduction;
};

struct RunReport {
  std::string algorithm;
  double objective = 0.0;
  std::optional<double> upper_bound;
  double bound_B = 0.0;
  double transitivity_lower = 0.0;
  double transitivity_upper = 1.0;
  std::size_t iterations = 0;
  double wall_time = 0.0;
  // Objective after each iteration of an iterative algorithm.
  std::vector<double> objective_trace;
};

struct SolveResult {
  Relation relation;
  RunReport report;
};

namespace detail {

inline void require_same_size(const Instance& inst, const Relation& rel) {
  if (inst.size() != rel.size()) {
    throw InputError("relation has " + std::to_string(rel.size()) +
                     " nodes but instance has " + std::to_string(inst.size()));
  }
}

}  // namespace detail

// Sum of c_ij over related pairs of distinct nodes.
inline double evaluate_objective(const Instance& inst, const Relation& rel) {
  detail::require_same_size(inst, rel);
  double total = 0.0;
  for (NodeId i = 0; i < rel.size(); ++i) {
    const auto row = inst.row(i);
    rel.for_each_in_row(i, [&](NodeId j) {
      if (j != i) total += row[j];
    });
  }
  return total;
}

// B(c): the sum of all positive values, a trivial upper bound.
inline double positive_part_bound(const Instance& inst) {
  double total = 0.0;
  for (double v : inst.values()) {
    if (v > 0.0) total += v;
  }
  return total;
}

// Interval [lb/B, min(1, ub/B)] containing the transitivity index. An instance
// without positive values is perfectly transitive: (1, 1).
inline std::pair<double, double> transitivity_interval(double objective_lb,
                                                       double upper_bound,
                                                       double bound_B) {
  if (bound_B < 0.0) throw InputError("B(c) must be nonnegative");
  if (objective_lb < 0.0 || objective_lb > upper_bound) {
    throw InputError("transitivity interval requires 0 <= lb <= ub");
  }
  if (bound_B == 0.0) return {1.0, 1.0};
  return {objective_lb / bound_B, std::min(1.0, upper_bound / bound_B)};
}

// True iff rel is reflexive and transitive.
inline bool verify_preorder(const Relation& rel) {
  const std::size_t n = rel.size();
  if (!rel.is_reflexive()) return false;
  for (NodeId i = 0; i < n; ++i) {
    const auto ri = rel.row(i);
    bool ok = true;
    rel.for_each_in_row(i, [&](NodeId j) {
      if (!ok) return;
      const auto rj = rel.row(j);
      for (std::size_t w = 0; w < ri.size(); ++w) {
        if ((rj[w] & ~ri[w]) != 0) {
          ok = false;
          return;
        }
      }
    });
    if (!ok) return false;
  }
  return true;
}

// Smallest transitive relation containing rel.
inline Relation transitive_closure(const Relation& rel) {
  Relation out = rel;
  const std::size_t n = rel.size();
  for (NodeId k = 0; k < n; ++k) {
    for (NodeId i = 0; i < n; ++i) {
      if (i != k && out.test(i, k)) out.merge_row(i, k);
    }
  }
  return out;
}

// Transitive reduction of a transitive DAG on num_classes vertices. Keeps
// (a, b) iff no c with (a, c) and (c, b).
inline std::vector<std::pair<std::size_t, std::size_t>> transitive_reduction(
    std::size_t num_classes,
    std::span<const std::pair<std::size_t, std::size_t>> arcs) {
  std::vector<std::vector<char>> adj(num_classes,
                                     std::vector<char>(num_classes, 0));
  for (const auto& [a, b] : arcs) {
    if (a >= num_classes || b >= num_classes) {
      throw InputError("arc endpoint out of range");
    }
    if (a == b) throw InputError("cyclic input: self-loop on class " +
                                 std::to_string(a));
    adj[a][b] = 1;
  }
  // Kahn's algorithm for acyclicity.
  std::vector<std::size_t> indegree(num_classes, 0);
  for (std::size_t a = 0; a < num_classes; ++a) {
    for (std::size_t b = 0; b < num_classes; ++b) indegree[b] += adj[a][b];
  }
  std::vector<std::size_t> ready;
  for (std::size_t a = 0; a < num_classes; ++a) {
    if (indegree[a] == 0) ready.push_back(a);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t a = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t b = 0; b < num_classes; ++b) {
      if (adj[a][b] && --indegree[b] == 0) ready.push_back(b);
    }
  }
  if (seen != num_classes) throw InputError("cyclic input to transitive reduction");
  for (std::size_t a = 0; a < num_classes; ++a) {
    for (std::size_t c = 0; c < num_classes; ++c) {
      if (!adj[a][c]) continue;
      for (std::size_t b = 0; b < num_classes; ++b) {
        if (adj[c][b] && !adj[a][b]) {
          throw InputError("transitive reduction requires a transitive input");
        }
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < num_classes; ++a) {
    for (std::size_t b = 0; b < num_classes; ++b) {
      if (!adj[a][b]) continue;
      bool implied = false;
      for (std::size_t c = 0; c < num_classes && !implied; ++c) {
        implied = adj[a][c] && adj[c][b];
      }
      if (!implied) out.emplace_back(a, b);
    }
  }
  return out;
}

// Splits a preorder into its equivalence classes and the strict partial order
// between them.
inline ClusteredOrder decompose(const Relation& rel) {
  if (!verify_preorder(rel)) throw InputError("decompose requires a preorder");
  const std::size_t n = rel.size();
  ClusteredOrder out;
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  out.class_of.assign(n, kUnassigned);
  for (NodeId i = 0; i < n; ++i) {
    if (out.class_of[i] != kUnassigned) continue;
    const std::size_t id = out.classes.size();
    out.classes.emplace_back();
    for (NodeId j = i; j < n; ++j) {
      if (rel.test(i, j) && rel.test(j, i)) {
        out.class_of[j] = id;
        out.classes[id].push_back(j);
      }
    }
  }
  const std::size_t k = out.classes.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b && rel.test(out.classes[a].front(), out.classes[b].front())) {
        out.dag.emplace_back(a, b);
      }
    }
  }
  out.reduction = transitive_reduction(k, out.dag);
  return out;
}

// Inverse of decompose(): every intra-class pair plus every expanded dag arc.
inline Relation recompose(const ClusteredOrder& order) {
  const std::size_t n = order.class_of.size();
  Relation rel = Relation::identity(n);
  for (const auto& members : order.classes) {
    for (NodeId i : members) {
      for (NodeId j : members) rel.set(i, j);
    }
  }
  for (const auto& [a, b] : order.dag) {
    for (NodeId i : order.classes[a]) {
      for (NodeId j : order.classes[b]) rel.set(i, j);
    }
  }
  return rel;
}

using NodeSet = std::vector<NodeId>;

// Family {S_i = {j : x_ij = 1}} whose dicuts cover exactly the unrelated
// ordered pairs of a preorder.
inline std::vector<NodeSet> dicut_cover(const Relation& rel) {
  if (!verify_preorder(rel)) throw InputError("dicut_cover requires a preorder");
  std::vector<NodeSet> family(rel.size());
  for (NodeId i = 0; i < rel.size(); ++i) {
    rel.for_each_in_row(i, [&](NodeId j) { family[i].push_back(j); });
  }
  return family;
}

// The relation x with x_ij = 0 iff ij lies in some dicut delta(S), S in family.
// Always a preorder.
inline Relation complement_of_dicut_union(std::size_t n,
                                          std::span<const NodeSet> family) {
  Relation rel = Relation::complete(n);
  std::vector<char> inside(n);
  for (const NodeSet& s : family) {
    std::fill(inside.begin(), inside.end(), 0);
    for (NodeId v : s) {
      if (v >= n) throw InputError("node set member out of range");
      inside[v] = 1;
    }
    for (NodeId i = 0; i < n; ++i) {
      if (!inside[i]) continue;
      for (NodeId j = 0; j < n; ++j) {
        if (!inside[j]) rel.set(i, j, false);
      }
    }
  }
  return rel;
}

// Fills objective, B(c) and the transitivity interval of a report.
inline void finalize_report(const Instance& inst, const Relation& rel,
                            RunReport& report) {
  report.objective = evaluate_objective(inst, rel);
  report.bound_B = positive_part_bound(inst);
  const double lb = std::max(0.0, report.objective);
  double ub = report.upper_bound.value_or(report.bound_B);
  ub = std::max(ub, lb);
  const auto [lo, hi] = transitivity_interval(lb, ub, report.bound_B);
  report.transitivity_lower = lo;
  report.transitivity_upper = hi;
}

}  // namespace preorder
