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

// File ingestion and export: edge lists with a value model, the plain
// instance format, Graphviz DOT of a preorder's class order, and JSON reports.
//
// Instance file:
//   preorder <n>
//   <i> <j> <c>        (0-based, i != j; unlisted pairs are 0)
// Edge list:
//   <u> <v> [<w>]      (labels are whitespace-free tokens, dense ids in
//                       first-seen order)
// '#' starts a comment in both formats.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "preorder/core.hpp"
#include "preorder/error.hpp"

namespace preorder {

struct ValueModel {
  enum class Kind { kUnit, kOffset };
  Kind kind = Kind::kUnit;
  double offset = 0.0;

  static ValueModel unit() { return {}; }
  static ValueModel with_offset(double d) { return {Kind::kOffset, d}; }
};

namespace detail {

inline std::vector<std::string_view> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

[[noreturn]] inline void fail_at(std::size_t line_no, const std::string& what) {
  throw InputError("line " + std::to_string(line_no) + ": " + what);
}

inline double parse_double(std::string_view token, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
    fail_at(line_no, "expected a finite number, got '" + std::string(token) + "'");
  }
  return v;
}

inline std::size_t parse_index(std::string_view token, std::size_t line_no) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail_at(line_no, "expected a node index, got '" + std::string(token) + "'");
  }
  return v;
}

inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

}  // namespace detail

// Builds an instance from an edge list. Unit model: +1 for listed arcs, -1 for
// every other pair. Offset model with d: w - d for listed arcs (w defaults to
// 1), -d for every other pair. min_nodes pre-registers labels "0".."min_nodes-1".
inline Instance parse_edge_list(std::istream& in, const ValueModel& model,
                                std::size_t min_nodes = 0) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  auto id_of = [&](std::string_view token) {
    const auto [it, inserted] = ids.emplace(std::string(token), labels.size());
    if (inserted) labels.emplace_back(token);
    return it->second;
  };
  for (std::size_t i = 0; i < min_nodes; ++i) id_of(std::to_string(i));

  std::map<std::pair<NodeId, NodeId>, double> arcs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 && tokens.size() != 3) {
      detail::fail_at(line_no, "expected 'u v' or 'u v w'");
    }
    const double w = tokens.size() == 3 ? detail::parse_double(tokens[2], line_no) : 1.0;
    if (tokens[0] == tokens[1]) {
      detail::fail_at(line_no, "self-loop on '" + std::string(tokens[0]) + "'");
    }
    const NodeId u = id_of(tokens[0]);
    const NodeId v = id_of(tokens[1]);
    if (!arcs.emplace(std::make_pair(u, v), w).second) {
      detail::fail_at(line_no, "duplicate edge '" + std::string(tokens[0]) + " " +
                                   std::string(tokens[1]) + "'");
    }
  }
  const std::size_t n = labels.size();
  if (n == 0) throw InputError("edge list defines no nodes");

  const bool unit = model.kind == ValueModel::Kind::kUnit;
  const double absent = unit ? -1.0 : -model.offset;
  std::vector<double> values(n * n, absent);
  for (NodeId i = 0; i < n; ++i) values[i * n + i] = 0.0;
  for (const auto& [key, w] : arcs) {
    values[key.first * n + key.second] = unit ? 1.0 : w - model.offset;
  }
  return Instance(n, std::move(values), std::move(labels));
}

inline Instance load_edge_list(const std::string& path, const ValueModel& model,
                               std::size_t min_nodes = 0) {
  auto in = detail::open_input(path);
  return parse_edge_list(in, model, min_nodes);
}

inline Instance parse_instance(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<double> values;
  std::set<std::pair<NodeId, NodeId>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 2 || tokens[0] != "preorder") {
        detail::fail_at(line_no, "expected header 'preorder <n>'");
      }
      n = detail::parse_index(tokens[1], line_no);
      if (n == 0) detail::fail_at(line_no, "instance needs at least one node");
      values.assign(n * n, 0.0);
      have_header = true;
      continue;
    }
    if (tokens.size() != 3) detail::fail_at(line_no, "expected 'i j c'");
    const NodeId i = detail::parse_index(tokens[0], line_no);
    const NodeId j = detail::parse_index(tokens[1], line_no);
    const double c = detail::parse_double(tokens[2], line_no);
    if (i >= n || j >= n) detail::fail_at(line_no, "node index out of range");
    if (i == j) detail::fail_at(line_no, "pair must join distinct nodes");
    if (!seen.emplace(i, j).second) detail::fail_at(line_no, "duplicate pair");
    values[i * n + j] = c;
  }
  if (!have_header) throw InputError("missing header 'preorder <n>'");
  return Instance(n, std::move(values));
}

inline Instance load_instance(const std::string& path) {
  auto in = detail::open_input(path);
  return parse_instance(in);
}

// Nonzero pairs in canonical order, shortest round-trip number formatting.
inline std::string write_instance(const Instance& inst) {
  std::string out = "preorder " + std::to_string(inst.size()) + "\n";
  for (NodeId i = 0; i < inst.size(); ++i) {
    for (NodeId j = 0; j < inst.size(); ++j) {
      if (i == j || inst(i, j) == 0.0) continue;
      out += std::to_string(i) + " " + std::to_string(j) + " " +
             detail::format_double(inst(i, j)) + "\n";
    }
  }
  return out;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace detail

// One node per class (members comma-joined, classes by smallest member) and
// one edge per transitive-reduction arc.
inline std::string export_dot(const Relation& rel,
                              const std::vector<std::string>& labels = {}) {
  if (!verify_preorder(rel)) throw InputError("export_dot requires a preorder");
  if (!labels.empty() && labels.size() != rel.size()) {
    throw InputError("label table size mismatch");
  }
  const ClusteredOrder order = decompose(rel);
  std::ostringstream out;
  out << "digraph preorder {\n";
  for (std::size_t a = 0; a < order.classes.size(); ++a) {
    std::string members;
    for (NodeId v : order.classes[a]) {
      if (!members.empty()) members += ",";
      members += labels.empty() ? std::to_string(v) : labels[v];
    }
    out << "  c" << a << " [label=\"" << detail::dot_escape(members) << "\"];\n";
  }
  for (const auto& [a, b] : order.reduction) {
    out << "  c" << a << " -> c" << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

using Json = nlohmann::ordered_json;

// Machine-readable report. Timing lives under "timing" only.
inline Json report_json(const RunReport& report, const Relation& rel,
                        const std::vector<std::string>& labels = {}) {
  Json j;
  j["algorithm"] = report.algorithm;
  j["n"] = rel.size();
  j["objective"] = report.objective;
  j["bound_B"] = report.bound_B;
  if (report.upper_bound) j["upper_bound"] = *report.upper_bound;
  j["transitivity"] = {{"lower", report.transitivity_lower},
                       {"upper", report.transitivity_upper}};
  j["iterations"] = report.iterations;
  const ClusteredOrder order = decompose(rel);
  Json classes = Json::array();
  for (const auto& members : order.classes) {
    Json c = Json::array();
    for (NodeId v : members) {
      if (labels.empty()) {
        c.push_back(v);
      } else {
        c.push_back(labels[v]);
      }
    }
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  Json arcs = Json::array();
  for (const auto& [a, b] : order.reduction) arcs.push_back({a, b});
  j["reduction_arcs"] = std::move(arcs);
  j["timing"] = {{"wall_time_s", report.wall_time}};
  return j;
}

}  // namespace preorder
