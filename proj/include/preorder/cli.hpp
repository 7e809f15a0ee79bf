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

// Command dispatch for the `preorder` tool. Exit codes: 0 success, 1 usage
// error, 2 input error, 3 resource limit, 4 internal or numerical failure.
// Diagnostics go to the error stream; JSON and DOT go to the output stream.

#include <chrono>
#include <cstddef>
#include <exception>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "preorder/core.hpp"
#include "preorder/dicut.hpp"
#include "preorder/error.hpp"
#include "preorder/exact.hpp"
#include "preorder/gaf.hpp"
#include "preorder/gai.hpp"
#include "preorder/gm.hpp"
#include "preorder/io.hpp"
#include "preorder/relax.hpp"

namespace preorder {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitLimit = 3,
  kExitInternal = 4,
};

namespace cli {

struct InputOptions {
  std::string format = "auto";
  std::string model = "unit";
  double offset = 0.01;
  std::size_t nodes = 0;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool looks_like_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto tokens = detail::tokenize(line);
    if (!tokens.empty()) return tokens[0] == "preorder";
  }
  return false;
}

inline Instance load(const std::string& path, const InputOptions& opts) {
  std::string format = opts.format;
  if (format == "auto") format = looks_like_instance_file(path) ? "instance" : "edges";
  if (format == "instance") return load_instance(path);
  const ValueModel model =
      opts.model == "unit" ? ValueModel::unit() : ValueModel::with_offset(opts.offset);
  return load_edge_list(path, model, opts.nodes);
}

inline Mode parse_mode(const std::string& mode) {
  if (mode == "clustering") return Mode::kClustering;
  if (mode == "partial-order") return Mode::kPartialOrder;
  return Mode::kPreorder;
}

struct SolveOptions {
  std::string algorithm = "gdc+gai";
  std::string mode = "preorder";
  std::string bound = "none";
  std::size_t max_walk_length = 5;
  std::size_t exact_limit = 7;
  std::size_t bnb_limit = 15;
};

inline SolveResult run_heuristic(const Instance& inst, const std::string& alg) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> stages;
  std::stringstream ss(alg);
  for (std::string part; std::getline(ss, part, '+');) stages.push_back(part);

  SolveResult current{Relation::identity(inst.size()), {}};
  std::size_t iterations = 0;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const std::string& stage = stages[s];
    if (stage == "gdc" && s == 0) {
      current = four_approx_preorder(inst);
    } else if (stage == "gaf" && s == 0) {
      GafResult r = run_gaf(inst);
      current = {std::move(r.relation), std::move(r.report)};
    } else if (stage == "gai") {
      current = run_gai(inst, current.relation);
    } else if (stage == "gm") {
      current = run_gm(inst, current.relation);
    } else {
      throw UsageError("unknown algorithm '" + alg + "'");
    }
    iterations += current.report.iterations;
  }
  current.report.algorithm = alg;
  current.report.iterations = iterations;
  current.report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return current;
}

inline Json solve_one(const Instance& inst, const SolveOptions& opts,
                      std::string* dot_out) {
  const auto start = std::chrono::steady_clock::now();
  const bool exact = opts.algorithm == "exact" || opts.algorithm == "bnb";
  if (!exact && opts.mode != "preorder") {
    throw UsageError("mode '" + opts.mode + "' needs --alg exact or --alg bnb");
  }
  SolveResult result{Relation::identity(inst.size()), {}};
  if (exact) {
    ExactSolver solver;
    if (opts.algorithm == "exact") {
      solver = brute_force_solver({opts.exact_limit});
    } else {
      BranchAndBoundOptions bnb;
      bnb.max_nodes = opts.bnb_limit;
      solver = [bnb](const Instance& i, Mode m) {
        return branch_and_bound(i, m, lp_bound_provider(), bnb);
      };
    }
    if (opts.mode == "successive") {
      result.relation = successive_cluster_then_order(inst, solver).relation;
    } else {
      const Mode mode = parse_mode(opts.mode);
      result.relation = solver(inst, mode).relation;
      if (mode == Mode::kPreorder) {
        result.report.upper_bound = evaluate_objective(inst, result.relation);
      }
    }
    result.report.algorithm = opts.algorithm;
    result.report.iterations = 1;
  } else {
    result = run_heuristic(inst, opts.algorithm);
  }
  if (opts.bound != "none" && opts.mode == "preorder" && !result.report.upper_bound) {
    CuttingPlaneOptions cp;
    cp.use_ocw = opts.bound == "ocw";
    cp.max_walk_length = opts.max_walk_length;
    result.report.upper_bound = cutting_plane_bound(inst, cp).upper_bound;
  }
  finalize_report(inst, result.relation, result.report);
  result.report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json j = report_json(result.report, result.relation,
                       inst.has_labels() ? inst.labels() : std::vector<std::string>{});
  Json out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out[it.key()] = it.value();
    if (it.key() == "algorithm") out["mode"] = opts.mode;
  }
  if (dot_out != nullptr) {
    *dot_out = export_dot(result.relation,
                          inst.has_labels() ? inst.labels() : std::vector<std::string>{});
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace cli

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Solvers and bounds for the maximum-value preordering problem", "preorder"};
  app.require_subcommand(1);

  cli::InputOptions input;
  auto add_input_options = [&input](CLI::App* sub) {
    sub->add_option("--format", input.format, "Input format")
        ->check(CLI::IsMember({"auto", "instance", "edges"}));
    sub->add_option("--model", input.model, "Edge-list value model")
        ->check(CLI::IsMember({"unit", "offset"}));
    sub->add_option("--offset", input.offset, "Offset d for the offset model");
    sub->add_option("--nodes", input.nodes, "Pre-register nodes 0..N-1 for edge lists");
  };

  std::vector<std::string> solve_inputs;
  std::string solve_dot;
  std::size_t jobs = 1;
  cli::SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Compute a feasible preorder");
  solve_cmd->add_option("input", solve_inputs, "Input files")->required();
  solve_cmd->add_option("--alg", solve.algorithm, "Algorithm or X+Y pipeline")
      ->check(CLI::IsMember({"gdc", "gaf", "gai", "gm", "gdc+gai", "gdc+gm", "gaf+gai",
                             "gaf+gm", "exact", "bnb"}));
  solve_cmd->add_option("--mode", solve.mode, "Problem variant")
      ->check(CLI::IsMember({"preorder", "clustering", "partial-order", "successive"}));
  solve_cmd->add_option("--bound", solve.bound, "Also compute an LP upper bound")
      ->check(CLI::IsMember({"none", "triangle", "ocw"}));
  solve_cmd->add_option("--max-walk-length", solve.max_walk_length,
                        "Longest odd closed walk for --bound ocw");
  solve_cmd->add_option("--exact-limit", solve.exact_limit, "Node limit for --alg exact");
  solve_cmd->add_option("--bnb-limit", solve.bnb_limit, "Node limit for --alg bnb");
  solve_cmd->add_option("--dot", solve_dot, "Also write the class order as DOT");
  solve_cmd->add_option("--jobs", jobs, "Solve several inputs concurrently")
      ->check(CLI::PositiveNumber);
  add_input_options(solve_cmd);

  std::string bound_input;
  std::string cuts = "triangle";
  std::string bound_mode = "preorder";
  std::size_t walk_length = 3;
  std::size_t round_cap = 100;
  CLI::App* bound_cmd = app.add_subcommand("bound", "LP cutting-plane upper bound");
  bound_cmd->add_option("input", bound_input, "Input file")->required();
  bound_cmd->add_option("--cuts", cuts, "Cut families")
      ->check(CLI::IsMember({"triangle", "ocw"}));
  bound_cmd->add_option("--max-walk-length", walk_length, "Longest odd closed walk")
      ->check(CLI::Range(3, 1001));
  bound_cmd->add_option("--mode", bound_mode, "Problem variant")
      ->check(CLI::IsMember({"preorder", "clustering", "partial-order"}));
  bound_cmd->add_option("--round-cap", round_cap, "Maximum cut rounds");
  add_input_options(bound_cmd);

  std::string stats_input;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Instance size and B(c)");
  stats_cmd->add_option("input", stats_input, "Input file")->required();
  add_input_options(stats_cmd);

  std::string dot_input;
  std::string dot_output;
  cli::SolveOptions dot_solve;
  CLI::App* dot_cmd = app.add_subcommand("export-dot", "Solve and print the class order as DOT");
  dot_cmd->add_option("input", dot_input, "Input file")->required();
  dot_cmd->add_option("--alg", dot_solve.algorithm, "Algorithm or X+Y pipeline")
      ->check(CLI::IsMember({"gdc", "gaf", "gai", "gm", "gdc+gai", "gdc+gm", "gaf+gai",
                             "gaf+gm", "exact", "bnb"}));
  dot_cmd->add_option("--output", dot_output, "Write to a file instead of stdout");
  add_input_options(dot_cmd);

  std::size_t count_n = 0;
  CLI::App* count_cmd = app.add_subcommand("count-preorders", "Count preorders on n nodes");
  count_cmd->add_option("--n", count_n, "Node count")->required();

  std::vector<const char*> argv;
  argv.push_back("preorder");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "preorder: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      if (solve_inputs.size() > 1 && !solve_dot.empty()) {
        throw cli::UsageError("--dot takes a single input");
      }
      if (solve.max_walk_length < 3 || solve.max_walk_length % 2 == 0) {
        throw cli::UsageError("--max-walk-length must be odd and at least 3");
      }
      std::vector<Json> results(solve_inputs.size());
      std::string dot;
      auto work = [&](std::size_t k) {
        const Instance inst = cli::load(solve_inputs[k], input);
        return cli::solve_one(inst, solve, solve_dot.empty() ? nullptr : &dot);
      };
      for (std::size_t begin = 0; begin < solve_inputs.size(); begin += jobs) {
        const std::size_t end = std::min(solve_inputs.size(), begin + jobs);
        std::vector<std::future<Json>> batch;
        for (std::size_t k = begin; k < end; ++k) {
          batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                     work, k));
        }
        for (std::size_t k = begin; k < end; ++k) results[k] = batch[k - begin].get();
      }
      if (!solve_dot.empty()) cli::write_file(solve_dot, dot);
      if (results.size() == 1) {
        out << results.front().dump(2) << "\n";
      } else {
        Json keyed;
        for (std::size_t k = 0; k < results.size(); ++k) keyed[solve_inputs[k]] = results[k];
        out << keyed.dump(2) << "\n";
      }
    } else if (bound_cmd->parsed()) {
      if (cuts == "ocw" && walk_length % 2 == 0) {
        throw cli::UsageError("--max-walk-length must be odd");
      }
      const Instance inst = cli::load(bound_input, input);
      CuttingPlaneOptions cp;
      cp.use_ocw = cuts == "ocw";
      cp.max_walk_length = walk_length;
      cp.round_cap = round_cap;
      cp.mode = cli::parse_mode(bound_mode);
      const auto start = std::chrono::steady_clock::now();
      const CuttingPlaneResult r = cutting_plane_bound(inst, cp);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const double B = positive_part_bound(inst);
      Json j;
      j["cuts"] = cuts;
      j["mode"] = bound_mode;
      j["n"] = inst.size();
      j["upper_bound"] = r.upper_bound;
      j["bound_B"] = B;
      j["transitivity_upper"] = B == 0.0 ? 1.0 : std::min(1.0, r.upper_bound / B);
      j["rounds"] = r.rounds;
      j["rows"] = r.rows;
      j["round_cap_reached"] = r.round_cap_reached;
      j["timing"] = {{"wall_time_s", seconds}};
      out << j.dump(2) << "\n";
    } else if (stats_cmd->parsed()) {
      const Instance inst = cli::load(stats_input, input);
      std::size_t positive = 0;
      for (double v : inst.values()) positive += v > 0.0;
      Json j;
      j["n"] = inst.size();
      j["pairs"] = pair_count(inst.size());
      j["positive_pairs"] = positive;
      j["bound_B"] = positive_part_bound(inst);
      out << j.dump(2) << "\n";
    } else if (dot_cmd->parsed()) {
      const Instance inst = cli::load(dot_input, input);
      std::string dot;
      cli::solve_one(inst, dot_solve, &dot);
      if (dot_output.empty()) {
        out << dot;
      } else {
        cli::write_file(dot_output, dot);
      }
    } else if (count_cmd->parsed()) {
      Json j;
      j["n"] = count_n;
      j["preorders"] = count_preorders(count_n);
      out << j.dump(2) << "\n";
    }
  } catch (const cli::UsageError& e) {
    err << "preorder: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "preorder: " << e.what() << "\n";
    return kExitInput;
  } catch (const LimitError& e) {
    err << "preorder: " << e.what() << "\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    err << "preorder: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace preorder
