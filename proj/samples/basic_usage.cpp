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

// Solves a small instance with the fast pipeline and checks it against the
// exact optimum and an LP bound.

#include <iostream>

#include "preorder/preorder.hpp"

int main() {
  using namespace preorder;

  const Instance inst = Instance::from_rows({
      {0, 3, 0, 3, 0},
      {4, 0, -1, -1, 1},
      {-1, 0, 0, 2, 1},
      {-1, 0, 0, 0, 1},
      {-1, -1, 2, -1, 0},
  });

  const SolveResult start = four_approx_preorder(inst);
  const SolveResult improved = run_gai(inst, start.relation);
  const ExactResult optimum = brute_force_optimal(inst);

  CuttingPlaneOptions options;
  options.use_ocw = true;
  const CuttingPlaneResult bound = cutting_plane_bound(inst, options);

  std::cout << "dicut start:  " << start.report.objective << "\n"
            << "after gai:    " << improved.report.objective << "\n"
            << "optimum:      " << optimum.value << "\n"
            << "lp bound:     " << bound.upper_bound << "\n"
            << "B(c):         " << positive_part_bound(inst) << "\n\n"
            << export_dot(optimum.relation);
  return 0;
}
