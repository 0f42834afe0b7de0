// Copyright 2026 the onts authors
//
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

#include <span>
#include <vector>

#include "onts/gnn.hpp"
#include "onts/solver.hpp"

namespace onts {

/// Prediction confidence: kappa = p when p >= 0.5, else 1 - p.
/// Inputs must lie strictly inside (0, 1); kappa lies in [0.5, 1).
std::vector<double> confidence(std::span<const double> probs);

/// Rounded predictions on the n most confident indices; confidence ties
/// break toward the lower index. Rounding sends p >= 0.5 to 1.
PartialAssignment partial_solution(std::span<const double> probs, int n);

enum class HeuristicMode { kWarm, kFix, kTrust };

const char* heuristic_mode_name(HeuristicMode m);

/// Runs the bias model on the instance and feeds the n most confident
/// predictions to the solver: as a branching hint (kWarm, exactness
/// preserved), as fixings (kFix), or as a trust-region center of radius
/// delta (kTrust). The fixing and trust modes are matheuristics and may
/// come back infeasible or suboptimal.
SolutionPool run_heuristic(const Instance& inst, const ModelParams& model,
                           HeuristicMode mode, int n, int delta = 1,
                           const SolveOptions& base = {});

/// Default partial-solution size, floor(0.2 * 2JT).
int default_partial_size(const Instance& inst);

}  // namespace onts
