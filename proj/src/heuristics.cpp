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

#include "onts/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "onts/bipartite_graph.hpp"

namespace onts {

std::vector<double> confidence(std::span<const double> probs) {
  std::vector<double> kappa(probs.size());
  for (size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!(p > 0.0 && p < 1.0))
      throw std::invalid_argument("confidence: probability outside (0, 1)");
    kappa[i] = p >= 0.5 ? p : 1.0 - p;
  }
  return kappa;
}

PartialAssignment partial_solution(std::span<const double> probs, int n) {
  if (n < 0 || n > static_cast<int>(probs.size()))
    throw std::invalid_argument("partial_solution: n out of range");
  const std::vector<double> kappa = confidence(probs);
  std::vector<int> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&kappa](int a, int b) {
    return kappa[a] > kappa[b];
  });
  PartialAssignment partial;
  partial.indices.reserve(n);
  partial.values.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int idx = order[i];
    partial.set(idx, probs[idx] >= 0.5 ? 1 : 0);
  }
  return partial;
}

const char* heuristic_mode_name(HeuristicMode m) {
  switch (m) {
    case HeuristicMode::kWarm: return "warm";
    case HeuristicMode::kFix: return "fix";
    case HeuristicMode::kTrust: return "trust";
  }
  return "unknown";
}

SolutionPool run_heuristic(const Instance& inst, const ModelParams& model,
                           HeuristicMode mode, int n, int delta,
                           const SolveOptions& base) {
  if (model.config.task != TaskKind::kBias)
    throw std::invalid_argument("run_heuristic: model must be a bias model");

  const StandardForm sf = build_standard_form(inst);
  const BipartiteGraph graph = encode_bipartite(sf);
  const ForwardResult out = forward(model, graph);
  const PartialAssignment partial = partial_solution(out.node_probs, n);

  SolveOptions opts = base;
  switch (mode) {
    case HeuristicMode::kWarm:
      opts.warm_hint = partial;
      break;
    case HeuristicMode::kFix:
      opts.fixings = partial;
      break;
    case HeuristicMode::kTrust:
      opts.trust_center = partial;
      opts.trust_delta = delta;
      break;
  }
  return solve_bb(inst, opts);
}

int default_partial_size(const Instance& inst) {
  return (2 * inst.num_jobs * inst.horizon) / 5;
}

}  // namespace onts
