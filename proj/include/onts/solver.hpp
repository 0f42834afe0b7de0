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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "onts/instance.hpp"

namespace onts {

/// Values for a subset of the 2*J*T flat z indices (x block then phi block).
struct PartialAssignment {
  std::vector<int> indices;
  std::vector<std::uint8_t> values;

  size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  void set(int index, std::uint8_t value) {
    indices.push_back(index);
    values.push_back(value);
  }
};

struct SolveOptions {
  double time_limit_s = 10.0;
  int pool_size = 1;                       // K
  std::uint64_t node_limit = ~0ull;
  PartialAssignment fixings;               // substituted before search
  std::optional<PartialAssignment> trust_center;  // with trust_delta
  int trust_delta = 0;
  std::optional<PartialAssignment> warm_hint;     // branch ordering only
};

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kLimit };

struct PooledSolution {
  CandidateSolution z;
  double qos = 0.0;
};

struct SolutionPool {
  std::vector<PooledSolution> solutions;  // qos descending, first-found ties
  SolveStatus status = SolveStatus::kInfeasible;
  std::uint64_t nodes_explored = 0;
  std::optional<double> time_to_first_feasible_s;
  std::string note;  // diagnostic, e.g. why fixings are contradictory

  bool empty() const { return solutions.empty(); }
  double best_qos() const { return solutions.front().qos; }
};

const char* status_name(SolveStatus s);

/// Ground-truth oracle: enumerates every activation matrix (phi derived),
/// keeps all feasible schedules up to pool_size sorted by QoS. Guarded to
/// J*T <= 20.
SolutionPool brute_force(const Instance& inst, int pool_size = 1000);

/// Depth-first branch-and-bound over the x variables with phi derived.
/// Exact on completion: status kOptimal means the best pooled QoS is the
/// true optimum (subject to fixings / trust region). Search order is
/// time-major with jobs by descending priority; a warm hint only reorders
/// the two branch values of hinted variables. phi fixings are propagated
/// onto x where the pattern is forced and verified at leaves.
SolutionPool solve_bb(const Instance& inst, const SolveOptions& opts = {});

}  // namespace onts
