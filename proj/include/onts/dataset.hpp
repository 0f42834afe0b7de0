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
#include <filesystem>
#include <vector>

#include "onts/gnn.hpp"
#include "onts/instance.hpp"
#include "onts/solver.hpp"

namespace onts {

struct DatasetGenOptions {
  int num_jobs = 2;
  int horizon = 10;
  int count = 10;          // accepted instances required
  std::uint64_t seed = 0;
  int pool_size = 50;
  double time_limit_s = 10.0;
  std::uint64_t node_limit = ~0ull;
  int n_random = 25;       // |Z_R| per instance
  int n_neighbor = 25;     // |Z_N| per instance
  int eta = 0;             // flip budget; < 1 selects max(1, 0.05 * 2JT)
  int attempt_cap_factor = 100;
  bool quiet = true;
};

struct DatasetGenResult {
  std::filesystem::path dir;  // <out_root>/<seed>
  int accepted = 0;
  int rejected = 0;
  int attempts = 0;
  bool completed = false;     // false when the attempt cap was hit
};

/// Generate-solve-filter loop: random instances are solved with a pooled,
/// time-limited search and kept only when at least one feasible solution was
/// found. Accepted instances are written as instance_<k>.json, pool_<k>.csv
/// and candidates_<k>.csv under <out_root>/<seed>/, plus a manifest.json.
DatasetGenResult generate_dataset(const std::filesystem::path& out_root,
                                  const DatasetGenOptions& opts);

struct LabeledCandidate {
  CandidateSolution z;
  int label = 0;  // 1 feasible, 0 not
};

/// Pool solutions (labeled by re-checking), then n_random uniform candidate
/// assignments over {0,1}^(2JT), then n_neighbor candidates built by
/// flipping 1..eta distinct bits of a uniformly chosen pool solution.
/// Labels always come from check_feasibility. eta must be >= 1; see
/// default_eta for the usual choice.
std::vector<LabeledCandidate> augment_candidates(
    const Instance& inst, const std::vector<PooledSolution>& pool,
    int n_random, int n_neighbor, int eta, std::uint64_t seed);

int default_eta(const Instance& inst);

/// One stored dataset entry.
struct DatasetEntry {
  Instance instance;
  SolutionPool pool;
  std::vector<LabeledCandidate> candidates;
};

std::vector<DatasetEntry> load_dataset(const std::filesystem::path& dir);

/// Feasibility samples: one graph per labeled candidate (candidate column
/// appended). A fraction `val_fraction` of each entry's candidates (the
/// trailing ones) goes to the validation split.
TrainData feasibility_data(const std::vector<DatasetEntry>& entries,
                           double val_fraction = 0.2);

/// Bias samples: one graph per instance; targets are the pool solutions
/// with softmax QoS weights (multi) or just the best one (best).
TrainData bias_data(const std::vector<DatasetEntry>& entries, bool multi,
                    double val_fraction = 0.2);

std::string candidates_to_csv(const std::vector<LabeledCandidate>& candidates);
std::vector<LabeledCandidate> candidates_from_csv(const std::string& text,
                                                  int num_jobs, int horizon);

}  // namespace onts
