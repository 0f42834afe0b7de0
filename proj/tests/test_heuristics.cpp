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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "onts/heuristics.hpp"
#include "onts/instance_gen.hpp"

using namespace onts;

namespace {

std::set<std::vector<std::uint8_t>> pool_set(const SolutionPool& pool) {
  std::set<std::vector<std::uint8_t>> out;
  for (const PooledSolution& p : pool.solutions) out.insert(p.z.flat());
  return out;
}

ModelParams seeded_bias_model(std::uint64_t seed) {
  SatGNNConfig cfg;
  cfg.hidden_dim = 8;
  cfg.num_layers = 2;
  cfg.conv = ConvKind::kSage;
  cfg.aggregation = Aggregation::kMean;
  cfg.share_conv_params = true;
  cfg.task = TaskKind::kBias;
  cfg.seed = seed;
  return ModelParams::init(cfg);
}

}  // namespace

TEST_CASE("confidence folds probabilities onto [0.5, 1)") {
  const std::vector<double> probs{0.5, 0.9, 0.1, 0.42};
  const auto kappa = confidence(probs);
  CHECK(kappa[0] == 0.5);
  CHECK(kappa[1] == 0.9);
  CHECK(kappa[2] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(kappa[3] == doctest::Approx(0.58).epsilon(1e-15));

  // Symmetry under p -> 1-p.
  std::vector<double> flipped(probs.size());
  std::transform(probs.begin(), probs.end(), flipped.begin(),
                 [](double p) { return 1.0 - p; });
  const auto kappa_flipped = confidence(flipped);
  for (size_t i = 0; i < probs.size(); ++i)
    CHECK(kappa[i] == doctest::Approx(kappa_flipped[i]).epsilon(1e-15));

  CHECK_THROWS_AS(confidence(std::vector<double>{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(confidence(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("partial_solution keeps the most confident indices") {
  const std::vector<double> probs{0.99, 0.6, 0.01};

  SUBCASE("documented example") {
    const PartialAssignment partial = partial_solution(probs, 2);
    REQUIRE(partial.size() == 2);
    CHECK(partial.indices == std::vector<int>{0, 2});
    CHECK(partial.values == std::vector<std::uint8_t>{1, 0});
  }

  SUBCASE("boundaries") {
    CHECK(partial_solution(probs, 0).empty());
    const PartialAssignment full = partial_solution(probs, 3);
    CHECK(full.size() == 3);
    CHECK_THROWS_AS(partial_solution(probs, 4), std::invalid_argument);
    CHECK_THROWS_AS(partial_solution(probs, -1), std::invalid_argument);
  }

  SUBCASE("ties break toward the lower index") {
    const std::vector<double> tied{0.2, 0.8, 0.8, 0.2};
    const PartialAssignment partial = partial_solution(tied, 2);
    CHECK(partial.indices == std::vector<int>{0, 1});
  }
}

TEST_CASE("confidence selections are nested across sizes") {
  const std::vector<double> probs{0.93, 0.48, 0.77, 0.04, 0.52, 0.61};
  std::set<int> previous;
  for (int n = 0; n <= 6; ++n) {
    const PartialAssignment partial = partial_solution(probs, n);
    const std::set<int> current(partial.indices.begin(), partial.indices.end());
    CHECK(std::includes(current.begin(), current.end(), previous.begin(),
                        previous.end()));
    previous = current;
  }
}

TEST_CASE("warm mode never changes the optimal value") {
  const ModelParams model = seeded_bias_model(1);
  int tested = 0;
  for (std::uint64_t seed = 0; seed < 12 && tested < 5; ++seed) {
    const Instance inst = random_instance(2, 6, seed);
    SolveOptions plain;
    plain.pool_size = 1;
    const SolutionPool base = solve_bb(inst, plain);
    if (base.status != SolveStatus::kOptimal) continue;
    ++tested;
    const SolutionPool warm = run_heuristic(
        inst, model, HeuristicMode::kWarm, default_partial_size(inst), 1, plain);
    REQUIRE(warm.status == SolveStatus::kOptimal);
    CHECK(warm.best_qos() == base.best_qos());
  }
  CHECK(tested == 5);
}

TEST_CASE("trust radius zero reproduces the early-fix pool") {
  const ModelParams model = seeded_bias_model(2);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Instance inst = random_instance(2, 5, seed);
    SolveOptions base;
    base.pool_size = 5;
    const int n = default_partial_size(inst);
    const SolutionPool fixed =
        run_heuristic(inst, model, HeuristicMode::kFix, n, 0, base);
    const SolutionPool trust =
        run_heuristic(inst, model, HeuristicMode::kTrust, n, 0, base);
    CHECK(pool_set(fixed) == pool_set(trust));
  }
}

TEST_CASE("a trust region spanning the whole partial is vacuous") {
  const ModelParams model = seeded_bias_model(3);
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    const Instance inst = random_instance(2, 5, seed);
    SolveOptions plain;
    plain.pool_size = 1;
    const SolutionPool base = solve_bb(inst, plain);
    if (base.status != SolveStatus::kOptimal) continue;
    const int n = default_partial_size(inst);
    const SolutionPool trust =
        run_heuristic(inst, model, HeuristicMode::kTrust, n, n, plain);
    REQUIRE(trust.status == SolveStatus::kOptimal);
    CHECK(trust.best_qos() == base.best_qos());
  }
}

TEST_CASE("run_heuristic insists on a bias model") {
  SatGNNConfig cfg;
  cfg.task = TaskKind::kFeasibility;
  const ModelParams feas_model = ModelParams::init(cfg);
  const Instance inst = random_instance(1, 4, 0);
  CHECK_THROWS_AS(run_heuristic(inst, feas_model, HeuristicMode::kWarm, 2),
                  std::invalid_argument);
}

TEST_CASE("default partial size follows the scaled rule") {
  CHECK(default_partial_size(random_instance(2, 10, 0)) == 8);   // 40/5
  CHECK(default_partial_size(random_instance(3, 12, 0)) == 14);  // 72/5
}
