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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "onts/bipartite_graph.hpp"

namespace onts {

enum class ConvKind { kGcn, kSage };
enum class Aggregation { kMean, kMax, kSum };
enum class TaskKind { kFeasibility, kBias };
enum class LossMode { kFeas, kOptBest, kOptMulti };

struct SatGNNConfig {
  int hidden_dim = 8;  // d
  int num_layers = 1;  // L
  ConvKind conv = ConvKind::kGcn;
  Aggregation aggregation = Aggregation::kSum;  // used by SAGE only
  bool share_conv_params = false;
  TaskKind task = TaskKind::kFeasibility;
  double learning_rate = 1e-3;
  int max_epochs = 200;
  std::uint64_t seed = 0;
  /// Degree normalization of the gcn messages; tests that compare the two
  /// convolution kinds switch it off.
  bool gcn_normalize = true;

  int var_input_dim() const {
    return task == TaskKind::kFeasibility ? kVarFeatureDim + 1 : kVarFeatureDim;
  }
};

struct TensorSpec {
  std::string name;
  int rows = 0;
  int cols = 0;
  std::size_t offset = 0;
};

/// All trainable weights, stored flat with a named-tensor registry on top.
/// The flat layout keeps the optimizer, the gradient checker and the
/// serialization trivially uniform.
struct ModelParams {
  SatGNNConfig config;
  std::vector<TensorSpec> tensors;
  std::vector<double> values;

  std::span<double> tensor(std::string_view name);
  std::span<const double> tensor(std::string_view name) const;
  const TensorSpec& spec(std::string_view name) const;

  /// Registers all tensors for the configuration and initializes weights
  /// uniformly in +-sqrt(6/(fan_in+fan_out)), biases at zero, seeded.
  static ModelParams init(const SatGNNConfig& config);
};

struct ForwardResult {
  std::vector<double> logits;      // one per variable node
  std::vector<double> node_probs;  // per binary node (bias task), else empty
  double graph_prob = 0.5;         // feasibility task output
};

/// Two half-convolutions per layer: constraint nodes are updated from
/// variable messages, then variable nodes from the fresh constraint
/// features. Messages are scaled by the edge weight in both convolution
/// kinds. Features are standardized per column before the encoders.
ForwardResult forward(const ModelParams& params, const BipartiteGraph& graph);

/// Softmax weights over pool objective values, max-shifted for stability.
std::vector<double> solution_weights(const std::vector<double>& qos_values);

/// Supervision for one graph.
struct TrainingTarget {
  double feas_label = 0.0;  // kFeas
  std::vector<std::vector<std::uint8_t>> solutions;  // kOptBest: one entry
  std::vector<double> weights;                       // kOptMulti, sums to 1
};

struct Sample {
  BipartiteGraph graph;
  TrainingTarget target;
};

/// Mean loss over the batch. kFeas and kOptBest are mean binary
/// cross-entropies; kOptMulti weights the per-solution BCE by the pool
/// weights. Probabilities are clamped to [1e-12, 1 - 1e-12] inside the logs.
double loss(const ModelParams& params, std::span<const Sample> batch,
            LossMode mode);

/// Single-sample loss; when `grad` is given (sized like params.values) the
/// analytic gradient is accumulated into it.
double sample_loss(const ModelParams& params, const Sample& sample,
                   LossMode mode, std::vector<double>* grad = nullptr);

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct TrainReport {
  std::vector<EpochStats> history;
  int best_epoch = 0;
  double best_val_loss = 0.0;
};

struct TrainData {
  std::vector<Sample> train;
  std::vector<Sample> val;  // empty: validation falls back to the train set
};

/// Adam training (beta1=0.9, beta2=0.999, eps=1e-8) with exact manual
/// backpropagation. Returns the parameters with the best validation loss.
/// Feasibility-task runs stop early once the train loss drops below 1e-2.
/// Throws std::runtime_error on divergence (non-finite loss).
ModelParams train(const SatGNNConfig& config, const TrainData& data,
                  TrainReport* report = nullptr);

/// Compares the analytic gradient with central finite differences
/// (step 1e-5) on up to `n_probes` randomly chosen parameters and returns
/// the maximum relative error, denominator max(|a|, |n|, 1e-8).
double grad_check(const ModelParams& params, const Sample& sample,
                  LossMode mode, int n_probes = 128);

std::string_view conv_kind_name(ConvKind k);
std::string_view aggregation_name(Aggregation a);
std::string_view task_name(TaskKind t);

}  // namespace onts
