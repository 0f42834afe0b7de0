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

#include <vector>

#include "onts/standard_form.hpp"

namespace onts {

/// Variable node feature columns, in order:
///   0 objective coefficient, 1 mean nonzero column coefficient, 2 degree,
///   3 max nonzero, 4 min nonzero, 5 binary flag, [6 candidate value].
/// Constraint node feature columns:
///   0 rhs, 1 mean nonzero row coefficient, 2 degree, 3 equality flag.
inline constexpr int kVarFeatureDim = 6;
inline constexpr int kConFeatureDim = 4;

/// Weighted variable/constraint graph of a model. Edges connect constraint
/// nodes to variable nodes at the nonzero matrix coefficients; there are no
/// intra-set edges. Features are raw (unstandardized); the learning code
/// standardizes per column.
struct BipartiteGraph {
  struct Edge {
    int con;
    int var;
    double weight;
  };

  int n_var = 0;
  int n_con = 0;
  int n_binary = 0;       // binary variable nodes come first
  int var_feature_dim = kVarFeatureDim;  // 7 with a candidate column
  std::vector<Edge> edges;
  std::vector<double> var_features;  // n_var x var_feature_dim, row-major
  std::vector<double> con_features;  // n_con x kConFeatureDim, row-major

  double var_feature(int v, int f) const {
    return var_features[v * var_feature_dim + f];
  }
  double con_feature(int c, int f) const {
    return con_features[c * kConFeatureDim + f];
  }
  bool has_candidate() const { return var_feature_dim == kVarFeatureDim + 1; }
};

/// Embeds the model as a weighted bipartite graph. Inequality rows are
/// normalized to <= orientation (>= rows have their coefficients and rhs
/// negated) so that coefficient signs carry consistent meaning; equality
/// rows keep their sign and set the equality flag. Coefficient statistics
/// (mean/max/min) are taken over nonzero entries only; isolated rows or
/// columns get zeros. When `candidate` is given, its flat z vector is
/// appended as a seventh variable feature (0 for the continuous nodes).
BipartiteGraph encode_bipartite(const StandardForm& sf,
                                const CandidateSolution* candidate = nullptr);

}  // namespace onts
