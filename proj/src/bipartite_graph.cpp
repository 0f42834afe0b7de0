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

#include "onts/bipartite_graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace onts {

BipartiteGraph encode_bipartite(const StandardForm& sf,
                                const CandidateSolution* candidate) {
  const int n_var = sf.n_vars();
  const int n_con = sf.n_rows();

  BipartiteGraph g;
  g.n_var = n_var;
  g.n_con = n_con;
  g.var_feature_dim = candidate ? kVarFeatureDim + 1 : kVarFeatureDim;

  // Binary variables form a prefix of the variable order.
  int n_binary = 0;
  while (n_binary < n_var && sf.var_kinds[n_binary].is_binary) ++n_binary;
  for (int v = n_binary; v < n_var; ++v)
    if (sf.var_kinds[v].is_binary)
      throw std::logic_error("encode_bipartite: binary variable after a continuous one");
  g.n_binary = n_binary;

  std::vector<std::uint8_t> cand_flat;
  if (candidate) {
    if (candidate->num_jobs != sf.num_jobs || candidate->horizon != sf.horizon)
      throw std::invalid_argument("encode_bipartite: candidate dimension mismatch");
    cand_flat = candidate->flat();
  }

  for (int i = 0; i < n_con; ++i) {
    const Row& row = sf.rows[i];
    // Normalize >= rows to <= orientation.
    const double flip = row.sense == RowSense::kGe ? -1.0 : 1.0;
    for (const RowEntry& e : row.entries) {
      if (e.coeff == 0.0) continue;
      g.edges.push_back({i, e.col, flip * e.coeff});
    }
  }

  struct Stats {
    double sum = 0.0;
    double max = -std::numeric_limits<double>::infinity();
    double min = std::numeric_limits<double>::infinity();
    int degree = 0;
    void add(double w) {
      sum += w;
      max = std::max(max, w);
      min = std::min(min, w);
      ++degree;
    }
  };
  std::vector<Stats> var_stats(n_var), con_stats(n_con);
  for (const BipartiteGraph::Edge& e : g.edges) {
    if (e.var < 0 || e.var >= n_var || e.con < 0 || e.con >= n_con)
      throw std::logic_error("encode_bipartite: edge endpoint out of range");
    var_stats[e.var].add(e.weight);
    con_stats[e.con].add(e.weight);
  }

  g.var_features.assign(static_cast<size_t>(n_var) * g.var_feature_dim, 0.0);
  for (int v = 0; v < n_var; ++v) {
    const Stats& s = var_stats[v];
    double* f = &g.var_features[static_cast<size_t>(v) * g.var_feature_dim];
    f[0] = sf.objective[v];
    f[1] = s.degree > 0 ? s.sum / s.degree : 0.0;
    f[2] = s.degree;
    f[3] = s.degree > 0 ? s.max : 0.0;
    f[4] = s.degree > 0 ? s.min : 0.0;
    f[5] = sf.var_kinds[v].is_binary ? 1.0 : 0.0;
    if (candidate) f[6] = v < g.n_binary ? cand_flat[v] : 0.0;
  }

  g.con_features.assign(static_cast<size_t>(n_con) * kConFeatureDim, 0.0);
  for (int c = 0; c < n_con; ++c) {
    const Stats& s = con_stats[c];
    const Row& row = sf.rows[c];
    const double flip = row.sense == RowSense::kGe ? -1.0 : 1.0;
    double* f = &g.con_features[static_cast<size_t>(c) * kConFeatureDim];
    f[0] = flip * row.rhs;
    f[1] = s.degree > 0 ? s.sum / s.degree : 0.0;
    f[2] = s.degree;
    f[3] = row.sense == RowSense::kEq ? 1.0 : 0.0;
  }

  return g;
}

}  // namespace onts
