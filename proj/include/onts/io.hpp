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

#include <filesystem>
#include <string>

#include "onts/bipartite_graph.hpp"
#include "onts/gnn.hpp"
#include "onts/instance.hpp"
#include "onts/solver.hpp"

namespace onts::io {

// Instance JSON:
// {"J","T","jobs":[{"u","q","y_min","y_max","t_min","t_max","p_min","p_max",
//  "w_min","w_max"}],"r":[...],"battery":{"e","Q","gamma","V_b","rho",
//  "soc_initial"}}
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

// Solution CSV: header "j,t,x,phi", one row per (j, t), 1-based indices.
std::string solution_to_csv(const CandidateSolution& z);
CandidateSolution solution_from_csv(const std::string& text);
void save_solution(const CandidateSolution& z, const std::filesystem::path& path);
CandidateSolution load_solution(const std::filesystem::path& path);

// Pool CSV: a "# status=... nodes=... time_to_first=..." summary line, then
// "rank,qos,z" rows with z as a flat 2JT bit string (x block then phi).
std::string pool_to_csv(const SolutionPool& pool, int num_jobs, int horizon);
SolutionPool pool_from_csv(const std::string& text, int num_jobs, int horizon);
void save_pool(const SolutionPool& pool, int num_jobs, int horizon,
               const std::filesystem::path& path);
SolutionPool load_pool(const std::filesystem::path& path, int num_jobs,
                       int horizon);

// Graph JSON: {"n_var","n_con","edges":[[con,var,w]...],
//  "var_features":[[...]...],"con_features":[[...]...]}
std::string graph_to_json(const BipartiteGraph& graph);

// Model JSON: {"config":{...},"tensors":[{"name","rows","cols","data"}...]}
std::string model_to_json(const ModelParams& params);
ModelParams model_from_json(const std::string& text);
void save_model(const ModelParams& params, const std::filesystem::path& path);
ModelParams load_model(const std::filesystem::path& path);

// Training history CSV: "epoch,train_loss,val_loss".
std::string history_to_csv(const TrainReport& report);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace onts::io
