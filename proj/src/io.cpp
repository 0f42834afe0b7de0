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

#include "onts/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace onts::io {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

ConvKind conv_from_name(const std::string& name) {
  if (name == "gcn") return ConvKind::kGcn;
  if (name == "sage") return ConvKind::kSage;
  throw std::invalid_argument("unknown conv kind '" + name + "'");
}

Aggregation aggregation_from_name(const std::string& name) {
  if (name == "mean") return Aggregation::kMean;
  if (name == "max") return Aggregation::kMax;
  if (name == "sum") return Aggregation::kSum;
  throw std::invalid_argument("unknown aggregation '" + name + "'");
}

TaskKind task_from_name(const std::string& name) {
  if (name == "feasibility") return TaskKind::kFeasibility;
  if (name == "bias") return TaskKind::kBias;
  throw std::invalid_argument("unknown task '" + name + "'");
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string instance_to_json(const Instance& inst) {
  ordered_json j;
  j["J"] = inst.num_jobs;
  j["T"] = inst.horizon;
  j["jobs"] = ordered_json::array();
  for (const JobParams& job : inst.jobs) {
    ordered_json jj;
    jj["u"] = job.u;
    jj["q"] = job.q;
    jj["y_min"] = job.y_min;
    jj["y_max"] = job.y_max;
    jj["t_min"] = job.t_min;
    jj["t_max"] = job.t_max;
    jj["p_min"] = job.p_min;
    jj["p_max"] = job.p_max;
    jj["w_min"] = job.w_min;
    jj["w_max"] = job.w_max;
    j["jobs"].push_back(std::move(jj));
  }
  j["r"] = inst.power;
  j["battery"] = {{"e", inst.battery.charge_efficiency},
                  {"Q", inst.battery.capacity},
                  {"gamma", inst.battery.discharge_limit},
                  {"V_b", inst.battery.bus_voltage},
                  {"rho", inst.battery.soc_min},
                  {"soc_initial", inst.battery.soc_initial}};
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  Instance inst;
  inst.num_jobs = j.at("J").get<int>();
  inst.horizon = j.at("T").get<int>();
  for (const auto& jj : j.at("jobs")) {
    JobParams job;
    job.u = jj.at("u").get<double>();
    job.q = jj.at("q").get<double>();
    job.y_min = jj.at("y_min").get<int>();
    job.y_max = jj.at("y_max").get<int>();
    job.t_min = jj.at("t_min").get<int>();
    job.t_max = jj.at("t_max").get<int>();
    job.p_min = jj.at("p_min").get<int>();
    job.p_max = jj.at("p_max").get<int>();
    job.w_min = jj.at("w_min").get<int>();
    job.w_max = jj.at("w_max").get<int>();
    inst.jobs.push_back(job);
  }
  inst.power = j.at("r").get<std::vector<double>>();
  const auto& b = j.at("battery");
  inst.battery.charge_efficiency = b.at("e").get<double>();
  inst.battery.capacity = b.at("Q").get<double>();
  inst.battery.discharge_limit = b.at("gamma").get<double>();
  inst.battery.bus_voltage = b.at("V_b").get<double>();
  inst.battery.soc_min = b.at("rho").get<double>();
  inst.battery.soc_initial = b.value("soc_initial", 1.0);
  validate_instance(inst);
  return inst;
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_file(path, instance_to_json(inst));
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_file(path));
}

std::string solution_to_csv(const CandidateSolution& z) {
  std::ostringstream out;
  out << "j,t,x,phi\n";
  for (int j = 0; j < z.num_jobs; ++j)
    for (int t = 0; t < z.horizon; ++t)
      out << (j + 1) << "," << (t + 1) << "," << int(z.x_at(j, t)) << ","
          << int(z.phi_at(j, t)) << "\n";
  return out.str();
}

CandidateSolution solution_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "j,t,x,phi")
    throw std::runtime_error("solution csv: bad header");
  struct Entry {
    int j, t, x, phi;
  };
  std::vector<Entry> entries;
  int max_j = 0, max_t = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 4) throw std::runtime_error("solution csv: bad row");
    Entry e{std::stoi(fields[0]), std::stoi(fields[1]), std::stoi(fields[2]),
            std::stoi(fields[3])};
    if (e.j < 1 || e.t < 1 || e.x < 0 || e.x > 1 || e.phi < 0 || e.phi > 1)
      throw std::runtime_error("solution csv: value out of range");
    max_j = std::max(max_j, e.j);
    max_t = std::max(max_t, e.t);
    entries.push_back(e);
  }
  if (entries.empty()) throw std::runtime_error("solution csv: no rows");
  if (static_cast<int>(entries.size()) != max_j * max_t)
    throw std::runtime_error("solution csv: incomplete (j, t) grid");
  CandidateSolution z;
  z.num_jobs = max_j;
  z.horizon = max_t;
  z.x.assign(max_j * max_t, 0);
  z.phi.assign(max_j * max_t, 0);
  for (const Entry& e : entries) {
    z.x[(e.j - 1) * max_t + (e.t - 1)] = static_cast<std::uint8_t>(e.x);
    z.phi[(e.j - 1) * max_t + (e.t - 1)] = static_cast<std::uint8_t>(e.phi);
  }
  return z;
}

void save_solution(const CandidateSolution& z, const std::filesystem::path& path) {
  write_file(path, solution_to_csv(z));
}

CandidateSolution load_solution(const std::filesystem::path& path) {
  return solution_from_csv(read_file(path));
}

std::string pool_to_csv(const SolutionPool& pool, int num_jobs, int horizon) {
  // Wall-clock timings stay out of the file so identical seeds write
  // identical bytes; the node count is the reproducible effort measure.
  std::ostringstream out;
  out << "# status=" << status_name(pool.status)
      << " nodes=" << pool.nodes_explored << "\n";
  out << "rank,qos,z\n";
  for (size_t i = 0; i < pool.solutions.size(); ++i) {
    const PooledSolution& p = pool.solutions[i];
    out << (i + 1) << "," << fmt17(p.qos) << ",";
    for (std::uint8_t bit : p.z.flat()) out << int(bit);
    out << "\n";
  }
  (void)num_jobs;
  (void)horizon;
  return out.str();
}

SolutionPool pool_from_csv(const std::string& text, int num_jobs, int horizon) {
  std::istringstream in(text);
  std::string line;
  SolutionPool pool;
  bool saw_header = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      for (const char* name :
           {"optimal", "feasible", "infeasible", "limit"}) {
        if (t.find("status=" + std::string(name)) != std::string::npos) {
          pool.status = name == std::string("optimal")    ? SolveStatus::kOptimal
                        : name == std::string("feasible") ? SolveStatus::kFeasible
                        : name == std::string("infeasible")
                            ? SolveStatus::kInfeasible
                            : SolveStatus::kLimit;
          break;
        }
      }
      const size_t nodes_pos = t.find("nodes=");
      if (nodes_pos != std::string::npos)
        pool.nodes_explored = std::stoull(t.substr(nodes_pos + 6));
      continue;
    }
    if (!saw_header) {
      if (t != "rank,qos,z") throw std::runtime_error("pool csv: bad header");
      saw_header = true;
      continue;
    }
    const auto fields = split(t, ',');
    if (fields.size() != 3) throw std::runtime_error("pool csv: bad row");
    const std::string& bits = fields[2];
    if (static_cast<int>(bits.size()) != 2 * num_jobs * horizon)
      throw std::runtime_error("pool csv: z length mismatch");
    CandidateSolution z;
    z.num_jobs = num_jobs;
    z.horizon = horizon;
    z.x.resize(num_jobs * horizon);
    z.phi.resize(num_jobs * horizon);
    for (int k = 0; k < num_jobs * horizon; ++k) {
      z.x[k] = bits[k] == '1';
      z.phi[k] = bits[num_jobs * horizon + k] == '1';
    }
    pool.solutions.push_back({std::move(z), std::stod(fields[1])});
  }
  if (!saw_header) throw std::runtime_error("pool csv: missing header");
  return pool;
}

void save_pool(const SolutionPool& pool, int num_jobs, int horizon,
               const std::filesystem::path& path) {
  write_file(path, pool_to_csv(pool, num_jobs, horizon));
}

SolutionPool load_pool(const std::filesystem::path& path, int num_jobs,
                       int horizon) {
  return pool_from_csv(read_file(path), num_jobs, horizon);
}

std::string graph_to_json(const BipartiteGraph& graph) {
  ordered_json j;
  j["n_var"] = graph.n_var;
  j["n_con"] = graph.n_con;
  j["edges"] = ordered_json::array();
  for (const auto& e : graph.edges)
    j["edges"].push_back(ordered_json::array({e.con, e.var, e.weight}));
  j["var_features"] = ordered_json::array();
  for (int v = 0; v < graph.n_var; ++v) {
    ordered_json row = ordered_json::array();
    for (int f = 0; f < graph.var_feature_dim; ++f)
      row.push_back(graph.var_feature(v, f));
    j["var_features"].push_back(std::move(row));
  }
  j["con_features"] = ordered_json::array();
  for (int c = 0; c < graph.n_con; ++c) {
    ordered_json row = ordered_json::array();
    for (int f = 0; f < kConFeatureDim; ++f) row.push_back(graph.con_feature(c, f));
    j["con_features"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string model_to_json(const ModelParams& params) {
  const SatGNNConfig& cfg = params.config;
  ordered_json j;
  j["config"] = {{"hidden_dim", cfg.hidden_dim},
                 {"num_layers", cfg.num_layers},
                 {"conv", std::string(conv_kind_name(cfg.conv))},
                 {"aggregation", std::string(aggregation_name(cfg.aggregation))},
                 {"share_conv_params", cfg.share_conv_params},
                 {"task", std::string(task_name(cfg.task))},
                 {"learning_rate", cfg.learning_rate},
                 {"max_epochs", cfg.max_epochs},
                 {"seed", cfg.seed}};
  j["tensors"] = ordered_json::array();
  for (const TensorSpec& s : params.tensors) {
    ordered_json tj;
    tj["name"] = s.name;
    tj["rows"] = s.rows;
    tj["cols"] = s.cols;
    tj["data"] = std::vector<double>(
        params.values.begin() + s.offset,
        params.values.begin() + s.offset + static_cast<size_t>(s.rows) * s.cols);
    j["tensors"].push_back(std::move(tj));
  }
  return j.dump(2) + "\n";
}

ModelParams model_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  const auto& cj = j.at("config");
  SatGNNConfig cfg;
  cfg.hidden_dim = cj.at("hidden_dim").get<int>();
  cfg.num_layers = cj.at("num_layers").get<int>();
  cfg.conv = conv_from_name(cj.at("conv").get<std::string>());
  cfg.aggregation = aggregation_from_name(cj.at("aggregation").get<std::string>());
  cfg.share_conv_params = cj.at("share_conv_params").get<bool>();
  cfg.task = task_from_name(cj.at("task").get<std::string>());
  cfg.learning_rate = cj.at("learning_rate").get<double>();
  cfg.max_epochs = cj.at("max_epochs").get<int>();
  cfg.seed = cj.at("seed").get<std::uint64_t>();

  ModelParams params = ModelParams::init(cfg);
  for (const auto& tj : j.at("tensors")) {
    const std::string name = tj.at("name").get<std::string>();
    const TensorSpec& spec = params.spec(name);
    if (spec.rows != tj.at("rows").get<int>() ||
        spec.cols != tj.at("cols").get<int>())
      throw std::runtime_error("model json: shape mismatch for " + name);
    const auto data = tj.at("data").get<std::vector<double>>();
    if (data.size() != static_cast<size_t>(spec.rows) * spec.cols)
      throw std::runtime_error("model json: data length mismatch for " + name);
    for (double v : data)
      if (!std::isfinite(v))
        throw std::runtime_error("model json: non-finite weight in " + name);
    std::copy(data.begin(), data.end(), params.values.begin() + spec.offset);
  }
  return params;
}

void save_model(const ModelParams& params, const std::filesystem::path& path) {
  write_file(path, model_to_json(params));
}

ModelParams load_model(const std::filesystem::path& path) {
  return model_from_json(read_file(path));
}

std::string history_to_csv(const TrainReport& report) {
  std::ostringstream out;
  out << "epoch,train_loss,val_loss\n";
  for (const EpochStats& e : report.history)
    out << e.epoch << "," << fmt17(e.train_loss) << "," << fmt17(e.val_loss)
        << "\n";
  return out.str();
}

}  // namespace onts::io
