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

#include "onts/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "onts/instance_gen.hpp"
#include "onts/io.hpp"
#include "onts/rng.hpp"

namespace onts {

namespace {

using ordered_json = nlohmann::ordered_json;

CandidateSolution from_bits(int J, int T, const std::vector<std::uint8_t>& bits) {
  CandidateSolution z;
  z.num_jobs = J;
  z.horizon = T;
  z.x.assign(bits.begin(), bits.begin() + J * T);
  z.phi.assign(bits.begin() + J * T, bits.end());
  return z;
}

}  // namespace

int default_eta(const Instance& inst) {
  return std::max(1, (2 * inst.num_jobs * inst.horizon) / 20);
}

std::vector<LabeledCandidate> augment_candidates(
    const Instance& inst, const std::vector<PooledSolution>& pool,
    int n_random, int n_neighbor, int eta, std::uint64_t seed) {
  if (n_random < 0 || n_neighbor < 0)
    throw std::invalid_argument("augment_candidates: negative counts");
  if (n_neighbor > 0 && pool.empty())
    throw std::invalid_argument(
        "augment_candidates: neighborhood sampling needs a nonempty pool");
  if (eta < 1)
    throw std::invalid_argument("augment_candidates: eta must be >= 1");

  const int n_bits = 2 * inst.num_jobs * inst.horizon;
  std::vector<LabeledCandidate> out;
  out.reserve(pool.size() + n_random + n_neighbor);

  for (const PooledSolution& p : pool)
    out.push_back({p.z, check_feasibility(inst, p.z).feasible ? 1 : 0});

  Rng rng(derive_seed(seed, 3));
  std::vector<std::uint8_t> bits(n_bits);
  for (int i = 0; i < n_random; ++i) {
    for (int k = 0; k < n_bits; ++k)
      bits[k] = static_cast<std::uint8_t>(rng.bounded(2));
    CandidateSolution z = from_bits(inst.num_jobs, inst.horizon, bits);
    const int label = check_feasibility(inst, z).feasible ? 1 : 0;
    out.push_back({std::move(z), label});
  }

  std::vector<int> positions(n_bits);
  for (int i = 0; i < n_neighbor; ++i) {
    const PooledSolution& base = pool[rng.bounded(pool.size())];
    std::vector<std::uint8_t> flat = base.z.flat();
    const int flips = static_cast<int>(rng.uniform_int(1, eta));
    // Partial Fisher-Yates picks `flips` distinct positions.
    for (int k = 0; k < n_bits; ++k) positions[k] = k;
    for (int k = 0; k < flips; ++k) {
      const int pick = k + static_cast<int>(rng.bounded(n_bits - k));
      std::swap(positions[k], positions[pick]);
      flat[positions[k]] ^= 1u;
    }
    CandidateSolution z = from_bits(inst.num_jobs, inst.horizon, flat);
    const int label = check_feasibility(inst, z).feasible ? 1 : 0;
    out.push_back({std::move(z), label});
  }
  return out;
}

std::string candidates_to_csv(const std::vector<LabeledCandidate>& candidates) {
  std::ostringstream out;
  out << "z,label\n";
  for (const LabeledCandidate& c : candidates) {
    for (std::uint8_t bit : c.z.flat()) out << int(bit);
    out << "," << c.label << "\n";
  }
  return out.str();
}

std::vector<LabeledCandidate> candidates_from_csv(const std::string& text,
                                                  int num_jobs, int horizon) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.find("z,label") == std::string::npos)
    throw std::runtime_error("candidates csv: bad header");
  std::vector<LabeledCandidate> out;
  const int n_bits = 2 * num_jobs * horizon;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos || static_cast<int>(comma) != n_bits)
      throw std::runtime_error("candidates csv: bad row");
    std::vector<std::uint8_t> bits(n_bits);
    for (int k = 0; k < n_bits; ++k) bits[k] = line[k] == '1';
    LabeledCandidate c;
    c.z = from_bits(num_jobs, horizon, bits);
    c.label = std::stoi(line.substr(comma + 1));
    out.push_back(std::move(c));
  }
  return out;
}

DatasetGenResult generate_dataset(const std::filesystem::path& out_root,
                                  const DatasetGenOptions& opts) {
  if (opts.count < 1)
    throw std::invalid_argument("generate_dataset: count must be >= 1");

  DatasetGenResult result;
  result.dir = out_root / std::to_string(opts.seed);
  std::filesystem::create_directories(result.dir);

  ordered_json manifest;
  manifest["J"] = opts.num_jobs;
  manifest["T"] = opts.horizon;
  manifest["requested"] = opts.count;
  manifest["seed"] = opts.seed;
  manifest["pool_size"] = opts.pool_size;
  manifest["time_limit_s"] = opts.time_limit_s;
  manifest["n_random"] = opts.n_random;
  manifest["n_neighbor"] = opts.n_neighbor;
  ordered_json instance_seeds = ordered_json::array();

  const int attempt_cap = opts.attempt_cap_factor * opts.count;
  long labels_feasible = 0, labels_infeasible = 0;
  while (result.accepted < opts.count && result.attempts < attempt_cap) {
    const std::uint64_t inst_seed = derive_seed(opts.seed, 1000 + result.attempts);
    ++result.attempts;
    const Instance inst = random_instance(opts.num_jobs, opts.horizon, inst_seed);

    SolveOptions sopts;
    sopts.pool_size = opts.pool_size;
    sopts.time_limit_s = opts.time_limit_s;
    sopts.node_limit = opts.node_limit;
    const SolutionPool pool = solve_bb(inst, sopts);
    if (pool.empty()) {
      ++result.rejected;
      continue;
    }

    const int k = result.accepted;
    io::save_instance(inst, result.dir / ("instance_" + std::to_string(k) + ".json"));
    io::save_pool(pool, inst.num_jobs, inst.horizon,
                  result.dir / ("pool_" + std::to_string(k) + ".csv"));
    const int eta = opts.eta >= 1 ? opts.eta : default_eta(inst);
    const auto candidates = augment_candidates(
        inst, pool.solutions, opts.n_random, opts.n_neighbor, eta, inst_seed);
    for (const LabeledCandidate& c : candidates)
      (c.label ? labels_feasible : labels_infeasible) += 1;
    io::write_file(result.dir / ("candidates_" + std::to_string(k) + ".csv"),
                   candidates_to_csv(candidates));
    instance_seeds.push_back(inst_seed);
    ++result.accepted;
    if (!opts.quiet)
      std::fprintf(stderr, "dataset: accepted %d/%d (attempts %d)\n",
                   result.accepted, opts.count, result.attempts);
  }

  result.completed = result.accepted == opts.count;
  manifest["eta"] = opts.eta;
  manifest["accepted"] = result.accepted;
  manifest["rejected"] = result.rejected;
  manifest["attempts"] = result.attempts;
  manifest["completed"] = result.completed;
  // Label balance across all stored candidate files; uniform candidates are
  // expected to be infeasible nearly always.
  manifest["candidate_labels"] = {{"feasible", labels_feasible},
                                  {"infeasible", labels_infeasible}};
  manifest["instance_seeds"] = instance_seeds;
  io::write_file(result.dir / "manifest.json", manifest.dump(2) + "\n");

  if (!result.completed)
    throw std::runtime_error(
        "generate_dataset: attempt cap reached with " +
        std::to_string(result.accepted) + "/" + std::to_string(opts.count) +
        " accepted; partial dataset kept at " + result.dir.string());
  return result;
}

std::vector<DatasetEntry> load_dataset(const std::filesystem::path& dir) {
  const ordered_json manifest =
      ordered_json::parse(io::read_file(dir / "manifest.json"));
  const int accepted = manifest.at("accepted").get<int>();
  std::vector<DatasetEntry> entries;
  entries.reserve(accepted);
  for (int k = 0; k < accepted; ++k) {
    DatasetEntry entry;
    entry.instance =
        io::load_instance(dir / ("instance_" + std::to_string(k) + ".json"));
    entry.pool = io::load_pool(dir / ("pool_" + std::to_string(k) + ".csv"),
                               entry.instance.num_jobs, entry.instance.horizon);
    // Stored pools re-verify on load; a mismatch means file corruption.
    for (const PooledSolution& p : entry.pool.solutions)
      if (!check_feasibility(entry.instance, p.z).feasible)
        throw std::runtime_error("load_dataset: stored pool solution fails "
                                 "feasibility re-check in " + dir.string());
    const auto cand_path = dir / ("candidates_" + std::to_string(k) + ".csv");
    if (std::filesystem::exists(cand_path))
      entry.candidates =
          candidates_from_csv(io::read_file(cand_path), entry.instance.num_jobs,
                              entry.instance.horizon);
    entries.push_back(std::move(entry));
  }
  return entries;
}

TrainData feasibility_data(const std::vector<DatasetEntry>& entries,
                           double val_fraction) {
  TrainData data;
  for (const DatasetEntry& entry : entries) {
    const StandardForm sf = build_standard_form(entry.instance);
    const size_t n = entry.candidates.size();
    const size_t n_val = static_cast<size_t>(val_fraction * n);
    for (size_t i = 0; i < n; ++i) {
      const LabeledCandidate& c = entry.candidates[i];
      Sample sample;
      sample.graph = encode_bipartite(sf, &c.z);
      sample.target.feas_label = c.label;
      (i + n_val >= n ? data.val : data.train).push_back(std::move(sample));
    }
  }
  return data;
}

TrainData bias_data(const std::vector<DatasetEntry>& entries, bool multi,
                    double val_fraction) {
  TrainData data;
  const size_t n = entries.size();
  const size_t n_val = static_cast<size_t>(val_fraction * n);
  for (size_t i = 0; i < n; ++i) {
    const DatasetEntry& entry = entries[i];
    if (entry.pool.empty())
      throw std::invalid_argument("bias_data: entry with empty pool");
    Sample sample;
    sample.graph = encode_bipartite(build_standard_form(entry.instance));
    const size_t n_solutions = multi ? entry.pool.solutions.size() : 1;
    std::vector<double> values;
    for (size_t s = 0; s < n_solutions; ++s) {
      sample.target.solutions.push_back(entry.pool.solutions[s].z.flat());
      values.push_back(entry.pool.solutions[s].qos);
    }
    sample.target.weights = solution_weights(values);
    (i + n_val >= n ? data.val : data.train).push_back(std::move(sample));
  }
  return data;
}

}  // namespace onts
