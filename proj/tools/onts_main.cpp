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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "onts/dataset.hpp"
#include "onts/heuristics.hpp"
#include "onts/instance_gen.hpp"
#include "onts/io.hpp"
#include "onts/lp_io.hpp"
#include "onts/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitLimit = 3;

int exit_code_for(onts::SolveStatus status) {
  switch (status) {
    case onts::SolveStatus::kOptimal: return kExitOk;
    case onts::SolveStatus::kInfeasible: return kExitInfeasible;
    case onts::SolveStatus::kFeasible:
    case onts::SolveStatus::kLimit: return kExitLimit;
  }
  return kExitBadInput;
}

// Partial assignment CSV: header "index,value", flat z indices.
onts::PartialAssignment load_partial(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.find("index,value") == std::string::npos)
    throw std::runtime_error("partial assignment csv: bad header in " + path.string());
  onts::PartialAssignment partial;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("partial assignment csv: bad row '" + line + "'");
    partial.set(std::stoi(line.substr(0, comma)),
                static_cast<std::uint8_t>(std::stoi(line.substr(comma + 1))));
  }
  return partial;
}

void print_pool_summary(const onts::SolutionPool& pool, bool quiet) {
  if (quiet) return;
  std::printf("status=%s nodes=%llu solutions=%zu", onts::status_name(pool.status),
              static_cast<unsigned long long>(pool.nodes_explored),
              pool.solutions.size());
  if (!pool.solutions.empty()) std::printf(" best_qos=%.6f", pool.best_qos());
  if (pool.time_to_first_feasible_s)
    std::printf(" first_feasible_s=%.4f", *pool.time_to_first_feasible_s);
  if (!pool.note.empty()) std::printf(" note=\"%s\"", pool.note.c_str());
  std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline nanosatellite task scheduling toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out_path;
  bool quiet = false;
  app.add_option("--seed", seed, "Global random seed");
  app.add_option("--out", out_path, "Output file or directory");
  app.add_flag("--quiet", quiet, "Suppress progress output");

  auto* gen = app.add_subcommand("gen", "Generate a pseudo-random instance");
  int gen_jobs = 2, gen_horizon = 10;
  double gen_sunlit = 0.6, gen_peak = 0.0;
  gen->add_option("--jobs", gen_jobs, "Number of jobs")->required();
  gen->add_option("--horizon", gen_horizon, "Number of time steps")->required();
  gen->add_option("--sunlit", gen_sunlit, "Sunlit fraction of the orbit");
  gen->add_option("--peak", gen_peak, "Peak power (0 = auto)");

  auto* solve = app.add_subcommand("solve", "Solve an instance exactly");
  std::string solve_instance;
  int solve_pool = 1;
  double solve_time = 10.0;
  std::uint64_t solve_nodes = ~0ull;
  std::string fix_file, trust_file, warm_file;
  int trust_delta = 1;
  solve->add_option("instance", solve_instance, "Instance JSON")->required();
  solve->add_option("--pool", solve_pool, "Solution pool size");
  solve->add_option("--time-limit", solve_time, "Time limit in seconds");
  solve->add_option("--node-limit", solve_nodes, "Node limit");
  solve->add_option("--fix", fix_file, "Partial assignment to fix (csv)");
  solve->add_option("--trust", trust_file, "Trust-region center (csv)");
  solve->add_option("--delta", trust_delta, "Trust-region radius");
  solve->add_option("--warm", warm_file, "Warm-start hint (csv)");
  std::string solve_best_out;
  solve->add_option("--best-out", solve_best_out,
                    "Also write the best solution as a j,t,x,phi CSV");

  auto* check = app.add_subcommand("check", "Check a solution against an instance");
  std::string check_instance, check_solution;
  check->add_option("instance", check_instance, "Instance JSON")->required();
  check->add_option("solution", check_solution, "Solution CSV")->required();

  auto* export_cmd = app.add_subcommand("export-lp", "Write the LP text file");
  std::string export_instance;
  export_cmd->add_option("instance", export_instance, "Instance JSON")->required();

  auto* encode = app.add_subcommand("encode", "Write the bipartite graph JSON");
  std::string encode_instance, encode_candidate;
  encode->add_option("instance", encode_instance, "Instance JSON")->required();
  encode->add_option("--candidate", encode_candidate,
                     "Candidate solution CSV (feasibility-mode features)");

  auto* dataset = app.add_subcommand("dataset", "Generate a labeled dataset");
  onts::DatasetGenOptions ds;
  dataset->add_option("--jobs", ds.num_jobs, "Jobs per instance")->required();
  dataset->add_option("--horizon", ds.horizon, "Time steps per instance")->required();
  dataset->add_option("--count", ds.count, "Accepted instances required")->required();
  dataset->add_option("--pool", ds.pool_size, "Pool size per instance");
  dataset->add_option("--time-limit", ds.time_limit_s, "Solve limit per instance");
  dataset->add_option("--random", ds.n_random, "Uniform candidates per instance");
  dataset->add_option("--neighbor", ds.n_neighbor, "Neighborhood candidates per instance");
  dataset->add_option("--eta", ds.eta, "Flip budget (0 = auto)");

  auto* augment = app.add_subcommand("augment", "Label extra candidates for one instance");
  std::string aug_instance, aug_pool;
  int aug_random = 25, aug_neighbor = 25, aug_eta = 0;
  augment->add_option("instance", aug_instance, "Instance JSON")->required();
  augment->add_option("pool", aug_pool, "Pool CSV")->required();
  augment->add_option("--random", aug_random, "Uniform candidates");
  augment->add_option("--neighbor", aug_neighbor, "Neighborhood candidates");
  augment->add_option("--eta", aug_eta, "Flip budget (0 = auto)");

  auto* train_cmd = app.add_subcommand("train", "Train a model on a dataset directory");
  std::string train_dir, train_task = "feasibility", train_history;
  std::string train_conv, train_agg;
  bool train_multi = false, train_share = false;
  int train_dim = 0, train_layers = 0, train_epochs = 0;
  double train_lr = 0.0, train_val_fraction = 0.2;
  train_cmd->add_option("dataset", train_dir, "Dataset directory")->required();
  train_cmd->add_option("--task", train_task, "feasibility | bias");
  train_cmd->add_flag("--multi", train_multi, "Bias task: weight all pooled solutions");
  train_cmd->add_option("--dim", train_dim, "Hidden width (0 = task default)");
  train_cmd->add_option("--layers", train_layers, "Convolution layers (0 = task default)");
  train_cmd->add_option("--conv", train_conv, "gcn | sage (default per task)");
  train_cmd->add_option("--agg", train_agg, "SAGE aggregation: mean | max | sum");
  train_cmd->add_flag("--share", train_share, "Share convolution parameters across layers");
  train_cmd->add_option("--lr", train_lr, "Learning rate (0 = task default)");
  train_cmd->add_option("--epochs", train_epochs, "Epoch budget (0 = task default)");
  train_cmd->add_option("--val-fraction", train_val_fraction, "Validation split fraction");
  train_cmd->add_option("--history", train_history, "Write epoch,train_loss,val_loss CSV");

  auto* predict = app.add_subcommand("predict", "Run a model on an instance");
  std::string pred_model, pred_instance, pred_candidate;
  predict->add_option("model", pred_model, "Model JSON")->required();
  predict->add_option("instance", pred_instance, "Instance JSON")->required();
  predict->add_option("--candidate", pred_candidate, "Candidate CSV (feasibility models)");

  auto* heur = app.add_subcommand("heur", "Run a model-guided matheuristic");
  std::string heur_instance, heur_model, heur_mode = "fix";
  int heur_n = -1, heur_delta = 1, heur_pool = 1;
  double heur_time = 10.0;
  std::vector<int> grid_n, grid_delta;
  heur->add_option("instance", heur_instance, "Instance JSON")->required();
  heur->add_option("model", heur_model, "Bias model JSON")->required();
  heur->add_option("--mode", heur_mode, "warm | fix | trust")->required();
  heur->add_option("--n", heur_n, "Partial solution size (-1 = 0.2 * 2JT)");
  heur->add_option("--delta", heur_delta, "Trust-region radius");
  heur->add_option("--pool", heur_pool, "Pool size");
  heur->add_option("--time-limit", heur_time, "Time limit in seconds");
  heur->add_option("--grid-n", grid_n, "Sweep these partial sizes and report")->delimiter(',');
  heur->add_option("--grid-delta", grid_delta, "Sweep these radii (trust mode)")->delimiter(',');

  auto* gantt = app.add_subcommand("gantt", "Print a text schedule chart");
  std::string gantt_instance, gantt_solution;
  gantt->add_option("instance", gantt_instance, "Instance JSON")->required();
  gantt->add_option("solution", gantt_solution, "Solution CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (*gen) {
      onts::GenOptions opts{gen_sunlit, gen_peak};
      const onts::Instance inst =
          onts::random_instance(gen_jobs, gen_horizon, seed, opts);
      if (out_path.empty()) {
        std::cout << onts::io::instance_to_json(inst);
      } else {
        onts::io::save_instance(inst, out_path);
        if (!quiet) std::printf("wrote %s\n", out_path.c_str());
      }
      return kExitOk;
    }

    if (*solve) {
      const onts::Instance inst = onts::io::load_instance(solve_instance);
      onts::SolveOptions opts;
      opts.pool_size = solve_pool;
      opts.time_limit_s = solve_time;
      opts.node_limit = solve_nodes;
      if (!fix_file.empty()) opts.fixings = load_partial(fix_file);
      if (!trust_file.empty()) {
        opts.trust_center = load_partial(trust_file);
        opts.trust_delta = trust_delta;
      }
      if (!warm_file.empty()) opts.warm_hint = load_partial(warm_file);
      const onts::SolutionPool pool = onts::solve_bb(inst, opts);
      print_pool_summary(pool, quiet);
      if (!out_path.empty())
        onts::io::save_pool(pool, inst.num_jobs, inst.horizon, out_path);
      if (!solve_best_out.empty() && !pool.empty())
        onts::io::save_solution(pool.solutions.front().z, solve_best_out);
      return exit_code_for(pool.status);
    }

    if (*check) {
      const onts::Instance inst = onts::io::load_instance(check_instance);
      const onts::CandidateSolution z = onts::io::load_solution(check_solution);
      const onts::FeasibilityReport report = onts::check_feasibility(inst, z);
      if (report.feasible) {
        if (!quiet) std::printf("feasible qos=%.6f\n", onts::qos(inst, z));
        return kExitOk;
      }
      if (!quiet) {
        std::printf("infeasible violations=%zu\n", report.violations.size());
        for (const onts::Violation& v : report.violations) {
          std::printf("  %s", std::string(onts::family_name(v.family)).c_str());
          if (v.j > 0) std::printf(" j=%d", v.j);
          if (v.t > 0) std::printf(" t=%d", v.t);
          std::printf(" lhs=%g bound=%g\n", v.lhs, v.bound);
        }
      }
      return kExitInfeasible;
    }

    if (*export_cmd) {
      const onts::Instance inst = onts::io::load_instance(export_instance);
      const onts::StandardForm sf = onts::build_standard_form(inst);
      if (out_path.empty()) {
        std::cout << onts::lp_text(sf);
      } else {
        onts::export_lp(sf, out_path);
        if (!quiet)
          std::printf("wrote %s (%d vars, %d rows)\n", out_path.c_str(),
                      sf.n_vars(), sf.n_rows());
      }
      return kExitOk;
    }

    if (*encode) {
      const onts::Instance inst = onts::io::load_instance(encode_instance);
      const onts::StandardForm sf = onts::build_standard_form(inst);
      std::optional<onts::CandidateSolution> candidate;
      if (!encode_candidate.empty())
        candidate = onts::io::load_solution(encode_candidate);
      const onts::BipartiteGraph graph =
          onts::encode_bipartite(sf, candidate ? &*candidate : nullptr);
      if (out_path.empty()) {
        std::cout << onts::io::graph_to_json(graph);
      } else {
        onts::io::write_file(out_path, onts::io::graph_to_json(graph));
        if (!quiet)
          std::printf("wrote %s (%d var nodes, %d con nodes, %zu edges)\n",
                      out_path.c_str(), graph.n_var, graph.n_con,
                      graph.edges.size());
      }
      return kExitOk;
    }

    if (*dataset) {
      if (out_path.empty())
        throw std::runtime_error("dataset: --out DIRECTORY is required");
      ds.seed = seed;
      ds.quiet = quiet;
      const onts::DatasetGenResult result = onts::generate_dataset(out_path, ds);
      if (!quiet)
        std::printf("dataset at %s: accepted=%d rejected=%d attempts=%d\n",
                    result.dir.string().c_str(), result.accepted,
                    result.rejected, result.attempts);
      return kExitOk;
    }

    if (*augment) {
      const onts::Instance inst = onts::io::load_instance(aug_instance);
      const onts::SolutionPool pool =
          onts::io::load_pool(aug_pool, inst.num_jobs, inst.horizon);
      if (aug_eta < 1) aug_eta = onts::default_eta(inst);
      const auto labeled = onts::augment_candidates(
          inst, pool.solutions, aug_random, aug_neighbor, aug_eta, seed);
      const std::string csv = onts::candidates_to_csv(labeled);
      if (out_path.empty())
        std::cout << csv;
      else
        onts::io::write_file(out_path, csv);
      return kExitOk;
    }

    if (*train_cmd) {
      const auto entries = onts::load_dataset(train_dir);
      onts::SatGNNConfig cfg;
      onts::TrainData data;
      if (train_task == "feasibility") {
        cfg.task = onts::TaskKind::kFeasibility;
        cfg.hidden_dim = 8;
        cfg.num_layers = 1;
        cfg.conv = onts::ConvKind::kGcn;
        cfg.learning_rate = 1e-3;
        cfg.max_epochs = 200;
        data = onts::feasibility_data(entries, train_val_fraction);
      } else if (train_task == "bias") {
        cfg.task = onts::TaskKind::kBias;
        cfg.hidden_dim = 16;
        cfg.num_layers = 2;
        cfg.conv = onts::ConvKind::kSage;
        cfg.aggregation = onts::Aggregation::kMean;
        cfg.share_conv_params = true;
        cfg.learning_rate = 1e-2;
        cfg.max_epochs = 100;
        data = onts::bias_data(entries, train_multi, train_val_fraction);
      } else {
        throw std::runtime_error("train: unknown task '" + train_task + "'");
      }
      if (train_dim > 0) cfg.hidden_dim = train_dim;
      if (train_layers > 0) cfg.num_layers = train_layers;
      if (train_lr > 0) cfg.learning_rate = train_lr;
      if (train_epochs > 0) cfg.max_epochs = train_epochs;
      if (!train_conv.empty())
        cfg.conv = train_conv == "gcn" ? onts::ConvKind::kGcn
                                       : onts::ConvKind::kSage;
      if (train_agg == "mean")
        cfg.aggregation = onts::Aggregation::kMean;
      else if (train_agg == "max")
        cfg.aggregation = onts::Aggregation::kMax;
      else if (train_agg == "sum")
        cfg.aggregation = onts::Aggregation::kSum;
      if (train_share) cfg.share_conv_params = true;
      cfg.seed = seed;

      onts::TrainReport report;
      const onts::ModelParams model = onts::train(cfg, data, &report);
      if (!report.history.empty() && !quiet)
        std::printf("trained %d epochs, best val loss %.6f at epoch %d\n",
                    static_cast<int>(report.history.size()),
                    report.best_val_loss, report.best_epoch);
      if (out_path.empty())
        throw std::runtime_error("train: --out MODEL.json is required");
      onts::io::save_model(model, out_path);
      if (!train_history.empty())
        onts::io::write_file(train_history, onts::io::history_to_csv(report));
      return kExitOk;
    }

    if (*predict) {
      const onts::ModelParams model = onts::io::load_model(pred_model);
      const onts::Instance inst = onts::io::load_instance(pred_instance);
      const onts::StandardForm sf = onts::build_standard_form(inst);
      std::optional<onts::CandidateSolution> candidate;
      if (!pred_candidate.empty())
        candidate = onts::io::load_solution(pred_candidate);
      const onts::BipartiteGraph graph =
          onts::encode_bipartite(sf, candidate ? &*candidate : nullptr);
      const onts::ForwardResult result = onts::forward(model, graph);
      if (model.config.task == onts::TaskKind::kFeasibility) {
        std::printf("p_feasible=%.6f\n", result.graph_prob);
      } else {
        std::ostringstream csv;
        csv << "index,name,prob\n";
        for (size_t k = 0; k < result.node_probs.size(); ++k)
          csv << k << "," << sf.var_names[k] << "," << result.node_probs[k] << "\n";
        if (out_path.empty())
          std::cout << csv.str();
        else
          onts::io::write_file(out_path, csv.str());
      }
      return kExitOk;
    }

    if (*heur) {
      const onts::Instance inst = onts::io::load_instance(heur_instance);
      const onts::ModelParams model = onts::io::load_model(heur_model);
      onts::HeuristicMode mode;
      if (heur_mode == "warm")
        mode = onts::HeuristicMode::kWarm;
      else if (heur_mode == "fix")
        mode = onts::HeuristicMode::kFix;
      else if (heur_mode == "trust")
        mode = onts::HeuristicMode::kTrust;
      else
        throw std::runtime_error("heur: unknown mode '" + heur_mode + "'");
      if (heur_n < 0) heur_n = onts::default_partial_size(inst);
      onts::SolveOptions base;
      base.pool_size = heur_pool;
      base.time_limit_s = heur_time;

      if (!grid_n.empty() || !grid_delta.empty()) {
        if (grid_n.empty()) grid_n.push_back(heur_n);
        if (grid_delta.empty() || mode != onts::HeuristicMode::kTrust)
          grid_delta.assign(1, heur_delta);
        std::printf("mode,n,delta,status,best_qos,nodes\n");
        for (const int n : grid_n)
          for (const int delta : grid_delta) {
            const onts::SolutionPool pool =
                onts::run_heuristic(inst, model, mode, n, delta, base);
            std::printf("%s,%d,%d,%s,", heur_mode.c_str(), n, delta,
                        onts::status_name(pool.status));
            if (pool.empty())
              std::printf("-,");
            else
              std::printf("%.6f,", pool.best_qos());
            std::printf("%llu\n",
                        static_cast<unsigned long long>(pool.nodes_explored));
          }
        return kExitOk;
      }

      const onts::SolutionPool pool =
          onts::run_heuristic(inst, model, mode, heur_n, heur_delta, base);
      print_pool_summary(pool, quiet);
      if (!out_path.empty())
        onts::io::save_pool(pool, inst.num_jobs, inst.horizon, out_path);
      return exit_code_for(pool.status);
    }

    if (*gantt) {
      const onts::Instance inst = onts::io::load_instance(gantt_instance);
      const onts::CandidateSolution z = onts::io::load_solution(gantt_solution);
      if (z.num_jobs != inst.num_jobs || z.horizon != inst.horizon)
        throw std::runtime_error("gantt: solution dimensions do not match");
      for (int j = 0; j < inst.num_jobs; ++j) {
        std::printf("job %2d u=%6.2f |", j + 1, inst.jobs[j].u);
        for (int t = 0; t < inst.horizon; ++t)
          std::printf("%s", z.x_at(j, t) ? "█" : "·");
        std::printf("|\n");
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  }
  return kExitBadInput;
}
