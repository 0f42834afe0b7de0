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

#include "onts/solver.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace onts {

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kLimit: return "limit";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Sorted-pool insertion: QoS descending, first-found order among equals.
/// A solution equal to the worst of a full pool is dropped.
void pool_insert(std::vector<PooledSolution>& pool, int capacity,
                 CandidateSolution z, double value) {
  if (static_cast<int>(pool.size()) == capacity) {
    if (value <= pool.back().qos) return;
    pool.pop_back();
  }
  auto it = std::find_if(pool.begin(), pool.end(), [value](const PooledSolution& p) {
    return p.qos < value;
  });
  pool.insert(it, PooledSolution{std::move(z), value});
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const SolveOptions& opts)
      : inst_(inst), opts_(opts), J_(inst.num_jobs), T_(inst.horizon) {}

  SolutionPool run() {
    validate_instance(inst_);
    if (opts_.pool_size < 1)
      throw std::invalid_argument("solve_bb: pool_size must be >= 1");
    if (opts_.trust_center && opts_.trust_delta < 0)
      throw std::invalid_argument("solve_bb: trust_delta must be >= 0");

    decided_.assign(J_ * T_, -1);
    phi_fixed_.assign(J_ * T_, -1);
    hint_.assign(J_ * T_, -1);
    build_order();

    start_ = Clock::now();
    if (!presolve()) {
      result_.status = SolveStatus::kInfeasible;
      return std::move(result_);
    }
    search(0);

    if (limit_hit_)
      result_.status = result_.solutions.empty() ? SolveStatus::kLimit
                                                 : SolveStatus::kFeasible;
    else
      result_.status = result_.solutions.empty() ? SolveStatus::kInfeasible
                                                 : SolveStatus::kOptimal;
    return std::move(result_);
  }

 private:
  int cell(int j, int t) const { return j * T_ + t; }

  void build_order() {
    std::vector<int> jobs(J_);
    std::iota(jobs.begin(), jobs.end(), 0);
    std::stable_sort(jobs.begin(), jobs.end(), [this](int a, int b) {
      return inst_.jobs[a].u > inst_.jobs[b].u;
    });
    order_.reserve(J_ * T_);
    for (int t = 0; t < T_; ++t)
      for (int j : jobs) order_.push_back(cell(j, t));
  }

  // --- propagation ------------------------------------------------------

  bool force(int c, int v) {
    if (decided_[c] == v) return true;
    if (decided_[c] != -1) return false;
    decided_[c] = static_cast<std::int8_t>(v);
    trail_.push_back(c);
    queue_.push_back(c);
    if ((c + 1) % T_ != 0) queue_.push_back(c + 1);  // right neighbor
    return true;
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      decided_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  /// Forces the run-length implications of a start at (j, s), 0-based.
  bool force_run(int j, int s) {
    const JobParams& job = inst_.jobs[j];
    const int last = s <= T_ - job.t_min ? s + job.t_min - 1 : T_ - 1;
    for (int t = s; t <= last; ++t)
      if (!force(cell(j, t), 1)) return false;
    return true;
  }

  bool eval_cell(int c) {
    const int j = c / T_;
    const int t = c % T_;
    const JobParams& job = inst_.jobs[j];
    const int v = decided_[c];
    const int fixed_phi = phi_fixed_[c];

    if (v == -1) {
      if (fixed_phi == 1) {
        if (!force(c, 1)) return false;
        if (t > 0 && !force(c - 1, 0)) return false;
      }
      return true;
    }

    if (v == 0) return fixed_phi != 1;  // phi <= x

    const int left = t == 0 ? 0 : decided_[c - 1];
    if (fixed_phi == 0) {
      // A start here is forbidden, so the job must already be running.
      if (t == 0) return false;
      if (left == 0) return false;
      if (left == -1 && !force(c - 1, 1)) return false;
    }
    if (fixed_phi == 1 && t > 0 && !force(c - 1, 0)) return false;

    if (t == 0 || decided_[c - 1] == 0) {
      if (!force_run(j, t)) return false;
    }

    // Consecutive run containing t; cap at t_max and zero-force both ends.
    int a = t, b = t;
    while (a > 0 && decided_[cell(j, a - 1)] == 1) --a;
    while (b + 1 < T_ && decided_[cell(j, b + 1)] == 1) ++b;
    const int len = b - a + 1;
    if (len > job.t_max) return false;
    if (len == job.t_max) {
      if (a > 0 && !force(cell(j, a - 1), 0)) return false;
      if (b + 1 < T_ && !force(cell(j, b + 1), 0)) return false;
    }
    return true;
  }

  bool drain() {
    while (!queue_.empty()) {
      const int c = queue_.back();
      queue_.pop_back();
      if (!eval_cell(c)) {
        queue_.clear();
        return false;
      }
    }
    return true;
  }

  bool propagate_assign(int c, int v) {
    if (!force(c, v)) return false;
    return drain();
  }

  bool presolve() {
    // Window zeros.
    for (int j = 0; j < J_; ++j) {
      const JobParams& job = inst_.jobs[j];
      for (int t = 0; t < job.w_min; ++t)
        if (!force(cell(j, t), 0)) return fail_note("window presolve conflict");
      for (int t = job.w_max; t < T_; ++t)
        if (!force(cell(j, t), 0)) return fail_note("window presolve conflict");
    }
    // Fixings over the flat z vector.
    const int n_bin = J_ * T_;
    for (size_t i = 0; i < opts_.fixings.size(); ++i) {
      const int idx = opts_.fixings.indices[i];
      const int value = opts_.fixings.values[i];
      if (idx < 0 || idx >= 2 * n_bin)
        throw std::invalid_argument("solve_bb: fixing index out of range");
      if (idx < n_bin) {
        if (!force(idx, value)) return fail_note("contradictory fixings on x");
      } else {
        const int c = idx - n_bin;
        if (phi_fixed_[c] != -1 && phi_fixed_[c] != value)
          return fail_note("contradictory fixings on phi");
        phi_fixed_[c] = static_cast<std::int8_t>(value);
        queue_.push_back(c);
      }
    }
    if (opts_.warm_hint) {
      for (size_t i = 0; i < opts_.warm_hint->size(); ++i) {
        const int idx = opts_.warm_hint->indices[i];
        const int value = opts_.warm_hint->values[i];
        if (idx < 0 || idx >= 2 * n_bin)
          throw std::invalid_argument("solve_bb: hint index out of range");
        if (idx < n_bin)
          hint_[idx] = static_cast<std::int8_t>(value);
        else if (value == 1 && hint_[idx - n_bin] == -1)
          hint_[idx - n_bin] = 1;  // a hinted start implies running
      }
    }
    if (opts_.trust_center) {
      for (size_t i = 0; i < opts_.trust_center->size(); ++i) {
        const int idx = opts_.trust_center->indices[i];
        if (idx < 0 || idx >= 2 * n_bin)
          throw std::invalid_argument("solve_bb: trust index out of range");
      }
    }
    if (!drain()) return fail_note("contradictory fixings");
    return true;
  }

  bool fail_note(const char* note) {
    result_.note = note;
    return false;
  }

  // --- node checks --------------------------------------------------------

  /// phi value at (j, t) if determined by the current assignment, else -1.
  int phi_determined(int j, int t) const {
    const int xv = decided_[cell(j, t)];
    if (xv == -1) return -1;
    if (t == 0) return xv;
    if (xv == 0) return 0;
    const int left = decided_[cell(j, t - 1)];
    if (left == -1) return -1;
    return left == 0 ? 1 : 0;
  }

  bool check_node() {
    double bound = 0.0;

    for (int j = 0; j < J_; ++j) {
      const JobParams& job = inst_.jobs[j];
      int committed_on = 0;
      int undecided_in_window = 0;
      int run = 0;
      int determined_starts = 0;
      int undetermined_phi = 0;
      int prefix_end = T_;  // first position with undetermined phi
      starts_.clear();

      for (int t = 0; t < T_; ++t) {
        const int v = decided_[cell(j, t)];
        if (v == 1) {
          ++committed_on;
          if (++run > job.t_max) return false;
        } else {
          run = 0;
          if (v == -1) ++undecided_in_window;
        }
        const int phi = phi_determined(j, t);
        if (phi == -1) {
          ++undetermined_phi;
          prefix_end = std::min(prefix_end, t);
        } else if (phi == 1) {
          ++determined_starts;
          starts_.push_back(t);
          if (phi_fixed_[cell(j, t)] == 0) return false;
        } else if (phi_fixed_[cell(j, t)] == 1) {
          return false;
        }
      }

      if (determined_starts > job.y_max) return false;
      if (determined_starts + undetermined_phi < job.y_min) return false;

      int prev = -1;
      for (int s : starts_) {
        if (prev >= 0 && s - prev < job.p_min) return false;  // two close starts
        if (s <= prefix_end - 1) {
          if (s - prev > job.p_max) return false;  // startless p_max window
        }
        prev = s;
      }
      // Trailing startless gap inside the fully determined prefix.
      int last_prefix_start = -1;
      for (int s : starts_)
        if (s < prefix_end) last_prefix_start = s;
      if (prefix_end - 1 - last_prefix_start >= job.p_max) return false;

      const int cap = job.y_max * job.t_max;
      const int extra = std::min(undecided_in_window,
                                 std::max(0, cap - committed_on));
      bound += job.u * (committed_on + extra);
    }

    // Energy over the fully decided time prefix.
    const BatteryParams& bat = inst_.battery;
    const double margin = bat.discharge_limit * bat.bus_voltage;
    const double k = bat.charge_efficiency / (60.0 * bat.capacity);
    double soc = bat.soc_initial;
    for (int t = 0; t < T_; ++t) {
      double demand = 0.0;
      bool complete = true;
      for (int j = 0; j < J_; ++j) {
        const int v = decided_[cell(j, t)];
        if (v == -1) {
          complete = false;
          break;
        }
        if (v == 1) demand += inst_.jobs[j].q;
      }
      if (!complete) break;
      if (demand > inst_.power[t] + margin + kFeasTol) return false;
      soc += (inst_.power[t] - demand) / bat.bus_voltage * k;
      if (soc > 1.0 + kFeasTol) return false;
      if (soc < bat.soc_min - kFeasTol) return false;
    }

    if (opts_.trust_center) {
      const int n_bin = J_ * T_;
      int mismatch = 0;
      const PartialAssignment& center = *opts_.trust_center;
      for (size_t i = 0; i < center.size(); ++i) {
        const int idx = center.indices[i];
        const int want = center.values[i];
        int have;
        if (idx < n_bin)
          have = decided_[idx];
        else
          have = phi_determined((idx - n_bin) / T_, (idx - n_bin) % T_);
        if (have != -1 && have != want) ++mismatch;
      }
      if (mismatch > opts_.trust_delta) return false;
    }

    if (static_cast<int>(result_.solutions.size()) == opts_.pool_size &&
        bound <= result_.solutions.back().qos)
      return false;

    return true;
  }

  void leaf() {
    std::vector<std::uint8_t> x(J_ * T_);
    for (int c = 0; c < J_ * T_; ++c) x[c] = static_cast<std::uint8_t>(decided_[c]);
    CandidateSolution z = solution_from_x(J_, T_, std::move(x));
    // check_node has already enforced phi fixings and the trust radius on
    // the fully determined assignment; the full semantic check is the gate
    // for pool membership.
    if (!check_feasibility(inst_, z).feasible) return;
    const double value = qos(inst_, z);
    if (!result_.time_to_first_feasible_s)
      result_.time_to_first_feasible_s = seconds_since(start_);
    pool_insert(result_.solutions, opts_.pool_size, std::move(z), value);
  }

  void search(size_t pos) {
    if (limit_hit_) return;
    if (result_.nodes_explored >= opts_.node_limit ||
        seconds_since(start_) > opts_.time_limit_s) {
      limit_hit_ = true;
      return;
    }
    ++result_.nodes_explored;
    if (!check_node()) return;

    while (pos < order_.size() && decided_[order_[pos]] != -1) ++pos;
    if (pos == order_.size()) {
      leaf();
      return;
    }

    const int c = order_[pos];
    const int preferred = hint_[c] != -1 ? hint_[c] : 1;
    for (int value : {preferred, 1 - preferred}) {
      const size_t mark = trail_.size();
      if (propagate_assign(c, value)) search(pos + 1);
      undo_to(mark);
      if (limit_hit_) return;
    }
  }

  const Instance& inst_;
  const SolveOptions& opts_;
  const int J_, T_;

  std::vector<int> order_;
  std::vector<std::int8_t> decided_;
  std::vector<std::int8_t> phi_fixed_;
  std::vector<std::int8_t> hint_;
  std::vector<int> trail_;
  std::vector<int> queue_;
  std::vector<int> starts_;

  Clock::time_point start_;
  bool limit_hit_ = false;
  SolutionPool result_;
};

}  // namespace

SolutionPool brute_force(const Instance& inst, int pool_size) {
  validate_instance(inst);
  const int J = inst.num_jobs;
  const int T = inst.horizon;
  if (J * T > 20)
    throw std::invalid_argument("brute_force: guarded to J*T <= 20");
  if (pool_size < 1)
    throw std::invalid_argument("brute_force: pool_size must be >= 1");

  const auto start = Clock::now();
  SolutionPool pool;
  std::vector<PooledSolution> feasible;
  const std::uint64_t total = 1ull << (J * T);
  std::vector<std::uint8_t> x(J * T);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int c = 0; c < J * T; ++c) x[c] = (mask >> c) & 1u;
    CandidateSolution z = solution_from_x(J, T, x);
    if (!check_feasibility(inst, z).feasible) continue;
    if (!pool.time_to_first_feasible_s)
      pool.time_to_first_feasible_s = seconds_since(start);
    const double value = qos(inst, z.x);
    feasible.push_back({std::move(z), value});
  }
  pool.nodes_explored = total;
  std::stable_sort(feasible.begin(), feasible.end(),
                   [](const PooledSolution& a, const PooledSolution& b) {
                     return a.qos > b.qos;
                   });
  if (static_cast<int>(feasible.size()) > pool_size)
    feasible.resize(pool_size);
  pool.solutions = std::move(feasible);
  pool.status =
      pool.solutions.empty() ? SolveStatus::kInfeasible : SolveStatus::kOptimal;
  return pool;
}

SolutionPool solve_bb(const Instance& inst, const SolveOptions& opts) {
  BranchAndBound bb(inst, opts);
  return bb.run();
}

}  // namespace onts
