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

#include "onts/standard_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace onts {

namespace {

std::string coord_name(const char* stem, int j, int t) {
  return std::string(stem) + "_" + std::to_string(j + 1) + "_" +
         std::to_string(t + 1);
}

}  // namespace

StandardForm build_standard_form(const Instance& inst) {
  validate_instance(inst);
  const int J = inst.num_jobs;
  const int T = inst.horizon;

  StandardForm sf;
  sf.num_jobs = J;
  sf.horizon = T;

  const int n_vars = 2 * J * T + (T + 1);
  sf.var_names.reserve(n_vars);
  sf.var_kinds.reserve(n_vars);
  sf.objective.assign(n_vars, 0.0);

  for (int j = 0; j < J; ++j)
    for (int t = 0; t < T; ++t) {
      sf.var_names.push_back(coord_name("x", j, t));
      sf.var_kinds.push_back({true, 0.0, 1.0});
      sf.objective[sf.x_col(j, t)] = inst.jobs[j].u;
    }
  for (int j = 0; j < J; ++j)
    for (int t = 0; t < T; ++t) {
      sf.var_names.push_back(coord_name("phi", j, t));
      sf.var_kinds.push_back({true, 0.0, 1.0});
    }
  for (int t = 0; t <= T; ++t) {
    sf.var_names.push_back("soc_" + std::to_string(t + 1));
    // soc_1 carries the initial state of charge through its bounds.
    if (t == 0)
      sf.var_kinds.push_back(
          {false, inst.battery.soc_initial, inst.battery.soc_initial});
    else
      sf.var_kinds.push_back({false, 0.0, 1.0});
  }

  auto add_row = [&sf](ConstraintFamily family, int j, int t, RowSense sense,
                       double rhs) -> Row& {
    sf.rows.push_back(Row{{}, sense, rhs, family, j, t});
    return sf.rows.back();
  };

  // Start-indicator linking.
  for (int j = 0; j < J; ++j) {
    Row& row = add_row(ConstraintFamily::kPhiFirst, j + 1, 1, RowSense::kGe, 0.0);
    row.entries = {{sf.phi_col(j, 0), 1.0}, {sf.x_col(j, 0), -1.0}};
  }
  for (int j = 0; j < J; ++j)
    for (int t = 1; t < T; ++t) {
      Row& row = add_row(ConstraintFamily::kPhiRise, j + 1, t + 1, RowSense::kGe, 0.0);
      row.entries = {{sf.phi_col(j, t), 1.0},
                     {sf.x_col(j, t), -1.0},
                     {sf.x_col(j, t - 1), 1.0}};
    }
  for (int j = 0; j < J; ++j)
    for (int t = 0; t < T; ++t) {
      Row& row = add_row(ConstraintFamily::kPhiLeX, j + 1, t + 1, RowSense::kLe, 0.0);
      row.entries = {{sf.phi_col(j, t), 1.0}, {sf.x_col(j, t), -1.0}};
    }
  for (int j = 0; j < J; ++j)
    for (int t = 1; t < T; ++t) {
      Row& row = add_row(ConstraintFamily::kPhiFall, j + 1, t + 1, RowSense::kLe, 2.0);
      row.entries = {{sf.phi_col(j, t), 1.0},
                     {sf.x_col(j, t), 1.0},
                     {sf.x_col(j, t - 1), 1.0}};
    }

  // Execution windows.
  for (int j = 0; j < J; ++j) {
    const JobParams& job = inst.jobs[j];
    if (job.w_min < 1) continue;
    Row& row = add_row(ConstraintFamily::kWindowBefore, j + 1, 0, RowSense::kEq, 0.0);
    for (int t = 1; t <= job.w_min; ++t)
      row.entries.push_back({sf.x_col(j, t - 1), 1.0});
  }
  for (int j = 0; j < J; ++j) {
    const JobParams& job = inst.jobs[j];
    if (job.w_max >= T) continue;
    Row& row = add_row(ConstraintFamily::kWindowAfter, j + 1, 0, RowSense::kEq, 0.0);
    for (int t = job.w_max + 1; t <= T; ++t)
      row.entries.push_back({sf.x_col(j, t - 1), 1.0});
  }

  // Run lengths. A zero floor has no binding rows.
  for (int j = 0; j < J; ++j) {
    const JobParams& job = inst.jobs[j];
    if (job.t_min < 1) continue;
    for (int t = 1; t <= T - job.t_min + 1; ++t) {
      Row& row = add_row(ConstraintFamily::kMinRun, j + 1, t, RowSense::kGe, 0.0);
      for (int l = t; l <= t + job.t_min - 1; ++l)
        row.entries.push_back({sf.x_col(j, l - 1), 1.0});
      row.entries.push_back({sf.phi_col(j, t - 1), -static_cast<double>(job.t_min)});
    }
  }
  for (int j = 0; j < J; ++j) {
    const JobParams& job = inst.jobs[j];
    for (int t = 1; t <= T - job.t_max; ++t) {
      Row& row = add_row(ConstraintFamily::kMaxRun, j + 1, t, RowSense::kLe,
                         static_cast<double>(job.t_max));
      for (int l = t; l <= t + job.t_max; ++l)
        row.entries.push_back({sf.x_col(j, l - 1), 1.0});
    }
  }
  for (int j = 0; j < J; ++j) {
    const JobParams& job = inst.jobs[j];
    for (int t = std::max(1, T - job.t_min + 2); t <= T; ++t) {
      Row& row = add_row(ConstraintFamily::kMinRunTail, j + 1, t, RowSense::kGe, 0.0);
      for (int l = t; l <= T; ++l)
        row.entries.push_back({sf.x_col(j, l - 1), 1.0});
      row.entries.push_back({sf.phi_col(j, t - 1), -static_cast<double>(T - t + 1)});
    }
  }

  // Periodicity.
  for (int j = 0; j < J; ++j) {
    const JobParams& job = inst.jobs[j];
    if (job.p_min < 1) continue;  // size-0 windows have no rows
    for (int t = 1; t <= T - job.p_min + 1; ++t) {
      Row& row = add_row(ConstraintFamily::kPeriodMaxStarts, j + 1, t, RowSense::kLe, 1.0);
      for (int l = t; l <= t + job.p_min - 1; ++l)
        row.entries.push_back({sf.phi_col(j, l - 1), 1.0});
    }
  }
  for (int j = 0; j < J; ++j) {
    const JobParams& job = inst.jobs[j];
    for (int t = 1; t <= T - job.p_max + 1; ++t) {
      Row& row = add_row(ConstraintFamily::kPeriodMinStarts, j + 1, t, RowSense::kGe, 1.0);
      for (int l = t; l <= t + job.p_max - 1; ++l)
        row.entries.push_back({sf.phi_col(j, l - 1), 1.0});
    }
  }

  // Activation counts.
  for (int j = 0; j < J; ++j) {
    Row& row = add_row(ConstraintFamily::kMinStarts, j + 1, 0, RowSense::kGe,
                       static_cast<double>(inst.jobs[j].y_min));
    for (int t = 0; t < T; ++t) row.entries.push_back({sf.phi_col(j, t), 1.0});
  }
  for (int j = 0; j < J; ++j) {
    Row& row = add_row(ConstraintFamily::kMaxStarts, j + 1, 0, RowSense::kLe,
                       static_cast<double>(inst.jobs[j].y_max));
    for (int t = 0; t < T; ++t) row.entries.push_back({sf.phi_col(j, t), 1.0});
  }

  // Energy.
  const BatteryParams& bat = inst.battery;
  for (int t = 0; t < T; ++t) {
    Row& row = add_row(ConstraintFamily::kPowerCap, 0, t + 1, RowSense::kLe,
                       inst.power[t] + bat.discharge_limit * bat.bus_voltage);
    for (int j = 0; j < J; ++j)
      row.entries.push_back({sf.x_col(j, t), inst.jobs[j].q});
  }
  // State-of-charge update with the balance and current substituted out:
  // soc_{t+1} - soc_t + sum_j k q_j x_{j,t} = k r_t, k = e / (60 Q V_b).
  const double k = bat.charge_efficiency /
                   (60.0 * bat.capacity * bat.bus_voltage);
  for (int t = 0; t < T; ++t) {
    Row& row = add_row(ConstraintFamily::kSocRecursion, 0, t + 1, RowSense::kEq,
                       k * inst.power[t]);
    row.entries.push_back({sf.soc_col(t + 1), 1.0});
    row.entries.push_back({sf.soc_col(t), -1.0});
    for (int j = 0; j < J; ++j)
      row.entries.push_back({sf.x_col(j, t), k * inst.jobs[j].q});
  }
  for (int t = 0; t <= T; ++t) {
    Row& row = add_row(ConstraintFamily::kSocUpper, 0, t + 1, RowSense::kLe, 1.0);
    row.entries = {{sf.soc_col(t), 1.0}};
  }
  for (int t = 0; t <= T; ++t) {
    Row& row = add_row(ConstraintFamily::kSocLower, 0, t + 1, RowSense::kGe,
                       bat.soc_min);
    row.entries = {{sf.soc_col(t), 1.0}};
  }

  return sf;
}

double row_activity(const Row& row, const std::vector<double>& values) {
  double acc = 0.0;
  for (const RowEntry& e : row.entries) acc += e.coeff * values[e.col];
  return acc;
}

bool row_satisfied(const Row& row, double activity) {
  switch (row.sense) {
    case RowSense::kLe: return activity <= row.rhs + kFeasTol;
    case RowSense::kGe: return activity >= row.rhs - kFeasTol;
    case RowSense::kEq: return std::abs(activity - row.rhs) <= kFeasTol;
  }
  return false;
}

}  // namespace onts
