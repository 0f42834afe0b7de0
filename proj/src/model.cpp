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

#include "onts/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace onts {

namespace {

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

void validate_instance(const Instance& inst) {
  const int J = inst.num_jobs;
  const int T = inst.horizon;
  if (J < 1) fail("instance: J must be >= 1");
  if (T < 1) fail("instance: T must be >= 1");
  if (static_cast<int>(inst.jobs.size()) != J)
    fail("instance: jobs length != J");
  if (static_cast<int>(inst.power.size()) != T)
    fail("instance: power vector length != T");
  for (int t = 0; t < T; ++t)
    if (inst.power[t] < 0.0) fail("instance: r_t must be >= 0");

  for (int j = 0; j < J; ++j) {
    const JobParams& job = inst.jobs[j];
    const std::string tag = "job " + std::to_string(j + 1) + ": ";
    if (!(job.u > 0.0)) fail(tag + "u must be > 0");
    if (!(job.q > 0.0)) fail(tag + "q must be > 0");
    if (job.y_min < 0 || job.y_min > job.y_max)
      fail(tag + "need 0 <= y_min <= y_max");
    if (job.t_min < 0 || job.t_min > job.t_max)
      fail(tag + "need 0 <= t_min <= t_max");
    if (job.p_min < job.t_min || job.p_min > job.p_max || job.p_max > T)
      fail(tag + "need t_min <= p_min <= p_max <= T");
    if (job.w_min < 0 || job.w_min >= job.w_max || job.w_max > T)
      fail(tag + "need 0 <= w_min < w_max <= T");
  }

  const BatteryParams& b = inst.battery;
  if (!(b.charge_efficiency > 0.0 && b.charge_efficiency <= 1.0))
    fail("battery: e must be in (0, 1]");
  if (!(b.capacity > 0.0)) fail("battery: Q must be > 0");
  if (!(b.discharge_limit > 0.0)) fail("battery: gamma must be > 0");
  if (!(b.bus_voltage > 0.0)) fail("battery: V_b must be > 0");
  if (!(b.soc_min >= 0.0 && b.soc_min < 1.0))
    fail("battery: rho must be in [0, 1)");
  if (!(b.soc_initial >= b.soc_min && b.soc_initial <= 1.0))
    fail("battery: soc_initial must be in [rho, 1]");
}

std::vector<std::uint8_t> CandidateSolution::flat() const {
  std::vector<std::uint8_t> z;
  z.reserve(x.size() + phi.size());
  z.insert(z.end(), x.begin(), x.end());
  z.insert(z.end(), phi.begin(), phi.end());
  return z;
}

std::string_view family_name(ConstraintFamily f) {
  switch (f) {
    case ConstraintFamily::kPhiFirst: return "phi_first";
    case ConstraintFamily::kPhiRise: return "phi_rise";
    case ConstraintFamily::kPhiLeX: return "phi_le_x";
    case ConstraintFamily::kPhiFall: return "phi_fall";
    case ConstraintFamily::kWindowBefore: return "window_before";
    case ConstraintFamily::kWindowAfter: return "window_after";
    case ConstraintFamily::kMinRun: return "min_run";
    case ConstraintFamily::kMaxRun: return "max_run";
    case ConstraintFamily::kMinRunTail: return "min_run_tail";
    case ConstraintFamily::kPeriodMaxStarts: return "period_max_starts";
    case ConstraintFamily::kPeriodMinStarts: return "period_min_starts";
    case ConstraintFamily::kMinStarts: return "min_starts";
    case ConstraintFamily::kMaxStarts: return "max_starts";
    case ConstraintFamily::kPowerCap: return "power_cap";
    case ConstraintFamily::kSocRecursion: return "soc_recursion";
    case ConstraintFamily::kSocUpper: return "soc_upper";
    case ConstraintFamily::kSocLower: return "soc_lower";
  }
  return "unknown";
}

bool FeasibilityReport::has_family(ConstraintFamily f) const {
  return std::any_of(violations.begin(), violations.end(),
                     [f](const Violation& v) { return v.family == f; });
}

std::vector<std::uint8_t> derive_phi(int num_jobs, int horizon,
                                     const std::vector<std::uint8_t>& x) {
  if (static_cast<int>(x.size()) != num_jobs * horizon)
    fail("derive_phi: x size mismatch");
  std::vector<std::uint8_t> phi(x.size(), 0);
  for (int j = 0; j < num_jobs; ++j) {
    const int base = j * horizon;
    phi[base] = x[base];
    for (int t = 1; t < horizon; ++t)
      phi[base + t] = static_cast<std::uint8_t>(x[base + t] & (1 - x[base + t - 1]));
  }
  return phi;
}

CandidateSolution solution_from_x(int num_jobs, int horizon,
                                  std::vector<std::uint8_t> x) {
  CandidateSolution z;
  z.num_jobs = num_jobs;
  z.horizon = horizon;
  z.phi = derive_phi(num_jobs, horizon, x);
  z.x = std::move(x);
  return z;
}

double qos(const Instance& inst, const std::vector<std::uint8_t>& x) {
  if (static_cast<int>(x.size()) != inst.num_jobs * inst.horizon)
    fail("qos: x size mismatch");
  double total = 0.0;
  for (int j = 0; j < inst.num_jobs; ++j) {
    int on = 0;
    for (int t = 0; t < inst.horizon; ++t) on += x[j * inst.horizon + t];
    total += inst.jobs[j].u * on;
  }
  return total;
}

double qos(const Instance& inst, const CandidateSolution& z) {
  return qos(inst, z.x);
}

SocTrajectory soc_trajectory(const Instance& inst,
                             const std::vector<std::uint8_t>& x) {
  const int J = inst.num_jobs;
  const int T = inst.horizon;
  if (static_cast<int>(x.size()) != J * T) fail("soc_trajectory: x size mismatch");

  SocTrajectory traj;
  traj.soc.resize(T + 1);
  traj.balance.resize(T);
  traj.current.resize(T);
  const BatteryParams& bat = inst.battery;
  traj.soc[0] = bat.soc_initial;
  for (int t = 0; t < T; ++t) {
    double demand = 0.0;
    for (int j = 0; j < J; ++j)
      if (x[j * T + t]) demand += inst.jobs[j].q;
    traj.balance[t] = inst.power[t] - demand;
    traj.current[t] = traj.balance[t] / bat.bus_voltage;
    traj.soc[t + 1] =
        traj.soc[t] + traj.current[t] * bat.charge_efficiency / (60.0 * bat.capacity);
  }
  return traj;
}

FeasibilityReport check_feasibility(const Instance& inst,
                                    const CandidateSolution& z) {
  const int J = inst.num_jobs;
  const int T = inst.horizon;
  if (z.num_jobs != J || z.horizon != T ||
      static_cast<int>(z.x.size()) != J * T ||
      static_cast<int>(z.phi.size()) != J * T)
    fail("check_feasibility: solution dimensions do not match instance");

  FeasibilityReport report;
  auto violate = [&report](ConstraintFamily f, int j, int t, double lhs,
                           double bound) {
    report.violations.push_back({f, j, t, lhs, bound});
  };

  for (int j = 0; j < J; ++j) {
    const JobParams& job = inst.jobs[j];
    auto x = [&](int t) { return static_cast<int>(z.x_at(j, t - 1)); };
    auto phi = [&](int t) { return static_cast<int>(z.phi_at(j, t - 1)); };

    if (phi(1) < x(1))
      violate(ConstraintFamily::kPhiFirst, j + 1, 1, phi(1), x(1));
    for (int t = 2; t <= T; ++t)
      if (phi(t) < x(t) - x(t - 1))
        violate(ConstraintFamily::kPhiRise, j + 1, t, phi(t), x(t) - x(t - 1));
    for (int t = 1; t <= T; ++t)
      if (phi(t) > x(t))
        violate(ConstraintFamily::kPhiLeX, j + 1, t, phi(t), x(t));
    for (int t = 2; t <= T; ++t)
      if (phi(t) > 2 - x(t) - x(t - 1))
        violate(ConstraintFamily::kPhiFall, j + 1, t, phi(t),
                2 - x(t) - x(t - 1));

    int before = 0;
    for (int t = 1; t <= job.w_min; ++t) before += x(t);
    if (before != 0)
      violate(ConstraintFamily::kWindowBefore, j + 1, 0, before, 0);
    int after = 0;
    for (int t = job.w_max + 1; t <= T; ++t) after += x(t);
    if (after != 0) violate(ConstraintFamily::kWindowAfter, j + 1, 0, after, 0);

    // A zero run-length floor has no binding rows (and t would run past T).
    if (job.t_min >= 1) {
      for (int t = 1; t <= T - job.t_min + 1; ++t) {
        int run = 0;
        for (int l = t; l <= t + job.t_min - 1; ++l) run += x(l);
        if (run < job.t_min * phi(t))
          violate(ConstraintFamily::kMinRun, j + 1, t, run, job.t_min * phi(t));
      }
    }
    for (int t = 1; t <= T - job.t_max; ++t) {
      int run = 0;
      for (int l = t; l <= t + job.t_max; ++l) run += x(l);
      if (run > job.t_max)
        violate(ConstraintFamily::kMaxRun, j + 1, t, run, job.t_max);
    }
    for (int t = std::max(1, T - job.t_min + 2); t <= T; ++t) {
      int tail = 0;
      for (int l = t; l <= T; ++l) tail += x(l);
      if (tail < (T - t + 1) * phi(t))
        violate(ConstraintFamily::kMinRunTail, j + 1, t, tail,
                (T - t + 1) * phi(t));
    }

    for (int t = 1; t <= T - job.p_min + 1; ++t) {
      int starts = 0;
      for (int l = t; l <= t + job.p_min - 1; ++l) starts += phi(l);
      if (starts > 1)
        violate(ConstraintFamily::kPeriodMaxStarts, j + 1, t, starts, 1);
    }
    for (int t = 1; t <= T - job.p_max + 1; ++t) {
      int starts = 0;
      for (int l = t; l <= t + job.p_max - 1; ++l) starts += phi(l);
      if (starts < 1)
        violate(ConstraintFamily::kPeriodMinStarts, j + 1, t, starts, 1);
    }

    int total_starts = 0;
    for (int t = 1; t <= T; ++t) total_starts += phi(t);
    if (total_starts < job.y_min)
      violate(ConstraintFamily::kMinStarts, j + 1, 0, total_starts, job.y_min);
    if (total_starts > job.y_max)
      violate(ConstraintFamily::kMaxStarts, j + 1, 0, total_starts, job.y_max);
  }

  const BatteryParams& bat = inst.battery;
  const double power_margin = bat.discharge_limit * bat.bus_voltage;
  for (int t = 0; t < T; ++t) {
    double demand = 0.0;
    for (int j = 0; j < J; ++j)
      if (z.x_at(j, t)) demand += inst.jobs[j].q;
    const double cap = inst.power[t] + power_margin;
    if (demand > cap + kFeasTol)
      violate(ConstraintFamily::kPowerCap, 0, t + 1, demand, cap);
  }

  const SocTrajectory traj = soc_trajectory(inst, z.x);
  for (int t = 0; t <= T; ++t) {
    if (traj.soc[t] > 1.0 + kFeasTol)
      violate(ConstraintFamily::kSocUpper, 0, t + 1, traj.soc[t], 1.0);
    if (traj.soc[t] < bat.soc_min - kFeasTol)
      violate(ConstraintFamily::kSocLower, 0, t + 1, traj.soc[t], bat.soc_min);
  }

  report.feasible = report.violations.empty();
  return report;
}

}  // namespace onts
