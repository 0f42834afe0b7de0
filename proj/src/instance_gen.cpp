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

#include "onts/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "onts/rng.hpp"

namespace onts {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

std::vector<double> power_curve(int horizon, double orbit_fraction_sunlit,
                                double peak_power, std::uint64_t seed) {
  if (horizon < 1) throw std::invalid_argument("power_curve: T must be >= 1");
  if (!(orbit_fraction_sunlit > 0.0 && orbit_fraction_sunlit < 1.0))
    throw std::invalid_argument(
        "power_curve: orbit_fraction_sunlit must be in (0, 1)");
  if (!(peak_power >= 0.0))
    throw std::invalid_argument("power_curve: peak_power must be >= 0");

  const int T = horizon;
  const int eclipse_len =
      static_cast<int>(std::floor((1.0 - orbit_fraction_sunlit) * T));
  const int sunlit_len = T - eclipse_len;

  Rng rng(seed);
  const int eclipse_start = static_cast<int>(rng.bounded(T));

  std::vector<double> r(T, 0.0);
  // Sunlit arc begins right after the eclipse block and wraps around.
  for (int s = 0; s < sunlit_len; ++s) {
    const int t = (eclipse_start + eclipse_len + s) % T;
    const double phase = std::numbers::pi * (s + 0.5) / sunlit_len;
    r[t] = peak_power * std::max(0.0, std::sin(phase));
  }
  return r;
}

Instance random_instance(int num_jobs, int horizon, std::uint64_t seed,
                         const GenOptions& opts) {
  if (num_jobs < 1) throw std::invalid_argument("random_instance: J >= 1");
  if (horizon < 1) throw std::invalid_argument("random_instance: T >= 1");

  const int J = num_jobs;
  const int T = horizon;
  Rng rng(derive_seed(seed, 1));

  Instance inst;
  inst.num_jobs = J;
  inst.horizon = T;
  // Generated batteries start below full: at soc_initial = 1 any idle sunlit
  // step overcharges (the recursion has no clamp) and the instance dies on
  // the SoC upper bound.
  inst.battery = BatteryParams{0.9, 5.0, 5.0, 3.6, 0.0, 0.7};

  const int y_lo_cap = ceil_div(T, 45);
  const int y_hi_cap = ceil_div(T, 15);
  const int run_lo_cap = ceil_div(T, 10);
  const int quarter = ceil_div(T, 4);
  const int fifth = ceil_div(T, 5);

  double mean_q = 0.0;
  inst.jobs.resize(J);
  for (int j = 0; j < J; ++j) {
    JobParams& job = inst.jobs[j];
    job.u = rng.uniform(1.0, static_cast<double>(J));
    job.q = rng.uniform(0.3, 2.5);
    job.y_min = static_cast<int>(rng.uniform_int(1, y_lo_cap));
    job.y_max = static_cast<int>(
        rng.uniform_int(job.y_min, std::max(job.y_min, y_hi_cap)));
    job.t_min = static_cast<int>(rng.uniform_int(1, run_lo_cap));
    job.t_max = static_cast<int>(
        rng.uniform_int(job.t_min, std::max(job.t_min, quarter)));
    job.p_min = static_cast<int>(
        rng.uniform_int(job.t_min, std::max(job.t_min, quarter)));
    job.p_max = static_cast<int>(rng.uniform_int(job.p_min, T));
    job.w_min = static_cast<int>(rng.uniform_int(0, std::min(fifth, T - 1)));
    job.w_max = static_cast<int>(
        rng.uniform_int(std::max(job.w_min + 1, T - fifth), T));
    mean_q += job.q;
  }
  mean_q /= J;

  double peak = opts.peak_power;
  if (peak <= 0.0) {
    // mean(r) over the orbit is roughly fraction * peak * 2/pi; aim it at
    // half the average total demand so instances are mostly-but-not-always
    // feasible.
    peak = (J * mean_q / 2.0) * std::numbers::pi /
           (2.0 * opts.orbit_fraction_sunlit);
  }
  inst.power = power_curve(T, opts.orbit_fraction_sunlit, peak,
                           derive_seed(seed, 2));

  validate_instance(inst);
  return inst;
}

}  // namespace onts
