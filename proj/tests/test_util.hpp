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

#include "onts/instance.hpp"

namespace onts::testing {

/// Wide-open job bounds: every job may run anywhere, any number of times
/// (periodicity still requires one start per p_max = T window, as in every
/// valid instance). Ambient power is zero so the full battery never
/// overcharges; the discharge margin gamma * V_b carries the load.
inline Instance permissive_instance(int J, int T) {
  Instance inst;
  inst.num_jobs = J;
  inst.horizon = T;
  inst.battery = BatteryParams{0.9, 5.0, 5.0, 3.6, 0.0, 1.0};
  for (int j = 0; j < J; ++j) {
    JobParams job;
    job.u = 1.0 + j;
    job.q = 1.0;
    job.y_min = 0;
    job.y_max = T;
    job.t_min = 1;
    job.t_max = T;
    job.p_min = 1;
    job.p_max = T;
    job.w_min = 0;
    job.w_max = T;
    inst.jobs.push_back(job);
  }
  inst.power.assign(T, 0.0);
  return inst;
}

inline CandidateSolution make_solution(int J, int T,
                                       const std::vector<int>& x_bits,
                                       const std::vector<int>& phi_bits) {
  CandidateSolution z;
  z.num_jobs = J;
  z.horizon = T;
  z.x.assign(x_bits.begin(), x_bits.end());
  z.phi.assign(phi_bits.begin(), phi_bits.end());
  return z;
}

}  // namespace onts::testing
