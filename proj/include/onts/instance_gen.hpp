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

#include <cstdint>
#include <vector>

#include "onts/instance.hpp"

namespace onts {

/// Synthetic orbit illumination: a contiguous eclipse arc of
/// floor((1 - orbit_fraction_sunlit) * T) zero steps whose start position is
/// seeded, and a half-sine sunlit arc peaking at peak_power. The sine is
/// sampled at arc midpoints, so every sunlit step is strictly positive.
std::vector<double> power_curve(int horizon, double orbit_fraction_sunlit,
                                double peak_power, std::uint64_t seed);

struct GenOptions {
  double orbit_fraction_sunlit = 0.6;
  /// Peak of the illumination curve; <= 0 selects a peak that makes the mean
  /// available power roughly half the total job demand.
  double peak_power = 0.0;
};

/// Pseudo-random realistic instance. Battery parameters are fixed
/// (e=0.9, Q=5, gamma=5, V_b=3.6, rho=0); job parameters are drawn uniformly
/// within horizon-scaled ranges, with ordered pairs sampled conditionally so
/// every JobParams invariant holds for every seed. Deterministic in
/// (J, T, seed).
Instance random_instance(int num_jobs, int horizon, std::uint64_t seed,
                         const GenOptions& opts = {});

}  // namespace onts
