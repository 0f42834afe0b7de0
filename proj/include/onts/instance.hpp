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
#include <string_view>
#include <vector>

namespace onts {

/// Tolerance for continuous (power / state-of-charge) constraint rows.
/// Binary rows are evaluated in exact integer arithmetic.
inline constexpr double kFeasTol = 1e-9;

/// Per-job scheduling parameters. Time steps are 1-based, t = 1..T;
/// the execution window is the half-open interval (w_min, w_max].
struct JobParams {
  double u = 1.0;  // priority weight, > 0
  double q = 1.0;  // power draw while running, W, > 0
  int y_min = 0;   // minimum number of activations
  int y_max = 0;   // maximum number of activations
  int t_min = 1;   // minimum consecutive run length
  int t_max = 1;   // maximum consecutive run length
  int p_min = 1;   // minimum period between starts
  int p_max = 1;   // maximum period between starts
  int w_min = 0;   // no execution at t <= w_min
  int w_max = 1;   // no execution at t > w_max
};

struct BatteryParams {
  double charge_efficiency = 0.9;  // e, in (0, 1]
  double capacity = 5.0;           // Q, Ah
  double discharge_limit = 5.0;    // gamma, A; battery supplies <= gamma*V_b W
  double bus_voltage = 3.6;        // V_b, V
  double soc_min = 0.0;            // rho, lower state-of-charge bound
  double soc_initial = 1.0;        // SoC at t = 1, in [rho, 1]
};

struct Instance {
  int num_jobs = 0;  // J
  int horizon = 0;   // T
  std::vector<JobParams> jobs;  // length J
  std::vector<double> power;    // r_t >= 0, length T
  BatteryParams battery;
};

/// Throws std::invalid_argument describing the first violated invariant.
void validate_instance(const Instance& inst);

/// Full binary assignment z = (x, phi). Both matrices are J x T, stored
/// row-major (job-major, time-minor) with 0-based indices internally.
struct CandidateSolution {
  int num_jobs = 0;
  int horizon = 0;
  std::vector<std::uint8_t> x;    // J*T entries in {0,1}
  std::vector<std::uint8_t> phi;  // J*T entries in {0,1}

  std::uint8_t x_at(int j, int t) const { return x[j * horizon + t]; }
  std::uint8_t phi_at(int j, int t) const { return phi[j * horizon + t]; }

  /// Flat z vector of length 2*J*T: x block first, then phi block.
  std::vector<std::uint8_t> flat() const;

  bool operator==(const CandidateSolution&) const = default;
};

/// Constraint families of the scheduling formulation, in the canonical row
/// order used by the matrix form, the LP file and feasibility reports.
enum class ConstraintFamily {
  kPhiFirst,         // phi >= x at t = 1
  kPhiRise,          // phi >= x_t - x_{t-1}
  kPhiLeX,           // phi <= x
  kPhiFall,          // phi <= 2 - x_t - x_{t-1}
  kWindowBefore,     // no execution at or before w_min
  kWindowAfter,      // no execution after w_max
  kMinRun,           // a start forces >= t_min consecutive steps
  kMaxRun,           // <= t_max consecutive steps
  kMinRunTail,       // a start near the horizon end runs to the end
  kPeriodMaxStarts,  // <= 1 start in any p_min window
  kPeriodMinStarts,  // >= 1 start in any p_max window
  kMinStarts,        // total starts >= y_min
  kMaxStarts,        // total starts <= y_max
  kPowerCap,         // demand <= availability + battery discharge
  kSocRecursion,     // state-of-charge update (matrix form only)
  kSocUpper,         // SoC <= 1
  kSocLower,         // SoC >= rho
};

std::string_view family_name(ConstraintFamily f);

/// One violated constraint row. `lhs` and `bound` are the two sides of the
/// row as written in the formulation; `j` and `t` are 1-based and 0 when the
/// row is not indexed by that coordinate.
struct Violation {
  ConstraintFamily family;
  int j = 0;
  int t = 0;
  double lhs = 0.0;
  double bound = 0.0;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;

  bool has_family(ConstraintFamily f) const;
};

/// State-of-charge simulation of a schedule. `soc` has T+1 entries
/// (soc[0] = soc_initial is the value at t = 1); `balance` and `current`
/// have T entries. No clamping is applied; bound checks live in
/// check_feasibility.
struct SocTrajectory {
  std::vector<double> soc;
  std::vector<double> balance;
  std::vector<double> current;
};

/// The unique start-indicator matrix implied by x:
/// phi_{j,1} = x_{j,1}, and phi_{j,t} = x_{j,t} * (1 - x_{j,t-1}) for t > 1.
std::vector<std::uint8_t> derive_phi(int num_jobs, int horizon,
                                     const std::vector<std::uint8_t>& x);

/// Builds a full candidate solution from an activation matrix, deriving phi.
CandidateSolution solution_from_x(int num_jobs, int horizon,
                                  std::vector<std::uint8_t> x);

/// Priority-weighted quality of service: sum_j sum_t u_j * x_{j,t}.
double qos(const Instance& inst, const std::vector<std::uint8_t>& x);
double qos(const Instance& inst, const CandidateSolution& z);

SocTrajectory soc_trajectory(const Instance& inst,
                             const std::vector<std::uint8_t>& x);

/// Evaluates every constraint family literally and reports every violated
/// row. Empty-range sums never violate. Throws std::invalid_argument on a
/// dimension mismatch between `inst` and `z`.
FeasibilityReport check_feasibility(const Instance& inst,
                                    const CandidateSolution& z);

}  // namespace onts
