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

#include <string>
#include <vector>

#include "onts/instance.hpp"

namespace onts {

enum class RowSense { kLe, kEq, kGe };

struct RowEntry {
  int col;
  double coeff;
  bool operator==(const RowEntry&) const = default;
};

/// One sparse constraint row. `j` and `t` are the 1-based job/time indices
/// the row is instantiated at (0 when the family is not indexed by them).
struct Row {
  std::vector<RowEntry> entries;
  RowSense sense = RowSense::kLe;
  double rhs = 0.0;
  ConstraintFamily family = ConstraintFamily::kPowerCap;
  int j = 0;
  int t = 0;
  bool operator==(const Row&) const = default;
};

struct VariableKind {
  bool is_binary = true;
  double lb = 0.0;
  double ub = 1.0;
  bool operator==(const VariableKind&) const = default;
};

/// Explicit sparse model of one instance: maximize c'v subject to the rows.
/// Variable order is fixed: x (job-major, time-minor), then phi, then
/// soc_1..soc_{T+1}. soc_1 is pinned to the initial state of charge through
/// its bounds.
struct StandardForm {
  int num_jobs = 0;
  int horizon = 0;
  std::vector<std::string> var_names;
  std::vector<VariableKind> var_kinds;
  std::vector<double> objective;
  std::vector<Row> rows;

  int n_vars() const { return static_cast<int>(var_names.size()); }
  int n_rows() const { return static_cast<int>(rows.size()); }
  int n_binary() const { return 2 * num_jobs * horizon; }

  int x_col(int j, int t) const { return j * horizon + t; }
  int phi_col(int j, int t) const { return num_jobs * horizon + j * horizon + t; }
  int soc_col(int t) const { return 2 * num_jobs * horizon + t; }  // t = 0..T

  bool operator==(const StandardForm&) const = default;
};

/// Lowers an instance into standard form. Rows are emitted family-major in
/// the ConstraintFamily order, job-major then time-minor within a family;
/// rows whose index range is empty (e.g. the pre-window sum when w_min = 0)
/// are omitted. b_t and i_t are substituted out of the state-of-charge
/// recursion, which appears as equality rows over soc and x.
StandardForm build_standard_form(const Instance& inst);

/// Evaluates one row at a full assignment of all variables.
double row_activity(const Row& row, const std::vector<double>& values);

/// True when `activity` satisfies the row's sense against its rhs within
/// kFeasTol. Rows over binary variables have integer activities, so the
/// tolerance never flips a genuine violation there.
bool row_satisfied(const Row& row, double activity);

}  // namespace onts
