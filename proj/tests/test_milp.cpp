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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <tuple>
#include <vector>

#include "onts/instance_gen.hpp"
#include "onts/lp_io.hpp"
#include "onts/rng.hpp"
#include "onts/standard_form.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace onts;
using testing::permissive_instance;

namespace {

/// Full variable vector (x, phi, soc) for a binary assignment, with the
/// state-of-charge part simulated from x.
std::vector<double> assemble_values(const Instance& inst,
                                    const StandardForm& sf,
                                    const CandidateSolution& z) {
  std::vector<double> values(sf.n_vars(), 0.0);
  for (int j = 0; j < inst.num_jobs; ++j)
    for (int t = 0; t < inst.horizon; ++t) {
      values[sf.x_col(j, t)] = z.x_at(j, t);
      values[sf.phi_col(j, t)] = z.phi_at(j, t);
    }
  const SocTrajectory traj = soc_trajectory(inst, z.x);
  for (int t = 0; t <= inst.horizon; ++t) values[sf.soc_col(t)] = traj.soc[t];
  return values;
}

bool matrix_feasible(const Instance& inst, const StandardForm& sf,
                     const CandidateSolution& z) {
  const std::vector<double> values = assemble_values(inst, sf, z);
  for (const Row& row : sf.rows)
    if (!row_satisfied(row, row_activity(row, values))) return false;
  return true;
}

}  // namespace

TEST_CASE("standard form has the documented shape") {
  const Instance inst = permissive_instance(1, 3);
  const StandardForm sf = build_standard_form(inst);
  CHECK(sf.n_vars() == 10);  // 2*1*3 + 4
  CHECK(sf.n_binary() == 6);
  CHECK(sf.var_names[0] == "x_1_1");
  CHECK(sf.var_names[3] == "phi_1_1");
  CHECK(sf.var_names[6] == "soc_1");
  CHECK(sf.var_names[9] == "soc_4");
  CHECK(sf.var_kinds[0].is_binary);
  CHECK_FALSE(sf.var_kinds[6].is_binary);
  // soc_1 is pinned to the initial state of charge.
  CHECK(sf.var_kinds[6].lb == inst.battery.soc_initial);
  CHECK(sf.var_kinds[6].ub == inst.battery.soc_initial);

  const Instance big = permissive_instance(9, 125);
  CHECK(build_standard_form(big).n_binary() == 2250);
}

TEST_CASE("objective equals qos for random assignments") {
  const Instance inst = random_instance(2, 5, 3);
  const StandardForm sf = build_standard_form(inst);
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    std::vector<std::uint8_t> x(10, 0);
    for (int k = 0; k < 10; ++k) x[k] = (mask * 7 + k) % 3 == 0;
    const CandidateSolution z = solution_from_x(2, 5, x);
    const std::vector<double> values = assemble_values(inst, sf, z);
    double cz = 0.0;
    for (int col = 0; col < sf.n_vars(); ++col)
      cz += sf.objective[col] * values[col];
    CHECK(cz == doctest::Approx(qos(inst, z.x)).epsilon(1e-12));
  }
}

TEST_CASE("rows are emitted in family order, job-major, time-minor") {
  const Instance inst = permissive_instance(2, 4);
  const StandardForm sf = build_standard_form(inst);
  for (size_t i = 1; i < sf.rows.size(); ++i) {
    const Row& a = sf.rows[i - 1];
    const Row& b = sf.rows[i];
    const auto key_a = std::tuple(static_cast<int>(a.family), a.j, a.t);
    const auto key_b = std::tuple(static_cast<int>(b.family), b.j, b.t);
    CHECK(key_a < key_b);
  }
}

TEST_CASE("matrix feasibility matches the semantic checker exhaustively") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int J = 1 + static_cast<int>(seed % 2);
    const int T = 4 + static_cast<int>(seed % 3);
    const Instance inst = random_instance(J, T, seed + 100);
    const StandardForm sf = build_standard_form(inst);
    const int n = J * T;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      std::vector<std::uint8_t> x(n);
      for (int k = 0; k < n; ++k) x[k] = (mask >> k) & 1u;
      const CandidateSolution z = solution_from_x(J, T, x);
      CHECK(matrix_feasible(inst, sf, z) ==
            check_feasibility(inst, z).feasible);
    }
  }
}

TEST_CASE("matrix form also matches on inconsistent phi assignments") {
  const Instance inst = random_instance(2, 4, 9);
  const StandardForm sf = build_standard_form(inst);
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    CandidateSolution z;
    z.num_jobs = 2;
    z.horizon = 4;
    z.x.resize(8);
    z.phi.resize(8);
    for (int k = 0; k < 8; ++k) {
      z.x[k] = static_cast<std::uint8_t>(rng.bounded(2));
      z.phi[k] = static_cast<std::uint8_t>(rng.bounded(2));
    }
    CHECK(matrix_feasible(inst, sf, z) == check_feasibility(inst, z).feasible);
  }
}

TEST_CASE("lp text round-trips bit-exactly") {
  const std::filesystem::path tmp =
      std::filesystem::temp_directory_path() / "onts_roundtrip.lp";
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance inst = random_instance(1 + seed % 3, 4 + seed % 4, seed);
    const StandardForm sf = build_standard_form(inst);
    export_lp(sf, tmp);
    const StandardForm back = parse_lp(tmp);
    CHECK(back == sf);
  }
  std::filesystem::remove(tmp);
}

TEST_CASE("lp round-trip keeps awkward coefficients") {
  Instance inst = permissive_instance(1, 3);
  inst.jobs[0].q = 10.0 / 3.6;  // 2.777... propagates into the soc rows
  inst.power[1] = 1.0 / 3.0;
  const StandardForm sf = build_standard_form(inst);
  const StandardForm back = parse_lp_text(lp_text(sf));
  CHECK(back == sf);
}

TEST_CASE("lp parser reports the offending line") {
  const std::string broken =
      "Maximize\n obj: 1 x_1_1\nSubject To\n min_starts_j1: phi_1_1 >=\n"
      "Binary\n x_1_1\n phi_1_1\nEnd\n";
  try {
    parse_lp_text(broken);
    FAIL("expected LpParseError");
  } catch (const LpParseError& err) {
    CHECK(err.line_number == 4);
  }
}

TEST_CASE("lp parser rejects structural damage") {
  const Instance inst = random_instance(1, 4, 1);
  const std::string good = lp_text(build_standard_form(inst));

  // Truncation loses the End marker.
  const std::string no_end = good.substr(0, good.size() - 4);
  CHECK_THROWS_AS(parse_lp_text(no_end), LpParseError);

  // Content before any section header.
  CHECK_THROWS_AS(parse_lp_text("x_1_1 <= 1\n" + good), LpParseError);

  // Content after End.
  CHECK_THROWS_AS(parse_lp_text(good + " stray: 1 x_1_1 <= 1\n"), LpParseError);

  // Bounds line that is neither "name = v" nor "lo <= name <= hi".
  const std::string bad_bound = [&] {
    std::string s = good;
    const size_t pos = s.find("Bounds\n");
    return s.substr(0, pos + 7) + " soc_1 >= 0.5\n" + s.substr(pos + 7);
  }();
  CHECK_THROWS_AS(parse_lp_text(bad_bound), LpParseError);

  // Garbage rhs.
  std::string bad_rhs = good;
  const size_t pos = bad_rhs.find(">= 0\n");
  REQUIRE(pos != std::string::npos);
  bad_rhs.replace(pos, 5, ">= zero\n");
  CHECK_THROWS_AS(parse_lp_text(bad_rhs), LpParseError);
}

TEST_CASE("lp parser rejects unknown variables and rows") {
  CHECK_THROWS_AS(
      parse_lp_text("Maximize\n obj: 1 y_1_1\nSubject To\nBinary\n y_1_1\nEnd\n"),
      LpParseError);
  CHECK_THROWS_AS(parse_lp_text("Maximize\n obj: 1 x_1_1\nSubject To\n"
                                " bogus_row_j1: 1 x_1_1 <= 1\n"
                                "Binary\n x_1_1\n phi_1_1\nEnd\n"),
                  LpParseError);
}
