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

#include <filesystem>
#include <stdexcept>
#include <string>

#include "onts/standard_form.hpp"

namespace onts {

struct LpParseError : std::runtime_error {
  LpParseError(int line, const std::string& what)
      : std::runtime_error("lp parse error at line " + std::to_string(line) +
                           ": " + what),
        line_number(line) {}
  int line_number;
};

/// Writes the model as an LP text file with Maximize / Subject To / Bounds /
/// Binary / End sections, one row per line. Coefficients are printed with 17
/// significant digits so parse_lp(export_lp(sf)) reproduces sf bit-exactly.
void export_lp(const StandardForm& sf, const std::filesystem::path& path);

std::string lp_text(const StandardForm& sf);

/// Inverse of export_lp for this project's LP dialect. Row families and
/// job/time indices are recovered from the row names; variable order is
/// rebuilt from the x/phi/soc naming scheme. Throws LpParseError with the
/// offending line number on malformed input.
StandardForm parse_lp(const std::filesystem::path& path);

StandardForm parse_lp_text(const std::string& text);

}  // namespace onts
