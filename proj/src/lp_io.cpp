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

#include "onts/lp_io.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace onts {

namespace {

constexpr std::array<ConstraintFamily, 17> kAllFamilies = {
    ConstraintFamily::kPhiFirst,        ConstraintFamily::kPhiRise,
    ConstraintFamily::kPhiLeX,          ConstraintFamily::kPhiFall,
    ConstraintFamily::kWindowBefore,    ConstraintFamily::kWindowAfter,
    ConstraintFamily::kMinRun,          ConstraintFamily::kMaxRun,
    ConstraintFamily::kMinRunTail,      ConstraintFamily::kPeriodMaxStarts,
    ConstraintFamily::kPeriodMinStarts, ConstraintFamily::kMinStarts,
    ConstraintFamily::kMaxStarts,       ConstraintFamily::kPowerCap,
    ConstraintFamily::kSocRecursion,    ConstraintFamily::kSocUpper,
    ConstraintFamily::kSocLower,
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string row_name(const Row& row) {
  std::string name(family_name(row.family));
  if (row.j > 0) name += "_j" + std::to_string(row.j);
  if (row.t > 0) name += "_t" + std::to_string(row.t);
  return name;
}

const char* sense_text(RowSense s) {
  switch (s) {
    case RowSense::kLe: return "<=";
    case RowSense::kGe: return ">=";
    case RowSense::kEq: return "=";
  }
  return "?";
}

struct Tokenizer {
  std::istringstream in;
  explicit Tokenizer(const std::string& line) : in(line) {}
  std::optional<std::string> next() {
    std::string tok;
    if (in >> tok) return tok;
    return std::nullopt;
  }
};

double parse_number(const std::string& tok, int line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw LpParseError(line, "expected a number, got '" + tok + "'");
  return v;
}

bool is_identifier(const std::string& tok) {
  if (tok.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(tok[0]))) return false;
  for (char c : tok)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

struct ParsedName {
  enum class Kind { kX, kPhi, kSoc } kind;
  int j = 0;  // 1-based
  int t = 0;  // 1-based
};

std::optional<ParsedName> parse_var_name(const std::string& name) {
  auto parse_int = [](const std::string& s, size_t& pos) -> std::optional<int> {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) return std::nullopt;
    return std::stoi(s.substr(start, pos - start));
  };
  auto parse_coords = [&](const std::string& rest,
                          ParsedName::Kind kind) -> std::optional<ParsedName> {
    size_t pos = 0;
    auto j = parse_int(rest, pos);
    if (!j || pos >= rest.size() || rest[pos] != '_') return std::nullopt;
    ++pos;
    auto t = parse_int(rest, pos);
    if (!t || pos != rest.size()) return std::nullopt;
    return ParsedName{kind, *j, *t};
  };
  if (name.rfind("x_", 0) == 0)
    return parse_coords(name.substr(2), ParsedName::Kind::kX);
  if (name.rfind("phi_", 0) == 0)
    return parse_coords(name.substr(4), ParsedName::Kind::kPhi);
  if (name.rfind("soc_", 0) == 0) {
    size_t pos = 4;
    auto parse_int2 = [&]() -> std::optional<int> {
      size_t start = pos;
      while (pos < name.size() &&
             std::isdigit(static_cast<unsigned char>(name[pos])))
        ++pos;
      if (pos == start || pos != name.size()) return std::nullopt;
      return std::stoi(name.substr(start, pos - start));
    };
    auto t = parse_int2();
    if (!t) return std::nullopt;
    return ParsedName{ParsedName::Kind::kSoc, 0, *t};
  }
  return std::nullopt;
}

struct RowHeader {
  ConstraintFamily family;
  int j = 0;
  int t = 0;
};

std::optional<RowHeader> parse_row_name(const std::string& name) {
  // Longest family-name prefix wins (e.g. period_max_starts vs max_starts).
  const ConstraintFamily* best = nullptr;
  size_t best_len = 0;
  for (const ConstraintFamily& f : kAllFamilies) {
    const std::string_view fname = family_name(f);
    if (name.size() >= fname.size() &&
        name.compare(0, fname.size(), fname) == 0 &&
        (name.size() == fname.size() || name[fname.size()] == '_') &&
        fname.size() > best_len) {
      best = &f;
      best_len = fname.size();
    }
  }
  if (!best) return std::nullopt;
  RowHeader header{*best, 0, 0};
  std::string rest = name.substr(best_len);
  while (!rest.empty()) {
    if (rest[0] != '_' || rest.size() < 2) return std::nullopt;
    const char which = rest[1];
    size_t pos = 2;
    while (pos < rest.size() &&
           std::isdigit(static_cast<unsigned char>(rest[pos])))
      ++pos;
    if (pos == 2) return std::nullopt;
    const int value = std::stoi(rest.substr(2, pos - 2));
    if (which == 'j')
      header.j = value;
    else if (which == 't')
      header.t = value;
    else
      return std::nullopt;
    rest = rest.substr(pos);
  }
  return header;
}

}  // namespace

std::string lp_text(const StandardForm& sf) {
  std::ostringstream out;
  out << "Maximize\n obj:";
  bool first = true;
  for (int col = 0; col < sf.n_vars(); ++col) {
    if (sf.objective[col] == 0.0) continue;
    out << (first ? " " : " + ") << fmt17(sf.objective[col]) << " "
        << sf.var_names[col];
    first = false;
  }
  out << "\nSubject To\n";
  for (const Row& row : sf.rows) {
    out << " " << row_name(row) << ":";
    for (size_t k = 0; k < row.entries.size(); ++k) {
      const RowEntry& e = row.entries[k];
      if (e.coeff < 0.0)
        out << " - " << fmt17(-e.coeff);
      else
        out << (k == 0 ? " " : " + ") << fmt17(e.coeff);
      out << " " << sf.var_names[e.col];
    }
    out << " " << sense_text(row.sense) << " " << fmt17(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (int col = 0; col < sf.n_vars(); ++col) {
    const VariableKind& kind = sf.var_kinds[col];
    if (kind.is_binary) continue;
    if (kind.lb == kind.ub)
      out << " " << sf.var_names[col] << " = " << fmt17(kind.lb) << "\n";
    else
      out << " " << fmt17(kind.lb) << " <= " << sf.var_names[col]
          << " <= " << fmt17(kind.ub) << "\n";
  }
  out << "Binary\n";
  for (int col = 0; col < sf.n_vars(); ++col)
    if (sf.var_kinds[col].is_binary) out << " " << sf.var_names[col] << "\n";
  out << "End\n";
  return out.str();
}

void export_lp(const StandardForm& sf, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << lp_text(sf);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

StandardForm parse_lp_text(const std::string& text) {
  enum class Section { kNone, kObjective, kRows, kBounds, kBinary, kEnd };
  Section section = Section::kNone;

  struct PendingRow {
    std::string name;
    std::vector<std::pair<std::string, double>> terms;
    RowSense sense;
    double rhs;
    int line;
  };
  std::vector<PendingRow> pending;
  std::vector<std::pair<std::string, double>> objective_terms;
  std::vector<std::string> binaries;
  struct PendingBound {
    std::string name;
    double lb, ub;
    int line;
  };
  std::vector<PendingBound> bounds;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool saw_end = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    const size_t begin = trimmed.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const size_t last = trimmed.find_last_not_of(" \t\r");
    trimmed = trimmed.substr(begin, last - begin + 1);
    if (trimmed.empty() || trimmed[0] == '\\') continue;

    if (trimmed == "Maximize") { section = Section::kObjective; continue; }
    if (trimmed == "Subject To") { section = Section::kRows; continue; }
    if (trimmed == "Bounds") { section = Section::kBounds; continue; }
    if (trimmed == "Binary") { section = Section::kBinary; continue; }
    if (trimmed == "End") { section = Section::kEnd; saw_end = true; continue; }

    switch (section) {
      case Section::kNone:
        throw LpParseError(line_no, "content before any section header");
      case Section::kObjective:
      case Section::kRows: {
        const size_t colon = trimmed.find(':');
        if (colon == std::string::npos)
          throw LpParseError(line_no, "missing ':' after row name");
        const std::string name = trimmed.substr(0, colon);
        Tokenizer tok(trimmed.substr(colon + 1));

        std::vector<std::pair<std::string, double>> terms;
        RowSense sense = RowSense::kLe;
        double rhs = 0.0;
        bool saw_sense = false;
        double sign = 1.0;
        std::optional<double> coeff;
        while (auto t = tok.next()) {
          if (*t == "+") { sign = 1.0; continue; }
          if (*t == "-") { sign = -1.0; continue; }
          if (*t == "<=" || *t == ">=" || *t == "=") {
            if (coeff) throw LpParseError(line_no, "dangling coefficient");
            sense = (*t == "<=")   ? RowSense::kLe
                    : (*t == ">=") ? RowSense::kGe
                                   : RowSense::kEq;
            auto rhs_tok = tok.next();
            if (!rhs_tok) throw LpParseError(line_no, "missing rhs");
            rhs = parse_number(*rhs_tok, line_no);
            if (tok.next()) throw LpParseError(line_no, "trailing tokens after rhs");
            saw_sense = true;
            break;
          }
          if (!coeff) {
            coeff = sign * parse_number(*t, line_no);
            sign = 1.0;
            continue;
          }
          if (!is_identifier(*t))
            throw LpParseError(line_no, "expected variable name, got '" + *t + "'");
          terms.emplace_back(*t, *coeff);
          coeff.reset();
        }
        if (coeff) throw LpParseError(line_no, "dangling coefficient at line end");
        if (section == Section::kObjective) {
          if (saw_sense) throw LpParseError(line_no, "relation in objective");
          objective_terms.insert(objective_terms.end(), terms.begin(), terms.end());
        } else {
          if (!saw_sense) throw LpParseError(line_no, "constraint without relation");
          pending.push_back({name, std::move(terms), sense, rhs, line_no});
        }
        break;
      }
      case Section::kBounds: {
        Tokenizer tok(trimmed);
        std::vector<std::string> toks;
        while (auto t = tok.next()) toks.push_back(*t);
        if (toks.size() == 3 && toks[1] == "=") {
          const double v = parse_number(toks[2], line_no);
          bounds.push_back({toks[0], v, v, line_no});
        } else if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=") {
          bounds.push_back({toks[2], parse_number(toks[0], line_no),
                            parse_number(toks[4], line_no), line_no});
        } else {
          throw LpParseError(line_no, "unrecognized bound line");
        }
        break;
      }
      case Section::kBinary: {
        Tokenizer tok(trimmed);
        while (auto t = tok.next()) {
          if (!is_identifier(*t))
            throw LpParseError(line_no, "bad binary variable name '" + *t + "'");
          binaries.push_back(*t);
        }
        break;
      }
      case Section::kEnd:
        throw LpParseError(line_no, "content after End");
    }
  }
  if (!saw_end) throw LpParseError(line_no, "missing End section");

  // Recover (J, T) from the variable names.
  int J = 0, T = 0;
  auto scan_name = [&](const std::string& name, int line) {
    auto parsed = parse_var_name(name);
    if (!parsed) throw LpParseError(line, "unrecognized variable name '" + name + "'");
    if (parsed->kind != ParsedName::Kind::kSoc) {
      J = std::max(J, parsed->j);
      T = std::max(T, parsed->t);
    }
  };
  for (const auto& b : binaries) scan_name(b, 1);
  if (J == 0 || T == 0) throw LpParseError(1, "no x/phi variables declared");

  StandardForm sf;
  sf.num_jobs = J;
  sf.horizon = T;
  const int n_vars = 2 * J * T + (T + 1);
  sf.objective.assign(n_vars, 0.0);
  sf.var_names.resize(n_vars);
  sf.var_kinds.assign(n_vars, {true, 0.0, 1.0});

  std::map<std::string, int> col_of;
  for (int j = 0; j < J; ++j)
    for (int t = 0; t < T; ++t) {
      sf.var_names[sf.x_col(j, t)] =
          "x_" + std::to_string(j + 1) + "_" + std::to_string(t + 1);
      sf.var_names[sf.phi_col(j, t)] =
          "phi_" + std::to_string(j + 1) + "_" + std::to_string(t + 1);
    }
  for (int t = 0; t <= T; ++t) {
    sf.var_names[sf.soc_col(t)] = "soc_" + std::to_string(t + 1);
    sf.var_kinds[sf.soc_col(t)] = {false, 0.0, 1.0};
  }
  for (int col = 0; col < n_vars; ++col) col_of[sf.var_names[col]] = col;

  auto col_for = [&col_of](const std::string& name, int line) {
    auto it = col_of.find(name);
    if (it == col_of.end())
      throw LpParseError(line, "variable '" + name + "' out of model range");
    return it->second;
  };

  for (const auto& [name, coeff] : objective_terms)
    sf.objective[col_for(name, 1)] = coeff;

  for (const PendingBound& b : bounds) {
    const int col = col_for(b.name, b.line);
    sf.var_kinds[col] = {false, b.lb, b.ub};
  }
  for (const std::string& name : binaries)
    sf.var_kinds[col_for(name, 1)] = {true, 0.0, 1.0};

  for (const PendingRow& pr : pending) {
    auto header = parse_row_name(pr.name);
    if (!header) throw LpParseError(pr.line, "unrecognized row name '" + pr.name + "'");
    Row row;
    row.family = header->family;
    row.j = header->j;
    row.t = header->t;
    row.sense = pr.sense;
    row.rhs = pr.rhs;
    row.entries.reserve(pr.terms.size());
    for (const auto& [name, coeff] : pr.terms)
      row.entries.push_back({col_for(name, pr.line), coeff});
    sf.rows.push_back(std::move(row));
  }
  return sf;
}

StandardForm parse_lp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lp_text(buf.str());
}

}  // namespace onts
