// Copyright 2026 The Consilience Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "consilience/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "consilience/error.hpp"

namespace consilience {

std::string_view to_string(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::kSampleStdDev:
      return "stdev";
    case ScalarKind::kInterquartileRange:
      return "iqr";
    case ScalarKind::kMean:
      return "mean";
    case ScalarKind::kMedian:
      return "median";
  }
  return "unknown";
}

ScalarKind parse_scalar_kind(std::string_view text) {
  if (text == "stdev") return ScalarKind::kSampleStdDev;
  if (text == "iqr") return ScalarKind::kInterquartileRange;
  if (text == "mean") return ScalarKind::kMean;
  if (text == "median") return ScalarKind::kMedian;
  throw UsageError("unknown scalar '" + std::string(text) +
                   "' (expected stdev, iqr, mean or median)");
}

std::size_t ResponseSeries::n_complete() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.has_value() ? 1 : 0;
  return n;
}

std::vector<Pair> ResponseSeries::usable_pairs() const {
  std::vector<Pair> out;
  out.reserve(cases.size());
  for (const auto& c : cases) {
    if (c) out.push_back(*c);
  }
  return out;
}

std::vector<double> ResponseSeries::observed() const {
  std::vector<double> out;
  out.reserve(cases.size());
  for (const auto& c : cases) {
    if (c) out.push_back(c->obs);
  }
  return out;
}

std::vector<std::optional<double>> ResponseSeries::usable_standard_errors()
    const {
  std::vector<std::optional<double>> out;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    if (!cases[k]) continue;
    out.push_back(has_standard_errors() ? standard_errors[k] : std::nullopt);
  }
  return out;
}

Dataset::Dataset(std::vector<std::string> case_ids,
                 std::vector<ResponseSeries> series)
    : case_ids_(std::move(case_ids)),
      series_(std::move(series)),
      case_match_(series_.size(), 1),
      importance_(series_.size(), 1.0) {
  if (series_.empty() || series_.size() > kMaxResponses) {
    throw ParseError("dataset must have between 1 and " +
                     std::to_string(kMaxResponses) +
                     " response series, got " +
                     std::to_string(series_.size()));
  }
  for (const auto& s : series_) {
    if (s.cases.size() != case_ids_.size()) {
      throw ParseError("series '" + s.name +
                       "' is not aligned with the case list");
    }
    if (s.has_standard_errors() &&
        s.standard_errors.size() != case_ids_.size()) {
      throw ParseError("standard errors of series '" + s.name +
                       "' are not aligned with the case list");
    }
  }
}

bool Dataset::case_match(std::size_t i, std::size_t j) const {
  if (i == j) return true;
  return case_match_(i, j) != 0;
}

Dataset Dataset::with_case_match(const SquareMatrix<char>& table) const {
  if (table.size() != size()) {
    throw ParseError("case-match table is " + std::to_string(table.size()) +
                     "x" + std::to_string(table.size()) + " but dataset has " +
                     std::to_string(size()) + " series");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (i != j && (table(i, j) != 0) != (table(j, i) != 0)) {
        throw ParseError("case-match table must be symmetric");
      }
    }
  }
  Dataset copy = *this;
  copy.case_match_ = table;
  for (std::size_t i = 0; i < size(); ++i) copy.case_match_(i, i) = 1;
  return copy;
}

Dataset Dataset::with_all_case_match(bool value) const {
  SquareMatrix<char> table(size(), value ? 1 : 0);
  return with_case_match(table);
}

Dataset Dataset::with_importance(std::vector<double> importance) const {
  if (importance.size() != size()) {
    throw ParseError("importance list has " +
                     std::to_string(importance.size()) +
                     " entries but dataset has " + std::to_string(size()) +
                     " series");
  }
  for (double w : importance) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ParseError("importance weights must be finite and positive");
    }
  }
  Dataset copy = *this;
  copy.importance_ = std::move(importance);
  return copy;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return cells;
}

std::optional<double> parse_cell(std::string_view cell, std::size_t line_no,
                                 std::string_view column) {
  if (cell.empty()) return std::nullopt;
  std::string_view digits = cell;
  if (digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() ||
      !std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line_no) + ", column '" +
                     std::string(column) + "': '" + std::string(cell) +
                     "' is not a finite number");
  }
  return value;
}

struct ColumnLayout {
  std::string name;
  std::size_t obs = 0;
  std::size_t mod = 0;
  std::optional<std::size_t> se;
};

std::vector<ColumnLayout> parse_header(
    const std::vector<std::string_view>& header) {
  if (header.empty() || header.front() != "case") {
    throw ParseError("header must start with a 'case' column");
  }
  struct Partial {
    std::string name;
    std::optional<std::size_t> obs, mod, se;
  };
  std::vector<Partial> partial;
  auto find_or_add = [&](std::string_view name) -> Partial& {
    for (auto& p : partial) {
      if (p.name == name) return p;
    }
    partial.push_back(Partial{std::string(name), {}, {}, {}});
    return partial.back();
  };
  for (std::size_t col = 1; col < header.size(); ++col) {
    const auto cell = header[col];
    const auto us = cell.rfind('_');
    if (us == std::string_view::npos || us == 0) {
      throw ParseError("header column '" + std::string(cell) +
                       "' must look like <name>_obs, <name>_mod or <name>_se");
    }
    const auto name = cell.substr(0, us);
    const auto suffix = cell.substr(us + 1);
    auto& p = find_or_add(name);
    std::optional<std::size_t>* slot = nullptr;
    if (suffix == "obs") {
      slot = &p.obs;
    } else if (suffix == "mod") {
      slot = &p.mod;
    } else if (suffix == "se") {
      slot = &p.se;
    } else {
      throw ParseError("header column '" + std::string(cell) +
                       "' has unknown suffix '" + std::string(suffix) + "'");
    }
    if (slot->has_value()) {
      throw ParseError("header column '" + std::string(cell) +
                       "' appears twice");
    }
    *slot = col;
  }
  if (partial.empty() || partial.size() > kMaxResponses) {
    throw ParseError("expected between 1 and " +
                     std::to_string(kMaxResponses) +
                     " response column pairs, found " +
                     std::to_string(partial.size()));
  }
  std::vector<ColumnLayout> layout;
  for (const auto& p : partial) {
    if (!p.obs || !p.mod) {
      throw ParseError("series '" + p.name +
                       "' needs both an _obs and a _mod column");
    }
    layout.push_back(ColumnLayout{p.name, *p.obs, *p.mod, p.se});
  }
  return layout;
}

}  // namespace

Dataset parse_dataset(std::istream& in, const ParseOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> header;
  std::string header_line;
  while (std::getline(in, header_line)) {
    ++line_no;
    if (!trim(header_line).empty()) break;
  }
  if (trim(header_line).empty()) throw ParseError("input is empty");
  if (header_line.size() >= 3 &&
      header_line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    header_line.erase(0, 3);
  }
  header = split_row(header_line);
  const auto layout = parse_header(header);

  std::vector<std::string> case_ids;
  std::set<std::string, std::less<>> seen;
  std::vector<ResponseSeries> series(layout.size());
  for (std::size_t s = 0; s < layout.size(); ++s) {
    series[s].name = layout[s].name;
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw ParseError("line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, header has " +
                       std::to_string(header.size()));
    }
    if (case_ids.size() == options.max_rows) {
      throw ParseError("more than " + std::to_string(options.max_rows) +
                       " data rows (raise the limit with --max-rows)");
    }
    const std::string case_id(cells[0]);
    if (case_id.empty()) {
      throw ParseError("line " + std::to_string(line_no) + " has no case id");
    }
    if (!seen.insert(case_id).second) {
      throw ParseError("case '" + case_id + "' appears more than once");
    }
    case_ids.push_back(case_id);
    for (std::size_t s = 0; s < layout.size(); ++s) {
      const auto& col = layout[s];
      const auto obs = parse_cell(cells[col.obs], line_no, header[col.obs]);
      const auto mod = parse_cell(cells[col.mod], line_no, header[col.mod]);
      if (obs.has_value() != mod.has_value()) {
        throw ParseError("case '" + case_id + "', series '" + col.name +
                         "': " + (obs ? "observed" : "modeled") +
                         " value present without its " +
                         (obs ? "modeled" : "observed") + " counterpart");
      }
      series[s].cases.push_back(obs ? std::optional<Pair>(Pair{*obs, *mod})
                                    : std::nullopt);
      if (col.se) {
        const auto se = parse_cell(cells[*col.se], line_no, header[*col.se]);
        if (se && !obs) {
          throw ParseError("case '" + case_id + "', series '" + col.name +
                           "': standard error given for a missing pair");
        }
        series[s].standard_errors.push_back(se);
      }
    }
  }
  return Dataset(std::move(case_ids), std::move(series));
}

Dataset parse_dataset_file(const std::string& path,
                           const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_dataset(in, options);
}

namespace {

std::string format_number(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

void serialize_dataset(const Dataset& dataset, std::ostream& out) {
  out << "case";
  for (const auto& s : dataset.all_series()) {
    out << ',' << s.name << "_obs," << s.name << "_mod";
    if (s.has_standard_errors()) out << ',' << s.name << "_se";
  }
  out << '\n';
  for (std::size_t k = 0; k < dataset.case_count(); ++k) {
    out << dataset.case_ids()[k];
    for (const auto& s : dataset.all_series()) {
      const auto& c = s.cases[k];
      out << ',' << (c ? format_number(c->obs) : "") << ','
          << (c ? format_number(c->mod) : "");
      if (s.has_standard_errors()) {
        const auto& se = s.standard_errors[k];
        out << ',' << (se ? format_number(*se) : "");
      }
    }
    out << '\n';
  }
}

std::size_t overlap_count(const Dataset& dataset, std::size_t i,
                          std::size_t j) {
  const auto& a = dataset.series(i).cases;
  const auto& b = dataset.series(j).cases;
  std::size_t n = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] && b[k]) ++n;
  }
  return n;
}

}  // namespace consilience
