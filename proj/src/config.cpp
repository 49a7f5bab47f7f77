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

#include "consilience/config.hpp"

#include <fstream>
#include <istream>

#include "consilience/error.hpp"
#include "json.hpp"

namespace consilience {

using nlohmann::json;

std::string_view to_string(OverlapPolicy policy) {
  return policy == OverlapPolicy::kReject ? "error" : "surrogate";
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ParseError(std::string("config: ") + what);
}

}  // namespace

AnalysisConfig parse_config(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), "top level must be an object");

  AnalysisConfig config;
  for (const auto& [key, value] : j.items()) {
    if (key == "scalar") {
      require(value.is_string(), "'scalar' must be a string");
      try {
        config.scalar = parse_scalar_kind(value.get<std::string>());
      } catch (const UsageError& e) {
        throw ParseError(std::string("config: ") + e.what());
      }
    } else if (key == "case_match") {
      if (value.is_boolean()) {
        config.case_match_all = value.get<bool>();
      } else {
        require(value.is_array(),
                "'case_match' must be a boolean or a square boolean array");
        const std::size_t m = value.size();
        SquareMatrix<char> table(m, 1);
        for (std::size_t r = 0; r < m; ++r) {
          const auto& row = value[r];
          require(row.is_array() && row.size() == m,
                  "'case_match' must be square");
          for (std::size_t c = 0; c < m; ++c) {
            require(row[c].is_boolean(),
                    "'case_match' entries must be booleans");
            table(r, c) = row[c].get<bool>() ? 1 : 0;
          }
        }
        config.case_match = table;
      }
    } else if (key == "importance") {
      require(value.is_array(), "'importance' must be an array");
      config.importance.clear();
      for (const auto& w : value) {
        require(w.is_number(), "'importance' entries must be numbers");
        config.importance.push_back(w.get<double>());
      }
    } else if (key == "alphas") {
      require(value.is_array(), "'alphas' must be an array");
      config.alphas.clear();
      for (const auto& a : value) {
        require(a.is_number(), "'alphas' entries must be numbers");
        config.alphas.push_back(a.get<double>());
      }
    } else if (key == "seed") {
      require(value.is_number_unsigned(),
              "'seed' must be a non-negative integer");
      config.seed = value.get<std::uint64_t>();
    } else if (key == "replicates") {
      require(value.is_number_unsigned() && value.get<std::size_t>() > 0,
              "'replicates' must be a positive integer");
      config.replicates = value.get<std::size_t>();
    } else if (key == "max_rows") {
      require(value.is_number_unsigned() && value.get<std::size_t>() > 0,
              "'max_rows' must be a positive integer");
      config.max_rows = value.get<std::size_t>();
    } else if (key == "insufficient_overlap") {
      require(value.is_string(),
              "'insufficient_overlap' must be a string");
      const auto s = value.get<std::string>();
      if (s == "error") {
        config.overlap_policy = OverlapPolicy::kReject;
      } else if (s == "surrogate") {
        config.overlap_policy = OverlapPolicy::kSurrogate;
      } else {
        throw ParseError(
            "config: 'insufficient_overlap' must be 'error' or 'surrogate'");
      }
    } else {
      throw ParseError("config: unknown key '" + key + "'");
    }
  }
  return config;
}

AnalysisConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'");
  return parse_config(in);
}

std::string config_to_json(const AnalysisConfig& config) {
  json j;
  j["scalar"] = std::string(to_string(config.scalar));
  if (config.case_match) {
    json rows = json::array();
    for (std::size_t r = 0; r < config.case_match->size(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < config.case_match->size(); ++c) {
        row.push_back((*config.case_match)(r, c) != 0);
      }
      rows.push_back(row);
    }
    j["case_match"] = rows;
  } else if (config.case_match_all) {
    j["case_match"] = *config.case_match_all;
  }
  if (!config.importance.empty()) j["importance"] = config.importance;
  j["alphas"] = config.alphas;
  if (config.seed) j["seed"] = *config.seed;
  j["replicates"] = config.replicates;
  j["max_rows"] = config.max_rows;
  j["insufficient_overlap"] = std::string(to_string(config.overlap_policy));
  return j.dump();
}

Dataset apply_config(const Dataset& dataset, const AnalysisConfig& config) {
  Dataset out = dataset;
  if (config.case_match) {
    out = out.with_case_match(*config.case_match);
  } else if (config.case_match_all) {
    out = out.with_all_case_match(*config.case_match_all);
  }
  if (!config.importance.empty()) out = out.with_importance(config.importance);
  return out;
}

}  // namespace consilience
