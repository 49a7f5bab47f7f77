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

#include "consilience/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "consilience/error.hpp"

namespace consilience {

using nlohmann::json;

std::string input_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016" PRIx64, h);
  return buf;
}

std::string format6(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

namespace {

Assessment assess(double c, double m, double effn,
                  const std::vector<double>& alphas,
                  std::vector<std::string>& warnings,
                  const std::string& label) {
  Assessment a;
  a.m = m;
  a.effn = effn;
  if (!(m * effn > 1.0)) {
    warnings.push_back(label + ": M*effN = " + format6(m * effn) +
                       " is too small for the critical-value curves");
    return a;
  }
  for (double alpha : alphas) a.critical.push_back({alpha, critical_c(alpha, m, effn)});
  a.bracket = significance_bracket(c, m, effn);
  if (!a.bracket->calibrated) {
    warnings.push_back(label + ": M*effN = " + format6(m * effn) +
                       " is outside the calibrated range of the curves");
  }
  return a;
}

json matrix_json(const SquareMatrix<double>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json optional_json(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

json assessment_json(const Assessment& a) {
  json j;
  j["m"] = a.m;
  j["effn"] = a.effn;
  j["m_effn"] = a.m * a.effn;
  json crit = json::array();
  for (const auto& cv : a.critical) {
    crit.push_back({{"alpha", cv.alpha}, {"critical_c", cv.critical_c}});
  }
  j["critical"] = crit;
  if (a.bracket) {
    j["bracket"] = {
        {"significant_at", optional_json(a.bracket->significant_at)},
        {"not_significant_at", optional_json(a.bracket->not_significant_at)},
        {"near_alpha", optional_json(a.bracket->near_alpha)},
        {"calibrated", a.bracket->calibrated}};
  } else {
    j["bracket"] = nullptr;
  }
  return j;
}

std::string bracket_text(const std::optional<SignificanceBracket>& b) {
  if (!b) return "n/a";
  std::string s;
  if (b->significant_at) {
    s = "p <= " + format6(*b->significant_at);
    if (b->not_significant_at) s += ", p > " + format6(*b->not_significant_at);
  } else if (b->not_significant_at) {
    s = "p > " + format6(*b->not_significant_at);
  }
  if (b->near_alpha) s += " (~" + format6(*b->near_alpha) + ")";
  if (!b->calibrated) s += " [outside calibrated range]";
  return s;
}

void pad(std::ostringstream& os, const std::string& s, std::size_t width,
         bool left = false) {
  if (left) {
    os << s;
    for (std::size_t k = s.size(); k < width; ++k) os << ' ';
  } else {
    for (std::size_t k = s.size(); k < width; ++k) os << ' ';
    os << s;
  }
}

std::string opt6(const std::optional<double>& x) {
  return x ? format6(*x) : "-";
}

}  // namespace

AnalysisReport analyze(const Dataset& dataset, const AnalysisConfig& config,
                       std::string digest) {
  for (double alpha : config.alphas) {
    if (!find_critical_level(alpha)) {
      throw UsageError("alpha " + format6(alpha) +
                       " in config is not a tabulated level");
    }
  }
  AnalysisReport report;
  report.input_digest = std::move(digest);
  report.config = config;
  report.seed = config.seed;
  report.importance.assign(dataset.importance().begin(),
                           dataset.importance().end());
  report.case_match = dataset.case_match_table();

  if (!is_landmark_kind(config.scalar)) {
    report.warnings.push_back(
        "scalar '" + std::string(to_string(config.scalar)) +
        "' is non-landmark: closed-form reference values and critical curves "
        "assume the sample standard deviation");
  }

  std::vector<double> component_c;
  for (const auto& s : dataset.all_series()) {
    SeriesReport sr;
    sr.name = s.name;
    for (std::size_t k = 0; k < dataset.case_count(); ++k) {
      if (s.cases[k]) sr.case_ids.push_back(dataset.case_ids()[k]);
    }
    sr.pairs = s.usable_pairs();
    try {
      sr.partition = decompose(sr.pairs, config.scalar);
    } catch (const DegenerateError& e) {
      throw DegenerateError(e.kind(), "series '" + s.name + "': " + e.what());
    }
    try {
      sr.r_squared = r_squared(sr.pairs);
    } catch (const DegenerateError&) {
      sr.r_squared.reset();
    }
    if (sr.partition.mse_tot > 0.0) {
      sr.sys_share = sr.partition.mse_sys / sr.partition.mse_tot;
      sr.ran_share = sr.partition.mse_ran / sr.partition.mse_tot;
    }
    sr.assessment = assess(sr.partition.c, 1.0, static_cast<double>(sr.pairs.size()),
                           config.alphas, report.warnings, "series '" + s.name + "'");
    component_c.push_back(sr.partition.c);
    report.series.push_back(std::move(sr));
  }

  report.weights = weight_table(dataset, config.overlap_policy);
  for (const auto& w : report.weights.warnings) report.warnings.push_back(w);
  report.joint_c = joint_c(component_c, report.weights.w_final);
  report.joint =
      assess(report.joint_c, static_cast<double>(dataset.size()),
             report.weights.effn, config.alphas, report.warnings, "joint C");
  return report;
}

json to_json(const AnalysisReport& report) {
  json j;
  j["tool"] = "consilience";
  j["version"] = std::string(kVersion);
  j["provenance"] = {{"input_digest", report.input_digest},
                     {"config", json::parse(config_to_json(report.config))},
                     {"seed", report.seed ? json(*report.seed) : json(nullptr)}};
  j["scalar"] = std::string(to_string(report.config.scalar));
  j["landmark_scalar"] = is_landmark_kind(report.config.scalar);

  json series = json::array();
  for (const auto& s : report.series) {
    const auto& p = s.partition;
    json obs = json::array(), mod = json::array();
    for (const auto& pr : s.pairs) {
      obs.push_back(pr.obs);
      mod.push_back(pr.mod);
    }
    series.push_back({
        {"name", s.name},
        {"n", p.n},
        {"case_ids", s.case_ids},
        {"yobs", obs},
        {"ymod", mod},
        {"intercept", p.line.intercept},
        {"slope", p.line.slope},
        {"scalar", p.scalar},
        {"mse_sys", p.mse_sys},
        {"mse_ran", p.mse_ran},
        {"mse_tot", p.mse_tot},
        {"c", p.c},
        {"cross_product", p.cross_product},
        {"sys_share", optional_json(s.sys_share)},
        {"ran_share", optional_json(s.ran_share)},
        {"perfect_fit", !s.sys_share.has_value()},
        {"r_squared", optional_json(s.r_squared)},
        {"assessment", assessment_json(s.assessment)},
    });
  }
  j["series"] = series;

  json case_match = json::array();
  for (std::size_t i = 0; i < report.case_match.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < report.case_match.size(); ++k) {
      row.push_back(i == k || report.case_match(i, k) != 0);
    }
    case_match.push_back(row);
  }
  const auto& w = report.weights;
  j["weights"] = {{"rsq", matrix_json(w.rsq)},
                  {"effn_pair", matrix_json(w.effn_pair)},
                  {"effn_series", w.effn_series},
                  {"effn", w.effn},
                  {"w_cov", w.w_cov},
                  {"w_final", w.w_final},
                  {"importance", report.importance},
                  {"case_match", case_match}};
  j["joint"] = {{"joint_c", report.joint_c},
                {"assessment", assessment_json(report.joint)}};
  j["warnings"] = report.warnings;
  return j;
}

std::string to_text(const AnalysisReport& report) {
  std::ostringstream os;
  os << "consilience " << kVersion << "  input " << report.input_digest
     << "  scalar " << to_string(report.config.scalar);
  if (report.seed) os << "  seed " << *report.seed;
  os << "\n\n";

  const std::size_t name_w = [&] {
    std::size_t w = 8;
    for (const auto& s : report.series) w = std::max(w, s.name.size() + 2);
    return w;
  }();
  constexpr std::size_t kCol = 13;

  pad(os, "series", name_w, true);
  for (const char* h : {"N", "C", "MSEsys", "MSEran", "MSEtot", "sys share",
                        "ran share", "R^2", "slope", "intercept", "cross"}) {
    pad(os, h, kCol);
  }
  os << '\n';
  for (const auto& s : report.series) {
    const auto& p = s.partition;
    pad(os, s.name, name_w, true);
    pad(os, std::to_string(p.n), kCol);
    for (double v : {p.c, p.mse_sys, p.mse_ran, p.mse_tot}) pad(os, format6(v), kCol);
    pad(os, opt6(s.sys_share), kCol);
    pad(os, opt6(s.ran_share), kCol);
    pad(os, opt6(s.r_squared), kCol);
    pad(os, format6(p.line.slope), kCol);
    pad(os, format6(p.line.intercept), kCol);
    pad(os, format6(p.cross_product), kCol);
    os << '\n';
  }

  const auto& w = report.weights;
  os << "\nweights\n";
  pad(os, "series", name_w, true);
  for (const char* h : {"effN_i", "W_cov", "importance", "W_final"}) pad(os, h, kCol);
  os << '\n';
  for (std::size_t i = 0; i < report.series.size(); ++i) {
    pad(os, report.series[i].name, name_w, true);
    pad(os, format6(w.effn_series[i]), kCol);
    pad(os, format6(w.w_cov[i]), kCol);
    pad(os, format6(report.importance[i]), kCol);
    pad(os, format6(w.w_final[i]), kCol);
    os << '\n';
  }
  if (report.series.size() > 1) {
    os << "\nR^2 (observed series)\n";
    for (std::size_t i = 0; i < w.rsq.size(); ++i) {
      pad(os, report.series[i].name, name_w, true);
      for (std::size_t k = 0; k < w.rsq.size(); ++k) pad(os, format6(w.rsq(i, k)), kCol);
      os << '\n';
    }
    os << "\neffN_ij\n";
    for (std::size_t i = 0; i < w.effn_pair.size(); ++i) {
      pad(os, report.series[i].name, name_w, true);
      for (std::size_t k = 0; k < w.effn_pair.size(); ++k) {
        pad(os, i == k ? std::string("*") : format6(w.effn_pair(i, k)), kCol);
      }
      os << '\n';
    }
  }

  os << "\nM " << report.series.size() << "  effN " << format6(w.effn)
     << "  M*effN " << format6(report.joint.m * report.joint.effn)
     << "  joint C " << format6(report.joint_c) << "\n";

  os << "\ncritical C\n";
  pad(os, "", name_w, true);
  for (double a : report.config.alphas) pad(os, "a=" + format6(a), kCol);
  os << "   significance\n";
  auto crit_row = [&](const std::string& label, const Assessment& a) {
    pad(os, label, name_w, true);
    for (const auto& cv : a.critical) pad(os, format6(cv.critical_c), kCol);
    for (std::size_t k = a.critical.size(); k < report.config.alphas.size(); ++k) {
      pad(os, "-", kCol);
    }
    os << "   " << bracket_text(a.bracket) << '\n';
  };
  for (const auto& s : report.series) crit_row(s.name, s.assessment);
  if (report.series.size() > 1) crit_row("joint", report.joint);

  if (!report.warnings.empty()) {
    os << "\nwarnings\n";
    for (const auto& msg : report.warnings) os << "  - " << msg << '\n';
  }
  return os.str();
}

CompareReport compare(const Dataset& dataset, ScalarKind scalar,
                      std::string digest) {
  CompareReport report;
  report.input_digest = std::move(digest);
  report.scalar = scalar;
  for (const auto& s : dataset.all_series()) {
    SeriesComparison sc;
    sc.name = s.name;
    const auto pairs = s.usable_pairs();
    sc.n = pairs.size();
    try {
      sc.c = decompose(pairs, scalar).c;
      try {
        sc.r_squared = r_squared(pairs);
      } catch (const DegenerateError&) {
      }
      sc.residual_regression = residual_regression_test(pairs);
      sc.wilcoxon = wilcoxon_signed_rank(pairs);
    } catch (const DegenerateError& e) {
      throw DegenerateError(e.kind(), "series '" + s.name + "': " + e.what());
    }
    if (!s.has_standard_errors()) {
      sc.mssd_note = "no _se column";
    } else {
      std::vector<double> se;
      for (const auto& v : s.usable_standard_errors()) {
        if (!v) break;
        se.push_back(*v);
      }
      if (se.size() != pairs.size()) {
        sc.mssd_note = "standard error missing for some pairs";
      } else {
        try {
          sc.mssd = mssd(pairs, se);
        } catch (const DegenerateError& e) {
          sc.mssd_note = e.what();
        }
      }
    }
    report.series.push_back(std::move(sc));
  }
  return report;
}

json to_json(const CompareReport& report) {
  json j;
  j["tool"] = "consilience";
  j["version"] = std::string(kVersion);
  j["provenance"] = {{"input_digest", report.input_digest}};
  j["scalar"] = std::string(to_string(report.scalar));
  json series = json::array();
  for (const auto& s : report.series) {
    json item = {
        {"name", s.name},
        {"n", s.n},
        {"c", s.c},
        {"r_squared", optional_json(s.r_squared)},
        {"residual_regression",
         {{"slope", s.residual_regression.slope},
          {"f", std::isfinite(s.residual_regression.test.statistic)
                    ? json(s.residual_regression.test.statistic)
                    : json("inf")},
          {"p_value", s.residual_regression.test.p_value},
          {"method", s.residual_regression.test.method}}},
        {"wilcoxon",
         {{"w", s.wilcoxon.test.statistic},
          {"w_plus", s.wilcoxon.w_plus},
          {"w_minus", s.wilcoxon.w_minus},
          {"n_used", s.wilcoxon.n_used},
          {"p_value", s.wilcoxon.test.p_value},
          {"method", s.wilcoxon.test.method}}},
    };
    if (s.mssd) {
      item["mssd"] = {{"mssd", s.mssd->mssd}, {"rmssd", s.mssd->rmssd}};
    } else {
      item["mssd"] = {{"note", s.mssd_note}};
    }
    series.push_back(item);
  }
  j["series"] = series;
  return j;
}

std::string to_text(const CompareReport& report) {
  std::ostringstream os;
  os << "consilience " << kVersion << "  input " << report.input_digest
     << "  scalar " << to_string(report.scalar) << "\n\n";
  std::size_t name_w = 8;
  for (const auto& s : report.series) name_w = std::max(name_w, s.name.size() + 2);
  constexpr std::size_t kCol = 13;
  pad(os, "series", name_w, true);
  for (const char* h : {"N", "C", "R^2", "resid F", "resid p", "Wilcoxon W",
                        "Wilcoxon p", "MSSD", "RMSSD"}) {
    pad(os, h, kCol);
  }
  os << '\n';
  for (const auto& s : report.series) {
    pad(os, s.name, name_w, true);
    pad(os, std::to_string(s.n), kCol);
    pad(os, format6(s.c), kCol);
    pad(os, opt6(s.r_squared), kCol);
    pad(os, format6(s.residual_regression.test.statistic), kCol);
    pad(os, format6(s.residual_regression.test.p_value), kCol);
    pad(os, format6(s.wilcoxon.test.statistic), kCol);
    pad(os, format6(s.wilcoxon.test.p_value), kCol);
    pad(os, s.mssd ? format6(s.mssd->mssd) : "-", kCol);
    pad(os, s.mssd ? format6(s.mssd->rmssd) : "-", kCol);
    os << '\n';
  }
  os << '\n';
  for (const auto& s : report.series) {
    os << s.name << ": residual test " << s.residual_regression.test.method
       << ", Wilcoxon " << s.wilcoxon.test.method << " (n=" << s.wilcoxon.n_used
       << ")";
    if (!s.mssd) os << ", MSSD: " << s.mssd_note;
    os << '\n';
  }
  return os.str();
}

json to_json(const NullReport& report) {
  const auto& d = report.distribution;
  json quantiles = json::object();
  for (double p : {0.01, 0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95, 0.99}) {
    quantiles[format6(p)] = d.quantile(p);
  }
  std::size_t at_least = 0;
  for (double c : d.c_values()) at_least += c >= report.observed_c ? 1 : 0;
  json j;
  j["tool"] = "consilience";
  j["version"] = std::string(kVersion);
  j["provenance"] = {{"input_digest", report.input_digest},
                     {"seed", report.spec.seed},
                     {"seed_source", report.seed_source}};
  j["kind"] = std::string(to_string(report.spec.kind));
  j["clip"] = {{"lo", report.spec.clip.lo},
               {"hi", report.spec.clip.hi},
               {"mode", report.spec.clip.mode == ClipMode::kClamp ? "clamp"
                                                                  : "truncate"}};
  j["replicates"] = report.spec.replicates;
  j["scalar"] = std::string(to_string(report.scalar));
  j["m"] = report.m;
  j["effn"] = report.effn;
  j["mean_c"] = d.mean_c();
  j["quantiles"] = quantiles;
  j["observed_c"] = report.observed_c;
  j["empirical_p"] = (1.0 + static_cast<double>(at_least)) /
                     (1.0 + static_cast<double>(d.size()));
  return j;
}

std::string null_values_csv(const NullDistribution& distribution) {
  std::string out = "c\n";
  char buf[40];
  for (double c : distribution.c_values()) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", c);
    out += buf;
  }
  return out;
}

}  // namespace consilience
