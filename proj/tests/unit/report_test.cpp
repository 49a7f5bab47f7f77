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

#include <cmath>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "consilience/config.hpp"
#include "consilience/dataset.hpp"
#include "consilience/error.hpp"
#include "consilience/report.hpp"
#include "consilience/svg.hpp"
#include "gtest/gtest.h"

namespace consilience {
namespace {

using nlohmann::json;

std::string data(const char* name) {
  return std::string(CONSILIENCE_TEST_DATA) + "/" + name;
}

AnalysisReport analyze_file(const char* name, AnalysisConfig config = {}) {
  return analyze(apply_config(parse_dataset_file(data(name)), config), config,
                 "fnv1a64:test");
}

// Points of an SVG path "M x y L x y ...".
std::vector<std::pair<double, double>> path_points(const std::string& svg,
                                                   const std::string& id) {
  const auto at = svg.find("id=\"" + id + "\"");
  EXPECT_NE(at, std::string::npos) << id;
  const auto d0 = svg.find(" d=\"", at) + 4;
  const auto d1 = svg.find('"', d0);
  std::string d = svg.substr(d0, d1 - d0);
  for (char& ch : d) {
    if (ch == 'M' || ch == 'L') ch = ' ';
  }
  std::istringstream in(d);
  std::vector<std::pair<double, double>> pts;
  double x, y;
  while (in >> x >> y) pts.emplace_back(x, y);
  return pts;
}

TEST(InputDigest, KnownValues) {
  EXPECT_EQ(input_digest(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(input_digest("a"), "fnv1a64:af63dc4c8601ec8c");
  EXPECT_NE(input_digest("case,y_obs"), input_digest("case,y_obz"));
}

TEST(Analyze, PatchyJointSummary) {
  const auto r = analyze_file("patchy25.csv");
  ASSERT_EQ(r.series.size(), 5u);
  EXPECT_DOUBLE_EQ(r.weights.effn, 8.1);
  EXPECT_DOUBLE_EQ(r.joint.m * r.joint.effn, 40.5);
  ASSERT_EQ(r.joint.critical.size(), 5u);
  EXPECT_DOUBLE_EQ(r.joint.critical[1].critical_c, critical_c(0.05, 5, 8.1));
  double joint = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    joint += r.weights.w_final[i] * r.series[i].partition.c;
  }
  EXPECT_NEAR(r.joint_c, joint, 1e-14);
  // The RMR/MMS overlap of two cases is replaced by the unmatched value.
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("surrogate"), std::string::npos);

  AnalysisConfig strict;
  strict.overlap_policy = OverlapPolicy::kReject;
  EXPECT_THROW(analyze_file("patchy25.csv", strict), DegenerateError);

  AnalysisConfig unmatched;
  unmatched.case_match_all = false;
  EXPECT_DOUBLE_EQ(analyze_file("patchy25.csv", unmatched).weights.effn, 10.2);
}

TEST(Analyze, PerfectFitHasNoShares) {
  const auto r = analyze_file("perfect_fit.csv");
  ASSERT_EQ(r.series.size(), 1u);
  EXPECT_NEAR(r.series[0].partition.c, 1.0, 1e-12);
  EXPECT_FALSE(r.series[0].sys_share.has_value());
  EXPECT_DOUBLE_EQ(r.joint_c, r.series[0].partition.c);
  EXPECT_EQ(r.joint.bracket->significant_at, 0.01);
  const auto j = to_json(r);
  EXPECT_TRUE(j["series"][0]["perfect_fit"].get<bool>());
  EXPECT_TRUE(j["series"][0]["sys_share"].is_null());
}

TEST(Analyze, ConfigChecks) {
  AnalysisConfig c;
  c.alphas = {0.05, 0.2};
  EXPECT_THROW(analyze_file("n5.csv", c), UsageError);

  AnalysisConfig median;
  median.scalar = ScalarKind::kMedian;
  const auto r = analyze_file("n5.csv", median);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_NE(r.warnings[0].find("non-landmark"), std::string::npos);
  EXPECT_FALSE(to_json(r)["landmark_scalar"].get<bool>());
}

TEST(Analyze, JsonAndTextLayout) {
  AnalysisConfig c;
  c.seed = 5;
  const auto r = analyze_file("three_series.csv", c);
  const auto j = to_json(r);
  EXPECT_EQ(j["tool"], "consilience");
  EXPECT_EQ(j["provenance"]["input_digest"], "fnv1a64:test");
  EXPECT_EQ(j["provenance"]["seed"], 5);
  EXPECT_EQ(j["series"].size(), 3u);
  EXPECT_EQ(j["weights"]["rsq"].size(), 3u);
  EXPECT_NEAR(j["series"][1]["mse_sys"].get<double>() +
                  j["series"][1]["mse_ran"].get<double>(),
              j["series"][1]["mse_tot"].get<double>(), 1e-12);
  EXPECT_EQ(j["joint"]["assessment"]["critical"].size(), 5u);

  const auto text = to_text(r);
  EXPECT_NE(text.find("joint C"), std::string::npos);
  EXPECT_NE(text.find("effN_ij"), std::string::npos);
  EXPECT_NE(text.find("seed 5"), std::string::npos);
}

TEST(Compare, ReportsConventionalStatistics) {
  const auto ds = parse_dataset_file(data("three_series.csv"));
  const auto r = compare(ds, ScalarKind::kSampleStdDev, "x");
  ASSERT_EQ(r.series.size(), 3u);
  EXPECT_TRUE(r.series[0].mssd.has_value());
  EXPECT_FALSE(r.series[1].mssd.has_value());
  EXPECT_EQ(r.series[1].mssd_note, "no _se column");
  EXPECT_EQ(r.series[0].wilcoxon.test.method, "exact");
  const auto j = to_json(r);
  EXPECT_EQ(j["series"][0]["wilcoxon"]["n_used"], r.series[0].wilcoxon.n_used);
  EXPECT_NE(to_text(r).find("Wilcoxon"), std::string::npos);
}

TEST(NullReport, QuantilesAndEmpiricalP) {
  NullReport r;
  r.distribution = NullDistribution({0.1, 0.2, 0.3, 0.4});
  r.observed_c = 0.35;
  r.spec.replicates = 4;
  const auto j = to_json(r);
  EXPECT_DOUBLE_EQ(j["empirical_p"].get<double>(), 2.0 / 5.0);
  EXPECT_DOUBLE_EQ(j["mean_c"].get<double>(), 0.25);
  EXPECT_EQ(null_values_csv(r.distribution).substr(0, 5), "c\n0.1");
}

TEST(Svg, PerfectFitProjectionIsIdentity) {
  const auto j = to_json(analyze_file("perfect_fit.csv"));
  const auto svg = scatter_svg(j["series"][0]);
  EXPECT_EQ(path_points(svg, "identity-line"), path_points(svg, "projection-line"));
  std::size_t circles = 0;
  for (auto at = svg.find("<circle"); at != std::string::npos;
       at = svg.find("<circle", at + 1)) {
    ++circles;
  }
  EXPECT_EQ(circles, 10u);
}

TEST(Svg, CriticalAnchorLiesOnIsopleth) {
  const auto svg = nomogram_svg(json());
  const auto frame = nomogram_frame(json());
  const auto pts = path_points(svg, "isopleth-0.05");
  ASSERT_GT(pts.size(), 100u);
  const double x = frame.px(30.0), y = frame.py(0.36);
  // Linear interpolation between the neighbouring vertices.
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (pts[k - 1].first <= x && x <= pts[k].first) {
      const double t = (x - pts[k - 1].first) / (pts[k].first - pts[k - 1].first);
      const double yi = pts[k - 1].second + t * (pts[k].second - pts[k - 1].second);
      // 0.02 in C is about 6 px at the default size.
      EXPECT_NEAR(yi, y, std::fabs(frame.py(0.38) - frame.py(0.36)));
      return;
    }
  }
  FAIL() << "isopleth does not span M*effN = 30";
}

TEST(Svg, NomogramMarksSeriesAndJoint) {
  const auto j = to_json(analyze_file("three_series.csv"));
  const auto svg = nomogram_svg(j);
  EXPECT_NE(svg.find("data-name=\"joint\""), std::string::npos);
  EXPECT_NE(svg.find("data-name=\"a\""), std::string::npos);
  EXPECT_NE(svg.find("data-m-effn=\"12\""), std::string::npos);
  for (const char* id : {"isopleth-0.01", "isopleth-0.05", "isopleth-0.1",
                         "isopleth-0.25", "isopleth-0.5"}) {
    EXPECT_NE(svg.find(id), std::string::npos) << id;
  }
}

}  // namespace
}  // namespace consilience
