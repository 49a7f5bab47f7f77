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

#include <sstream>
#include <random>

#include "consilience/config.hpp"
#include "consilience/dataset.hpp"
#include "consilience/error.hpp"
#include "gtest/gtest.h"

namespace consilience {
namespace {

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_dataset(in);
}

std::string patchy_path() { return std::string(CONSILIENCE_TEST_DATA) + "/patchy25.csv"; }

TEST(ParseDataset, RectangularSingleSeries) {
  std::string text = "case,y_obs,y_mod\n";
  for (int i = 1; i <= 10; ++i) {
    text += std::to_string(i) + "," + std::to_string(i) + ".5," +
            std::to_string(i) + "\n";
  }
  const auto ds = parse(text);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds.series(0).name, "y");
  EXPECT_EQ(ds.series(0).n_complete(), 10u);
  EXPECT_DOUBLE_EQ(ds.series(0).cases[2]->obs, 3.5);
  EXPECT_DOUBLE_EQ(ds.series(0).cases[2]->mod, 3.0);
}

TEST(ParseDataset, PatchyFiveSeriesCounts) {
  const auto ds = parse_dataset_file(patchy_path());
  ASSERT_EQ(ds.size(), 5u);
  const std::size_t expected[] = {25, 10, 8, 20, 10};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(ds.series(i).n_complete(), expected[i]) << ds.series(i).name;
  }
}

TEST(ParseDataset, HalfPresentPairNamesCaseAndSeries) {
  try {
    parse("case,a_obs,a_mod\nx1,1,2\nx2,3,\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("x2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'a'"), std::string::npos) << msg;
  }
  EXPECT_THROW(parse("case,a_obs,a_mod\nx1,,2\n"), ParseError);
}

TEST(ParseDataset, RejectsNonNumericAndStructuralProblems) {
  EXPECT_THROW(parse("case,a_obs,a_mod\n1,abc,2\n"), ParseError);
  EXPECT_THROW(parse("case,a_obs,a_mod\n1,1e999,2\n"), ParseError);
  EXPECT_THROW(parse("case\n1\n"), ParseError);
  EXPECT_THROW(parse("id,a_obs,a_mod\n1,1,2\n"), ParseError);
  EXPECT_THROW(parse("case,a_obs\n1,1\n"), ParseError);
  EXPECT_THROW(parse("case,a_obs,a_mod,a_var\n1,1,2,3\n"), ParseError);
  EXPECT_THROW(parse("case,a_obs,a_mod\n1,1,2,3\n"), ParseError);
  EXPECT_THROW(parse("case,a_obs,a_mod\n1,1,2\n1,3,4\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);

  std::string six = "case";
  for (int s = 0; s < 6; ++s) {
    six += ",s" + std::to_string(s) + "_obs,s" + std::to_string(s) + "_mod";
  }
  EXPECT_THROW(parse(six + "\n"), ParseError);
}

TEST(ParseDataset, RowLimitIsConfigurable) {
  std::string text = "case,y_obs,y_mod\n";
  for (int i = 0; i < 12; ++i) text += std::to_string(i) + ",1,1\n";
  std::istringstream a(text);
  EXPECT_THROW(parse_dataset(a, {10}), ParseError);
  std::istringstream b(text);
  EXPECT_EQ(parse_dataset(b, {12}).case_count(), 12u);
}

TEST(ParseDataset, StandardErrorColumn) {
  const auto ds = parse("case,y_obs,y_mod,y_se\n1,1,2,0.5\n2,,,\n3,2,2,\n");
  const auto& s = ds.series(0);
  ASSERT_TRUE(s.has_standard_errors());
  const auto se = s.usable_standard_errors();
  ASSERT_EQ(se.size(), 2u);
  EXPECT_DOUBLE_EQ(*se[0], 0.5);
  EXPECT_FALSE(se[1].has_value());
  EXPECT_THROW(parse("case,y_obs,y_mod,y_se\n1,,,0.5\n"), ParseError);
}

TEST(OverlapCount, PatchyLayoutMatchesReferenceTable) {
  const auto ds = parse_dataset_file(patchy_path());
  // Upper half of the reference effN_ij table (all cases matched).
  const std::size_t table[5][5] = {{0, 10, 8, 20, 10},
                                   {0, 0, 2, 7, 4},
                                   {0, 0, 0, 7, 5},
                                   {0, 0, 0, 0, 8},
                                   {0, 0, 0, 0, 0}};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      EXPECT_EQ(overlap_count(ds, i, j), table[i][j]) << i << "," << j;
    }
  }
  EXPECT_EQ(overlap_count(ds, 1, 2), 2u);
}

TEST(OverlapCount, FullAndDisjointCoverage) {
  const auto full = parse("case,a_obs,a_mod,b_obs,b_mod\n1,1,1,2,2\n2,2,2,3,3\n3,3,3,1,1\n");
  EXPECT_EQ(overlap_count(full, 0, 1), 3u);
  const auto disjoint = parse("case,a_obs,a_mod,b_obs,b_mod\n1,1,1,,\n2,2,2,,\n3,,,1,1\n");
  EXPECT_EQ(overlap_count(disjoint, 0, 1), 0u);
}

// Random patchy datasets: overlap is symmetric and bounded, and
// serialize/parse preserves the usable pairs.
TEST(DatasetProperties, OverlapAndRoundTrip) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> m_dist(1, 5), n_dist(1, 40);
  std::bernoulli_distribution present(0.7);
  std::normal_distribution<double> value(3.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = m_dist(rng);
    const int n = n_dist(rng);
    std::vector<std::string> ids;
    std::vector<ResponseSeries> series(m);
    for (int s = 0; s < m; ++s) series[s].name = "r" + std::to_string(s);
    for (int k = 0; k < n; ++k) {
      ids.push_back("case" + std::to_string(k));
      for (auto& s : series) {
        s.cases.push_back(present(rng) ? std::optional<Pair>(Pair{value(rng), value(rng)})
                                       : std::nullopt);
      }
    }
    const Dataset ds(ids, series);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        EXPECT_EQ(overlap_count(ds, i, j), overlap_count(ds, j, i));
        EXPECT_LE(overlap_count(ds, i, j),
                  std::min(ds.series(i).n_complete(), ds.series(j).n_complete()));
      }
    }
    std::stringstream buf;
    serialize_dataset(ds, buf);
    const auto back = parse_dataset(buf);
    ASSERT_EQ(back.size(), ds.size());
    EXPECT_EQ(back.case_ids(), ds.case_ids());
    for (int s = 0; s < m; ++s) {
      EXPECT_EQ(back.series(s).usable_pairs(), ds.series(s).usable_pairs());
    }
  }
}

TEST(Config, ParsesAllKeysAndAppliesToDataset) {
  std::istringstream in(R"({"scalar": "iqr",
      "case_match": [[true, false], [false, true]],
      "importance": [2, 1], "alphas": [0.05], "seed": 7,
      "replicates": 50, "max_rows": 20, "insufficient_overlap": "error"})");
  const auto config = parse_config(in);
  EXPECT_EQ(config.scalar, ScalarKind::kInterquartileRange);
  EXPECT_EQ(config.seed, 7u);
  EXPECT_EQ(config.replicates, 50u);
  EXPECT_EQ(config.max_rows, 20u);
  EXPECT_EQ(config.overlap_policy, OverlapPolicy::kReject);

  const auto ds = apply_config(
      parse("case,a_obs,a_mod,b_obs,b_mod\n1,1,1,2,2\n2,2,2,3,3\n3,3,3,1,1\n"), config);
  EXPECT_FALSE(ds.case_match(0, 1));
  EXPECT_TRUE(ds.case_match(0, 0));
  EXPECT_DOUBLE_EQ(ds.importance(0), 2.0);
}

TEST(Config, RejectsBadValues) {
  auto bad = [](const char* text) {
    std::istringstream in(text);
    return parse_config(in);
  };
  EXPECT_THROW(bad("{"), ParseError);
  EXPECT_THROW(bad(R"({"scalar": "range"})"), ParseError);
  EXPECT_THROW(bad(R"({"bogus": 1})"), ParseError);
  EXPECT_THROW(bad(R"({"seed": -3})"), ParseError);
  EXPECT_THROW(bad(R"({"case_match": [[true], [true, false]]})"), ParseError);

  const auto ds = parse("case,a_obs,a_mod\n1,1,1\n2,2,2\n3,3,3\n");
  EXPECT_THROW(ds.with_importance({0.0}), ParseError);
  EXPECT_THROW(ds.with_importance({1.0, 1.0}), ParseError);
}

}  // namespace
}  // namespace consilience
