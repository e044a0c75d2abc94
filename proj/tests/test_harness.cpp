// Copyright 2026 The Authors.
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

#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "pies/harness.hpp"

namespace pies {
namespace {

const std::vector<Algorithm> kAll{Algorithm::kExact, Algorithm::kAgp,
                                  Algorithm::kEgp, Algorithm::kSck,
                                  Algorithm::kRnd};

GenParams desk() {
  GenParams p;
  p.num_edges = 3;
  p.num_services = 6;
  p.models_per_service = {1, 4};
  return p;
}

// CSV with the runtime column blanked.
std::string strip_runtime(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    out += line.substr(0, line.rfind(',')) + "\n";
  }
  return out;
}

TEST(RunComparison, ExactRowHasRatioOne) {
  const auto sc = generate(oracle::small_params(), 4);
  const auto rows = run_comparison(sc, kAll, 1);
  ASSERT_EQ(rows.size(), kAll.size());
  EXPECT_EQ(rows[0].algorithm, Algorithm::kExact);
  EXPECT_DOUBLE_EQ(*rows[0].approx_ratio, 1.0);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.approx_ratio.has_value());
    EXPECT_GE(*r.approx_ratio, 0.0);
    EXPECT_LE(*r.approx_ratio, 1.0 + 1e-9);
    EXPECT_EQ(r.num_users, 10);
  }
}

TEST(RunComparison, NoExactNoRatio) {
  const auto sc = generate(oracle::small_params(), 4);
  const std::vector<Algorithm> algs{Algorithm::kEgp, Algorithm::kSck};
  for (const auto& r : run_comparison(sc, algs, 1)) {
    EXPECT_FALSE(r.approx_ratio.has_value());
  }
  EXPECT_THROW(run_comparison(sc, std::vector<Algorithm>{}, 1), Error);
}

TEST(RunComparison, Deterministic) {
  const auto sc = generate(desk(), 2);
  const auto a = run_comparison(sc, kAll, 3);
  const auto b = run_comparison(sc, kAll, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].objective, b[i].objective);
    EXPECT_EQ(a[i].placed_count, b[i].placed_count);
  }
}

TEST(RunComparison, PropagatesInstanceTooLarge) {
  auto p = desk();
  p.models_per_service = {4, 4};
  ExactOptions tight;
  tight.max_models_per_service = 3;
  EXPECT_THROW(run_comparison(generate(p, 1), kAll, 1, tight), InstanceTooLarge);
}

TEST(Sweep, ShapeAndOrder) {
  const std::vector<int> counts{20, 10};
  const auto res = sweep(desk(), counts, 3, kAll, 5);
  ASSERT_EQ(res.records.size(), 2u * 3u * kAll.size());
  std::size_t i = 0;
  for (int c : counts) {
    for (int t = 0; t < 3; ++t) {
      for (Algorithm a : kAll) {
        EXPECT_EQ(res.records[i].num_users, c);
        EXPECT_EQ(res.records[i].trial, t);
        EXPECT_EQ(res.records[i].algorithm, a);
        ++i;
      }
    }
  }
  EXPECT_EQ(res.aggregates.size(), 2u * kAll.size());
}

TEST(Sweep, ZeroUsersScoreZero) {
  const std::vector<int> counts{0};
  const auto res = sweep(desk(), counts, 2, kAll, 5);
  for (const auto& r : res.records) {
    EXPECT_DOUBLE_EQ(r.objective, 0.0);
    EXPECT_DOUBLE_EQ(*r.approx_ratio, 1.0);
  }
}

TEST(Sweep, ParallelMatchesSerialReference) {
  const std::vector<int> counts{10, 30, 50};
  SweepOptions serial;
  serial.threads = 1;
  SweepOptions parallel;
  parallel.threads = 4;
  const auto a = sweep(desk(), counts, 4, kAll, 99, serial);
  const auto b = sweep(desk(), counts, 4, kAll, 99, parallel);
  std::ostringstream sa, sb;
  write_csv(sa, a.records, a.aggregates);
  write_csv(sb, b.records, b.aggregates);
  EXPECT_EQ(strip_runtime(sa.str()), strip_runtime(sb.str()));
}

TEST(Sweep, ExactBudgetOmitsRatios) {
  const std::vector<int> counts{10, 40};
  SweepOptions opt;
  opt.exact_user_budget = 20;
  const auto res = sweep(desk(), counts, 2, kAll, 1, opt);
  for (const auto& r : res.records) {
    if (r.num_users > 20) {
      EXPECT_NE(r.algorithm, Algorithm::kExact);
      EXPECT_FALSE(r.approx_ratio.has_value());
    } else {
      EXPECT_TRUE(r.approx_ratio.has_value());
    }
  }
  for (const auto& a : res.aggregates) {
    EXPECT_EQ(a.mean_ratio.has_value(), a.num_users <= 20);
  }
}

TEST(Sweep, RejectsEmptyInputs) {
  EXPECT_THROW(sweep(desk(), std::vector<int>{}, 1, kAll, 1), Error);
  EXPECT_THROW(sweep(desk(), std::vector<int>{5}, 0, kAll, 1), Error);
}

TEST(ApproximationSummary, Ratios) {
  std::vector<TrialRecord> recs;
  recs.push_back({0, 1, 5, Algorithm::kExact, 0, 0, 1.0, 1.0, 0.0});
  recs.push_back({0, 1, 5, Algorithm::kEgp, 0, 0, 0.85, {}, 0.0});
  recs.push_back({0, 1, 5, Algorithm::kAgp, 0, 0, 1.0, {}, 0.0});
  recs.push_back({1, 2, 5, Algorithm::kExact, 0, 0, 2.0, 1.0, 0.0});
  recs.push_back({1, 2, 5, Algorithm::kEgp, 0, 0, 1.9, {}, 0.0});
  recs.push_back({1, 2, 5, Algorithm::kAgp, 0, 0, 2.0, {}, 0.0});
  const auto s = approximation_summary(recs);
  EXPECT_NEAR(s.at(Algorithm::kEgp).mean, 0.9, 1e-12);
  EXPECT_NEAR(s.at(Algorithm::kEgp).std, 0.05, 1e-12);
  EXPECT_DOUBLE_EQ(s.at(Algorithm::kAgp).mean, 1.0);
  EXPECT_EQ(s.at(Algorithm::kExact).trials, 2u);

  recs.push_back({2, 3, 5, Algorithm::kEgp, 0, 0, 1.0, {}, 0.0});
  EXPECT_THROW(approximation_summary(recs), Error);
}

TEST(Csv, HeaderAndAggregateRows) {
  const auto sc = generate(oracle::small_params(), 4);
  const auto rows = run_comparison(sc, kAll, 1);
  std::ostringstream out;
  write_csv(out, rows, aggregate(rows));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  int trial_rows = 0, mean_rows = 0, std_rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
    if (line.starts_with("mean,")) {
      ++mean_rows;
    } else if (line.starts_with("std,")) {
      ++std_rows;
    } else {
      ++trial_rows;
    }
  }
  EXPECT_EQ(trial_rows, 5);
  EXPECT_EQ(mean_rows, 5);
  EXPECT_EQ(std_rows, 5);
}

TEST(RunTrials, RethrowsAfterLoop) {
  auto job = [](std::size_t i) -> std::vector<TrialRecord> {
    if (i == 3) throw Error("boom");
    return {TrialRecord{static_cast<int>(i)}};
  };
  EXPECT_THROW(run_trials(8, job, 4), Error);
  const auto ok = run_trials(3, job, 4);
  ASSERT_EQ(ok.size(), 3u);
  EXPECT_EQ(ok[2][0].trial, 2);
}

TEST(Fixture, FrequencyTable) {
  const std::vector<Algorithm> algs{Algorithm::kEgp, Algorithm::kSck};
  const auto res = fixture_comparison(5, 50, algs, 1);
  EXPECT_EQ(res.records.size(), 10u);
  EXPECT_EQ(res.best_single_model.size(), 5u);
  for (const auto& [a, counts] : res.placement_counts) {
    int total = 0;
    for (const auto& [name, c] : counts) total += c;
    EXPECT_EQ(total, 5);  // one model per trial
  }
  std::ostringstream out;
  write_fixture_table(out, res, 5);
  EXPECT_NE(out.str().find("MobileNet"), std::string::npos);
}

}  // namespace
}  // namespace pies
