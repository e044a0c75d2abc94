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

// Batch experiments: run solvers side by side, sweep over user counts, and
// summarize approximation ratios against the exact optimum.
//
// Trials are independent, so the sweep runs them as an OpenMP parallel loop.
// threads == 1 selects the plain serial loop, which is kept as the reference
// the parallel path is tested against. Output order never depends on the
// schedule of the parallel loop.

#ifndef PIES_HARNESS_HPP_
#define PIES_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pies/ann.hpp"
#include "pies/model.hpp"
#include "pies/placement.hpp"
#include "pies/scenario_gen.hpp"

namespace pies {

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  int num_users = 0;
  Algorithm algorithm = Algorithm::kExact;
  std::size_t placed_count = 0;
  std::size_t scheduled_count = 0;
  double objective = 0.0;
  std::optional<double> approx_ratio;  // absent when EXACT did not run
  double runtime_seconds = 0.0;
};

// One row per requested algorithm, in request order. When EXACT is among the
// algorithms every row carries objective / exact objective (1 when the exact
// objective is 0). InstanceTooLarge from EXACT propagates.
std::vector<TrialRecord> run_comparison(const Scenario& scenario,
                                        std::span<const Algorithm> algorithms,
                                        std::uint64_t seed,
                                        const ExactOptions& exact = {});
std::vector<TrialRecord> run_comparison(const Scenario& scenario,
                                        const QosTable& table,
                                        std::span<const Algorithm> algorithms,
                                        std::uint64_t seed,
                                        const ExactOptions& exact = {});

struct AggregateRecord {
  int num_users = 0;
  Algorithm algorithm = Algorithm::kExact;
  std::size_t trials = 0;
  double mean_placed = 0.0, std_placed = 0.0;
  double mean_scheduled = 0.0, std_scheduled = 0.0;
  double mean_objective = 0.0, std_objective = 0.0;
  std::optional<double> mean_ratio, std_ratio;
  double mean_runtime = 0.0, std_runtime = 0.0;
};

struct SweepOptions {
  ExactOptions exact;
  // 0: OpenMP default team; 1: serial reference loop; n: n threads.
  int threads = 0;
  // EXACT is dropped (and ratios omitted) for user counts above this.
  std::optional<int> exact_user_budget;
};

struct SweepResult {
  std::vector<TrialRecord> records;  // ordered by (num_users, trial, algorithm)
  std::vector<AggregateRecord> aggregates;
};

std::uint64_t trial_seed(std::uint64_t base_seed, int num_users, int trial);

SweepResult sweep(const GenParams& params, std::span<const int> user_counts,
                  int trials_per_point, std::span<const Algorithm> algorithms,
                  std::uint64_t base_seed, const SweepOptions& options = {});

std::vector<AggregateRecord> aggregate(std::span<const TrialRecord> records);

struct RatioSummary {
  std::size_t trials = 0;
  double mean = 0.0;
  double std = 0.0;
};

// Ratios are recomputed from objectives against the EXACT row of the same
// (num_users, trial, seed). Throws Error when a trial has no EXACT row.
std::map<Algorithm, RatioSummary> approximation_summary(
    std::span<const TrialRecord> records);

inline constexpr const char* kCsvHeader =
    "trial,seed,num_users,algorithm,num_placed,num_scheduled,expected_qos,"
    "approx_ratio,runtime_sec";

// Trial rows followed by "mean"/"std" aggregate rows.
void write_csv(std::ostream& out, std::span<const TrialRecord> records,
               std::span<const AggregateRecord> aggregates);

// The generic parallel trial kernel: evaluates job(i) for i in [0, n) and
// returns the results in index order. Exceptions are rethrown after the loop
// (lowest failing index first).
std::vector<std::vector<TrialRecord>> run_trials(
    std::size_t n, const std::function<std::vector<TrialRecord>(std::size_t)>& job,
    int threads);
std::vector<std::vector<TrialRecord>> run_trials_serial(
    std::size_t n,
    const std::function<std::vector<TrialRecord>(std::size_t)>& job);

struct FixtureResult {
  std::vector<TrialRecord> records;
  // algorithm -> model name -> number of trials in which it was placed
  std::map<Algorithm, std::map<std::string, int>> placement_counts;
  // Per trial: the single model with the highest summed QoS, found by
  // evaluating each model alone.
  std::vector<std::string> best_single_model;
};

FixtureResult fixture_comparison(int trials, int num_requests,
                                 std::span<const Algorithm> algorithms,
                                 std::uint64_t base_seed);

void write_fixture_table(std::ostream& out, const FixtureResult& result,
                         int trials);

// Objectives are the theta-penalized ANN objective.
std::vector<TrialRecord> ann_comparison(const AnnScenario& scenario,
                                        std::span<const Algorithm> algorithms,
                                        std::uint64_t seed,
                                        const ExactOptions& exact = {});

}  // namespace pies

#endif  // PIES_HARNESS_HPP_
