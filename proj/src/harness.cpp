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

#include "pies/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pies/rng.hpp"
#include "pies/scheduling.hpp"

namespace pies {

std::vector<TrialRecord> run_comparison(const Scenario& scenario,
                                        std::span<const Algorithm> algorithms,
                                        std::uint64_t seed,
                                        const ExactOptions& exact) {
  return run_comparison(scenario, QosTable(scenario), algorithms, seed, exact);
}

std::vector<TrialRecord> run_comparison(const Scenario& scenario,
                                        const QosTable& table,
                                        std::span<const Algorithm> algorithms,
                                        std::uint64_t seed,
                                        const ExactOptions& exact) {
  if (algorithms.empty()) throw Error("run_comparison: no algorithms given");
  SolveOptions opt{exact, seed};
  std::vector<TrialRecord> rows;
  std::optional<double> optimum;
  for (Algorithm a : algorithms) {
    const auto report = solve(a, scenario, table, opt);
    TrialRecord rec;
    rec.seed = seed;
    rec.num_users = static_cast<int>(scenario.num_requests());
    rec.algorithm = a;
    rec.placed_count = report.placed_count;
    rec.scheduled_count = report.scheduled_count;
    rec.objective = report.objective;
    rec.runtime_seconds = report.runtime_seconds;
    if (a == Algorithm::kExact) optimum = report.objective;
    rows.push_back(rec);
  }
  if (optimum) {
    for (auto& r : rows) {
      r.approx_ratio = *optimum > 0.0 ? r.objective / *optimum : 1.0;
    }
  }
  return rows;
}

std::uint64_t trial_seed(std::uint64_t base_seed, int num_users, int trial) {
  return splitmix64(splitmix64(base_seed ^ static_cast<std::uint64_t>(num_users)) +
                    static_cast<std::uint64_t>(trial));
}

std::vector<std::vector<TrialRecord>> run_trials_serial(
    std::size_t n,
    const std::function<std::vector<TrialRecord>(std::size_t)>& job) {
  std::vector<std::vector<TrialRecord>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = job(i);
  return out;
}

std::vector<std::vector<TrialRecord>> run_trials(
    std::size_t n,
    const std::function<std::vector<TrialRecord>(std::size_t)>& job,
    int threads) {
  if (threads == 1) return run_trials_serial(n, job);
  std::vector<std::vector<TrialRecord>> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::int64_t>(n);
#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
#endif
  for (std::int64_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = job(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

SweepResult sweep(const GenParams& params, std::span<const int> user_counts,
                  int trials_per_point, std::span<const Algorithm> algorithms,
                  std::uint64_t base_seed, const SweepOptions& options) {
  if (user_counts.empty()) throw Error("sweep: no user counts given");
  if (trials_per_point < 1) throw Error("sweep: trials_per_point must be >= 1");
  if (algorithms.empty()) throw Error("sweep: no algorithms given");
  params.check();

  struct Job {
    int num_users;
    int trial;
  };
  std::vector<Job> jobs;
  for (int count : user_counts) {
    for (int t = 0; t < trials_per_point; ++t) jobs.push_back({count, t});
  }

  auto job = [&](std::size_t i) {
    const Job j = jobs[i];
    GenParams p = params;
    p.num_users = j.num_users;
    const auto seed = trial_seed(base_seed, j.num_users, j.trial);
    std::vector<Algorithm> algs(algorithms.begin(), algorithms.end());
    if (options.exact_user_budget && j.num_users > *options.exact_user_budget) {
      std::erase(algs, Algorithm::kExact);
    }
    if (algs.empty()) return std::vector<TrialRecord>{};
    auto rows = run_comparison(generate(p, seed), algs, seed, options.exact);
    for (auto& r : rows) r.trial = j.trial;
    return rows;
  };

  SweepResult result;
  for (auto& rows : run_trials(jobs.size(), job, options.threads)) {
    for (auto& r : rows) result.records.push_back(std::move(r));
  }
  result.aggregates = aggregate(result.records);
  return result;
}

namespace {

struct Stats {
  double mean = 0.0;
  double std = 0.0;
};

// Population standard deviation.
Stats stats(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(xs.size()));
  return s;
}

}  // namespace

std::vector<AggregateRecord> aggregate(std::span<const TrialRecord> records) {
  std::map<std::pair<int, Algorithm>, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) groups[{r.num_users, r.algorithm}].push_back(&r);

  std::vector<AggregateRecord> out;
  for (const auto& [key, rows] : groups) {
    AggregateRecord a;
    a.num_users = key.first;
    a.algorithm = key.second;
    a.trials = rows.size();
    std::vector<double> placed, scheduled, objective, ratio, runtime;
    bool all_ratios = true;
    for (const auto* r : rows) {
      placed.push_back(static_cast<double>(r->placed_count));
      scheduled.push_back(static_cast<double>(r->scheduled_count));
      objective.push_back(r->objective);
      runtime.push_back(r->runtime_seconds);
      if (r->approx_ratio) {
        ratio.push_back(*r->approx_ratio);
      } else {
        all_ratios = false;
      }
    }
    std::tie(a.mean_placed, a.std_placed) = [&] { auto s = stats(placed); return std::pair{s.mean, s.std}; }();
    std::tie(a.mean_scheduled, a.std_scheduled) = [&] { auto s = stats(scheduled); return std::pair{s.mean, s.std}; }();
    std::tie(a.mean_objective, a.std_objective) = [&] { auto s = stats(objective); return std::pair{s.mean, s.std}; }();
    std::tie(a.mean_runtime, a.std_runtime) = [&] { auto s = stats(runtime); return std::pair{s.mean, s.std}; }();
    if (all_ratios && !ratio.empty()) {
      const auto s = stats(ratio);
      a.mean_ratio = s.mean;
      a.std_ratio = s.std;
    }
    out.push_back(a);
  }
  return out;
}

std::map<Algorithm, RatioSummary> approximation_summary(
    std::span<const TrialRecord> records) {
  using TrialKey = std::tuple<int, int, std::uint64_t>;
  std::map<TrialKey, double> optimum;
  for (const auto& r : records) {
    if (r.algorithm == Algorithm::kExact) {
      optimum[{r.num_users, r.trial, r.seed}] = r.objective;
    }
  }
  std::map<Algorithm, std::vector<double>> ratios;
  for (const auto& r : records) {
    auto it = optimum.find({r.num_users, r.trial, r.seed});
    if (it == optimum.end()) {
      throw Error("approximation_summary: trial " + std::to_string(r.trial) +
                  " with " + std::to_string(r.num_users) +
                  " users has no EXACT row");
    }
    ratios[r.algorithm].push_back(it->second > 0.0 ? r.objective / it->second
                                                   : 1.0);
  }
  std::map<Algorithm, RatioSummary> out;
  for (const auto& [a, xs] : ratios) {
    const auto s = stats(xs);
    out[a] = {xs.size(), s.mean, s.std};
  }
  return out;
}

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const TrialRecord> records,
               std::span<const AggregateRecord> aggregates) {
  out << kCsvHeader << "\n";
  for (const auto& r : records) {
    out << r.trial << ',' << r.seed << ',' << r.num_users << ','
        << to_string(r.algorithm) << ',' << r.placed_count << ','
        << r.scheduled_count << ',' << num(r.objective) << ','
        << (r.approx_ratio ? num(*r.approx_ratio) : "") << ','
        << num(r.runtime_seconds) << "\n";
  }
  for (const auto& a : aggregates) {
    const auto alg = to_string(a.algorithm);
    out << "mean,," << a.num_users << ',' << alg << ',' << num(a.mean_placed)
        << ',' << num(a.mean_scheduled) << ',' << num(a.mean_objective) << ','
        << (a.mean_ratio ? num(*a.mean_ratio) : "") << ','
        << num(a.mean_runtime) << "\n";
    out << "std,," << a.num_users << ',' << alg << ',' << num(a.std_placed)
        << ',' << num(a.std_scheduled) << ',' << num(a.std_objective) << ','
        << (a.std_ratio ? num(*a.std_ratio) : "") << ','
        << num(a.std_runtime) << "\n";
  }
}

FixtureResult fixture_comparison(int trials, int num_requests,
                                 std::span<const Algorithm> algorithms,
                                 std::uint64_t base_seed) {
  if (trials < 1) throw Error("fixture: trials must be >= 1");
  FixtureResult result;
  for (Algorithm a : algorithms) {
    for (const auto& m : kFixtureModels) result.placement_counts[a][m.name] = 0;
  }
  for (int t = 0; t < trials; ++t) {
    const auto seed = trial_seed(base_seed, num_requests, t);
    const Scenario sc = real_world_fixture(seed, num_requests);
    const QosTable table(sc);

    double best_value = -1.0;
    std::string best_name;
    for (std::size_t m = 0; m < kFixtureModels.size(); ++m) {
      Placement single;
      single.placed.insert({1, 1, static_cast<ModelId>(m + 1)});
      const double v = sigma(sc, table, single);
      if (v > best_value) {
        best_value = v;
        best_name = kFixtureModels[m].name;
      }
    }
    result.best_single_model.push_back(best_name);

    auto rows = run_comparison(sc, table, algorithms, seed);
    SolveOptions opt{{}, seed};
    for (Algorithm a : algorithms) {
      // Placement contents are needed for the frequency table.
      const auto report = solve(a, sc, table, opt);
      for (const auto& p : report.placement.placed) {
        ++result.placement_counts[a][kFixtureModels[p.model - 1].name];
      }
    }
    for (auto& r : rows) {
      r.trial = t;
      result.records.push_back(r);
    }
  }
  return result;
}

void write_fixture_table(std::ostream& out, const FixtureResult& result,
                         int trials) {
  out << "algorithm,model,trials_placed,fraction\n";
  for (const auto& [a, counts] : result.placement_counts) {
    for (const auto& m : kFixtureModels) {
      const int c = counts.at(m.name);
      out << to_string(a) << ',' << m.name << ',' << c << ','
          << num(static_cast<double>(c) / trials) << "\n";
    }
  }
}

std::vector<TrialRecord> ann_comparison(const AnnScenario& scenario,
                                        std::span<const Algorithm> algorithms,
                                        std::uint64_t seed,
                                        const ExactOptions& exact) {
  const QosTable table = ann_qos_table(scenario, scenario.params.hyper.theta);
  return run_comparison(scenario.base, table, algorithms, seed, exact);
}

}  // namespace pies
