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

// Placement solvers. Each returns a feasible placement together with its
// optimal (OMS) schedule, except RND which schedules at random.
//
//   EXACT  per-edge optimum, multiple-choice knapsack over model subsets
//   AGP    greedy on sigma gains under the per-edge storage matroid
//   EGP    value-map greedy with sibling-model benefit updates
//   SCK    per-edge 0/1 knapsack on summed model QoS
//   RND    seeded random placement and scheduling

#ifndef PIES_PLACEMENT_HPP_
#define PIES_PLACEMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pies/model.hpp"

namespace pies {

enum class Algorithm { kExact, kAgp, kEgp, kSck, kRnd };

std::string to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct SolveReport {
  Algorithm algorithm = Algorithm::kExact;
  Placement placement;
  Schedule schedule;
  double objective = 0.0;
  std::size_t placed_count = 0;
  std::size_t scheduled_count = 0;
  double runtime_seconds = 0.0;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

struct ExactOptions {
  // Largest number of models of one requested service at one edge; the
  // solver enumerates all 2^n subsets of such a service.
  std::size_t max_models_per_service = 16;
  // Upper bound on knapsack table cells (services x capacity) per edge.
  std::size_t max_table_cells = 50'000'000;
};

SolveReport exact(const Scenario& scenario, const ExactOptions& options = {});
SolveReport exact(const Scenario& scenario, const QosTable& table,
                  const ExactOptions& options = {});

SolveReport agp(const Scenario& scenario);
SolveReport agp(const Scenario& scenario, const QosTable& table);

SolveReport egp(const Scenario& scenario);
SolveReport egp(const Scenario& scenario, const QosTable& table);

SolveReport sck(const Scenario& scenario);
SolveReport sck(const Scenario& scenario, const QosTable& table);

SolveReport rnd(const Scenario& scenario, std::uint64_t seed);
SolveReport rnd(const Scenario& scenario, const QosTable& table,
                std::uint64_t seed);

struct SolveOptions {
  ExactOptions exact;
  std::uint64_t seed = 0;  // RND only
};

SolveReport solve(Algorithm algorithm, const Scenario& scenario,
                  const SolveOptions& options = {});
SolveReport solve(Algorithm algorithm, const Scenario& scenario,
                  const QosTable& table, const SolveOptions& options = {});

// 0/1 knapsack by dynamic programming over integer capacity. Returns the
// indices of the chosen items in ascending order.
std::vector<std::size_t> solve_knapsack(std::span<const std::int64_t> weights,
                                        std::span<const double> values,
                                        std::int64_t capacity);

// One iteration of EGP's selection loop at a single edge.
struct EgpTraceStep {
  ModelKey chosen;
  bool placed = false;
  std::vector<std::pair<ModelKey, double>> values_after;  // sorted by key
};

// Runs EGP on one edge and records each iteration, with the value map as it
// stands after the iteration's sibling update.
std::vector<EgpTraceStep> egp_trace(const Scenario& scenario,
                                    const QosTable& table, EdgeId edge);

}  // namespace pies

#endif  // PIES_PLACEMENT_HPP_
