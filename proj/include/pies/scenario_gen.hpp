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

// Synthetic scenario generation and the image-classification fixture.

#ifndef PIES_SCENARIO_GEN_HPP_
#define PIES_SCENARIO_GEN_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pies/model.hpp"

namespace pies {

// How the exponential parameters of the threshold distributions are read:
// as a rate (mean 1/p) or as a scale (mean p).
enum class ExpParamMode { kRate, kScale };

std::string to_string(ExpParamMode mode);
std::optional<ExpParamMode> parse_exp_param_mode(std::string_view text);

template <typename T>
struct Range {
  T low;
  T high;
  bool operator==(const Range&) const = default;
};

struct GenParams {
  int num_edges = 10;
  int num_services = 100;
  Range<int> models_per_service{1, 10};
  int num_users = 100;
  Range<int> comm_capacity{300, 600};
  Range<int> comp_capacity{300, 600};
  Range<int> storage_capacity{100, 200};
  Range<int> comm_cost{15, 30};
  Range<int> comp_cost{15, 30};
  Range<int> storage_cost{10, 20};
  double accuracy_mean = 0.65;
  double accuracy_sd = 0.1;
  double alpha_exp_param = 0.125;
  double delta_exp_param = 1.5;
  double delay_max = 10.0;
  ExpParamMode exp_param_mode = ExpParamMode::kRate;

  bool operator==(const GenParams&) const = default;

  // Throws ValidationError on empty ranges or non-positive counts/params.
  void check() const;
};

// Unknown keys are rejected; absent keys keep the values already in `base`.
GenParams gen_params_from_json(const nlohmann::json& doc,
                               GenParams base = {});
nlohmann::json gen_params_to_json(const GenParams& params);

Scenario generate(const GenParams& params, std::uint64_t seed);

// One entry of the image-classification model table.
struct FixtureModel {
  const char* name;
  double accuracy;
  double comp_delay_seconds;
};

inline constexpr std::array<FixtureModel, 6> kFixtureModels{{
    {"AlexNet", 0.5652, 0.04},
    {"DenseNet", 0.7714, 0.47},
    {"GoogLeNet", 0.6978, 0.13},
    {"MobileNet", 0.7188, 0.06},
    {"ResNet", 0.6976, 0.08},
    {"SqueezeNet", 0.5809, 0.07},
}};

struct FixtureParams {
  int num_requests = 100;
  double comm_delay_seconds = 0.05;  // per-request transmission time
  double comm_capacity = 1000.0;
  double comp_capacity = 1000.0;
  double alpha_rate = 0.0625;
  double delta_mean = 0.5;
  double delta_sd = 0.125;
  double delay_max = 1.0;
};

// One edge (storage 1), one service whose six unit-storage models carry the
// table's accuracies; costs are set so each model's expected computation delay
// equals its tabulated average. Model ids are 1..6 in table order.
Scenario real_world_fixture(std::uint64_t seed, int num_requests);
Scenario real_world_fixture(std::uint64_t seed, const FixtureParams& params);

}  // namespace pies

#endif  // PIES_SCENARIO_GEN_HPP_
