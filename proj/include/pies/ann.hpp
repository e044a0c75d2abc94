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

// Neural-network services. Every service has three implementations derived
// from one sequential architecture:
//
//   model 1  DNN  the full network, run on the edge
//   model 2  PNN  pruned by rate gamma (fewer hidden layers, fewer neurons)
//   model 3  SNN  the first ceil(rho * N) layers on the edge, the rest in the
//                 central cloud
//
// Each neuron is one bit on the wire. User link rates follow a Shannon-Hartley
// style law in the distance to the edge. QoS delivered through an SNN is
// discounted by theta for its reliance on the central cloud.

#ifndef PIES_ANN_HPP_
#define PIES_ANN_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pies/model.hpp"
#include "pies/scenario_gen.hpp"

namespace pies {

enum class AnnModelType { kDnn, kPnn, kSnn };

std::string to_string(AnnModelType type);
std::optional<AnnModelType> parse_ann_model_type(std::string_view text);

struct AnnArchitecture {
  std::vector<std::int64_t> layer_neurons;
  std::vector<std::int64_t> layer_cycles;  // CPU cycles per neuron

  std::size_t num_layers() const { return layer_neurons.size(); }
  // Equal lengths, at least an input and an output layer, positive entries.
  void check() const;
  bool operator==(const AnnArchitecture&) const = default;
};

struct AnnHyperparams {
  double gamma = 0.75;
  double rho = 0.5;
  double lambda_pnn = 0.75;
  double lambda_snn = 0.125;
  double theta = 0.05;
  // The pruning formula applies to every layer, but pruned networks keep
  // their output layer; false keeps the output layer at full width.
  bool prune_output_layer = false;

  void check() const;
  bool operator==(const AnnHyperparams&) const = default;
};

struct AnnUserLink {
  double distance = 0.0;
  double distance_max = 1.0;
  double cloud_bps = 1.0;
};

struct DerivedModel {
  AnnArchitecture arch;
  std::int64_t storage = 0;
  double accuracy = 0.0;
  // Number of leading layers resident on the edge (SNN only, 1-based count).
  std::optional<std::size_t> split_index;
};

DerivedModel derive_pnn(const AnnArchitecture& dnn, std::int64_t dnn_storage,
                        double dnn_accuracy, const AnnHyperparams& params,
                        std::uint64_t seed);
DerivedModel derive_snn(const AnnArchitecture& dnn, std::int64_t dnn_storage,
                        double dnn_accuracy, const AnnHyperparams& params);

// (K_e / |U_e|) * log2(1 + (dist_max - dist_u) / dist_max).
double user_bps(double comm_capacity, std::size_t covered_count,
                const AnnUserLink& link);

// nullopt when the user cannot reach the edge (zero link rate).
std::optional<double> ann_comm_delay(AnnModelType type,
                                     const AnnArchitecture& arch,
                                     std::optional<std::size_t> split_index,
                                     const AnnUserLink& link, double bps_u,
                                     std::size_t covered_count);

double ann_comp_delay(AnnModelType type, const AnnArchitecture& arch,
                      std::optional<std::size_t> split_index,
                      double comp_capacity, std::size_t covered_count);

struct AnnModelInfo {
  AnnModelType type = AnnModelType::kDnn;
  AnnArchitecture arch;
  std::optional<std::size_t> split_index;
  bool operator==(const AnnModelInfo&) const = default;
};

struct AnnParams {
  AnnHyperparams hyper;
  double dist_max = 100.0;
  double cloud_bps = 10000.0;
  bool operator==(const AnnParams&) const = default;
};

// A base scenario plus the per-model architectures and per-request distances.
// Vectors are indexed like the base scenario: models[service][model],
// distance[request].
struct AnnScenario {
  Scenario base;
  std::vector<std::vector<AnnModelInfo>> models;
  std::vector<double> distance;
  AnnParams params;

  void check() const;
  bool operator==(const AnnScenario&) const = default;
};

struct AnnGenParams {
  GenParams base;  // models_per_service is ignored; every service gets 3
  Range<int> layers{3, 8};
  Range<int> neurons{4, 32};
  Range<int> cycles{1, 4};
  AnnParams ann;
};

AnnScenario generate_ann(const AnnGenParams& params, std::uint64_t seed);

// Expected delay of a model for a request under the ANN cost model; nullopt
// when the user is unreachable.
std::optional<double> ann_expected_delay(const AnnScenario& sc,
                                         std::size_t request,
                                         std::size_t model_idx);

// QoS table with ANN delays and SNN values scaled by (1 - theta). Users count
// as fully satisfied only when both thresholds are met and no penalty
// applies.
QosTable ann_qos_table(const AnnScenario& sc, double theta);

// Sum over scheduled users of Q, minus theta * Q for SNN-served users.
double ann_objective(const AnnScenario& sc, const Schedule& schedule,
                     double theta);

nlohmann::json ann_scenario_to_json(const AnnScenario& sc);
AnnScenario ann_scenario_from_json(const nlohmann::json& doc);
AnnScenario load_ann(const std::string& path);
void save_ann(const AnnScenario& sc, const std::string& path);

}  // namespace pies

#endif  // PIES_ANN_HPP_
