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

// Problem-instance data model for joint placement and scheduling of
// multi-implementation edge services, plus the QoS mathematics every solver
// shares.
//
// A Scenario is immutable once built. Its constructor canonicalizes entity
// order (edges, services, models and requests sorted by id), so index order is
// the lexicographic id order that all argmax tie-breaks rely on.

#ifndef PIES_MODEL_HPP_
#define PIES_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pies {

using EdgeId = int;
using ServiceId = int;
using ModelId = int;
using UserId = int;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a Scenario (or a value handed to a QoS function) breaks an
// invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

struct ModelKey {
  ServiceId service = 0;
  ModelId model = 0;
  auto operator<=>(const ModelKey&) const = default;
};

struct ServiceModelSpec {
  ModelId id = 0;
  double accuracy = 0.0;       // A_sm
  double comm_cost = 0.0;      // k_sm
  double comp_cost = 0.0;      // w_sm
  std::int64_t storage_cost = 0;  // r_sm
  bool operator==(const ServiceModelSpec&) const = default;
};

struct Service {
  ServiceId id = 0;
  std::vector<ServiceModelSpec> models;
  bool operator==(const Service&) const = default;
};

struct EdgeCloud {
  EdgeId id = 0;
  double comm_capacity = 0.0;  // K_e
  double comp_capacity = 0.0;  // W_e
  std::int64_t storage_capacity = 0;  // R_e
  bool operator==(const EdgeCloud&) const = default;
};

struct UserRequest {
  UserId id = 0;
  EdgeId edge = 0;
  ServiceId service = 0;
  double accuracy_threshold = 0.0;  // alpha_u
  double delay_threshold = 0.0;     // delta_u
  bool operator==(const UserRequest&) const = default;
};

// Where a generated scenario came from. Optional; hand-written files omit it.
struct Provenance {
  std::uint64_t seed = 0;
  std::string generator;
  std::string exp_param_mode;
  bool operator==(const Provenance&) const = default;
};

class Scenario {
 public:
  Scenario() = default;

  // Throws ValidationError naming the first broken invariant.
  Scenario(std::vector<EdgeCloud> edges, std::vector<Service> services,
           std::vector<UserRequest> requests, double delay_max,
           std::optional<Provenance> provenance = std::nullopt);

  const std::vector<EdgeCloud>& edges() const { return edges_; }
  const std::vector<Service>& services() const { return services_; }
  const std::vector<UserRequest>& requests() const { return requests_; }
  double delay_max() const { return delay_max_; }
  const std::optional<Provenance>& provenance() const { return provenance_; }

  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_services() const { return services_.size(); }
  std::size_t num_requests() const { return requests_.size(); }
  std::size_t num_service_models() const;

  std::optional<std::size_t> edge_index(EdgeId id) const;
  std::optional<std::size_t> service_index(ServiceId id) const;
  std::optional<std::size_t> model_index(std::size_t service_idx,
                                         ModelId id) const;
  std::optional<std::size_t> request_index(UserId id) const;

  // Index of the requested service / covering edge of request `r`.
  std::size_t request_service(std::size_t r) const { return req_service_[r]; }
  std::size_t request_edge(std::size_t r) const { return req_edge_[r]; }

  // |U_e|: every request covered by the edge, served or not.
  std::size_t covered_count(std::size_t edge_idx) const {
    return covered_[edge_idx].size();
  }
  std::span<const std::size_t> covered_requests(std::size_t edge_idx) const {
    return covered_[edge_idx];
  }

  const ServiceModelSpec& model(std::size_t service_idx,
                                std::size_t model_idx) const {
    return services_[service_idx].models[model_idx];
  }

  bool operator==(const Scenario& other) const {
    return edges_ == other.edges_ && services_ == other.services_ &&
           requests_ == other.requests_ && delay_max_ == other.delay_max_ &&
           provenance_ == other.provenance_;
  }

 private:
  std::vector<EdgeCloud> edges_;
  std::vector<Service> services_;
  std::vector<UserRequest> requests_;
  double delay_max_ = 1.0;
  std::optional<Provenance> provenance_;

  std::unordered_map<EdgeId, std::size_t> edge_idx_;
  std::unordered_map<ServiceId, std::size_t> service_idx_;
  std::vector<std::unordered_map<ModelId, std::size_t>> model_idx_;
  std::unordered_map<UserId, std::size_t> request_idx_;
  std::vector<std::size_t> req_service_;
  std::vector<std::size_t> req_edge_;
  std::vector<std::vector<std::size_t>> covered_;
};

// Decision x as a set of (edge, service, model) triples.
struct PlacedModel {
  EdgeId edge = 0;
  ServiceId service = 0;
  ModelId model = 0;
  auto operator<=>(const PlacedModel&) const = default;
};

struct Placement {
  std::set<PlacedModel> placed;
  bool operator==(const Placement&) const = default;
};

// Decision y: the model (of the user's requested service) serving each user.
// Users absent from the map, or mapped to nullopt, are dropped.
struct Schedule {
  std::map<UserId, std::optional<ModelId>> assigned;
  bool operator==(const Schedule&) const = default;

  std::size_t scheduled_count() const;
};

double accuracy_satisfaction(double accuracy, double threshold);
double delay_satisfaction(double delay, double threshold, double delay_max);

// k|U_e|/K_e + w|U_e|/W_e for the user's covering edge.
double expected_delay(const Scenario& scenario, UserId user, ModelKey model);

// 0 on service mismatch, else the mean of accuracy and delay satisfaction.
double qos(const Scenario& scenario, UserId user, ModelKey model);

// True iff both thresholds are met, i.e. exactly when qos() is 1.
bool fully_satisfies(const Scenario& scenario, UserId user, ModelKey model);

// Per-request QoS values over the models of the requested service. Every
// solver reads QoS through this table, so alternative cost models (the ANN
// special case) plug in by building a different table.
class QosTable {
 public:
  explicit QosTable(const Scenario& scenario);
  QosTable(std::vector<std::vector<double>> values,
           std::vector<std::vector<char>> satisfied);

  double value(std::size_t request, std::size_t model_idx) const {
    return values_[request][model_idx];
  }
  bool satisfied(std::size_t request, std::size_t model_idx) const {
    return satisfied_[request][model_idx] != 0;
  }
  std::span<const double> values(std::size_t request) const {
    return values_[request];
  }
  std::size_t num_requests() const { return values_.size(); }

 private:
  std::vector<std::vector<double>> values_;
  std::vector<std::vector<char>> satisfied_;
};

double objective_value(const Scenario& scenario, const Schedule& schedule);
double objective_value(const Scenario& scenario, const QosTable& table,
                       const Schedule& schedule);

enum class Constraint {
  kOneModelPerUser,   // 7a
  kStorage,           // 7b
  kServedByPlaced,    // 7c
  kUnknownReference,  // ids that name no entity
};

std::string to_string(Constraint c);

struct Violation {
  Constraint constraint;
  std::optional<EdgeId> edge;
  std::optional<UserId> user;
  std::string detail;
};

// Every violated constraint; empty means feasible.
std::vector<Violation> validate(const Scenario& scenario,
                                const Placement& placement,
                                const Schedule& schedule);

}  // namespace pies

#endif  // PIES_MODEL_HPP_
