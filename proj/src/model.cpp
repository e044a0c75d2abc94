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

#include "pies/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace pies {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

Scenario::Scenario(std::vector<EdgeCloud> edges, std::vector<Service> services,
                   std::vector<UserRequest> requests, double delay_max,
                   std::optional<Provenance> provenance)
    : edges_(std::move(edges)),
      services_(std::move(services)),
      requests_(std::move(requests)),
      delay_max_(delay_max),
      provenance_(std::move(provenance)) {
  require(std::isfinite(delay_max_) && delay_max_ > 0.0,
          "delay_max must be positive");

  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::sort(edges_.begin(), edges_.end(), by_id);
  std::sort(services_.begin(), services_.end(), by_id);
  for (auto& s : services_) std::sort(s.models.begin(), s.models.end(), by_id);
  std::sort(requests_.begin(), requests_.end(), by_id);

  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const auto tag = "edge " + std::to_string(e.id);
    require(edge_idx_.emplace(e.id, i).second, "duplicate " + tag);
    require(e.comm_capacity > 0.0, tag + ": comm_capacity must be positive");
    require(e.comp_capacity > 0.0, tag + ": comp_capacity must be positive");
    require(e.storage_capacity >= 0,
            tag + ": storage_capacity must be non-negative");
  }

  model_idx_.resize(services_.size());
  for (std::size_t i = 0; i < services_.size(); ++i) {
    const auto& s = services_[i];
    const auto tag = "service " + std::to_string(s.id);
    require(service_idx_.emplace(s.id, i).second, "duplicate " + tag);
    require(!s.models.empty(), tag + " has no models");
    for (std::size_t j = 0; j < s.models.size(); ++j) {
      const auto& m = s.models[j];
      const auto mtag = tag + " model " + std::to_string(m.id);
      require(model_idx_[i].emplace(m.id, j).second, "duplicate " + mtag);
      require(in_unit(m.accuracy), mtag + ": accuracy outside [0,1]");
      require(m.comm_cost > 0.0, mtag + ": comm_cost must be positive");
      require(m.comp_cost > 0.0, mtag + ": comp_cost must be positive");
      require(m.storage_cost >= 0, mtag + ": storage_cost must be non-negative");
    }
  }

  covered_.resize(edges_.size());
  req_service_.reserve(requests_.size());
  req_edge_.reserve(requests_.size());
  for (std::size_t r = 0; r < requests_.size(); ++r) {
    const auto& u = requests_[r];
    const auto tag = "request " + std::to_string(u.id);
    require(request_idx_.emplace(u.id, r).second, "duplicate " + tag);
    auto e = edge_index(u.edge);
    auto s = service_index(u.service);
    require(e.has_value(), tag + ": unknown edge " + std::to_string(u.edge));
    require(s.has_value(),
            tag + ": unknown service " + std::to_string(u.service));
    require(in_unit(u.accuracy_threshold),
            tag + ": accuracy_threshold outside [0,1]");
    require(u.delay_threshold >= 0.0 && u.delay_threshold <= delay_max_,
            tag + ": delay_threshold outside [0, delay_max]");
    req_edge_.push_back(*e);
    req_service_.push_back(*s);
    covered_[*e].push_back(r);
  }
}

std::size_t Scenario::num_service_models() const {
  std::size_t n = 0;
  for (const auto& s : services_) n += s.models.size();
  return n;
}

std::optional<std::size_t> Scenario::edge_index(EdgeId id) const {
  auto it = edge_idx_.find(id);
  if (it == edge_idx_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Scenario::service_index(ServiceId id) const {
  auto it = service_idx_.find(id);
  if (it == service_idx_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Scenario::model_index(std::size_t service_idx,
                                                 ModelId id) const {
  if (service_idx >= model_idx_.size()) return std::nullopt;
  auto it = model_idx_[service_idx].find(id);
  if (it == model_idx_[service_idx].end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Scenario::request_index(UserId id) const {
  auto it = request_idx_.find(id);
  if (it == request_idx_.end()) return std::nullopt;
  return it->second;
}

std::size_t Schedule::scheduled_count() const {
  return static_cast<std::size_t>(std::count_if(
      assigned.begin(), assigned.end(),
      [](const auto& kv) { return kv.second.has_value(); }));
}

double accuracy_satisfaction(double accuracy, double threshold) {
  if (!in_unit(accuracy) || !in_unit(threshold)) {
    throw ValidationError("accuracy and threshold must lie in [0,1]");
  }
  if (accuracy >= threshold) return 1.0;
  return std::max(0.0, 1.0 - (threshold - accuracy));
}

double delay_satisfaction(double delay, double threshold, double delay_max) {
  if (!(delay_max > 0.0)) throw ValidationError("delay_max must be positive");
  if (delay < 0.0 || threshold < 0.0 || threshold > delay_max) {
    throw ValidationError("delay or threshold out of range");
  }
  if (delay <= threshold) return 1.0;
  return std::max(0.0, 1.0 - (delay - threshold) / delay_max);
}

namespace {

struct Resolved {
  std::size_t request;
  std::size_t edge;
  std::size_t service;
  std::size_t model;
};

Resolved resolve(const Scenario& sc, UserId user, ModelKey key) {
  auto r = sc.request_index(user);
  if (!r) throw ValidationError("unknown user " + std::to_string(user));
  auto s = sc.service_index(key.service);
  if (!s) throw ValidationError("unknown service " + std::to_string(key.service));
  auto m = sc.model_index(*s, key.model);
  if (!m) throw ValidationError("unknown model " + std::to_string(key.model));
  return {*r, sc.request_edge(*r), *s, *m};
}

double delay_of(const Scenario& sc, std::size_t edge, const ServiceModelSpec& m) {
  const auto& e = sc.edges()[edge];
  const double n = static_cast<double>(sc.covered_count(edge));
  return m.comm_cost * n / e.comm_capacity + m.comp_cost * n / e.comp_capacity;
}

}  // namespace

double expected_delay(const Scenario& scenario, UserId user, ModelKey model) {
  auto ref = resolve(scenario, user, model);
  return delay_of(scenario, ref.edge, scenario.model(ref.service, ref.model));
}

double qos(const Scenario& scenario, UserId user, ModelKey model) {
  auto ref = resolve(scenario, user, model);
  if (scenario.request_service(ref.request) != ref.service) return 0.0;
  const auto& u = scenario.requests()[ref.request];
  const auto& m = scenario.model(ref.service, ref.model);
  const double d = delay_of(scenario, ref.edge, m);
  return 0.5 * (accuracy_satisfaction(m.accuracy, u.accuracy_threshold) +
                delay_satisfaction(d, u.delay_threshold, scenario.delay_max()));
}

bool fully_satisfies(const Scenario& scenario, UserId user, ModelKey model) {
  auto ref = resolve(scenario, user, model);
  if (scenario.request_service(ref.request) != ref.service) return false;
  const auto& u = scenario.requests()[ref.request];
  const auto& m = scenario.model(ref.service, ref.model);
  return m.accuracy >= u.accuracy_threshold &&
         delay_of(scenario, ref.edge, m) <= u.delay_threshold;
}

QosTable::QosTable(const Scenario& scenario) {
  const std::size_t n = scenario.num_requests();
  values_.resize(n);
  satisfied_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& u = scenario.requests()[r];
    const std::size_t e = scenario.request_edge(r);
    const auto& models = scenario.services()[scenario.request_service(r)].models;
    values_[r].reserve(models.size());
    satisfied_[r].reserve(models.size());
    for (const auto& m : models) {
      const double d = delay_of(scenario, e, m);
      values_[r].push_back(
          0.5 * (accuracy_satisfaction(m.accuracy, u.accuracy_threshold) +
                 delay_satisfaction(d, u.delay_threshold, scenario.delay_max())));
      satisfied_[r].push_back(m.accuracy >= u.accuracy_threshold &&
                              d <= u.delay_threshold);
    }
  }
}

QosTable::QosTable(std::vector<std::vector<double>> values,
                   std::vector<std::vector<char>> satisfied)
    : values_(std::move(values)), satisfied_(std::move(satisfied)) {
  if (values_.size() != satisfied_.size()) {
    throw ValidationError("QosTable: values/satisfied size mismatch");
  }
}

double objective_value(const Scenario& scenario, const Schedule& schedule) {
  return objective_value(scenario, QosTable(scenario), schedule);
}

double objective_value(const Scenario& scenario, const QosTable& table,
                       const Schedule& schedule) {
  double total = 0.0;
  for (const auto& [user, model] : schedule.assigned) {
    if (!model) continue;
    auto r = scenario.request_index(user);
    if (!r) throw ValidationError("unknown user " + std::to_string(user));
    auto m = scenario.model_index(scenario.request_service(*r), *model);
    if (!m) {
      throw ValidationError("user " + std::to_string(user) +
                            " scheduled on a model of another service");
    }
    total += table.value(*r, *m);
  }
  return total;
}

std::string to_string(Constraint c) {
  switch (c) {
    case Constraint::kOneModelPerUser:
      return "one-model-per-user";
    case Constraint::kStorage:
      return "storage";
    case Constraint::kServedByPlaced:
      return "served-by-placed";
    case Constraint::kUnknownReference:
      return "unknown-reference";
  }
  return "?";
}

std::vector<Violation> validate(const Scenario& scenario,
                                const Placement& placement,
                                const Schedule& schedule) {
  std::vector<Violation> out;
  std::vector<std::int64_t> used(scenario.num_edges(), 0);

  for (const auto& p : placement.placed) {
    auto e = scenario.edge_index(p.edge);
    auto s = scenario.service_index(p.service);
    std::optional<std::size_t> m;
    if (s) m = scenario.model_index(*s, p.model);
    if (!e || !m) {
      out.push_back({Constraint::kUnknownReference, p.edge, std::nullopt,
                     "placement names unknown edge/service/model"});
      continue;
    }
    used[*e] += scenario.model(*s, *m).storage_cost;
  }
  for (std::size_t e = 0; e < scenario.num_edges(); ++e) {
    const auto& edge = scenario.edges()[e];
    if (used[e] > edge.storage_capacity) {
      out.push_back({Constraint::kStorage, edge.id, std::nullopt,
                     "storage " + std::to_string(used[e]) + " > capacity " +
                         std::to_string(edge.storage_capacity)});
    }
  }

  for (const auto& [user, model] : schedule.assigned) {
    auto r = scenario.request_index(user);
    if (!r) {
      out.push_back({Constraint::kUnknownReference, std::nullopt, user,
                     "schedule names unknown user"});
      continue;
    }
    if (!model) continue;
    const auto& u = scenario.requests()[*r];
    if (!scenario.model_index(scenario.request_service(*r), *model)) {
      out.push_back({Constraint::kServedByPlaced, u.edge, user,
                     "model " + std::to_string(*model) +
                         " does not implement the requested service"});
      continue;
    }
    if (!placement.placed.contains({u.edge, u.service, *model})) {
      out.push_back({Constraint::kServedByPlaced, u.edge, user,
                     "model " + std::to_string(*model) +
                         " is not placed on the covering edge"});
    }
  }
  return out;
}

}  // namespace pies
