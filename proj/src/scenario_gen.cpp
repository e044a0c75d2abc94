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

#include "pies/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "pies/rng.hpp"
#include "pies/scenario_io.hpp"

namespace pies {

using nlohmann::json;

std::string to_string(ExpParamMode mode) {
  return mode == ExpParamMode::kRate ? "rate" : "scale";
}

std::optional<ExpParamMode> parse_exp_param_mode(std::string_view text) {
  if (text == "rate" || text == "RATE") return ExpParamMode::kRate;
  if (text == "scale" || text == "SCALE") return ExpParamMode::kScale;
  return std::nullopt;
}

void GenParams::check() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("GenParams: ") + what);
  };
  auto ordered = [&](const Range<int>& r, const char* name, int floor) {
    need(r.low <= r.high, name);
    need(r.low >= floor, name);
  };
  need(num_edges >= 1, "num_edges must be >= 1");
  need(num_services >= 1, "num_services must be >= 1");
  need(num_users >= 0, "num_users must be >= 0");
  ordered(models_per_service, "models_per_service range invalid", 1);
  ordered(comm_capacity, "comm_capacity range invalid", 1);
  ordered(comp_capacity, "comp_capacity range invalid", 1);
  ordered(storage_capacity, "storage_capacity range invalid", 0);
  ordered(comm_cost, "comm_cost range invalid", 1);
  ordered(comp_cost, "comp_cost range invalid", 1);
  ordered(storage_cost, "storage_cost range invalid", 0);
  need(accuracy_sd >= 0.0, "accuracy_sd must be >= 0");
  need(alpha_exp_param > 0.0, "alpha_exp_param must be > 0");
  need(delta_exp_param > 0.0, "delta_exp_param must be > 0");
  need(delay_max > 0.0, "delay_max must be > 0");
}

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "num_edges",        "num_services",    "models_per_service",
      "num_users",        "comm_capacity",   "comp_capacity",
      "storage_capacity", "comm_cost",       "comp_cost",
      "storage_cost",     "accuracy_mean",   "accuracy_sd",
      "alpha_exp_param",  "delta_exp_param", "delay_max",
      "exp_param_mode"};
  return keys;
}

Range<int> range_from(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer()) {
    throw ParseError(key, "expected [low, high] integers");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

double exp_rate(double param, ExpParamMode mode) {
  return mode == ExpParamMode::kRate ? param : 1.0 / param;
}

}  // namespace

GenParams gen_params_from_json(const json& doc, GenParams p) {
  if (!doc.is_object()) throw ParseError("$", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys().contains(key)) throw ParseError(key, "unknown key");
  }
  auto integer = [&](const char* key, int& out) {
    if (auto it = doc.find(key); it != doc.end()) {
      if (!it->is_number_integer()) throw ParseError(key, "expected an integer");
      out = it->get<int>();
    }
  };
  auto number = [&](const char* key, double& out) {
    if (auto it = doc.find(key); it != doc.end()) {
      if (!it->is_number()) throw ParseError(key, "expected a number");
      out = it->get<double>();
    }
  };
  auto range = [&](const char* key, Range<int>& out) {
    if (auto it = doc.find(key); it != doc.end()) out = range_from(*it, key);
  };
  integer("num_edges", p.num_edges);
  integer("num_services", p.num_services);
  integer("num_users", p.num_users);
  range("models_per_service", p.models_per_service);
  range("comm_capacity", p.comm_capacity);
  range("comp_capacity", p.comp_capacity);
  range("storage_capacity", p.storage_capacity);
  range("comm_cost", p.comm_cost);
  range("comp_cost", p.comp_cost);
  range("storage_cost", p.storage_cost);
  number("accuracy_mean", p.accuracy_mean);
  number("accuracy_sd", p.accuracy_sd);
  number("alpha_exp_param", p.alpha_exp_param);
  number("delta_exp_param", p.delta_exp_param);
  number("delay_max", p.delay_max);
  if (auto it = doc.find("exp_param_mode"); it != doc.end()) {
    auto mode = it->is_string() ? parse_exp_param_mode(it->get<std::string>())
                                : std::nullopt;
    if (!mode) throw ParseError("exp_param_mode", "expected \"rate\" or \"scale\"");
    p.exp_param_mode = *mode;
  }
  p.check();
  return p;
}

json gen_params_to_json(const GenParams& p) {
  auto r = [](const Range<int>& x) { return json::array({x.low, x.high}); };
  return {{"num_edges", p.num_edges},
          {"num_services", p.num_services},
          {"models_per_service", r(p.models_per_service)},
          {"num_users", p.num_users},
          {"comm_capacity", r(p.comm_capacity)},
          {"comp_capacity", r(p.comp_capacity)},
          {"storage_capacity", r(p.storage_capacity)},
          {"comm_cost", r(p.comm_cost)},
          {"comp_cost", r(p.comp_cost)},
          {"storage_cost", r(p.storage_cost)},
          {"accuracy_mean", p.accuracy_mean},
          {"accuracy_sd", p.accuracy_sd},
          {"alpha_exp_param", p.alpha_exp_param},
          {"delta_exp_param", p.delta_exp_param},
          {"delay_max", p.delay_max},
          {"exp_param_mode", to_string(p.exp_param_mode)}};
}

Scenario generate(const GenParams& params, std::uint64_t seed) {
  params.check();
  auto uniform = [](std::mt19937_64& g, const Range<int>& r) {
    return std::uniform_int_distribution<int>(r.low, r.high)(g);
  };

  auto edge_rng = make_stream(seed, 1);
  std::vector<EdgeCloud> edges;
  for (int e = 1; e <= params.num_edges; ++e) {
    const double k = uniform(edge_rng, params.comm_capacity);
    const double w = uniform(edge_rng, params.comp_capacity);
    const int r = uniform(edge_rng, params.storage_capacity);
    edges.push_back({e, k, w, r});
  }

  auto service_rng = make_stream(seed, 2);
  std::normal_distribution<double> accuracy(params.accuracy_mean,
                                            params.accuracy_sd);
  std::vector<Service> services;
  for (int s = 1; s <= params.num_services; ++s) {
    Service svc{s, {}};
    const int count = uniform(service_rng, params.models_per_service);
    for (int m = 1; m <= count; ++m) {
      const double a = std::clamp(accuracy(service_rng), 0.0, 1.0);
      const double k = uniform(service_rng, params.comm_cost);
      const double w = uniform(service_rng, params.comp_cost);
      const int r = uniform(service_rng, params.storage_cost);
      svc.models.push_back({m, a, k, w, r});
    }
    services.push_back(std::move(svc));
  }

  auto request_rng = make_stream(seed, 3);
  std::uniform_int_distribution<int> pick_service(1, params.num_services);
  std::uniform_int_distribution<int> pick_edge(1, params.num_edges);
  std::exponential_distribution<double> eps(
      exp_rate(params.alpha_exp_param, params.exp_param_mode));
  std::exponential_distribution<double> delta(
      exp_rate(params.delta_exp_param, params.exp_param_mode));
  std::vector<UserRequest> requests;
  for (int u = 1; u <= params.num_users; ++u) {
    const int s = pick_service(request_rng);
    const int e = pick_edge(request_rng);
    const double alpha = 1.0 - std::clamp(eps(request_rng), 0.0, 1.0);
    const double d = std::clamp(delta(request_rng), 0.0, params.delay_max);
    requests.push_back({u, e, s, alpha, d});
  }

  return Scenario(std::move(edges), std::move(services), std::move(requests),
                  params.delay_max,
                  Provenance{seed, kGeneratorVersion,
                             to_string(params.exp_param_mode)});
}

Scenario real_world_fixture(std::uint64_t seed, int num_requests) {
  FixtureParams p;
  p.num_requests = num_requests;
  return real_world_fixture(seed, p);
}

Scenario real_world_fixture(std::uint64_t seed, const FixtureParams& p) {
  if (p.num_requests < 1) throw ValidationError("fixture needs >= 1 request");
  const double n = p.num_requests;

  std::vector<EdgeCloud> edges{{1, p.comm_capacity, p.comp_capacity, 1}};
  // k n / K = comm delay and w n / W = tabulated computation delay.
  const double comm_cost = p.comm_delay_seconds * p.comm_capacity / n;
  Service service{1, {}};
  for (std::size_t i = 0; i < kFixtureModels.size(); ++i) {
    const auto& fm = kFixtureModels[i];
    service.models.push_back({static_cast<ModelId>(i + 1), fm.accuracy,
                              comm_cost,
                              fm.comp_delay_seconds * p.comp_capacity / n, 1});
  }

  auto rng = make_stream(seed, 4);
  std::exponential_distribution<double> eps(p.alpha_rate);
  std::normal_distribution<double> delta(p.delta_mean, p.delta_sd);
  std::vector<UserRequest> requests;
  for (int u = 1; u <= p.num_requests; ++u) {
    const double alpha = 1.0 - std::clamp(eps(rng), 0.0, 1.0);
    const double d = std::clamp(delta(rng), 0.0, p.delay_max);
    requests.push_back({u, 1, 1, alpha, d});
  }
  return Scenario(std::move(edges), {std::move(service)}, std::move(requests),
                  p.delay_max,
                  Provenance{seed, kGeneratorVersion, "rate"});
}

}  // namespace pies
