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

#include "pies/scenario_io.hpp"

#include <fstream>
#include <sstream>

namespace pies {

using nlohmann::json;

namespace json_field {

std::string join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

std::string join(const std::string& path, const char* key, std::size_t i) {
  return join(path, key) + "[" + std::to_string(i) + "]";
}

const json& at(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw ParseError(path.empty() ? "$" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(join(path, key), "missing key");
  return *it;
}

double number(const json& obj, const std::string& path, const char* key) {
  const auto& v = at(obj, path, key);
  if (!v.is_number()) throw ParseError(join(path, key), "expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& obj, const std::string& path,
                     const char* key) {
  const auto& v = at(obj, path, key);
  if (!v.is_number_integer()) {
    throw ParseError(join(path, key), "expected an integer");
  }
  return v.get<std::int64_t>();
}

const json& array(const json& obj, const std::string& path, const char* key) {
  const auto& v = at(obj, path, key);
  if (!v.is_array()) throw ParseError(join(path, key), "expected an array");
  return v;
}

}  // namespace json_field

namespace {

int id_of(const json& obj, const std::string& path, const char* key = "id") {
  return static_cast<int>(json_field::integer(obj, path, key));
}

}  // namespace

json scenario_to_json(const Scenario& scenario) {
  json doc;
  doc["delay_max"] = scenario.delay_max();
  doc["edges"] = json::array();
  for (const auto& e : scenario.edges()) {
    doc["edges"].push_back({{"id", e.id},
                            {"comm_capacity", e.comm_capacity},
                            {"comp_capacity", e.comp_capacity},
                            {"storage_capacity", e.storage_capacity}});
  }
  doc["services"] = json::array();
  for (const auto& s : scenario.services()) {
    json models = json::array();
    for (const auto& m : s.models) {
      models.push_back({{"id", m.id},
                        {"accuracy", m.accuracy},
                        {"comm_cost", m.comm_cost},
                        {"comp_cost", m.comp_cost},
                        {"storage_cost", m.storage_cost}});
    }
    doc["services"].push_back({{"id", s.id}, {"models", std::move(models)}});
  }
  doc["requests"] = json::array();
  for (const auto& u : scenario.requests()) {
    doc["requests"].push_back({{"id", u.id},
                               {"edge", u.edge},
                               {"service", u.service},
                               {"accuracy_threshold", u.accuracy_threshold},
                               {"delay_threshold", u.delay_threshold}});
  }
  if (const auto& p = scenario.provenance()) {
    doc["metadata"] = {{"seed", p->seed},
                       {"generator", p->generator},
                       {"exp_param_mode", p->exp_param_mode}};
  }
  return doc;
}

Scenario scenario_from_json(const json& doc) {
  using namespace json_field;
  const double delay_max = number(doc, "", "delay_max");

  std::vector<EdgeCloud> edges;
  const auto& jedges = array(doc, "", "edges");
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const auto p = join("", "edges", i);
    const auto& j = jedges[i];
    edges.push_back({id_of(j, p), number(j, p, "comm_capacity"),
                     number(j, p, "comp_capacity"),
                     integer(j, p, "storage_capacity")});
  }

  std::vector<Service> services;
  const auto& jservices = array(doc, "", "services");
  for (std::size_t i = 0; i < jservices.size(); ++i) {
    const auto p = join("", "services", i);
    const auto& j = jservices[i];
    Service s{id_of(j, p), {}};
    const auto& jmodels = array(j, p, "models");
    for (std::size_t k = 0; k < jmodels.size(); ++k) {
      const auto mp = join(p, "models", k);
      const auto& jm = jmodels[k];
      s.models.push_back({id_of(jm, mp), number(jm, mp, "accuracy"),
                          number(jm, mp, "comm_cost"),
                          number(jm, mp, "comp_cost"),
                          integer(jm, mp, "storage_cost")});
    }
    services.push_back(std::move(s));
  }

  std::vector<UserRequest> requests;
  const auto& jrequests = array(doc, "", "requests");
  for (std::size_t i = 0; i < jrequests.size(); ++i) {
    const auto p = join("", "requests", i);
    const auto& j = jrequests[i];
    requests.push_back({id_of(j, p), id_of(j, p, "edge"),
                        id_of(j, p, "service"),
                        number(j, p, "accuracy_threshold"),
                        number(j, p, "delay_threshold")});
  }

  std::optional<Provenance> provenance;
  if (auto it = doc.find("metadata"); it != doc.end()) {
    const auto& m = *it;
    const auto& seed = at(m, "metadata", "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
      throw ParseError("metadata.seed", "expected an integer");
    }
    const auto& gen = at(m, "metadata", "generator");
    const auto& mode = at(m, "metadata", "exp_param_mode");
    if (!gen.is_string()) throw ParseError("metadata.generator", "expected a string");
    if (!mode.is_string()) throw ParseError("metadata.exp_param_mode", "expected a string");
    provenance = Provenance{seed.get<std::uint64_t>(), gen.get<std::string>(),
                            mode.get<std::string>()};
  }

  return Scenario(std::move(edges), std::move(services), std::move(requests),
                  delay_max, std::move(provenance));
}

std::string dump_scenario(const Scenario& scenario) {
  return scenario_to_json(scenario).dump(2) + "\n";
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("$", e.what());
  }
  return scenario_from_json(doc);
}

Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void save(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_scenario(scenario);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace pies
