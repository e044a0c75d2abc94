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

#include "pies/ann.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "pies/rng.hpp"
#include "pies/scenario_io.hpp"

namespace pies {

using nlohmann::json;

namespace {

// ceil that ignores representation noise such as 0.7 * 10 = 7.000000000000001.
std::int64_t ceil_count(double x) {
  return static_cast<std::int64_t>(std::ceil(x - 1e-9));
}

void need(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

std::string to_string(AnnModelType type) {
  switch (type) {
    case AnnModelType::kDnn:
      return "DNN";
    case AnnModelType::kPnn:
      return "PNN";
    case AnnModelType::kSnn:
      return "SNN";
  }
  return "?";
}

std::optional<AnnModelType> parse_ann_model_type(std::string_view text) {
  if (text == "DNN") return AnnModelType::kDnn;
  if (text == "PNN") return AnnModelType::kPnn;
  if (text == "SNN") return AnnModelType::kSnn;
  return std::nullopt;
}

void AnnArchitecture::check() const {
  need(layer_neurons.size() == layer_cycles.size(),
       "architecture: neuron and cycle vectors differ in length");
  need(layer_neurons.size() >= 2,
       "architecture: needs at least an input and an output layer");
  for (std::size_t i = 0; i < layer_neurons.size(); ++i) {
    need(layer_neurons[i] > 0 && layer_cycles[i] > 0,
         "architecture: entries must be positive");
  }
}

void AnnHyperparams::check() const {
  need(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0,1)");
  need(rho > 0.0 && rho < 1.0, "rho must lie in (0,1)");
  need(lambda_pnn > 0.0 && lambda_snn > 0.0, "accuracy exponents must be > 0");
  need(theta >= 0.0 && theta <= 1.0, "theta must lie in [0,1]");
}

DerivedModel derive_pnn(const AnnArchitecture& dnn, std::int64_t dnn_storage,
                        double dnn_accuracy, const AnnHyperparams& params,
                        std::uint64_t seed) {
  dnn.check();
  params.check();
  const std::size_t n = dnn.num_layers();
  const std::size_t hidden = n - 2;
  const auto keep_hidden = static_cast<std::size_t>(
      ceil_count(params.gamma * static_cast<double>(hidden)));

  // Choose which hidden layers survive, uniformly at random; order is kept.
  std::vector<std::size_t> hidden_idx(hidden);
  std::iota(hidden_idx.begin(), hidden_idx.end(), std::size_t{1});
  auto rng = make_stream(seed, 0x504e4e);  // "PNN"
  std::shuffle(hidden_idx.begin(), hidden_idx.end(), rng);
  hidden_idx.resize(keep_hidden);
  std::sort(hidden_idx.begin(), hidden_idx.end());

  std::vector<std::size_t> kept{0};
  kept.insert(kept.end(), hidden_idx.begin(), hidden_idx.end());
  kept.push_back(n - 1);

  DerivedModel out;
  for (std::size_t i : kept) {
    const bool output = i == n - 1;
    const auto neurons =
        output && !params.prune_output_layer
            ? dnn.layer_neurons[i]
            : ceil_count(params.gamma * static_cast<double>(dnn.layer_neurons[i]));
    out.arch.layer_neurons.push_back(neurons);
    out.arch.layer_cycles.push_back(dnn.layer_cycles[i]);
  }
  out.storage = ceil_count(params.gamma * static_cast<double>(dnn_storage));
  out.accuracy = std::pow(params.gamma, params.lambda_pnn) * dnn_accuracy;
  return out;
}

DerivedModel derive_snn(const AnnArchitecture& dnn, std::int64_t dnn_storage,
                        double dnn_accuracy, const AnnHyperparams& params) {
  dnn.check();
  params.check();
  const auto n = static_cast<double>(dnn.num_layers());
  const auto split = static_cast<std::size_t>(
      std::clamp<std::int64_t>(ceil_count(params.rho * n), 1,
                               static_cast<std::int64_t>(dnn.num_layers())));
  DerivedModel out;
  out.arch = dnn;
  out.split_index = split;
  out.storage = ceil_count(params.rho * static_cast<double>(dnn_storage));
  out.accuracy = std::pow(params.rho, params.lambda_snn) * dnn_accuracy;
  return out;
}

double user_bps(double comm_capacity, std::size_t covered_count,
                const AnnUserLink& link) {
  need(covered_count >= 1, "user_bps: edge covers no users");
  need(link.distance_max > 0.0, "user_bps: distance_max must be positive");
  need(link.distance >= 0.0 && link.distance <= link.distance_max,
       "user_bps: distance outside [0, distance_max]");
  const double share = comm_capacity / static_cast<double>(covered_count);
  return share *
         std::log2(1.0 + (link.distance_max - link.distance) / link.distance_max);
}

std::optional<double> ann_comm_delay(AnnModelType type,
                                     const AnnArchitecture& arch,
                                     std::optional<std::size_t> split_index,
                                     const AnnUserLink& link, double bps_u,
                                     std::size_t covered_count) {
  arch.check();
  if (!(bps_u > 0.0)) return std::nullopt;
  const auto first = static_cast<double>(arch.layer_neurons.front());
  const auto last = static_cast<double>(arch.layer_neurons.back());
  double delay = (first + last) / bps_u;
  if (type == AnnModelType::kSnn) {
    need(split_index && *split_index >= 1 && *split_index <= arch.num_layers(),
         "SNN needs a split index within the architecture");
    need(link.cloud_bps > 0.0, "SNN needs a positive cloud link rate");
    need(covered_count >= 1, "edge covers no users");
    const auto cut = static_cast<double>(arch.layer_neurons[*split_index - 1]);
    delay += (cut + last) /
             (link.cloud_bps / static_cast<double>(covered_count));
  }
  return delay;
}

double ann_comp_delay(AnnModelType type, const AnnArchitecture& arch,
                      std::optional<std::size_t> split_index,
                      double comp_capacity, std::size_t covered_count) {
  arch.check();
  need(comp_capacity > 0.0, "comp_capacity must be positive");
  std::size_t layers = arch.num_layers();
  if (type == AnnModelType::kSnn) {
    need(split_index && *split_index >= 1 && *split_index <= layers,
         "SNN needs a split index within the architecture");
    layers = *split_index;
  }
  double cycles = 0.0;
  for (std::size_t i = 0; i < layers; ++i) {
    cycles += static_cast<double>(arch.layer_neurons[i]) *
              static_cast<double>(arch.layer_cycles[i]);
  }
  return cycles / (comp_capacity / static_cast<double>(covered_count));
}

void AnnScenario::check() const {
  params.hyper.check();
  need(params.dist_max > 0.0, "dist_max must be positive");
  need(params.cloud_bps > 0.0, "cloud_bps must be positive");
  need(models.size() == base.num_services(), "ann models: service count mismatch");
  for (std::size_t s = 0; s < models.size(); ++s) {
    need(models[s].size() == base.services()[s].models.size(),
         "ann models: model count mismatch");
    for (const auto& m : models[s]) {
      m.arch.check();
      if (m.type == AnnModelType::kSnn) {
        need(m.split_index && *m.split_index >= 1 &&
                 *m.split_index <= m.arch.num_layers(),
             "SNN needs a split index within the architecture");
      }
    }
  }
  need(distance.size() == base.num_requests(), "distance count mismatch");
  for (double d : distance) {
    need(d >= 0.0 && d <= params.dist_max, "distance outside [0, dist_max]");
  }
}

AnnScenario generate_ann(const AnnGenParams& params, std::uint64_t seed) {
  GenParams gp = params.base;
  gp.models_per_service = {1, 1};
  const Scenario plain = generate(gp, seed);

  auto rng = make_stream(seed, 5);
  auto uniform = [&](const Range<int>& r) {
    return std::uniform_int_distribution<int>(r.low, r.high)(rng);
  };
  const auto& hyper = params.ann.hyper;

  std::vector<Service> services;
  std::vector<std::vector<AnnModelInfo>> infos;
  for (const auto& svc : plain.services()) {
    const auto& base_model = svc.models.front();
    AnnArchitecture dnn;
    const int layers = uniform(params.layers);
    for (int i = 0; i < layers; ++i) {
      dnn.layer_neurons.push_back(uniform(params.neurons));
      dnn.layer_cycles.push_back(uniform(params.cycles));
    }
    const std::uint64_t prune_seed = rng();
    const auto pnn = derive_pnn(dnn, base_model.storage_cost,
                                base_model.accuracy, hyper, prune_seed);
    const auto snn = derive_snn(dnn, base_model.storage_cost,
                                base_model.accuracy, hyper);

    // The base cost fields carry bits per request and edge-side cycles; the
    // ANN delay functions are what the solvers actually see.
    auto spec = [](ModelId id, const AnnArchitecture& a,
                   std::optional<std::size_t> split, std::int64_t storage,
                   double accuracy) {
      const std::size_t layers_on_edge = split.value_or(a.num_layers());
      double cycles = 0.0;
      for (std::size_t i = 0; i < layers_on_edge; ++i) {
        cycles += static_cast<double>(a.layer_neurons[i] * a.layer_cycles[i]);
      }
      return ServiceModelSpec{
          id, accuracy,
          static_cast<double>(a.layer_neurons.front() + a.layer_neurons.back()),
          cycles, storage};
    };
    Service out{svc.id, {}};
    out.models.push_back(spec(1, dnn, std::nullopt, base_model.storage_cost,
                              base_model.accuracy));
    out.models.push_back(spec(2, pnn.arch, std::nullopt, pnn.storage, pnn.accuracy));
    out.models.push_back(
        spec(3, snn.arch, snn.split_index, snn.storage, snn.accuracy));
    services.push_back(std::move(out));
    infos.push_back({{AnnModelType::kDnn, dnn, std::nullopt},
                     {AnnModelType::kPnn, pnn.arch, std::nullopt},
                     {AnnModelType::kSnn, snn.arch, snn.split_index}});
  }

  std::uniform_real_distribution<double> dist(0.0, params.ann.dist_max);
  std::vector<double> distance;
  for (std::size_t r = 0; r < plain.num_requests(); ++r) {
    distance.push_back(dist(rng));
  }

  AnnScenario out{
      Scenario(plain.edges(), std::move(services), plain.requests(),
               plain.delay_max(), plain.provenance()),
      std::move(infos), std::move(distance), params.ann};
  out.check();
  return out;
}

std::optional<double> ann_expected_delay(const AnnScenario& sc,
                                         std::size_t request,
                                         std::size_t model_idx) {
  const std::size_t e = sc.base.request_edge(request);
  const std::size_t s = sc.base.request_service(request);
  const auto& edge = sc.base.edges()[e];
  const std::size_t n = sc.base.covered_count(e);
  const auto& info = sc.models[s][model_idx];
  const AnnUserLink link{sc.distance[request], sc.params.dist_max,
                         sc.params.cloud_bps};
  const double bps = user_bps(edge.comm_capacity, n, link);
  auto comm = ann_comm_delay(info.type, info.arch, info.split_index, link, bps, n);
  if (!comm) return std::nullopt;
  return *comm + ann_comp_delay(info.type, info.arch, info.split_index,
                                edge.comp_capacity, n);
}

QosTable ann_qos_table(const AnnScenario& sc, double theta) {
  need(theta >= 0.0 && theta <= 1.0, "theta must lie in [0,1]");
  const auto& base = sc.base;
  std::vector<std::vector<double>> values(base.num_requests());
  std::vector<std::vector<char>> satisfied(base.num_requests());
  for (std::size_t r = 0; r < base.num_requests(); ++r) {
    const auto& u = base.requests()[r];
    const std::size_t s = base.request_service(r);
    for (std::size_t m = 0; m < base.services()[s].models.size(); ++m) {
      const auto& spec = base.model(s, m);
      const auto delay = ann_expected_delay(sc, r, m);
      const double a = accuracy_satisfaction(spec.accuracy, u.accuracy_threshold);
      const double d = delay ? delay_satisfaction(*delay, u.delay_threshold,
                                                  base.delay_max())
                             : 0.0;
      const bool snn = sc.models[s][m].type == AnnModelType::kSnn;
      const double q = 0.5 * (a + d);
      values[r].push_back(snn ? q - theta * q : q);
      satisfied[r].push_back(spec.accuracy >= u.accuracy_threshold && delay &&
                             *delay <= u.delay_threshold &&
                             !(snn && theta > 0.0));
    }
  }
  return QosTable(std::move(values), std::move(satisfied));
}

double ann_objective(const AnnScenario& sc, const Schedule& schedule,
                     double theta) {
  return objective_value(sc.base, ann_qos_table(sc, theta), schedule);
}

json ann_scenario_to_json(const AnnScenario& sc) {
  json doc = scenario_to_json(sc.base);
  auto& services = doc["services"];
  for (std::size_t s = 0; s < sc.models.size(); ++s) {
    for (std::size_t m = 0; m < sc.models[s].size(); ++m) {
      const auto& info = sc.models[s][m];
      json block{{"type", to_string(info.type)},
                 {"layer_neurons", info.arch.layer_neurons},
                 {"layer_cycles", info.arch.layer_cycles}};
      if (info.split_index) block["split_index"] = *info.split_index;
      services[s]["models"][m]["ann"] = std::move(block);
    }
  }
  for (std::size_t r = 0; r < sc.distance.size(); ++r) {
    doc["requests"][r]["distance"] = sc.distance[r];
  }
  const auto& h = sc.params.hyper;
  doc["ann_params"] = {{"gamma", h.gamma},
                       {"rho", h.rho},
                       {"lambda_pnn", h.lambda_pnn},
                       {"lambda_snn", h.lambda_snn},
                       {"theta", h.theta},
                       {"prune_output_layer", h.prune_output_layer},
                       {"dist_max", sc.params.dist_max},
                       {"cloud_bps", sc.params.cloud_bps}};
  return doc;
}

AnnScenario ann_scenario_from_json(const json& doc) {
  using namespace json_field;
  AnnScenario out{scenario_from_json(doc), {}, {}, {}};
  const auto& base = out.base;

  const auto& jp = at(doc, "", "ann_params");
  auto& h = out.params.hyper;
  h.gamma = number(jp, "ann_params", "gamma");
  h.rho = number(jp, "ann_params", "rho");
  h.lambda_pnn = number(jp, "ann_params", "lambda_pnn");
  h.lambda_snn = number(jp, "ann_params", "lambda_snn");
  h.theta = number(jp, "ann_params", "theta");
  if (auto it = jp.find("prune_output_layer"); it != jp.end()) {
    if (!it->is_boolean()) {
      throw ParseError("ann_params.prune_output_layer", "expected a boolean");
    }
    h.prune_output_layer = it->get<bool>();
  }
  out.params.dist_max = number(jp, "ann_params", "dist_max");
  out.params.cloud_bps = number(jp, "ann_params", "cloud_bps");

  auto int_vector = [](const json& v, const std::string& path) {
    if (!v.is_array()) throw ParseError(path, "expected an array");
    std::vector<std::int64_t> xs;
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw ParseError(path, "expected integers");
      xs.push_back(x.get<std::int64_t>());
    }
    return xs;
  };

  // File order may differ from the canonical order of the base scenario.
  std::map<std::pair<ServiceId, ModelId>, AnnModelInfo> infos;
  const auto& jservices = array(doc, "", "services");
  for (std::size_t i = 0; i < jservices.size(); ++i) {
    const auto sp = join("", "services", i);
    const auto sid = static_cast<ServiceId>(integer(jservices[i], sp, "id"));
    const auto& jmodels = array(jservices[i], sp, "models");
    for (std::size_t k = 0; k < jmodels.size(); ++k) {
      const auto mp = join(sp, "models", k);
      const auto mid = static_cast<ModelId>(integer(jmodels[k], mp, "id"));
      const auto& block = at(jmodels[k], mp, "ann");
      const auto bp = join(mp, "ann");
      const auto& jtype = at(block, bp, "type");
      auto type = jtype.is_string()
                      ? parse_ann_model_type(jtype.get<std::string>())
                      : std::nullopt;
      if (!type) throw ParseError(join(bp, "type"), "expected DNN, PNN or SNN");
      AnnModelInfo info{*type,
                        {int_vector(at(block, bp, "layer_neurons"),
                                    join(bp, "layer_neurons")),
                         int_vector(at(block, bp, "layer_cycles"),
                                    join(bp, "layer_cycles"))},
                        std::nullopt};
      if (block.contains("split_index")) {
        const auto v = integer(block, bp, "split_index");
        if (v < 1) throw ParseError(join(bp, "split_index"), "must be >= 1");
        info.split_index = static_cast<std::size_t>(v);
      }
      infos[{sid, mid}] = std::move(info);
    }
  }
  std::map<UserId, double> distances;
  const auto& jrequests = array(doc, "", "requests");
  for (std::size_t i = 0; i < jrequests.size(); ++i) {
    const auto rp = join("", "requests", i);
    distances[static_cast<UserId>(integer(jrequests[i], rp, "id"))] =
        number(jrequests[i], rp, "distance");
  }

  for (const auto& svc : base.services()) {
    std::vector<AnnModelInfo> row;
    for (const auto& m : svc.models) row.push_back(infos.at({svc.id, m.id}));
    out.models.push_back(std::move(row));
  }
  for (const auto& u : base.requests()) out.distance.push_back(distances.at(u.id));
  out.check();
  return out;
}

AnnScenario load_ann(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError("$", e.what());
  }
  return ann_scenario_from_json(doc);
}

void save_ann(const AnnScenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << ann_scenario_to_json(sc).dump(2) << "\n";
}

}  // namespace pies
