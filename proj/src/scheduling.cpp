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

#include "pies/scheduling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <utility>

namespace pies {

namespace {

// (edge index, service index) -> placed model indices, ascending. Triples that
// reference unknown entities are ignored; they cannot serve anybody.
using PlacedIndex = std::map<std::pair<std::size_t, std::size_t>,
                             std::vector<std::size_t>>;

PlacedIndex index_placement(const Scenario& sc, const Placement& placement) {
  PlacedIndex idx;
  for (const auto& p : placement.placed) {
    auto e = sc.edge_index(p.edge);
    auto s = sc.service_index(p.service);
    if (!e || !s) continue;
    auto m = sc.model_index(*s, p.model);
    if (!m) continue;
    idx[{*e, *s}].push_back(*m);
  }
  for (auto& [_, models] : idx) std::sort(models.begin(), models.end());
  return idx;
}

const std::vector<std::size_t>* placed_for(const Scenario& sc,
                                           const PlacedIndex& idx,
                                           std::size_t r) {
  auto it = idx.find({sc.request_edge(r), sc.request_service(r)});
  return it == idx.end() ? nullptr : &it->second;
}

// Best placed model for request r, lowest index on ties.
std::optional<std::size_t> best_model(const QosTable& table, std::size_t r,
                                      const std::vector<std::size_t>& models) {
  std::optional<std::size_t> best;
  for (std::size_t m : models) {
    if (!best || table.value(r, m) > table.value(r, *best)) best = m;
  }
  return best;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

}  // namespace

Schedule oms(const Scenario& scenario, const Placement& placement) {
  return oms(scenario, QosTable(scenario), placement);
}

Schedule oms(const Scenario& scenario, const QosTable& table,
             const Placement& placement) {
  const auto idx = index_placement(scenario, placement);
  Schedule schedule;
  for (std::size_t r = 0; r < scenario.num_requests(); ++r) {
    const auto& u = scenario.requests()[r];
    const auto* models = placed_for(scenario, idx, r);
    if (models == nullptr) {
      schedule.assigned.emplace(u.id, std::nullopt);
      continue;
    }
    const std::size_t m = *best_model(table, r, *models);
    schedule.assigned.emplace(
        u.id, scenario.model(scenario.request_service(r), m).id);
  }
  return schedule;
}

double sigma_u(const Scenario& scenario, UserId user, const Placement& placed) {
  return sigma_u(scenario, QosTable(scenario), user, placed);
}

double sigma_u(const Scenario& scenario, const QosTable& table, UserId user,
               const Placement& placed) {
  auto r = scenario.request_index(user);
  if (!r) throw ValidationError("unknown user " + std::to_string(user));
  const auto idx = index_placement(scenario, placed);
  const auto* models = placed_for(scenario, idx, *r);
  double best = 0.0;
  if (models != nullptr) {
    for (std::size_t m : *models) best = std::max(best, table.value(*r, m));
  }
  return best;
}

double sigma(const Scenario& scenario, const Placement& placed) {
  return sigma(scenario, QosTable(scenario), placed);
}

double sigma(const Scenario& scenario, const QosTable& table,
             const Placement& placed) {
  const auto idx = index_placement(scenario, placed);
  double total = 0.0;
  for (std::size_t r = 0; r < scenario.num_requests(); ++r) {
    const auto* models = placed_for(scenario, idx, r);
    if (models == nullptr) continue;
    double best = 0.0;
    for (std::size_t m : *models) best = std::max(best, table.value(r, m));
    total += best;
  }
  return total;
}

AuxiliaryMultigraph build_auxiliary_multigraph(const Scenario& scenario,
                                               const QosTable& table,
                                               const Placement& placement) {
  const auto idx = index_placement(scenario, placement);
  AuxiliaryMultigraph g;
  std::vector<std::pair<std::size_t, const std::vector<std::size_t>*>> users;
  for (std::size_t r = 0; r < scenario.num_requests(); ++r) {
    if (const auto* models = placed_for(scenario, idx, r)) {
      users.emplace_back(r, models);
    }
  }
  const std::size_t n = users.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& u = scenario.requests()[users[i].first];
    g.user_nodes.push_back(u.id);
    g.service_nodes.push_back(u.service);
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.links.push_back({0, 1 + i, 0.0, 0, true});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto [r, models] = users[i];
    const std::size_t s = scenario.request_service(r);
    for (std::size_t m : *models) {
      g.links.push_back({1 + i, 1 + n + i, table.value(r, m),
                         scenario.model(s, m).id, false});
    }
  }
  return g;
}

double mst_oracle(const Scenario& scenario, const Placement& placement) {
  return mst_oracle(scenario, QosTable(scenario), placement);
}

double mst_oracle(const Scenario& scenario, const QosTable& table,
                  const Placement& placement) {
  const auto g = build_auxiliary_multigraph(scenario, table, placement);
  std::vector<std::size_t> order(g.links.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Minimum spanning tree on negated weights.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return -g.links[a].weight < -g.links[b].weight;
  });
  DisjointSets sets(g.num_nodes());
  double total = 0.0;
  for (std::size_t i : order) {
    const auto& link = g.links[i];
    if (sets.unite(link.a, link.b) && !link.root_link) total += link.weight;
  }
  return total;
}

}  // namespace pies
