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

// Reference implementations for tests. Everything here is written from the
// raw scenario fields, without QosTable or any solver code, and favours
// obviousness over speed.

#ifndef PIES_TESTS_ORACLES_HPP_
#define PIES_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "pies/model.hpp"
#include "pies/scenario_gen.hpp"

namespace oracle {

using namespace pies;

inline const UserRequest& find_user(const Scenario& sc, UserId id) {
  for (const auto& u : sc.requests()) {
    if (u.id == id) return u;
  }
  throw std::logic_error("no such user");
}

inline const EdgeCloud& find_edge(const Scenario& sc, EdgeId id) {
  for (const auto& e : sc.edges()) {
    if (e.id == id) return e;
  }
  throw std::logic_error("no such edge");
}

inline const ServiceModelSpec& find_model(const Scenario& sc, ServiceId s,
                                          ModelId m) {
  for (const auto& svc : sc.services()) {
    if (svc.id != s) continue;
    for (const auto& x : svc.models) {
      if (x.id == m) return x;
    }
  }
  throw std::logic_error("no such model");
}

inline int covered(const Scenario& sc, EdgeId e) {
  int n = 0;
  for (const auto& u : sc.requests()) n += u.edge == e ? 1 : 0;
  return n;
}

inline double q(const Scenario& sc, const UserRequest& u, ServiceId s,
                const ServiceModelSpec& m) {
  if (u.service != s) return 0.0;
  const auto& e = find_edge(sc, u.edge);
  const double n = covered(sc, u.edge);
  const double d = m.comm_cost * n / e.comm_capacity + m.comp_cost * n / e.comp_capacity;
  const double a = m.accuracy >= u.accuracy_threshold
                       ? 1.0
                       : std::max(0.0, 1.0 - (u.accuracy_threshold - m.accuracy));
  const double t = d <= u.delay_threshold
                       ? 1.0
                       : std::max(0.0, 1.0 - (d - u.delay_threshold) / sc.delay_max());
  return 0.5 * (a + t);
}

// sigma over any set of triples, feasible or not.
inline double sigma(const Scenario& sc, const std::vector<PlacedModel>& placed) {
  double total = 0.0;
  for (const auto& u : sc.requests()) {
    double best = 0.0;
    for (const auto& p : placed) {
      if (p.edge != u.edge || p.service != u.service) continue;
      best = std::max(best, q(sc, u, p.service, find_model(sc, p.service, p.model)));
    }
    total += best;
  }
  return total;
}

inline std::vector<PlacedModel> ground_set(const Scenario& sc) {
  std::vector<PlacedModel> all;
  for (const auto& e : sc.edges()) {
    for (const auto& s : sc.services()) {
      for (const auto& m : s.models) all.push_back({e.id, s.id, m.id});
    }
  }
  return all;
}

// Best sigma over every storage-feasible placement. Edges are independent,
// so each edge's subsets are enumerated on their own; every model of every
// service is a candidate, requested or not.
inline double brute_force_optimum(const Scenario& sc) {
  double total = 0.0;
  for (const auto& e : sc.edges()) {
    std::vector<PlacedModel> items;
    std::vector<std::int64_t> weight;
    for (const auto& s : sc.services()) {
      for (const auto& m : s.models) {
        items.push_back({e.id, s.id, m.id});
        weight.push_back(m.storage_cost);
      }
    }
    if (items.size() > 22) throw std::logic_error("too many items to enumerate");
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size()); ++mask) {
      std::int64_t used = 0;
      std::vector<PlacedModel> chosen;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (mask >> i & 1) {
          used += weight[i];
          chosen.push_back(items[i]);
        }
      }
      if (used > e.storage_capacity) continue;
      best = std::max(best, sigma(sc, chosen));
    }
    total += best;
  }
  return total;
}

// Small instances: 2 edges, 4 services with up to 3 models, 10 users,
// storage capacities 10..20 and storage costs 3..8 so that edges cannot hold
// every model.
inline GenParams small_params() {
  GenParams p;
  p.num_edges = 2;
  p.num_services = 4;
  p.models_per_service = {1, 3};
  p.num_users = 10;
  p.storage_capacity = {10, 20};
  p.storage_cost = {3, 8};
  return p;
}

// Random storage-feasible placement: each triple is kept with probability
// `keep` if it still fits.
inline Placement random_feasible_placement(const Scenario& sc, std::mt19937_64& rng,
                                           double keep = 0.5) {
  std::bernoulli_distribution coin(keep);
  Placement p;
  for (const auto& e : sc.edges()) {
    std::int64_t left = e.storage_capacity;
    for (const auto& s : sc.services()) {
      for (const auto& m : s.models) {
        if (coin(rng) && m.storage_cost <= left) {
          left -= m.storage_cost;
          p.placed.insert({e.id, s.id, m.id});
        }
      }
    }
  }
  return p;
}

}  // namespace oracle

#endif  // PIES_TESTS_ORACLES_HPP_
