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

#include "pies/placement.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <utility>

#include "pies/rng.hpp"
#include "pies/scheduling.hpp"

namespace pies {

namespace {

using Clock = std::chrono::steady_clock;

// (service index, model index)
using SmIndex = std::pair<std::size_t, std::size_t>;

struct EdgePlacement {
  std::size_t edge;
  std::vector<SmIndex> models;
};

Placement to_placement(const Scenario& sc,
                       const std::vector<EdgePlacement>& per_edge) {
  Placement p;
  for (const auto& ep : per_edge) {
    const EdgeId e = sc.edges()[ep.edge].id;
    for (auto [s, m] : ep.models) {
      p.placed.insert({e, sc.services()[s].id, sc.model(s, m).id});
    }
  }
  return p;
}

SolveReport finish(Algorithm algorithm, const Scenario& sc,
                   const QosTable& table, Placement placement,
                   std::optional<Schedule> schedule, Clock::time_point start) {
  SolveReport report;
  report.algorithm = algorithm;
  report.schedule = schedule ? std::move(*schedule) : oms(sc, table, placement);
  report.placement = std::move(placement);
  report.objective = objective_value(sc, table, report.schedule);
  report.placed_count = report.placement.placed.size();
  report.scheduled_count = report.schedule.scheduled_count();
  report.runtime_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

// Covered requests of an edge grouped by requested service, services in index
// order.
std::map<std::size_t, std::vector<std::size_t>> users_by_service(
    const Scenario& sc, std::size_t edge) {
  std::map<std::size_t, std::vector<std::size_t>> out;
  for (std::size_t r : sc.covered_requests(edge)) {
    out[sc.request_service(r)].push_back(r);
  }
  return out;
}

std::vector<SmIndex> all_service_models(const Scenario& sc) {
  std::vector<SmIndex> out;
  out.reserve(sc.num_service_models());
  for (std::size_t s = 0; s < sc.num_services(); ++s) {
    for (std::size_t m = 0; m < sc.services()[s].models.size(); ++m) {
      out.emplace_back(s, m);
    }
  }
  return out;
}

// --- EXACT -----------------------------------------------------------------

std::vector<SmIndex> exact_edge(const Scenario& sc, const QosTable& table,
                                std::size_t edge, const ExactOptions& opt) {
  const auto groups = users_by_service(sc, edge);
  if (groups.empty()) return {};

  struct Group {
    std::size_t service;
    std::vector<std::int64_t> weight;  // by subset mask
    std::vector<double> value;
  };
  std::vector<Group> gs;
  gs.reserve(groups.size());
  std::int64_t total_weight = 0;

  for (const auto& [s, users] : groups) {
    const auto& models = sc.services()[s].models;
    const std::size_t n = models.size();
    if (n > std::min<std::size_t>(opt.max_models_per_service, 31)) {
      throw InstanceTooLarge("service " + std::to_string(sc.services()[s].id) +
                             " has " + std::to_string(n) +
                             " models at edge " +
                             std::to_string(sc.edges()[edge].id) +
                             "; exact cap is " +
                             std::to_string(opt.max_models_per_service));
    }
    Group g{s, std::vector<std::int64_t>(std::size_t{1} << n, 0),
            std::vector<double>(std::size_t{1} << n, 0.0)};
    for (std::size_t mask = 1; mask < g.weight.size(); ++mask) {
      const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
      g.weight[mask] = g.weight[mask & (mask - 1)] + models[low].storage_cost;
      double v = 0.0;
      for (std::size_t r : users) {
        double best = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
          if ((mask >> m) & 1U) best = std::max(best, table.value(r, m));
        }
        v += best;
      }
      g.value[mask] = v;
    }
    for (const auto& m : models) total_weight += m.storage_cost;
    gs.push_back(std::move(g));
  }

  const std::int64_t capacity =
      std::min(sc.edges()[edge].storage_capacity, total_weight);
  const auto cells = static_cast<std::size_t>(capacity + 1);
  if (cells * gs.size() > opt.max_table_cells) {
    throw InstanceTooLarge("knapsack table at edge " +
                           std::to_string(sc.edges()[edge].id) + " needs " +
                           std::to_string(cells * gs.size()) + " cells");
  }

  // Multiple-choice knapsack: one subset per service group.
  std::vector<double> dp(cells, 0.0);
  std::vector<std::vector<std::uint32_t>> choice(gs.size());
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    const auto& g = gs[gi];
    std::vector<double> next = dp;
    auto& pick = choice[gi];
    pick.assign(cells, 0);
    for (std::size_t mask = 1; mask < g.weight.size(); ++mask) {
      const auto w = g.weight[mask];
      if (w > capacity) continue;
      for (auto c = w; c <= capacity; ++c) {
        const double cand = dp[static_cast<std::size_t>(c - w)] + g.value[mask];
        if (cand > next[static_cast<std::size_t>(c)]) {
          next[static_cast<std::size_t>(c)] = cand;
          pick[static_cast<std::size_t>(c)] = static_cast<std::uint32_t>(mask);
        }
      }
    }
    dp = std::move(next);
  }

  std::vector<SmIndex> out;
  std::int64_t c = capacity;
  for (std::size_t gi = gs.size(); gi-- > 0;) {
    const std::uint32_t mask = choice[gi][static_cast<std::size_t>(c)];
    c -= gs[gi].weight[mask];
    for (std::size_t m = 0; m < 32; ++m) {
      if ((mask >> m) & 1U) out.emplace_back(gs[gi].service, m);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- AGP -------------------------------------------------------------------

// Placed model indices per (edge, service), flattened as edge * |S| + service.
using PlacedGrid = std::vector<std::vector<std::size_t>>;

// sigma(P + (edge, s, m)): optimal scheduling of every user from scratch.
double sigma_with(const Scenario& sc, const QosTable& table,
                  const PlacedGrid& grid, std::size_t edge, std::size_t s,
                  std::size_t m) {
  const std::size_t num_s = sc.num_services();
  double total = 0.0;
  for (std::size_t r = 0; r < sc.num_requests(); ++r) {
    const std::size_t re = sc.request_edge(r);
    const std::size_t rs = sc.request_service(r);
    double best = 0.0;
    for (std::size_t pm : grid[re * num_s + rs]) {
      best = std::max(best, table.value(r, pm));
    }
    if (re == edge && rs == s) best = std::max(best, table.value(r, m));
    total += best;
  }
  return total;
}

std::vector<SmIndex> agp_edge(const Scenario& sc, const QosTable& table,
                              std::size_t edge,
                              const std::vector<SmIndex>& ground,
                              PlacedGrid& grid) {
  std::int64_t remaining = sc.edges()[edge].storage_capacity;
  std::vector<char> placed(ground.size(), 0);
  std::vector<SmIndex> out;

  for (;;) {
    std::optional<std::size_t> pick;
    double pick_value = 0.0;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (placed[i]) continue;
      const auto [s, m] = ground[i];
      if (sc.model(s, m).storage_cost > remaining) continue;
      const double value = sigma_with(sc, table, grid, edge, s, m);
      if (!pick || value > pick_value + 1e-12) {
        pick = i;
        pick_value = value;
      }
    }
    if (!pick) break;
    const auto [s, m] = ground[*pick];
    placed[*pick] = 1;
    remaining -= sc.model(s, m).storage_cost;
    out.emplace_back(s, m);
    grid[edge * sc.num_services() + s].push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- EGP -------------------------------------------------------------------

std::vector<SmIndex> egp_edge(const Scenario& sc, const QosTable& table,
                              std::size_t edge,
                              std::vector<EgpTraceStep>* trace) {
  const auto covered = sc.covered_requests(edge);
  std::map<SmIndex, double> v;
  for (std::size_t r : covered) {
    const std::size_t s = sc.request_service(r);
    for (std::size_t m = 0; m < sc.services()[s].models.size(); ++m) {
      v[{s, m}] += table.value(r, m);
    }
  }
  if (v.empty()) return {};

  std::map<SmIndex, char> considered;  // A
  std::vector<char> satisfied(sc.num_requests(), 0);  // B
  std::size_t num_satisfied = 0;
  std::int64_t remaining = sc.edges()[edge].storage_capacity;
  std::vector<SmIndex> out;

  auto key_of = [&](SmIndex k) {
    return ModelKey{sc.services()[k.first].id, sc.model(k.first, k.second).id};
  };

  do {
    std::optional<SmIndex> pick;
    double pick_value = 0.0;
    for (const auto& [key, value] : v) {
      if (considered.contains(key)) continue;
      if (!pick || value > pick_value) {
        pick = key;
        pick_value = value;
      }
    }
    const auto [s, m] = *pick;
    bool placed = false;
    if (sc.model(s, m).storage_cost <= remaining) {
      placed = true;
      remaining -= sc.model(s, m).storage_cost;
      out.emplace_back(s, m);
      // Benefit of each sibling relative to the model just placed, over users
      // not yet satisfied. Users of other services contribute zero.
      for (std::size_t sib = 0; sib < sc.services()[s].models.size(); ++sib) {
        if (considered.contains({s, sib})) continue;
        double sum = 0.0;
        for (std::size_t r : covered) {
          if (satisfied[r] || sc.request_service(r) != s) continue;
          sum += table.value(r, sib) - table.value(r, m);
        }
        v[{s, sib}] = sum;
      }
    }
    considered.emplace(*pick, 1);
    for (std::size_t r : covered) {
      if (!satisfied[r] && sc.request_service(r) == s && table.satisfied(r, m)) {
        satisfied[r] = 1;
        ++num_satisfied;
      }
    }
    if (trace != nullptr) {
      EgpTraceStep step{key_of(*pick), placed, {}};
      for (const auto& [key, value] : v) {
        step.values_after.emplace_back(key_of(key), value);
      }
      trace->push_back(std::move(step));
    }
  } while (!(remaining == 0 || num_satisfied == covered.size() ||
             considered.size() == v.size()));

  std::sort(out.begin(), out.end());
  return out;
}

// --- SCK -------------------------------------------------------------------

std::vector<SmIndex> sck_edge(const Scenario& sc, const QosTable& table,
                              std::size_t edge) {
  std::vector<SmIndex> items;
  std::vector<std::int64_t> weights;
  std::vector<double> values;
  for (const auto& [s, users] : users_by_service(sc, edge)) {
    for (std::size_t m = 0; m < sc.services()[s].models.size(); ++m) {
      double v = 0.0;
      for (std::size_t r : users) v += table.value(r, m);
      items.emplace_back(s, m);
      weights.push_back(sc.model(s, m).storage_cost);
      values.push_back(v);
    }
  }
  std::vector<SmIndex> out;
  for (std::size_t i :
       solve_knapsack(weights, values, sc.edges()[edge].storage_capacity)) {
    out.push_back(items[i]);
  }
  return out;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kExact:
      return "EXACT";
    case Algorithm::kAgp:
      return "AGP";
    case Algorithm::kEgp:
      return "EGP";
    case Algorithm::kSck:
      return "SCK";
    case Algorithm::kRnd:
      return "RND";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  std::string up(name);
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "EXACT" || up == "OPT") return Algorithm::kExact;
  if (up == "AGP") return Algorithm::kAgp;
  if (up == "EGP") return Algorithm::kEgp;
  if (up == "SCK") return Algorithm::kSck;
  if (up == "RND") return Algorithm::kRnd;
  return std::nullopt;
}

std::vector<std::size_t> solve_knapsack(std::span<const std::int64_t> weights,
                                        std::span<const double> values,
                                        std::int64_t capacity) {
  if (weights.size() != values.size()) {
    throw ValidationError("knapsack: weights/values size mismatch");
  }
  if (capacity < 0) return {};
  std::int64_t total = 0;
  for (auto w : weights) {
    if (w < 0) throw ValidationError("knapsack: negative weight");
    total += w;
  }
  const std::int64_t cap = std::min(capacity, total);
  const auto cells = static_cast<std::size_t>(cap + 1);
  const std::size_t n = weights.size();

  std::vector<double> dp(cells, 0.0);
  std::vector<std::vector<char>> keep(n, std::vector<char>(cells, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = weights[i];
    if (w > cap) continue;
    for (auto c = cap; c >= w; --c) {
      const auto cu = static_cast<std::size_t>(c);
      const double cand = dp[cu - static_cast<std::size_t>(w)] + values[i];
      if (cand > dp[cu]) {
        dp[cu] = cand;
        keep[i][cu] = 1;
      }
    }
  }

  std::vector<std::size_t> chosen;
  auto c = static_cast<std::size_t>(cap);
  for (std::size_t i = n; i-- > 0;) {
    if (keep[i][c]) {
      chosen.push_back(i);
      c -= static_cast<std::size_t>(weights[i]);
    }
  }
  std::reverse(chosen.begin(), chosen.end());
  return chosen;
}

SolveReport exact(const Scenario& scenario, const ExactOptions& options) {
  return exact(scenario, QosTable(scenario), options);
}

SolveReport exact(const Scenario& scenario, const QosTable& table,
                  const ExactOptions& options) {
  const auto start = Clock::now();
  std::vector<EdgePlacement> per_edge;
  for (std::size_t e = 0; e < scenario.num_edges(); ++e) {
    per_edge.push_back({e, exact_edge(scenario, table, e, options)});
  }
  return finish(Algorithm::kExact, scenario, table,
                to_placement(scenario, per_edge), std::nullopt, start);
}

SolveReport agp(const Scenario& scenario) {
  return agp(scenario, QosTable(scenario));
}

SolveReport agp(const Scenario& scenario, const QosTable& table) {
  const auto start = Clock::now();
  const auto ground = all_service_models(scenario);
  PlacedGrid grid(scenario.num_edges() * scenario.num_services());
  std::vector<EdgePlacement> per_edge;
  for (std::size_t e = 0; e < scenario.num_edges(); ++e) {
    per_edge.push_back({e, agp_edge(scenario, table, e, ground, grid)});
  }
  return finish(Algorithm::kAgp, scenario, table,
                to_placement(scenario, per_edge), std::nullopt, start);
}

SolveReport egp(const Scenario& scenario) {
  return egp(scenario, QosTable(scenario));
}

SolveReport egp(const Scenario& scenario, const QosTable& table) {
  const auto start = Clock::now();
  std::vector<EdgePlacement> per_edge;
  for (std::size_t e = 0; e < scenario.num_edges(); ++e) {
    per_edge.push_back({e, egp_edge(scenario, table, e, nullptr)});
  }
  return finish(Algorithm::kEgp, scenario, table,
                to_placement(scenario, per_edge), std::nullopt, start);
}

std::vector<EgpTraceStep> egp_trace(const Scenario& scenario,
                                    const QosTable& table, EdgeId edge) {
  auto e = scenario.edge_index(edge);
  if (!e) throw ValidationError("unknown edge " + std::to_string(edge));
  std::vector<EgpTraceStep> trace;
  egp_edge(scenario, table, *e, &trace);
  return trace;
}

SolveReport sck(const Scenario& scenario) {
  return sck(scenario, QosTable(scenario));
}

SolveReport sck(const Scenario& scenario, const QosTable& table) {
  const auto start = Clock::now();
  std::vector<EdgePlacement> per_edge;
  for (std::size_t e = 0; e < scenario.num_edges(); ++e) {
    per_edge.push_back({e, sck_edge(scenario, table, e)});
  }
  return finish(Algorithm::kSck, scenario, table,
                to_placement(scenario, per_edge), std::nullopt, start);
}

SolveReport rnd(const Scenario& scenario, std::uint64_t seed) {
  return rnd(scenario, QosTable(scenario), seed);
}

SolveReport rnd(const Scenario& scenario, const QosTable& table,
                std::uint64_t seed) {
  const auto start = Clock::now();
  auto gen = make_stream(seed, 0x524e44);  // "RND"
  const auto ground = all_service_models(scenario);

  std::vector<EdgePlacement> per_edge;
  // placed model indices per (edge, service)
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> hosted;
  for (std::size_t e = 0; e < scenario.num_edges(); ++e) {
    auto order = ground;
    std::shuffle(order.begin(), order.end(), gen);
    std::int64_t remaining = scenario.edges()[e].storage_capacity;
    EdgePlacement ep{e, {}};
    for (auto [s, m] : order) {
      const auto cost = scenario.model(s, m).storage_cost;
      if (cost > remaining) continue;
      remaining -= cost;
      ep.models.emplace_back(s, m);
      hosted[{e, s}].push_back(m);
    }
    per_edge.push_back(std::move(ep));
  }
  for (auto& [_, models] : hosted) std::sort(models.begin(), models.end());

  Schedule schedule;
  for (std::size_t r = 0; r < scenario.num_requests(); ++r) {
    const auto& u = scenario.requests()[r];
    auto it = hosted.find({scenario.request_edge(r), scenario.request_service(r)});
    if (it == hosted.end()) {
      schedule.assigned.emplace(u.id, std::nullopt);
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
    const std::size_t m = it->second[pick(gen)];
    schedule.assigned.emplace(u.id,
                              scenario.model(scenario.request_service(r), m).id);
  }
  return finish(Algorithm::kRnd, scenario, table,
                to_placement(scenario, per_edge), std::move(schedule), start);
}

SolveReport solve(Algorithm algorithm, const Scenario& scenario,
                  const SolveOptions& options) {
  return solve(algorithm, scenario, QosTable(scenario), options);
}

SolveReport solve(Algorithm algorithm, const Scenario& scenario,
                  const QosTable& table, const SolveOptions& options) {
  switch (algorithm) {
    case Algorithm::kExact:
      return exact(scenario, table, options.exact);
    case Algorithm::kAgp:
      return agp(scenario, table);
    case Algorithm::kEgp:
      return egp(scenario, table);
    case Algorithm::kSck:
      return sck(scenario, table);
    case Algorithm::kRnd:
      return rnd(scenario, table, options.seed);
  }
  throw Error("unknown algorithm");
}

}  // namespace pies
