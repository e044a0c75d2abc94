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

// Model scheduling for a fixed placement, the placement set function sigma,
// and the spanning-tree formulation of scheduling used as a cross-check.

#ifndef PIES_SCHEDULING_HPP_
#define PIES_SCHEDULING_HPP_

#include <cstddef>
#include <vector>

#include "pies/model.hpp"

namespace pies {

// Optimal model scheduling: each user whose covering edge hosts at least one
// model of the requested service gets the placed model of highest QoS. Ties go
// to the lowest model id.
Schedule oms(const Scenario& scenario, const Placement& placement);
Schedule oms(const Scenario& scenario, const QosTable& table,
             const Placement& placement);

// Optimal QoS for one user under `placed`; 0 when nothing relevant is placed.
// `placed` need not be storage-feasible.
double sigma_u(const Scenario& scenario, UserId user, const Placement& placed);
double sigma_u(const Scenario& scenario, const QosTable& table, UserId user,
               const Placement& placed);

double sigma(const Scenario& scenario, const Placement& placed);
double sigma(const Scenario& scenario, const QosTable& table,
             const Placement& placed);

// Node 0 is the root. User nodes and their private service nodes follow.
struct AuxiliaryMultigraph {
  struct Link {
    std::size_t a = 0;
    std::size_t b = 0;
    double weight = 0.0;
    ModelId model = 0;  // meaningful on user-service links only
    bool root_link = false;
  };

  std::vector<UserId> user_nodes;     // V_U, node id = 1 + position
  std::vector<ServiceId> service_nodes;  // V_S, node id = 1 + |V_U| + position
  std::vector<Link> links;

  std::size_t num_nodes() const {
    return 1 + user_nodes.size() + service_nodes.size();
  }
};

AuxiliaryMultigraph build_auxiliary_multigraph(const Scenario& scenario,
                                               const QosTable& table,
                                               const Placement& placement);

// Weight of a maximum spanning tree of the auxiliary multigraph, found with
// Kruskal on negated weights. Equals the optimal scheduling objective.
double mst_oracle(const Scenario& scenario, const Placement& placement);
double mst_oracle(const Scenario& scenario, const QosTable& table,
                  const Placement& placement);

}  // namespace pies

#endif  // PIES_SCHEDULING_HPP_
