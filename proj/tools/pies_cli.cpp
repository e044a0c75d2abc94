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

// pies: command-line driver.
//
//   pies generate  [--config p.json] [--users N] [--ann] --out s.json
//   pies solve     s.json --algorithms EGP [--out report.json]
//   pies compare   s.json --algorithms EXACT,AGP,EGP [--out rows.csv]
//   pies sweep     --users 50,100 --trials 10 [--out rows.csv]
//   pies ann-demo  [s.json] [--theta 0.05] [--out rows.csv]
//   pies fixture   [--trials 100] [--requests 100] [--table freq.csv]

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pies/ann.hpp"
#include "pies/harness.hpp"
#include "pies/placement.hpp"
#include "pies/scenario_gen.hpp"
#include "pies/scenario_io.hpp"

namespace {

using namespace pies;
using nlohmann::json;

struct Common {
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms;
  std::string exp_param_mode;
  std::string out;
  std::size_t exact_cap = ExactOptions{}.max_models_per_service;
};

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names,
                                        std::vector<Algorithm> fallback) {
  if (names.empty()) return fallback;
  std::vector<Algorithm> out;
  for (const auto& n : names) {
    auto a = parse_algorithm(n);
    if (!a) throw Error("unknown algorithm '" + n + "'");
    out.push_back(*a);
  }
  return out;
}

const std::vector<Algorithm> kAll{Algorithm::kExact, Algorithm::kAgp,
                                  Algorithm::kEgp, Algorithm::kSck,
                                  Algorithm::kRnd};

void emit(const std::string& path, const std::function<void(std::ostream&)>& f) {
  if (path.empty() || path == "-") {
    f(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  f(out);
  if (!out) throw Error("write to '" + path + "' failed");
}

ExactOptions exact_options(const Common& c) {
  ExactOptions o;
  o.max_models_per_service = c.exact_cap;
  return o;
}

void apply_mode(const Common& c, GenParams& p) {
  if (c.exp_param_mode.empty()) return;
  auto mode = parse_exp_param_mode(c.exp_param_mode);
  if (!mode) throw Error("--exp-param-mode must be 'rate' or 'scale'");
  p.exp_param_mode = *mode;
}

GenParams load_params(const std::string& config) {
  if (config.empty()) return {};
  std::ifstream in(config);
  if (!in) throw Error("cannot open '" + config + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(config + ": " + e.what());
  }
  return gen_params_from_json(doc);
}

void add_common(CLI::App* cmd, Common& c, bool algorithms, bool mode) {
  cmd->add_option("--seed", c.seed, "Random seed");
  if (algorithms) {
    cmd->add_option("--algorithms", c.algorithms,
                    "Comma-separated: EXACT, AGP, EGP, SCK, RND")
        ->delimiter(',');
    cmd->add_option("--exact-cap", c.exact_cap,
                    "Largest model count of one service at one edge that "
                    "EXACT will enumerate")
        ->check(CLI::Range(1, 31));
  }
  if (mode) {
    cmd->add_option("--exp-param-mode", c.exp_param_mode,
                    "Read exponential parameters as 'rate' or 'scale'")
        ->check(CLI::IsMember({"rate", "scale"}));
  }
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
}

json report_json(const Scenario& sc, const SolveReport& r) {
  json placed = json::array();
  for (const auto& p : r.placement.placed) {
    placed.push_back({{"edge", p.edge}, {"service", p.service}, {"model", p.model}});
  }
  json schedule = json::array();
  for (const auto& [user, model] : r.schedule.assigned) {
    schedule.push_back({{"user", user},
                        {"model", model ? json(*model) : json(nullptr)}});
  }
  json doc{{"algorithm", to_string(r.algorithm)},
           {"objective", r.objective},
           {"num_placed", r.placed_count},
           {"num_scheduled", r.scheduled_count},
           {"num_users", sc.num_requests()},
           {"runtime_sec", r.runtime_seconds},
           {"placement", placed},
           {"schedule", schedule}};
  if (sc.provenance()) doc["scenario_seed"] = sc.provenance()->seed;
  return doc;
}

int run(int argc, char** argv) {
  CLI::App app{"Placement and scheduling of multi-implementation services"};
  app.require_subcommand(1);

  Common c;

  // generate
  auto* gen = app.add_subcommand("generate", "Write a random scenario file");
  std::string gen_config;
  std::optional<int> gen_users, gen_edges, gen_services;
  bool gen_ann = false;
  add_common(gen, c, false, true);
  gen->add_option("--config", gen_config, "Generator parameters (JSON)");
  gen->add_option("--users", gen_users, "Number of user requests");
  gen->add_option("--edges", gen_edges, "Number of edge clouds");
  gen->add_option("--services", gen_services, "Number of services");
  gen->add_flag("--ann", gen_ann, "Neural-network services (3 models each)");

  // solve
  auto* sol = app.add_subcommand("solve", "Solve one scenario, report JSON");
  std::string sol_path;
  add_common(sol, c, true, false);
  sol->add_option("scenario", sol_path, "Scenario file")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "Run several solvers, emit CSV");
  std::string cmp_path;
  add_common(cmp, c, true, false);
  cmp->add_option("scenario", cmp_path, "Scenario file")->required();

  // sweep
  auto* swp = app.add_subcommand("sweep", "Trials over user counts, emit CSV");
  std::string swp_config;
  std::vector<int> swp_users{50, 100, 150, 200, 250};
  int swp_trials = 10;
  int swp_threads = 0;
  std::optional<int> swp_budget, swp_edges, swp_services;
  add_common(swp, c, true, true);
  swp->add_option("--config", swp_config, "Generator parameters (JSON)");
  swp->add_option("--users", swp_users, "Comma-separated user counts")
      ->delimiter(',');
  swp->add_option("--trials", swp_trials, "Trials per user count")
      ->check(CLI::PositiveNumber);
  swp->add_option("--edges", swp_edges, "Number of edge clouds");
  swp->add_option("--services", swp_services, "Number of services");
  swp->add_option("--threads", swp_threads,
                  "Worker threads (0: all cores, 1: serial)")
      ->check(CLI::NonNegativeNumber);
  swp->add_option("--exact-user-budget", swp_budget,
                  "Skip EXACT above this many users");

  // ann-demo
  auto* ann = app.add_subcommand("ann-demo", "Neural-network services, emit CSV");
  std::string ann_path;
  std::optional<double> ann_theta;
  int ann_users = 100;
  add_common(ann, c, true, true);
  ann->add_option("scenario", ann_path, "ANN scenario file (generated if absent)");
  ann->add_option("--theta", ann_theta, "Cloud-use penalty")
      ->check(CLI::Range(0.0, 1.0));
  ann->add_option("--users", ann_users, "Users when generating")
      ->check(CLI::NonNegativeNumber);

  // fixture
  auto* fix = app.add_subcommand("fixture", "Image-classification fixture");
  int fix_trials = 100;
  int fix_requests = 100;
  std::string fix_table;
  add_common(fix, c, true, false);
  fix->add_option("--trials", fix_trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  fix->add_option("--requests", fix_requests, "Requests per trial")
      ->check(CLI::PositiveNumber);
  fix->add_option("--table", fix_table,
                  "Placement frequency table (default: after the CSV)");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    GenParams p = load_params(gen_config);
    if (gen_users) p.num_users = *gen_users;
    if (gen_edges) p.num_edges = *gen_edges;
    if (gen_services) p.num_services = *gen_services;
    apply_mode(c, p);
    if (gen_ann) {
      AnnGenParams ap;
      ap.base = p;
      const auto sc = generate_ann(ap, c.seed);
      emit(c.out, [&](std::ostream& o) { o << ann_scenario_to_json(sc).dump(2) << "\n"; });
    } else {
      const auto sc = generate(p, c.seed);
      emit(c.out, [&](std::ostream& o) { o << dump_scenario(sc) << "\n"; });
    }
  } else if (sol->parsed()) {
    const auto algs = parse_algorithms(c.algorithms, {Algorithm::kEgp});
    if (algs.size() != 1) throw Error("solve takes exactly one algorithm");
    const auto sc = load(sol_path);
    const auto report = solve(algs[0], sc, SolveOptions{exact_options(c), c.seed});
    emit(c.out, [&](std::ostream& o) { o << report_json(sc, report).dump(2) << "\n"; });
  } else if (cmp->parsed()) {
    const auto algs = parse_algorithms(c.algorithms, kAll);
    const auto sc = load(cmp_path);
    const auto rows = run_comparison(sc, algs, c.seed, exact_options(c));
    emit(c.out, [&](std::ostream& o) { write_csv(o, rows, aggregate(rows)); });
  } else if (swp->parsed()) {
    GenParams p = load_params(swp_config);
    if (swp_edges) p.num_edges = *swp_edges;
    if (swp_services) p.num_services = *swp_services;
    apply_mode(c, p);
    SweepOptions opt;
    opt.exact = exact_options(c);
    opt.threads = swp_threads;
    opt.exact_user_budget = swp_budget;
    const auto algs = parse_algorithms(c.algorithms, kAll);
    const auto result = sweep(p, swp_users, swp_trials, algs, c.seed, opt);
    emit(c.out, [&](std::ostream& o) {
      write_csv(o, result.records, result.aggregates);
    });
  } else if (ann->parsed()) {
    AnnScenario sc;
    if (ann_path.empty()) {
      AnnGenParams ap;
      ap.base.num_users = ann_users;
      apply_mode(c, ap.base);
      sc = generate_ann(ap, c.seed);
    } else {
      sc = load_ann(ann_path);
    }
    if (ann_theta) sc.params.hyper.theta = *ann_theta;
    const auto algs = parse_algorithms(c.algorithms, kAll);
    const auto rows = ann_comparison(sc, algs, c.seed, exact_options(c));
    emit(c.out, [&](std::ostream& o) { write_csv(o, rows, aggregate(rows)); });
  } else if (fix->parsed()) {
    const auto algs = parse_algorithms(
        c.algorithms,
        {Algorithm::kExact, Algorithm::kAgp, Algorithm::kEgp, Algorithm::kSck});
    const auto result = fixture_comparison(fix_trials, fix_requests, algs, c.seed);
    emit(c.out, [&](std::ostream& o) {
      write_csv(o, result.records, aggregate(result.records));
      if (fix_table.empty()) {
        o << "\n";
        write_fixture_table(o, result, fix_trials);
      }
    });
    if (!fix_table.empty()) {
      emit(fix_table, [&](std::ostream& o) {
        write_fixture_table(o, result, fix_trials);
      });
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "pies: error: " << e.what() << "\n";
    return 1;
  }
}
