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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "pies/placement.hpp"
#include "pies/rng.hpp"
#include "pies/scenario_gen.hpp"
#include "pies/scenario_io.hpp"

namespace pies {
namespace {

using nlohmann::json;

GenParams defaults_with_users(int users) {
  GenParams p;
  p.num_users = users;
  return p;
}

TEST(Generate, DefaultShape) {
  const auto sc = generate(defaults_with_users(300), 42);
  EXPECT_EQ(sc.num_edges(), 10u);
  EXPECT_EQ(sc.num_services(), 100u);
  EXPECT_EQ(sc.num_requests(), 300u);
  for (const auto& s : sc.services()) {
    EXPECT_GE(s.models.size(), 1u);
    EXPECT_LE(s.models.size(), 10u);
  }
}

TEST(Generate, SamplesWithinRanges) {
  const GenParams p = defaults_with_users(500);
  const auto sc = generate(p, 7);
  for (const auto& e : sc.edges()) {
    EXPECT_GE(e.comm_capacity, 300);
    EXPECT_LE(e.comm_capacity, 600);
    EXPECT_GE(e.comp_capacity, 300);
    EXPECT_LE(e.comp_capacity, 600);
    EXPECT_GE(e.storage_capacity, 100);
    EXPECT_LE(e.storage_capacity, 200);
    EXPECT_EQ(e.comm_capacity, std::floor(e.comm_capacity));
  }
  for (const auto& s : sc.services()) {
    for (const auto& m : s.models) {
      EXPECT_GE(m.accuracy, 0.0);
      EXPECT_LE(m.accuracy, 1.0);
      EXPECT_GE(m.comm_cost, 15);
      EXPECT_LE(m.comm_cost, 30);
      EXPECT_GE(m.comp_cost, 15);
      EXPECT_LE(m.comp_cost, 30);
      EXPECT_GE(m.storage_cost, 10);
      EXPECT_LE(m.storage_cost, 20);
    }
  }
  for (const auto& u : sc.requests()) {
    EXPECT_GE(u.accuracy_threshold, 0.0);
    EXPECT_LE(u.accuracy_threshold, 1.0);
    EXPECT_GE(u.delay_threshold, 0.0);
    EXPECT_LE(u.delay_threshold, p.delay_max);
  }
}

TEST(Generate, DeterministicPerSeed) {
  const auto p = defaults_with_users(100);
  EXPECT_EQ(dump_scenario(generate(p, 9)), dump_scenario(generate(p, 9)));
  EXPECT_NE(dump_scenario(generate(p, 9)), dump_scenario(generate(p, 10)));
}

TEST(Generate, UserCountLeavesPlatformUnchanged) {
  // Separate streams: more users do not shift edge or service draws.
  const auto a = generate(defaults_with_users(10), 5);
  const auto b = generate(defaults_with_users(200), 5);
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_EQ(a.services(), b.services());
}

TEST(Generate, AccuracyMean) {
  GenParams p;
  p.num_edges = 1;
  p.num_services = 10000;
  p.models_per_service = {10, 10};
  p.num_users = 0;
  const auto sc = generate(p, 123);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& s : sc.services()) {
    for (const auto& m : s.models) {
      sum += m.accuracy;
      ++n;
    }
  }
  EXPECT_EQ(n, 100000u);
  EXPECT_NEAR(sum / static_cast<double>(n), 0.65, 0.01);
}

TEST(Generate, RateAndScaleModes) {
  // RATE: epsilon ~ Exp(rate 0.125), mean 8, so almost always clipped to 1.
  // SCALE: epsilon ~ Exp(mean 0.125).
  GenParams p;
  p.num_edges = 1;
  p.num_services = 1;
  p.num_users = 20000;
  auto mean_alpha = [&](ExpParamMode mode) {
    p.exp_param_mode = mode;
    const auto sc = generate(p, 77);
    double s = 0.0;
    for (const auto& u : sc.requests()) s += u.accuracy_threshold;
    return s / static_cast<double>(sc.num_requests());
  };
  // E[1 - min(eps, 1)] for eps ~ Exp(rate): (1 - e^-rate) ... closed form:
  // 1 - (1 - e^{-lambda}) / lambda.
  auto expected = [](double rate) { return 1.0 - (1.0 - std::exp(-rate)) / rate; };
  EXPECT_NEAR(mean_alpha(ExpParamMode::kRate), expected(0.125), 0.005);
  EXPECT_NEAR(mean_alpha(ExpParamMode::kScale), expected(8.0), 0.005);
  EXPECT_EQ(generate(p, 1).provenance()->exp_param_mode, "scale");
}

TEST(Generate, RejectsBadParams) {
  GenParams p;
  p.comm_capacity = {600, 300};
  EXPECT_THROW(generate(p, 1), ValidationError);
  p = {};
  p.num_edges = 0;
  EXPECT_THROW(generate(p, 1), ValidationError);
  p = {};
  p.num_users = -1;
  EXPECT_THROW(generate(p, 1), ValidationError);
}

TEST(Generate, RecordsProvenance) {
  const auto sc = generate(defaults_with_users(3), 99);
  ASSERT_TRUE(sc.provenance().has_value());
  EXPECT_EQ(sc.provenance()->seed, 99u);
  EXPECT_EQ(sc.provenance()->generator, kGeneratorVersion);
  EXPECT_EQ(sc.provenance()->exp_param_mode, "rate");
}

TEST(GenParamsJson, RoundTripAndOverrides) {
  GenParams p;
  p.num_edges = 3;
  p.storage_cost = {2, 4};
  p.exp_param_mode = ExpParamMode::kScale;
  EXPECT_EQ(gen_params_from_json(gen_params_to_json(p)), p);

  const auto q = gen_params_from_json(json{{"num_users", 17}});
  EXPECT_EQ(q.num_users, 17);
  EXPECT_EQ(q.num_edges, 10);
}

TEST(GenParamsJson, Errors) {
  try {
    gen_params_from_json(json{{"num_userz", 1}});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.key(), "num_userz");
  }
  EXPECT_THROW(gen_params_from_json(json{{"comm_cost", {1}}}), ParseError);
  EXPECT_THROW(gen_params_from_json(json{{"exp_param_mode", "shape"}}), ParseError);
  EXPECT_THROW(gen_params_from_json(json{{"num_edges", 1.5}}), ParseError);
}

TEST(ScenarioJson, RoundTrip) {
  const auto sc = generate(defaults_with_users(50), 3);
  EXPECT_EQ(parse_scenario(dump_scenario(sc)), sc);

  const auto path = std::filesystem::temp_directory_path() / "pies_roundtrip.json";
  save(sc, path);
  EXPECT_EQ(load(path), sc);
  std::filesystem::remove(path);
}

TEST(ScenarioJson, WithoutMetadata) {
  Scenario sc({{1, 1, 1, 0}}, {{1, {{1, 0.5, 1, 1, 0}}}}, {}, 1.0);
  const auto doc = scenario_to_json(sc);
  EXPECT_FALSE(doc.contains("metadata"));
  EXPECT_EQ(scenario_from_json(doc), sc);
}

json minimal() {
  return json::parse(R"({
    "delay_max": 1.0,
    "edges": [{"id": 1, "comm_capacity": 10, "comp_capacity": 10,
               "storage_capacity": 5}],
    "services": [{"id": 1, "models": [{"id": 1, "accuracy": 0.5,
        "comm_cost": 1, "comp_cost": 1, "storage_cost": 2}]}],
    "requests": [{"id": 1, "edge": 1, "service": 1,
                  "accuracy_threshold": 0.4, "delay_threshold": 0.5}]
  })");
}

TEST(ScenarioJson, MissingDelayMaxNamesKey) {
  auto doc = minimal();
  EXPECT_NO_THROW(scenario_from_json(doc));
  doc.erase("delay_max");
  try {
    scenario_from_json(doc);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.key(), "delay_max");
    EXPECT_NE(std::string(e.what()).find("delay_max"), std::string::npos);
  }
}

TEST(ScenarioJson, NegativeStorageIsValidationError) {
  auto doc = minimal();
  doc["edges"][0]["storage_capacity"] = -1;
  EXPECT_THROW(scenario_from_json(doc), ValidationError);
}

TEST(ScenarioJson, NonIntegerStorageRejected) {
  auto doc = minimal();
  doc["services"][0]["models"][0]["storage_cost"] = 2.5;
  try {
    scenario_from_json(doc);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.key(), "services[0].models[0].storage_cost");
  }
}

TEST(ScenarioJson, MalformedText) {
  EXPECT_THROW(parse_scenario("{not json"), ParseError);
  EXPECT_THROW(load("/nonexistent/pies.json"), Error);
}

TEST(Fixture, TableValues) {
  const auto sc = real_world_fixture(1, 100);
  ASSERT_EQ(sc.num_edges(), 1u);
  EXPECT_EQ(sc.edges()[0].storage_capacity, 1);
  ASSERT_EQ(sc.num_services(), 1u);
  const auto& models = sc.services()[0].models;
  ASSERT_EQ(models.size(), 6u);
  EXPECT_DOUBLE_EQ(sc.delay_max(), 1.0);

  const auto& e = sc.edges()[0];
  const double n = 100;
  const auto& mobile = models[3];
  EXPECT_STREQ(kFixtureModels[3].name, "MobileNet");
  EXPECT_DOUBLE_EQ(mobile.accuracy, 0.7188);
  EXPECT_NEAR(mobile.comp_cost * n / e.comp_capacity, 0.06, 1e-12);
  for (std::size_t i = 0; i < models.size(); ++i) {
    EXPECT_EQ(models[i].storage_cost, 1);
    EXPECT_DOUBLE_EQ(models[i].comm_cost, models[0].comm_cost);
    EXPECT_NEAR(models[i].comp_cost * n / e.comp_capacity,
                kFixtureModels[i].comp_delay_seconds, 1e-12);
    EXPECT_NEAR(expected_delay(sc, 1, {1, models[i].id}),
                0.05 + kFixtureModels[i].comp_delay_seconds, 1e-12);
  }
  for (const auto& u : sc.requests()) {
    EXPECT_GE(u.delay_threshold, 0.0);
    EXPECT_LE(u.delay_threshold, 1.0);
  }
}

TEST(Fixture, OneModelFits) {
  const auto sc = real_world_fixture(5, 100);
  for (Algorithm a : {Algorithm::kExact, Algorithm::kAgp, Algorithm::kEgp,
                      Algorithm::kSck, Algorithm::kRnd}) {
    EXPECT_EQ(solve(a, sc, SolveOptions{{}, 3}).placed_count, 1u);
  }
}

TEST(Fixture, RejectsNoRequests) {
  EXPECT_THROW(real_world_fixture(1, 0), ValidationError);
}

TEST(Rng, StreamsDiffer) {
  auto a = make_stream(1, 1);
  auto b = make_stream(1, 2);
  auto c = make_stream(1, 1);
  const auto x = a();
  EXPECT_NE(x, b());
  EXPECT_EQ(x, c());
}

}  // namespace
}  // namespace pies
