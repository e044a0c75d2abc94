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

// Scenario JSON documents:
//
//   {
//     "delay_max": 10.0,
//     "edges":    [{"id", "comm_capacity", "comp_capacity", "storage_capacity"}],
//     "services": [{"id", "models": [{"id", "accuracy", "comm_cost",
//                                     "comp_cost", "storage_cost"}]}],
//     "requests": [{"id", "edge", "service", "accuracy_threshold",
//                   "delay_threshold"}],
//     "metadata": {"seed", "generator", "exp_param_mode"}   // optional
//   }
//
// Storage costs and capacities must be JSON integers.

#ifndef PIES_SCENARIO_IO_HPP_
#define PIES_SCENARIO_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pies/model.hpp"

namespace pies {

class ParseError : public Error {
 public:
  ParseError(std::string key, const std::string& what)
      : Error("`" + key + "`: " + what), key_(std::move(key)) {}

  // Dotted path of the offending key, e.g. "edges[2].storage_capacity".
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);

std::string dump_scenario(const Scenario& scenario);
Scenario parse_scenario(std::string_view text);

Scenario load(const std::filesystem::path& path);
void save(const Scenario& scenario, const std::filesystem::path& path);

namespace json_field {

// Typed accessors that raise ParseError naming `path.key`.
const nlohmann::json& at(const nlohmann::json& obj, const std::string& path,
                         const char* key);
double number(const nlohmann::json& obj, const std::string& path,
              const char* key);
std::int64_t integer(const nlohmann::json& obj, const std::string& path,
                     const char* key);
const nlohmann::json& array(const nlohmann::json& obj, const std::string& path,
                            const char* key);
std::string join(const std::string& path, const char* key);
std::string join(const std::string& path, const char* key, std::size_t i);

}  // namespace json_field

}  // namespace pies

#endif  // PIES_SCENARIO_IO_HPP_
