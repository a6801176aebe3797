// Copyright 2026 The sagfn Authors
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

#include <set>

#include "sagfn/environment.h"
#include "sagfn/errors.h"

namespace sagfn {

using nlohmann::json;

EnvConfig EnvConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("environment config must be an object");
  static const std::set<std::string> kKeys = {
      "env", "max_nodes", "reward_floor", "max_edges", "max_degree",
      "node_types", "vocabulary", "max_fragments"};
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown environment key '" + key + "'");
  }
  EnvConfig c;
  try {
    if (j.contains("env")) c.env = j.at("env").get<std::string>();
    if (j.contains("max_nodes")) c.max_nodes = j.at("max_nodes").get<int>();
    if (j.contains("reward_floor")) c.reward_floor = j.at("reward_floor").get<double>();
    if (j.contains("max_edges")) c.max_edges = j.at("max_edges").get<int>();
    if (j.contains("max_degree")) c.max_degree = j.at("max_degree").get<int>();
    if (j.contains("node_types")) c.node_types = j.at("node_types").get<int>();
    if (j.contains("vocabulary")) c.vocabulary = j.at("vocabulary").get<std::string>();
    if (j.contains("max_fragments")) c.max_fragments = j.at("max_fragments").get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad environment config: ") + e.what());
  }
  if (c.env != "illustrative" && c.env != "clique" && c.env != "cycle" &&
      c.env != "fragment") {
    throw ConfigError("unknown env '" + c.env + "'");
  }
  return c;
}

json EnvConfig::to_json() const {
  json j;
  j["env"] = env;
  if (max_nodes) j["max_nodes"] = *max_nodes;
  if (reward_floor) j["reward_floor"] = *reward_floor;
  if (max_edges) j["max_edges"] = *max_edges;
  if (max_degree) j["max_degree"] = *max_degree;
  if (node_types) j["node_types"] = *node_types;
  if (vocabulary) j["vocabulary"] = *vocabulary;
  if (max_fragments) j["max_fragments"] = *max_fragments;
  return j;
}

std::unique_ptr<NodeEnv> make_node_env(const EnvConfig& c) {
  NodeEnvSpec s;
  if (c.env == "illustrative") {
    s = illustrative_spec();
  } else if (c.env == "clique") {
    s = clique_spec();
  } else if (c.env == "cycle") {
    s = cycle_spec();
  } else {
    throw ConfigError("'" + c.env + "' is not a node-by-node environment");
  }
  if (c.vocabulary || c.max_fragments) {
    throw ConfigError("vocabulary/max_fragments only apply to the fragment env");
  }
  if (c.max_nodes) {
    s.max_nodes = *c.max_nodes;
    if (!s.add_node) s.initial_nodes = *c.max_nodes;
  }
  if (c.reward_floor) s.reward_floor = *c.reward_floor;
  if (c.max_edges) s.max_edges = *c.max_edges;
  if (c.max_degree) s.max_degree = *c.max_degree;
  if (c.node_types) s.node_types = *c.node_types;
  return std::make_unique<NodeEnv>(s);
}

}  // namespace sagfn
