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

#include "sagfn/errors.h"
#include "sagfn/training.h"

namespace sagfn {

using nlohmann::json;

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("run config must be an object");
  static const std::set<std::string> kKeys = {
      "env",        "objective",  "mode",     "steps",   "batch_size",
      "replay_batch", "replay_capacity", "epsilon", "beta", "seed",
      "eval_every", "lr_logits",  "lr_flows", "workers", "max_states",
      "output_dir"};
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig c;
  if (j.contains("env")) c.env = EnvConfig::from_json(j.at("env"));
  try {
    if (j.contains("objective")) c.objective = parse_objective(j.at("objective").get<std::string>());
    if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("steps")) c.steps = j.at("steps").get<std::int64_t>();
    if (j.contains("batch_size")) c.batch_size = j.at("batch_size").get<int>();
    if (j.contains("replay_batch")) c.replay_batch = j.at("replay_batch").get<int>();
    if (j.contains("replay_capacity")) c.replay_capacity = j.at("replay_capacity").get<int>();
    if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("eval_every")) c.eval_every = j.at("eval_every").get<std::int64_t>();
    if (j.contains("lr_logits")) c.lr_logits = j.at("lr_logits").get<double>();
    if (j.contains("lr_flows")) c.lr_flows = j.at("lr_flows").get<double>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("max_states")) c.max_states = j.at("max_states").get<std::int64_t>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad run config: ") + e.what());
  }
  c.validate();
  return c;
}

json RunConfig::to_json() const {
  json j;
  j["env"] = env.to_json();
  j["objective"] = objective_name(objective);
  j["mode"] = mode_name(mode);
  j["steps"] = steps;
  j["batch_size"] = batch_size;
  j["replay_batch"] = replay_batch;
  j["replay_capacity"] = replay_capacity;
  j["epsilon"] = epsilon;
  j["beta"] = beta;
  if (seed) j["seed"] = *seed;
  j["eval_every"] = eval_every;
  j["lr_logits"] = lr_logits;
  j["lr_flows"] = lr_flows;
  j["workers"] = workers;
  j["max_states"] = max_states;
  if (!output_dir.empty()) j["output_dir"] = output_dir;
  return j;
}

void RunConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(steps >= 0, "steps must be non-negative");
  require(batch_size >= 1, "batch_size must be at least 1");
  require(replay_batch >= 0, "replay_batch must be non-negative");
  require(replay_capacity >= 1, "replay_capacity must be at least 1");
  require(epsilon >= 0 && epsilon <= 1, "epsilon must lie in [0, 1]");
  require(beta > 0, "beta must be positive");
  require(eval_every >= 1, "eval_every must be at least 1");
  require(lr_logits > 0 && lr_flows > 0, "learning rates must be positive");
  require(workers >= 1, "workers must be at least 1");
  require(max_states >= 1, "max_states must be at least 1");
}

}  // namespace sagfn
