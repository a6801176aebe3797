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

#ifndef SAGFN_TOOLS_COMMANDS_H_
#define SAGFN_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace sagfn::cli {

// Throws ConfigError when the file is missing or not valid JSON.
nlohmann::json read_json_file(const std::string& path);

// Flag value, else SAGFN_SEED, else 0. Throws ConfigError on a bad SAGFN_SEED.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

// Source of a policy: a checkpoint file, or the uniform policy on an env.
struct PolicySource {
  std::string checkpoint;   // empty for the uniform policy
  nlohmann::json env = nlohmann::json::object();  // env flag overrides
  std::int64_t max_states = 10'000'000;
};

// Writes config.json, metrics.csv and checkpoint.json into the output
// directory and a one-line summary to `log`.
void train(const nlohmann::json& run_config, std::ostream& log);

// CSV: hash,aut,labeled_size,reward,p_model,p_target.
void eval(const PolicySource& source, std::ostream& out);

// CSV: id,m,estimate,exact,abs_error,std_error,error.
void likelihood(const PolicySource& source, const std::string& terminals_path,
                const std::vector<int>& samples, std::uint64_t seed,
                double epsilon, std::ostream& out);

// CSV: id,n,aut,orbits,micros,error.
void symcheck(const std::string& graphs_path, std::ostream& out);

// Summary line to `out`; one JSON object per state to `jsonl_path` if set.
void enumerate(const nlohmann::json& env, std::int64_t max_states,
               const std::string& jsonl_path, std::ostream& out);

}  // namespace sagfn::cli

#endif  // SAGFN_TOOLS_COMMANDS_H_
