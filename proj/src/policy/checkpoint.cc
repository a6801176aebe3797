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

#include <map>
#include <stdexcept>

#include "sagfn/errors.h"
#include "sagfn/policy.h"

namespace sagfn {

using nlohmann::json;

json PolicyTable::to_json() const {
  json j;
  j["format"] = "sagfn-policy-1";
  j["env"] = dag_->env().config_json();
  j["log_Z"] = log_z_;
  json logits = json::object();
  json flows = json::object();
  for (int s = 0; s < dag_->size(); ++s) {
    const std::string h = hash_hex(dag_->state(s).hash);
    const auto cls = dag_->forward(s);
    for (std::size_t i = 0; i < cls.size(); ++i) {
      const double x = logits_[dag_->state(s).fwd_begin + i];
      if (x != 0) logits[h][class_key(cls[i])] = x;
    }
    if (log_flows_[s] != 0) flows[h] = log_flows_[s];
  }
  j["logits"] = std::move(logits);
  j["log_flows"] = std::move(flows);
  return j;
}

PolicyTable PolicyTable::from_json(const StateDag& dag, const json& j) {
  PolicyTable p(dag);
  try {
    if (!j.is_object() || j.value("format", "") != "sagfn-policy-1") {
      throw ConfigError("not a policy checkpoint");
    }
    if (j.at("env") != dag.env().config_json()) {
      throw ConfigError("checkpoint was trained on " + j.at("env").dump() +
                        ", not " + dag.env().config_json().dump());
    }
    p.log_z_ = j.at("log_Z").get<double>();
    auto state_of = [&](const std::string& h) {
      const int s = dag.find_hash(std::stoull(h, nullptr, 16));
      if (s < 0) throw ConfigError("checkpoint state " + h + " is not in the DAG");
      return s;
    };
    for (const auto& [h, entries] : j.at("logits").items()) {
      const int s = state_of(h);
      std::map<std::string, int> index;
      const auto cls = dag.forward(s);
      for (std::size_t i = 0; i < cls.size(); ++i) index[class_key(cls[i])] = static_cast<int>(i);
      for (const auto& [key, value] : entries.items()) {
        auto it = index.find(key);
        if (it == index.end()) throw ConfigError("unknown class " + key + " in state " + h);
        p.logits_[dag.state(s).fwd_begin + it->second] = value.get<double>();
      }
    }
    for (const auto& [h, value] : j.at("log_flows").items()) {
      p.log_flows_[state_of(h)] = value.get<double>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what());
  } catch (const std::logic_error&) {
    throw ConfigError("malformed state hash in checkpoint");
  }
  return p;
}

}  // namespace sagfn
