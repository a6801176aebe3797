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

#include <fstream>
#include <sstream>

#include "sagfn/errors.h"
#include "sagfn/fragments.h"
#include "sagfn/graph_io.h"

namespace sagfn {

using nlohmann::json;

json Vocabulary::to_json() const {
  json out = json::array();
  for (const Fragment& f : fragments_) {
    json j = graph_to_json(f.graph);
    j["name"] = f.name;
    j["attachment_points"] = f.attachment_points;
    if (f.approx_n) j["approx_N"] = *f.approx_n;
    out.push_back(std::move(j));
  }
  return out;
}

Vocabulary Vocabulary::from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("vocabulary must be a JSON array");
  std::vector<Fragment> fragments;
  for (size_t i = 0; i < j.size(); ++i) {
    const json& r = j[i];
    if (!r.is_object()) throw ConfigError("vocabulary entries must be objects");
    LabeledGraph g = graph_from_json(r);
    std::vector<int> aps;
    std::optional<int> approx_n;
    std::string name = "fragment" + std::to_string(i);
    try {
      if (r.contains("attachment_points")) {
        aps = r.at("attachment_points").get<std::vector<int>>();
      }
      if (r.contains("approx_N")) approx_n = r.at("approx_N").get<int>();
      if (r.contains("name")) name = r.at("name").get<std::string>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad vocabulary entry: ") + e.what());
    }
    fragments.push_back(make_fragment(name, std::move(g), aps, approx_n));
  }
  return Vocabulary(std::move(fragments));
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open vocabulary file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  json j = json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) throw ConfigError("vocabulary file is not JSON: " + path);
  return from_json(j);
}

Vocabulary builtin_vocabulary() {
  LabeledGraph triangle(3);
  triangle.add_edge(0, 1);
  triangle.add_edge(1, 2);
  triangle.add_edge(0, 2);
  LabeledGraph square(4);
  for (int i = 0; i < 4; ++i) square.add_edge(i, (i + 1) % 4);
  LabeledGraph path3(3);
  path3.add_edge(0, 1);
  path3.add_edge(1, 2);
  LabeledGraph tail(2, {1, 0});
  tail.add_edge(0, 1);
  return Vocabulary({make_fragment("triangle", triangle, {0, 1, 2}, 3),
                     make_fragment("square", square, {0, 2}, 2),
                     make_fragment("path3", path3, {0, 2}, 2),
                     make_fragment("tail", tail, {1}, 1)});
}

std::unique_ptr<Environment> make_environment(const EnvConfig& c) {
  if (c.env != "fragment") return make_node_env(c);
  if (c.max_nodes || c.max_edges || c.max_degree || c.node_types) {
    throw ConfigError("the fragment env only takes vocabulary, max_fragments "
                      "and reward_floor");
  }
  Vocabulary vocab =
      c.vocabulary ? Vocabulary::load(*c.vocabulary) : builtin_vocabulary();
  auto env = std::make_unique<FragmentEnv>(std::move(vocab), c.max_fragments.value_or(3),
                                           c.reward_floor.value_or(1.0));
  if (c.vocabulary) env->vocabulary_path_ = *c.vocabulary;
  return env;
}

}  // namespace sagfn
