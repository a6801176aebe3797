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

#include "sagfn/graph_io.h"

#include <fstream>
#include <sstream>

#include "sagfn/errors.h"

namespace sagfn {

using nlohmann::json;

LabeledGraph graph_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ConfigError("graph record is not an object");
    for (const auto& [key, _] : j.items()) {
      if (key != "n" && key != "node_labels" && key != "edges" &&
          key != "attrs" && key != "id" && key != "attachment_points" &&
          key != "approx_N" && key != "name") {
        throw ConfigError("unknown graph key '" + key + "'");
      }
    }
    if (!j.contains("n")) throw ConfigError("graph record lacks 'n'");
    const int n = j.at("n").get<int>();
    if (n < 0 || n > LabeledGraph::kMaxNodes) {
      throw ConfigError("'n' out of range");
    }
    std::vector<int> labels(n, 0);
    if (j.contains("node_labels")) {
      labels = j.at("node_labels").get<std::vector<int>>();
      if (static_cast<int>(labels.size()) != n) {
        throw ConfigError("'node_labels' length differs from 'n'");
      }
    }
    LabeledGraph g(n, labels);
    if (j.contains("edges")) {
      for (const json& e : j.at("edges")) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3) {
          throw ConfigError("edge must be [u, v] or [u, v, label]");
        }
        const int u = e[0].get<int>();
        const int v = e[1].get<int>();
        const int label = e.size() == 3 ? e[2].get<int>() : 0;
        g.add_edge(u, v, label);
      }
    }
    if (j.contains("attrs")) {
      for (const auto& [key, value] : j.at("attrs").items()) {
        const int x = value.is_boolean() ? static_cast<int>(value.get<bool>())
                                         : value.get<int>();
        if (key == LabeledGraph::kTerminatedKey) {
          g.set_terminated(x != 0);
        } else {
          g.set_attribute(key, x);
        }
      }
    }
    return g;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed graph: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid graph: ") + e.what());
  }
}

json graph_to_json(const LabeledGraph& g) {
  json j;
  j["n"] = g.node_count();
  j["node_labels"] = g.node_labels();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.label});
  j["edges"] = edges;
  json attrs = json::object();
  for (const auto& [key, value] : g.attributes()) attrs[key] = value;
  j["attrs"] = attrs;
  return j;
}

std::vector<GraphRecord> read_graph_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<json> items;
  std::vector<std::string> item_errors;
  try {
    const json whole = json::parse(text);
    if (whole.is_array()) {
      for (const json& x : whole) items.push_back(x);
    } else {
      items.push_back(whole);
    }
    item_errors.assign(items.size(), "");
  } catch (const json::exception&) {
    // Fall back to one record per non-empty line.
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        items.push_back(json::parse(line));
        item_errors.emplace_back();
      } catch (const json::exception& e) {
        items.emplace_back();
        item_errors.emplace_back(std::string("parse error: ") + e.what());
      }
    }
  }

  std::vector<GraphRecord> out;
  for (size_t i = 0; i < items.size(); ++i) {
    GraphRecord r;
    r.id = std::to_string(i);
    r.raw = items[i];
    if (items[i].is_object() && items[i].contains("id")) {
      const json& id = items[i]["id"];
      r.id = id.is_string() ? id.get<std::string>() : id.dump();
    }
    r.error = item_errors[i];
    if (r.error.empty()) {
      try {
        r.graph = graph_from_json(items[i]);
      } catch (const Error& e) {
        r.error = e.what();
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sagfn
