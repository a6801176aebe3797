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

#ifndef SAGFN_GRAPH_IO_H_
#define SAGFN_GRAPH_IO_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "sagfn/labeled_graph.h"

namespace sagfn {

// {"n": int, "node_labels": [int], "edges": [[u, v, label]], "attrs": {..}}.
// node_labels, edges and attrs may be omitted. Throws ConfigError.
LabeledGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const LabeledGraph& g);

struct GraphRecord {
  std::string id;           // "id" field when present, else the record index
  LabeledGraph graph;
  std::string error;        // parse failure for this record; graph is empty
  nlohmann::json raw;
};

// Reads a JSON array of graphs, a single graph object, or JSON lines.
// Malformed records are returned with `error` set instead of throwing.
std::vector<GraphRecord> read_graph_records(const std::string& path);

}  // namespace sagfn

#endif  // SAGFN_GRAPH_IO_H_
