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

#include "sagfn/action.h"

#include <algorithm>
#include <sstream>
#include <utility>

namespace sagfn {

const char* action_type_name(ActionType t) {
  switch (t) {
    case ActionType::kAddNode: return "AddNode";
    case ActionType::kAddEdge: return "AddEdge";
    case ActionType::kSetNodeAttribute: return "SetNodeAttribute";
    case ActionType::kSetEdgeAttribute: return "SetEdgeAttribute";
    case ActionType::kStop: return "Stop";
    case ActionType::kAddFragment: return "AddFragment";
    case ActionType::kAddFragmentEdge: return "AddFragmentEdge";
    case ActionType::kRemoveNode: return "RemoveNode";
    case ActionType::kRemoveEdge: return "RemoveEdge";
    case ActionType::kRemoveFragment: return "RemoveFragment";
    case ActionType::kRemoveFragmentEdge: return "RemoveFragmentEdge";
    case ActionType::kUnstop: return "Unstop";
  }
  return "?";
}

bool is_forward(ActionType t) {
  return static_cast<int>(t) <= static_cast<int>(ActionType::kAddFragmentEdge);
}

namespace {

GraphAction make(ActionType t, int u, int v, int label) {
  GraphAction a;
  a.type = t;
  if (u >= 0 && v >= 0 && u > v) std::swap(u, v);
  a.u = u;
  a.v = v;
  a.label = label;
  return a;
}

}  // namespace

GraphAction GraphAction::add_node(int anchor, int label) {
  return make(ActionType::kAddNode, anchor, -1, label);
}
GraphAction GraphAction::add_edge(int u, int v, int label) {
  return make(ActionType::kAddEdge, u, v, label);
}
GraphAction GraphAction::set_node_attribute(int u, int value) {
  return make(ActionType::kSetNodeAttribute, u, -1, value);
}
GraphAction GraphAction::set_edge_attribute(int u, int v, int value) {
  return make(ActionType::kSetEdgeAttribute, u, v, value);
}
GraphAction GraphAction::stop() { return make(ActionType::kStop, -1, -1, 0); }
GraphAction GraphAction::add_fragment(int fragment_id) {
  return make(ActionType::kAddFragment, -1, -1, fragment_id);
}
GraphAction GraphAction::add_fragment_edge(int u, int v) {
  return make(ActionType::kAddFragmentEdge, u, v, 0);
}
GraphAction GraphAction::remove_node(int u) {
  return make(ActionType::kRemoveNode, u, -1, 0);
}
GraphAction GraphAction::remove_edge(int u, int v) {
  return make(ActionType::kRemoveEdge, u, v, 0);
}
GraphAction GraphAction::remove_fragment(std::vector<int> vertices) {
  GraphAction a = make(ActionType::kRemoveFragment, -1, -1, 0);
  std::sort(vertices.begin(), vertices.end());
  a.vertices = std::move(vertices);
  return a;
}
GraphAction GraphAction::remove_fragment_edge(int u, int v) {
  return make(ActionType::kRemoveFragmentEdge, u, v, 0);
}
GraphAction GraphAction::unstop() { return make(ActionType::kUnstop, -1, -1, 0); }

std::string GraphAction::to_string() const {
  std::ostringstream os;
  os << action_type_name(type) << "(";
  switch (type) {
    case ActionType::kAddNode:
      os << "anchor=" << u << ",type=" << label;
      break;
    case ActionType::kAddEdge:
    case ActionType::kSetEdgeAttribute:
      os << u << "," << v << "," << label;
      break;
    case ActionType::kSetNodeAttribute:
      os << u << "," << label;
      break;
    case ActionType::kAddFragment:
      os << "fragment=" << label;
      break;
    case ActionType::kAddFragmentEdge:
    case ActionType::kRemoveEdge:
    case ActionType::kRemoveFragmentEdge:
      os << u << "," << v;
      break;
    case ActionType::kRemoveNode:
      os << u;
      break;
    case ActionType::kRemoveFragment:
      for (size_t i = 0; i < vertices.size(); ++i) {
        os << (i ? "," : "") << vertices[i];
      }
      break;
    case ActionType::kStop:
    case ActionType::kUnstop:
      break;
  }
  os << ")";
  return os.str();
}

}  // namespace sagfn
