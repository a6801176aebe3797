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

#ifndef SAGFN_ACTION_H_
#define SAGFN_ACTION_H_

#include <compare>
#include <string>
#include <vector>

namespace sagfn {

enum class ActionType : int {
  // Forward.
  kAddNode = 0,
  kAddEdge,
  kSetNodeAttribute,
  kSetEdgeAttribute,
  kStop,
  kAddFragment,
  kAddFragmentEdge,
  // Backward.
  kRemoveNode,
  kRemoveEdge,
  kRemoveFragment,
  kRemoveFragmentEdge,
  kUnstop,
};

const char* action_type_name(ActionType t);
bool is_forward(ActionType t);

// One concrete graph action. Field use by type:
//   AddNode            u = anchor (-1 when the graph is empty), label = type
//   AddEdge            u < v, label = edge label
//   SetNodeAttribute   u, label = value
//   SetEdgeAttribute   u < v, label = value
//   AddFragment        label = fragment id
//   AddFragmentEdge    u < v (one in the body, one in the new fragment)
//   RemoveNode         u
//   RemoveEdge         u < v
//   RemoveFragment     vertices (sorted)
//   RemoveFragmentEdge u < v
// Stop and Unstop carry nothing.
struct GraphAction {
  ActionType type = ActionType::kStop;
  int u = -1;
  int v = -1;
  int label = 0;
  std::vector<int> vertices;

  static GraphAction add_node(int anchor, int label);
  static GraphAction add_edge(int u, int v, int label = 0);
  static GraphAction set_node_attribute(int u, int value);
  static GraphAction set_edge_attribute(int u, int v, int value);
  static GraphAction stop();
  static GraphAction add_fragment(int fragment_id);
  static GraphAction add_fragment_edge(int u, int v);
  static GraphAction remove_node(int u);
  static GraphAction remove_edge(int u, int v);
  static GraphAction remove_fragment(std::vector<int> vertices);
  static GraphAction remove_fragment_edge(int u, int v);
  static GraphAction unstop();

  bool forward() const { return is_forward(type); }
  std::string to_string() const;

  friend auto operator<=>(const GraphAction&, const GraphAction&) = default;
  friend bool operator==(const GraphAction&, const GraphAction&) = default;
};

}  // namespace sagfn

#endif  // SAGFN_ACTION_H_
