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

#ifndef SAGFN_LABELED_GRAPH_H_
#define SAGFN_LABELED_GRAPH_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sagfn {

struct Edge {
  int u;
  int v;
  int label;
  friend bool operator==(const Edge&, const Edge&) = default;
};

using AttributeMap = std::map<std::string, int>;

// Undirected simple graph with small-integer node and edge labels and a map
// of integer graph attributes. Adjacency is kept as 64-bit rows, so at most
// 64 vertices are supported.
class LabeledGraph {
 public:
  static constexpr int kMaxNodes = 64;
  static constexpr int kMaxNodeLabel = 65535;
  static constexpr int kMaxEdgeLabel = 254;
  static constexpr const char* kTerminatedKey = "terminated";

  LabeledGraph() = default;
  explicit LabeledGraph(int n);
  LabeledGraph(int n, const std::vector<int>& node_labels);

  int node_count() const { return n_; }
  int node_label(int v) const { return labels_[v]; }
  const std::vector<int>& node_labels() const { return labels_; }
  void set_node_label(int v, int label);

  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1u; }
  // -1 when u and v are not adjacent.
  int edge_label(int u, int v) const {
    return has_edge(u, v) ? edge_labels_[u * n_ + v] : -1;
  }
  void add_edge(int u, int v, int label = 0);
  void remove_edge(int u, int v);
  void set_edge_label(int u, int v, int label);

  // Appends a vertex and returns its index.
  int add_node(int label = 0);
  // Removes v and its incident edges; vertices above v shift down by one.
  void remove_node(int v);

  std::uint64_t neighbor_mask(int v) const { return adj_[v]; }
  int degree(int v) const;
  int edge_count() const;
  // Sorted by (u, v) with u < v.
  std::vector<Edge> edges() const;

  const AttributeMap& attributes() const { return attrs_; }
  int attribute(const std::string& key, int fallback = 0) const;
  void set_attribute(const std::string& key, int value);
  void erase_attribute(const std::string& key);
  bool terminated() const;
  void set_terminated(bool value);

  // Component index per vertex, numbered in order of lowest vertex.
  std::vector<int> component_ids() const;
  int component_count() const;
  // The empty graph counts as connected.
  bool is_connected() const { return component_count() <= 1; }

  std::string debug_string() const;

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b);

 private:
  void check_vertex(int v) const;
  void check_pair(int u, int v) const;

  int n_ = 0;
  std::vector<int> labels_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::uint8_t> edge_labels_;  // n_ x n_, valid where adjacent
  AttributeMap attrs_;
};

// Disjoint union; vertices of b are shifted by a.node_count(). Attributes of a
// are kept.
LabeledGraph disjoint_union(const LabeledGraph& a, const LabeledGraph& b);

// Subgraph induced on `vertices`, renumbered in the given order.
LabeledGraph induced_subgraph(const LabeledGraph& g,
                              const std::vector<int>& vertices);

}  // namespace sagfn

#endif  // SAGFN_LABELED_GRAPH_H_
