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

#include "sagfn/labeled_graph.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "sagfn/errors.h"

namespace sagfn {

LabeledGraph::LabeledGraph(int n) : LabeledGraph(n, std::vector<int>(n, 0)) {}

LabeledGraph::LabeledGraph(int n, const std::vector<int>& node_labels) {
  if (n < 0 || n > kMaxNodes) {
    throw DomainError("node count out of range: " + std::to_string(n));
  }
  if (static_cast<int>(node_labels.size()) != n) {
    throw DomainError("node label count does not match node count");
  }
  n_ = n;
  labels_.assign(n, 0);
  for (int v = 0; v < n; ++v) set_node_label(v, node_labels[v]);
  adj_.assign(n, 0);
  edge_labels_.assign(static_cast<size_t>(n) * n, 0);
}

void LabeledGraph::check_vertex(int v) const {
  if (v < 0 || v >= n_) {
    throw InvalidTargetError("vertex " + std::to_string(v) +
                             " out of range for " + std::to_string(n_) +
                             " nodes");
  }
}

void LabeledGraph::check_pair(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InvalidTargetError("self-loop requested");
}

void LabeledGraph::set_node_label(int v, int label) {
  check_vertex(v);
  if (label < 0 || label > kMaxNodeLabel) {
    throw DomainError("node label out of range: " + std::to_string(label));
  }
  labels_[v] = label;
}

void LabeledGraph::add_edge(int u, int v, int label) {
  check_pair(u, v);
  if (has_edge(u, v)) {
    throw DomainError("duplicate edge " + std::to_string(u) + "-" +
                      std::to_string(v));
  }
  adj_[u] |= std::uint64_t{1} << v;
  adj_[v] |= std::uint64_t{1} << u;
  set_edge_label(u, v, label);
}

void LabeledGraph::remove_edge(int u, int v) {
  check_pair(u, v);
  if (!has_edge(u, v)) {
    throw DomainError("no edge " + std::to_string(u) + "-" +
                      std::to_string(v));
  }
  adj_[u] &= ~(std::uint64_t{1} << v);
  adj_[v] &= ~(std::uint64_t{1} << u);
  edge_labels_[u * n_ + v] = 0;
  edge_labels_[v * n_ + u] = 0;
}

void LabeledGraph::set_edge_label(int u, int v, int label) {
  check_pair(u, v);
  if (label < 0 || label > kMaxEdgeLabel) {
    throw DomainError("edge label out of range: " + std::to_string(label));
  }
  if (!has_edge(u, v)) throw DomainError("labeling a missing edge");
  edge_labels_[u * n_ + v] = static_cast<std::uint8_t>(label);
  edge_labels_[v * n_ + u] = static_cast<std::uint8_t>(label);
}

int LabeledGraph::add_node(int label) {
  if (n_ == kMaxNodes) throw DomainError("graph is full");
  const int m = n_ + 1;
  std::vector<std::uint8_t> el(static_cast<size_t>(m) * m, 0);
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) el[u * m + v] = edge_labels_[u * n_ + v];
  }
  edge_labels_ = std::move(el);
  labels_.push_back(0);
  adj_.push_back(0);
  n_ = m;
  set_node_label(m - 1, label);
  return m - 1;
}

void LabeledGraph::remove_node(int v) {
  check_vertex(v);
  const int m = n_ - 1;
  std::vector<std::uint8_t> el(static_cast<size_t>(m) * m, 0);
  std::vector<std::uint64_t> adj(m, 0);
  const std::uint64_t low = (std::uint64_t{1} << v) - 1;
  for (int a = 0, x = 0; a < n_; ++a) {
    if (a == v) continue;
    const std::uint64_t row = adj_[a];
    adj[x] = (row & low) | ((row >> 1) & ~low);
    for (int b = 0, y = 0; b < n_; ++b) {
      if (b == v) continue;
      el[x * m + y] = edge_labels_[a * n_ + b];
      ++y;
    }
    ++x;
  }
  labels_.erase(labels_.begin() + v);
  adj_ = std::move(adj);
  edge_labels_ = std::move(el);
  n_ = m;
}

int LabeledGraph::degree(int v) const { return std::popcount(adj_[v]); }

int LabeledGraph::edge_count() const {
  int twice = 0;
  for (std::uint64_t row : adj_) twice += std::popcount(row);
  return twice / 2;
}

std::vector<Edge> LabeledGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    std::uint64_t row = adj_[u] >> u >> 1;
    int v = u + 1;
    while (row) {
      const int s = std::countr_zero(row);
      v += s;
      out.push_back({u, v, edge_labels_[u * n_ + v]});
      row >>= s;
      row >>= 1;
      ++v;
    }
  }
  return out;
}

int LabeledGraph::attribute(const std::string& key, int fallback) const {
  auto it = attrs_.find(key);
  return it == attrs_.end() ? fallback : it->second;
}

void LabeledGraph::set_attribute(const std::string& key, int value) {
  if (key.empty() || key.size() > 255) {
    throw DomainError("attribute key must have 1..255 bytes");
  }
  attrs_[key] = value;
}

void LabeledGraph::erase_attribute(const std::string& key) { attrs_.erase(key); }

bool LabeledGraph::terminated() const {
  return attribute(kTerminatedKey, 0) != 0;
}

void LabeledGraph::set_terminated(bool value) {
  // Absent rather than zero, so the flag never changes the canonical bytes of
  // a non-terminal graph.
  if (value) {
    attrs_[kTerminatedKey] = 1;
  } else {
    attrs_.erase(kTerminatedKey);
  }
}

std::vector<int> LabeledGraph::component_ids() const {
  std::vector<int> comp(n_, -1);
  int next = 0;
  for (int s = 0; s < n_; ++s) {
    if (comp[s] >= 0) continue;
    std::uint64_t seen = std::uint64_t{1} << s;
    std::uint64_t frontier = seen;
    while (frontier) {
      std::uint64_t grow = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) {
        grow |= adj_[std::countr_zero(f)];
      }
      frontier = grow & ~seen;
      seen |= grow;
    }
    for (std::uint64_t f = seen; f; f &= f - 1) comp[std::countr_zero(f)] = next;
    ++next;
  }
  return comp;
}

int LabeledGraph::component_count() const {
  if (n_ == 0) return 0;
  const std::vector<int> comp = component_ids();
  return *std::max_element(comp.begin(), comp.end()) + 1;
}

std::string LabeledGraph::debug_string() const {
  std::ostringstream os;
  os << "n=" << n_ << " labels=[";
  for (int v = 0; v < n_; ++v) os << (v ? "," : "") << labels_[v];
  os << "] edges=[";
  bool first = true;
  for (const Edge& e : edges()) {
    os << (first ? "" : ",") << e.u << "-" << e.v;
    if (e.label) os << ":" << e.label;
    first = false;
  }
  os << "]";
  for (const auto& [k, val] : attrs_) os << " " << k << "=" << val;
  return os.str();
}

bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.n_ != b.n_ || a.labels_ != b.labels_ || a.adj_ != b.adj_ ||
      a.attrs_ != b.attrs_) {
    return false;
  }
  for (int u = 0; u < a.n_; ++u) {
    for (int v = 0; v < a.n_; ++v) {
      if (a.has_edge(u, v) && a.edge_label(u, v) != b.edge_label(u, v)) {
        return false;
      }
    }
  }
  return true;
}

LabeledGraph disjoint_union(const LabeledGraph& a, const LabeledGraph& b) {
  std::vector<int> labels = a.node_labels();
  labels.insert(labels.end(), b.node_labels().begin(), b.node_labels().end());
  LabeledGraph g(a.node_count() + b.node_count(), labels);
  for (const Edge& e : a.edges()) g.add_edge(e.u, e.v, e.label);
  const int off = a.node_count();
  for (const Edge& e : b.edges()) g.add_edge(e.u + off, e.v + off, e.label);
  for (const auto& [k, val] : a.attributes()) g.set_attribute(k, val);
  return g;
}

LabeledGraph induced_subgraph(const LabeledGraph& g,
                              const std::vector<int>& vertices) {
  const int m = static_cast<int>(vertices.size());
  std::vector<int> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = g.node_label(vertices[i]);
  LabeledGraph h(m, labels);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (g.has_edge(vertices[i], vertices[j])) {
        h.add_edge(i, j, g.edge_label(vertices[i], vertices[j]));
      }
    }
  }
  return h;
}

}  // namespace sagfn
