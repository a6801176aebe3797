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

// Small named graphs used across tests. Vertex numbering is 0-based; the
// comments give the 1-based numbering of the original drawings.

#ifndef SAGFN_TESTS_FIXTURES_H_
#define SAGFN_TESTS_FIXTURES_H_

#include <utility>
#include <vector>

#include "sagfn/labeled_graph.h"

namespace sagfn::fixture {

inline LabeledGraph from_edges(int n,
                               const std::vector<std::pair<int, int>>& edges) {
  LabeledGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

// Star on 3 nodes: centre 1, leaves 2 and 3.
inline LabeledGraph star3() { return from_edges(3, {{0, 1}, {0, 2}}); }
// star3 with a new leaf on node 3, and on node 2.
inline LabeledGraph star3_grow_leaf3() {
  return from_edges(4, {{0, 1}, {0, 2}, {2, 3}});
}
inline LabeledGraph star3_grow_leaf2() {
  return from_edges(4, {{0, 1}, {0, 2}, {1, 3}});
}

// Spider with legs 1, 2, 2 around vertex 2: a-b-c-d and c-e-f.
inline LabeledGraph spider_122() {
  return from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {4, 5}});
}
// Spider with three legs of length 2 (centre 2). spider_122 plus 3-6.
inline LabeledGraph spider_222() {
  return from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {4, 5}, {3, 6}});
}
// 5-cycle through the centre with a 2-node tail: spider_222 with leaves 0
// and 6 joined.
inline LabeledGraph cycle5_tail2() {
  LabeledGraph g = spider_222();
  g.add_edge(0, 6);
  return g;
}

// Six-node graph where AddEdge(2,3) and AddEdge(4,6) give isomorphic
// results although 2-3 and 4-6 are in different pair orbits.
// 1-based edges: 1-6, 1-5, 2-4, 2-5, 2-6, 3-5, 5-6.
inline LabeledGraph two_class_graph() {
  return from_edges(6, {{0, 5}, {0, 4}, {1, 3}, {1, 4}, {1, 5}, {2, 4}, {4, 5}});
}

// Hexagon 1..6 with chord 3-6.
inline LabeledGraph hexagon_chord() {
  return from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {2, 5}});
}

inline LabeledGraph complete(int n) {
  LabeledGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

inline LabeledGraph cycle(int n) {
  LabeledGraph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

}  // namespace sagfn::fixture

#endif  // SAGFN_TESTS_FIXTURES_H_
