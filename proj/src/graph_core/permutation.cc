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

#include "sagfn/permutation.h"

#include <string>

#include "sagfn/errors.h"

namespace sagfn {

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
  const int n = size();
  std::vector<char> hit(n, 0);
  for (int v = 0; v < n; ++v) {
    const int w = map_[v];
    if (w < 0 || w >= n || hit[w]) {
      throw InvalidPermutationError("mapping is not a bijection on 0.." +
                                    std::to_string(n - 1));
    }
    hit[w] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(n);
  for (int v = 0; v < n; ++v) m[v] = v;
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (int v = 0; v < size(); ++v) inv[map_[v]] = v;
  Permutation p;
  p.map_ = std::move(inv);
  return p;
}

Permutation Permutation::then(const Permutation& q) const {
  if (q.size() != size()) {
    throw InvalidPermutationError("composing permutations of different size");
  }
  Permutation r;
  r.map_.resize(map_.size());
  for (int v = 0; v < size(); ++v) r.map_[v] = q.map_[map_[v]];
  return r;
}

bool Permutation::is_identity() const {
  for (int v = 0; v < size(); ++v) {
    if (map_[v] != v) return false;
  }
  return true;
}

LabeledGraph apply_permutation(const LabeledGraph& g, const Permutation& p) {
  const int n = g.node_count();
  if (p.size() != n) {
    throw InvalidPermutationError("permutation on " + std::to_string(p.size()) +
                                  " points applied to a graph with " +
                                  std::to_string(n) + " nodes");
  }
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[p(v)] = g.node_label(v);
  LabeledGraph h(n, labels);
  for (const Edge& e : g.edges()) h.add_edge(p(e.u), p(e.v), e.label);
  for (const auto& [k, val] : g.attributes()) h.set_attribute(k, val);
  return h;
}

}  // namespace sagfn
