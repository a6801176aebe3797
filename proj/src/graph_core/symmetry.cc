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

#include <cstdio>
#include <numeric>
#include <string>

#include "sagfn/errors.h"
#include "sagfn/symmetry.h"

namespace sagfn {
namespace {

int find_root(std::vector<int>& root, int v) {
  while (root[v] != v) {
    root[v] = root[root[v]];
    v = root[v];
  }
  return v;
}

void unite(std::vector<int>& root, int a, int b) {
  a = find_root(root, a);
  b = find_root(root, b);
  if (a == b) return;
  if (a < b) {
    root[b] = a;
  } else {
    root[a] = b;
  }
}

}  // namespace

std::uint64_t CanonicalForm::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes_) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string CanonicalForm::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash()));
  return buf;
}

std::vector<int> orbit_partition(int n, const std::vector<Permutation>& gens) {
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  for (const Permutation& p : gens) {
    for (int v = 0; v < n; ++v) unite(root, v, p(v));
  }
  for (int v = 0; v < n; ++v) root[v] = find_root(root, v);
  return root;
}

AutomorphismGroup::AutomorphismGroup(int n, std::uint64_t order,
                                     std::vector<Permutation> generators)
    : n_(n), order_(order), gens_(std::move(generators)) {
  node_orbit_ = orbit_partition(n, gens_);
  node_orbit_size_.assign(n, 0);
  for (int v = 0; v < n; ++v) ++node_orbit_size_[node_orbit_[v]];

  const int nn = n * n;
  std::vector<int> root(nn);
  std::iota(root.begin(), root.end(), 0);
  for (const Permutation& p : gens_) {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        int a = p(u), b = p(v);
        if (a > b) std::swap(a, b);
        unite(root, u * n + v, a * n + b);
      }
    }
  }
  pair_orbit_.assign(nn, -1);
  pair_orbit_size_.assign(nn, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const int r = find_root(root, u * n + v);
      pair_orbit_[u * n + v] = pair_orbit_[v * n + u] = r;
      ++pair_orbit_size_[r];
    }
  }
}

int AutomorphismGroup::node_orbit_count() const {
  int count = 0;
  for (int v = 0; v < n_; ++v) count += node_orbit_[v] == v;
  return count;
}

std::vector<std::vector<int>> AutomorphismGroup::node_orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<int> slot(n_, -1);
  for (int v = 0; v < n_; ++v) {
    const int r = node_orbit_[v];
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(v);
  }
  return out;
}

int AutomorphismGroup::pair_orbit_size(int u, int v) const {
  return pair_orbit_size_[pair_orbit(u, v)];
}

bool are_isomorphic(const LabeledGraph& g1, const LabeledGraph& g2,
                    Permutation* witness) {
  if (g1.node_count() != g2.node_count() ||
      g1.edge_count() != g2.edge_count() ||
      g1.attributes() != g2.attributes()) {
    return false;
  }
  const CanonicalResult a = canonicalize(g1);
  const CanonicalResult b = canonicalize(g2);
  if (a.form != b.form) return false;
  if (witness != nullptr) *witness = a.labeling.then(b.labeling.inverse());
  return true;
}

std::uint64_t stabilizer_order(const LabeledGraph& g,
                               const std::vector<int>& target) {
  const int n = g.node_count();
  std::vector<char> in(n, 0);
  for (int v : target) {
    if (v < 0 || v >= n) {
      throw InvalidTargetError("target vertex " + std::to_string(v) +
                               " out of range");
    }
    if (in[v]) throw InvalidTargetError("target has repeated vertices");
    in[v] = 1;
  }
  LabeledGraph marked = g;
  for (int v = 0; v < n; ++v) {
    const int label = 2 * g.node_label(v) + in[v];
    if (label > LabeledGraph::kMaxNodeLabel) {
      throw DomainError("node label too large to mark a target");
    }
    marked.set_node_label(v, label);
  }
  return automorphism_group(marked).order();
}

std::uint64_t subgraph_orbit_size(const LabeledGraph& g,
                                  const std::vector<int>& vertex_set) {
  const std::uint64_t stab = stabilizer_order(g, vertex_set);
  return automorphism_group(g).order() / stab;
}

}  // namespace sagfn
