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

#ifndef SAGFN_SYMMETRY_H_
#define SAGFN_SYMMETRY_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sagfn/labeled_graph.h"
#include "sagfn/permutation.h"

namespace sagfn {

// Byte serialization of the canonically relabeled graph. Two graphs have
// equal forms iff they are isomorphic (attributes included).
//
// Layout: u8 n; n x u16le node labels in canonical order; u16le edge count;
// sorted (u8 u, u8 v, u8 label) triples; u8 attribute count; per attribute
// u8 key length, key bytes, i32le value.
class CanonicalForm {
 public:
  CanonicalForm() = default;
  explicit CanonicalForm(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const { return bytes_; }
  // 64-bit FNV-1a of the bytes.
  std::uint64_t hash() const;
  // Zero-padded lowercase hex of hash().
  std::string hex() const;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;

 private:
  std::string bytes_;
};

struct CanonicalFormHash {
  size_t operator()(const CanonicalForm& f) const { return f.hash(); }
};

class AutomorphismGroup {
 public:
  AutomorphismGroup() = default;
  // Builds orbit tables from a generating set. `order` must be the group
  // order; it is not recomputed here.
  AutomorphismGroup(int n, std::uint64_t order,
                    std::vector<Permutation> generators);

  std::uint64_t order() const { return order_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  int node_count() const { return n_; }

  // Orbit id is the smallest vertex of the orbit.
  int node_orbit(int v) const { return node_orbit_[v]; }
  int node_orbit_size(int v) const { return node_orbit_size_[node_orbit_[v]]; }
  int node_orbit_count() const;
  std::vector<std::vector<int>> node_orbits() const;

  // Orbit of the unordered pair {u, v}, u != v, edges and non-edges alike.
  // The id is the lowest u * n + v (u < v) in the orbit.
  int pair_orbit(int u, int v) const { return pair_orbit_[u * n_ + v]; }
  int pair_orbit_size(int u, int v) const;

 private:
  int n_ = 0;
  std::uint64_t order_ = 1;
  std::vector<Permutation> gens_;
  std::vector<int> node_orbit_;
  std::vector<int> node_orbit_size_;
  std::vector<int> pair_orbit_;
  std::vector<int> pair_orbit_size_;
};

struct CanonicalResult {
  // labeling[v] is the canonical position of vertex v.
  Permutation labeling;
  LabeledGraph graph;
  CanonicalForm form;
  AutomorphismGroup group;
};

// One search tree yields the canonical labeling and a generating set of
// Aut(g). Throws DomainError if |Aut(g)| does not fit in 64 bits.
CanonicalResult canonicalize(const LabeledGraph& g);

CanonicalForm canonical_form(const LabeledGraph& g);
AutomorphismGroup automorphism_group(const LabeledGraph& g);

// When isomorphic and `witness` is non-null, apply_permutation(g1, *witness)
// equals g2.
bool are_isomorphic(const LabeledGraph& g1, const LabeledGraph& g2,
                    Permutation* witness = nullptr);

// Order of the setwise stabilizer of `target` in Aut(g). A single vertex
// gives the point stabilizer. Throws InvalidTargetError on bad vertices.
std::uint64_t stabilizer_order(const LabeledGraph& g,
                               const std::vector<int>& target);

// |{pi(U) : pi in Aut(g)}|.
std::uint64_t subgraph_orbit_size(const LabeledGraph& g,
                                  const std::vector<int>& vertex_set);

// Unions the cycles of `gens` into a partition of 0..n-1. Returns the root
// (lowest member) of each point's block.
std::vector<int> orbit_partition(int n, const std::vector<Permutation>& gens);

}  // namespace sagfn

#endif  // SAGFN_SYMMETRY_H_
