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

#ifndef SAGFN_PERMUTATION_H_
#define SAGFN_PERMUTATION_H_

#include <vector>

#include "sagfn/labeled_graph.h"

namespace sagfn {

// Bijection on 0..n-1. p(v) is the image of v.
class Permutation {
 public:
  Permutation() = default;
  // Throws InvalidPermutationError unless `mapping` is a bijection.
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int v) const { return map_[v]; }
  const std::vector<int>& mapping() const { return map_; }

  Permutation inverse() const;
  // v -> q(p(v)).
  Permutation then(const Permutation& q) const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> map_;
};

// Vertex v of g becomes vertex p(v) of the result.
LabeledGraph apply_permutation(const LabeledGraph& g, const Permutation& p);

}  // namespace sagfn

#endif  // SAGFN_PERMUTATION_H_
