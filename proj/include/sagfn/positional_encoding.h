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

#ifndef SAGFN_POSITIONAL_ENCODING_H_
#define SAGFN_POSITIONAL_ENCODING_H_

#include <array>
#include <vector>

#include "sagfn/grouping.h"
#include "sagfn/labeled_graph.h"
#include "sagfn/state_dag.h"

namespace sagfn {

inline constexpr int kPeDim = 8;
using PeVector = std::array<double, kPeDim>;

// Row u holds ((A D^-1)^k c)_u for k = 0..7, with c_u = log(type_u + 2).
// Isolated nodes get zero columns in D^-1, so their entries vanish for k > 0.
std::vector<PeVector> pe_vectors(const LabeledGraph& g);

// Component-wise relative tolerance of 1e-9.
bool pe_equal(const PeVector& a, const PeVector& b);

// Groups actions of the same type and label whose targets have equal PEs:
// node PE for node actions, endpoint sum for pair actions, member sum for
// vertex sets. Actions without a target form one group per type and label.
std::vector<ActionClass> pe_group(const LabeledGraph& g,
                                  const std::vector<GraphAction>& actions);

// PE group sizes for every orbit class of a DAG.
struct PeTable {
  std::vector<int> forward_group;  // per flat forward class, local group id
  std::vector<int> forward_count;  // concrete actions in the class's PE group
  std::vector<int> backward_count;
  // Orbit classes merged with another class by PE matching.
  int merged_forward_classes = 0;
};

// Throws DomainError if a PE group ever splits an orbit class.
PeTable build_pe_table(const StateDag& dag);

}  // namespace sagfn

#endif  // SAGFN_POSITIONAL_ENCODING_H_
