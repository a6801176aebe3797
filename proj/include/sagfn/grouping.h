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

#ifndef SAGFN_GROUPING_H_
#define SAGFN_GROUPING_H_

#include <vector>

#include "sagfn/action.h"
#include <string>
#include <tuple>

#include "sagfn/environment.h"
#include "sagfn/permutation.h"
#include "sagfn/labeled_graph.h"
#include "sagfn/symmetry.h"

namespace sagfn {

enum class ClassKind { kOrbit, kTransition };

struct ActionClass {
  GraphAction representative;  // first member in input order
  int multiplicity = 0;
  ClassKind kind = ClassKind::kOrbit;
  std::vector<int> members;    // indices into the grouped action list
};

// Same type, same label and targets in one orbit of Aut(g). Targets are the
// anchor or vertex (node actions), the unordered pair (pair actions) or the
// vertex set (RemoveFragment). Classes come in order of first member.
std::vector<ActionClass> group_by_orbit(const LabeledGraph& g,
                                        const std::vector<GraphAction>& actions,
                                        const AutomorphismGroup& group);
std::vector<ActionClass> group_by_orbit(const LabeledGraph& g,
                                        const std::vector<GraphAction>& actions);

// Two actions on g are orbit-equivalent iff their keys are equal.
using ActionOrbitKey = std::tuple<int, int, int, std::string>;
ActionOrbitKey action_orbit_key(const LabeledGraph& g, const GraphAction& a,
                                const AutomorphismGroup& group);

// The action on apply_permutation(g, p) corresponding to `a` on g.
GraphAction map_action(const GraphAction& a, const Permutation& p);

// Same class iff the resulting graphs are isomorphic: successors for forward
// actions, predecessors for backward ones.
std::vector<ActionClass> group_by_transition(
    const Environment& env, const LabeledGraph& g,
    const std::vector<GraphAction>& actions);

}  // namespace sagfn

#endif  // SAGFN_GROUPING_H_
