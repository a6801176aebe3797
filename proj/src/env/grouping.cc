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

#include "sagfn/grouping.h"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>

#include "sagfn/errors.h"

namespace sagfn {
namespace {

// Canonical form of g with `set` marked, so two sets share a key iff an
// automorphism maps one onto the other.
std::string set_orbit_key(const LabeledGraph& g, const std::vector<int>& set) {
  LabeledGraph marked = g;
  std::vector<char> in(g.node_count(), 0);
  for (int v : set) in[v] = 1;
  for (int v = 0; v < g.node_count(); ++v) {
    marked.set_node_label(v, 2 * g.node_label(v) + in[v]);
  }
  return canonical_form(marked).bytes();
}

}  // namespace

ActionOrbitKey action_orbit_key(const LabeledGraph& g, const GraphAction& a,
                                const AutomorphismGroup& grp) {
  int target = -1;
  std::string set_key;
  switch (a.type) {
    case ActionType::kAddNode:
    case ActionType::kSetNodeAttribute:
    case ActionType::kRemoveNode:
      if (a.u >= 0) target = grp.node_orbit(a.u);
      break;
    case ActionType::kAddEdge:
    case ActionType::kSetEdgeAttribute:
    case ActionType::kAddFragmentEdge:
    case ActionType::kRemoveEdge:
    case ActionType::kRemoveFragmentEdge:
      target = grp.pair_orbit(a.u, a.v);
      break;
    case ActionType::kRemoveFragment:
      set_key = set_orbit_key(g, a.vertices);
      break;
    case ActionType::kStop:
    case ActionType::kUnstop:
    case ActionType::kAddFragment:
      break;
  }
  return {static_cast<int>(a.type), a.label, target, std::move(set_key)};
}

GraphAction map_action(const GraphAction& a, const Permutation& p) {
  GraphAction b = a;
  if (a.u >= 0) b.u = p(a.u);
  if (a.v >= 0) b.v = p(a.v);
  if (b.v >= 0 && b.u > b.v) std::swap(b.u, b.v);
  for (int& x : b.vertices) x = p(x);
  std::sort(b.vertices.begin(), b.vertices.end());
  return b;
}

namespace {

template <typename Key>
std::vector<ActionClass> group_by_key(const std::vector<GraphAction>& actions,
                                      const std::vector<Key>& keys,
                                      ClassKind kind) {
  std::vector<ActionClass> out;
  std::map<Key, int> slot;
  for (size_t i = 0; i < actions.size(); ++i) {
    auto [it, inserted] = slot.emplace(keys[i], static_cast<int>(out.size()));
    if (inserted) {
      ActionClass c;
      c.representative = actions[i];
      c.kind = kind;
      out.push_back(std::move(c));
    }
    ActionClass& c = out[it->second];
    c.members.push_back(static_cast<int>(i));
    ++c.multiplicity;
  }
  return out;
}

}  // namespace

std::vector<ActionClass> group_by_orbit(const LabeledGraph& g,
                                        const std::vector<GraphAction>& actions,
                                        const AutomorphismGroup& group) {
  if (group.node_count() != g.node_count()) {
    throw DomainError("automorphism group belongs to another graph");
  }
  std::vector<ActionOrbitKey> keys;
  keys.reserve(actions.size());
  for (const GraphAction& a : actions) keys.push_back(action_orbit_key(g, a, group));
  return group_by_key(actions, keys, ClassKind::kOrbit);
}

std::vector<ActionClass> group_by_orbit(const LabeledGraph& g,
                                        const std::vector<GraphAction>& actions) {
  return group_by_orbit(g, actions, automorphism_group(g));
}

std::vector<ActionClass> group_by_transition(
    const Environment& env, const LabeledGraph& g,
    const std::vector<GraphAction>& actions) {
  std::vector<std::string> keys;
  keys.reserve(actions.size());
  for (const GraphAction& a : actions) {
    const LabeledGraph next =
        a.forward() ? env.apply(g, a) : env.apply_backward(g, a);
    keys.push_back(canonical_form(next).bytes());
  }
  return group_by_key(actions, keys, ClassKind::kTransition);
}

}  // namespace sagfn
