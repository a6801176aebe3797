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

#include "sagfn/state_dag.h"

#include <cmath>
#include <cstdio>
#include <queue>
#include <utility>

#include "json.hpp"
#include "sagfn/errors.h"
#include "sagfn/grouping.h"
#include "sagfn/symmetry.h"

namespace sagfn {
namespace {

// Strictly increased by every forward action of every environment here.
int size_key(const LabeledGraph& g) {
  return g.node_count() + g.edge_count() + (g.terminated() ? 1 : 0);
}

struct Incoming {
  int predecessor;
  int forward_index;  // flat
  GraphAction reverse;  // in the successor's canonical coordinates
};

}  // namespace

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

CompactAction CompactAction::from(const GraphAction& a) {
  CompactAction c;
  c.type = static_cast<std::int8_t>(a.type);
  c.u = static_cast<std::int8_t>(a.u);
  c.v = static_cast<std::int8_t>(a.v);
  c.label = static_cast<std::int16_t>(a.label);
  for (int x : a.vertices) c.vertices |= std::uint64_t{1} << x;
  return c;
}

GraphAction CompactAction::expand() const {
  GraphAction a;
  a.type = static_cast<ActionType>(type);
  a.u = u;
  a.v = v;
  a.label = label;
  for (int x = 0; x < 64; ++x) {
    if (vertices >> x & 1) a.vertices.push_back(x);
  }
  return a;
}

StateDag StateDag::enumerate(const Environment& env,
                             const EnumerateOptions& options) {
  StateDag dag;
  dag.env_ = &env;
  using Item = std::pair<int, int>;  // (size key, state id)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::unordered_map<int, std::vector<Incoming>> pending;

  auto add_state = [&](const CanonicalResult& cr) {
    auto [it, inserted] =
        dag.by_form_.emplace(cr.form.bytes(), static_cast<int>(dag.states_.size()));
    if (!inserted) return it->second;
    if (static_cast<std::int64_t>(dag.states_.size()) >= options.max_states) {
      throw EnumerationOverflowError("more than " + std::to_string(options.max_states) +
                                     " states");
    }
    DagState st;
    st.graph = cr.graph;
    st.hash = cr.form.hash();
    st.aut = cr.group.order();
    st.terminal = cr.graph.terminated();
    dag.states_.push_back(std::move(st));
    heap.emplace(size_key(cr.graph), it->second);
    return it->second;
  };

  add_state(canonicalize(env.initial_graph()));
  while (!heap.empty()) {
    const int s = heap.top().second;
    heap.pop();
    const LabeledGraph g = dag.states_[s].graph;
    const AutomorphismGroup grp = automorphism_group(g);

    // Backward classes, then the forward classes that lead here.
    const std::vector<GraphAction> bwd = env.backward_actions(g);
    const std::vector<ActionClass> bclasses = group_by_orbit(g, bwd, grp);
    std::map<ActionOrbitKey, int> bkey;
    const int bwd_begin = static_cast<int>(dag.backward_.size());
    for (size_t j = 0; j < bclasses.size(); ++j) {
      const GraphAction& rep = bclasses[j].representative;
      bkey.emplace(action_orbit_key(g, rep, grp), static_cast<int>(j));
      dag.backward_.push_back(
          {CompactAction::from(rep), -1, bclasses[j].multiplicity, -1});
    }
    auto pit = pending.find(s);
    if (pit != pending.end()) {
      for (const Incoming& in : pit->second) {
        auto k = bkey.find(action_orbit_key(g, in.reverse, grp));
        if (k == bkey.end()) {
          throw DomainError("reverse of a forward action is not a legal backward action");
        }
        BackwardClass& bc = dag.backward_[bwd_begin + k->second];
        if (bc.predecessor != -1) {
          throw DomainError("two forward classes undo into one backward class");
        }
        ForwardClass& fc = dag.forward_[in.forward_index];
        const DagState& pred = dag.states_[in.predecessor];
        bc.predecessor = in.predecessor;
        bc.forward_class = in.forward_index - pred.fwd_begin;
        fc.back_class = k->second;
        const double expected = env.log_transition_ratio(
            pred.graph, fc.representative.expand(), pred.aut, dag.states_[s].aut);
        const double got = std::log(static_cast<double>(fc.multiplicity) / bc.multiplicity);
        if (std::abs(expected - got) > 1e-9) {
          throw DomainError("orbit ratio law violated at " +
                            fc.representative.expand().to_string());
        }
      }
      pending.erase(pit);
    }
    for (int j = bwd_begin; j < static_cast<int>(dag.backward_.size()); ++j) {
      if (dag.backward_[j].predecessor < 0) {
        throw DomainError("backward class with no forward counterpart: " +
                          dag.backward_[j].representative.expand().to_string());
      }
    }

    DagState& st = dag.states_[s];
    st.backward_total = static_cast<int>(bwd.size());
    st.bwd_begin = bwd_begin;
    st.bwd_end = static_cast<int>(dag.backward_.size());
    st.fwd_begin = st.fwd_end = static_cast<int>(dag.forward_.size());
    if (st.terminal) {
      st.reward = env.reward(g);
      st.log_correction = env.log_reward_correction(g, st.aut);
      dag.terminals_.push_back(s);
      dag.order_.push_back(s);
      continue;
    }

    const std::vector<GraphAction> fwd = env.forward_actions(g);
    if (fwd.empty()) throw DomainError("dead-end state " + g.debug_string());
    const std::vector<ActionClass> fclasses = group_by_orbit(g, fwd, grp);
    for (const ActionClass& c : fclasses) {
      const GraphAction& a = c.representative;
      const LabeledGraph next = env.apply(g, a);
      if (size_key(next) <= size_key(g)) {
        throw DomainError("action does not grow the graph: " + a.to_string());
      }
      const CanonicalResult cr = canonicalize(next);
      const int succ = add_state(cr);
      const int flat = static_cast<int>(dag.forward_.size());
      dag.forward_.push_back({CompactAction::from(a), succ, c.multiplicity, -1});
      pending[succ].push_back(
          {s, flat, map_action(env.reverse_action(g, a), cr.labeling)});
    }
    dag.states_[s].fwd_end = static_cast<int>(dag.forward_.size());
    dag.order_.push_back(s);
  }
  std::sort(dag.terminals_.begin(), dag.terminals_.end());
  for (int s = 0; s < dag.size(); ++s) {
    if (!dag.by_hash_.emplace(dag.states_[s].hash, s).second) dag.hash_collision_ = true;
  }
  return dag;
}

int StateDag::find(const LabeledGraph& g) const {
  auto it = by_form_.find(canonical_form(g).bytes());
  return it == by_form_.end() ? -1 : it->second;
}

int StateDag::find_hash(std::uint64_t hash) const {
  if (hash_collision_) throw DomainError("state hashes collide in this DAG");
  auto it = by_hash_.find(hash);
  return it == by_hash_.end() ? -1 : it->second;
}

StateDag::Location StateDag::locate(const LabeledGraph& g, const GraphAction& a,
                                    bool fwd) const {
  const CanonicalResult cr = canonicalize(g);
  auto it = by_form_.find(cr.form.bytes());
  if (it == by_form_.end()) throw DomainError("graph is not a state of this DAG");
  const int s = it->second;
  const AutomorphismGroup grp = automorphism_group(cr.graph);
  const ActionOrbitKey key = action_orbit_key(cr.graph, map_action(a, cr.labeling), grp);
  if (fwd) {
    const auto cls = forward(s);
    for (size_t i = 0; i < cls.size(); ++i) {
      if (action_orbit_key(cr.graph, cls[i].representative.expand(), grp) == key) {
        return {s, static_cast<int>(i)};
      }
    }
  } else {
    const auto cls = backward(s);
    for (size_t i = 0; i < cls.size(); ++i) {
      if (action_orbit_key(cr.graph, cls[i].representative.expand(), grp) == key) {
        return {s, static_cast<int>(i)};
      }
    }
  }
  throw IllegalActionError(a.to_string() + " is illegal: not an action of this state");
}

StateDag::Location StateDag::locate_forward(const LabeledGraph& g,
                                            const GraphAction& a) const {
  return locate(g, a, true);
}

StateDag::Location StateDag::locate_backward(const LabeledGraph& g,
                                             const GraphAction& b) const {
  return locate(g, b, false);
}

}  // namespace sagfn
