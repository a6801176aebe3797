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

#include "sagfn/environment.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sagfn/errors.h"
#include "sagfn/symmetry.h"

namespace sagfn {

std::vector<GraphAction> Environment::forward_actions(
    const LabeledGraph& g) const {
  std::vector<GraphAction> out;
  if (g.terminated()) return out;
  for (GraphAction& a : forward_candidates(g)) {
    if (forward_rule(g, a).empty()) out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GraphAction> Environment::backward_actions(
    const LabeledGraph& g) const {
  std::vector<GraphAction> out;
  for (GraphAction& b : backward_candidates(g)) {
    if (backward_violation(g, b).empty()) out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GraphAction> Environment::backward_candidates(
    const LabeledGraph& g) const {
  std::vector<GraphAction> out;
  if (g.terminated()) {
    out.push_back(GraphAction::unstop());
    return out;
  }
  for (int v = 0; v < g.node_count(); ++v) {
    out.push_back(GraphAction::remove_node(v));
  }
  for (const Edge& e : g.edges()) {
    out.push_back(GraphAction::remove_edge(e.u, e.v));
  }
  return out;
}

std::string Environment::forward_violation(const LabeledGraph& g,
                                           const GraphAction& a) const {
  if (!a.forward()) return "not a forward action";
  if (g.terminated()) return "graph is terminated";
  return forward_rule(g, a);
}

std::string Environment::backward_violation(const LabeledGraph& g,
                                            const GraphAction& b) const {
  if (b.forward()) return "not a backward action";
  if (g.terminated() != (b.type == ActionType::kUnstop)) {
    return g.terminated() ? "terminated graph only allows Unstop"
                          : "Unstop needs a terminated graph";
  }
  std::optional<Reversal> r;
  try {
    r = reverse(g, b);
  } catch (const Error& e) {
    return e.what();
  }
  if (!r) return "no forward action produces this graph that way";
  const std::string state = state_violation(r->predecessor);
  if (!state.empty()) return "predecessor is not a state: " + state;
  const std::string fwd = forward_rule(r->predecessor, r->forward);
  if (!fwd.empty()) return "reversed forward action is illegal: " + fwd;
  return "";
}

LabeledGraph Environment::apply(const LabeledGraph& g,
                                const GraphAction& a) const {
  const std::string why = forward_violation(g, a);
  if (!why.empty()) {
    throw IllegalActionError(a.to_string() + " is illegal: " + why);
  }
  return do_apply(g, a);
}

LabeledGraph Environment::apply_backward(const LabeledGraph& g,
                                         const GraphAction& b) const {
  const std::string why = backward_violation(g, b);
  if (!why.empty()) {
    throw IllegalActionError(b.to_string() + " is illegal: " + why);
  }
  return reverse(g, b)->predecessor;
}

std::pair<LabeledGraph, GraphAction> Environment::undo(
    const LabeledGraph& g, const GraphAction& b) const {
  const std::string why = backward_violation(g, b);
  if (!why.empty()) {
    throw IllegalActionError(b.to_string() + " is illegal: " + why);
  }
  Reversal r = *reverse(g, b);
  return {std::move(r.predecessor), std::move(r.forward)};
}

LabeledGraph Environment::do_apply(const LabeledGraph& g,
                                   const GraphAction& a) const {
  LabeledGraph h = g;
  switch (a.type) {
    case ActionType::kAddNode: {
      const int v = h.add_node(a.label);
      if (a.u >= 0) h.add_edge(a.u, v, 0);
      break;
    }
    case ActionType::kAddEdge:
      h.add_edge(a.u, a.v, a.label);
      break;
    case ActionType::kSetNodeAttribute:
      h.set_node_label(a.u, a.label);
      break;
    case ActionType::kSetEdgeAttribute:
      h.set_edge_label(a.u, a.v, a.label);
      break;
    case ActionType::kStop:
      h.set_terminated(true);
      break;
    default:
      throw IllegalActionError(a.to_string() +
                               " is not supported by this environment");
  }
  return h;
}

std::optional<Environment::Reversal> Environment::reverse(
    const LabeledGraph& g, const GraphAction& b) const {
  switch (b.type) {
    case ActionType::kUnstop: {
      if (!g.terminated()) return std::nullopt;
      LabeledGraph p = g;
      p.set_terminated(false);
      return Reversal{std::move(p), GraphAction::stop()};
    }
    case ActionType::kRemoveNode: {
      const int n = g.node_count();
      if (b.u < 0 || b.u >= n) return std::nullopt;
      const int deg = g.degree(b.u);
      LabeledGraph p = g;
      p.remove_node(b.u);
      // AddNode appends the new vertex last; the removed vertex need not be
      // last, so the predecessor is relabeled implicitly by remove_node.
      if (n == 1 && deg == 0) {
        return Reversal{std::move(p), GraphAction::add_node(-1, g.node_label(b.u))};
      }
      if (deg != 1) return std::nullopt;
      const int w = std::countr_zero(g.neighbor_mask(b.u));
      if (g.edge_label(b.u, w) != 0) return std::nullopt;
      const int anchor = w > b.u ? w - 1 : w;
      return Reversal{std::move(p), GraphAction::add_node(anchor, g.node_label(b.u))};
    }
    case ActionType::kRemoveEdge: {
      if (b.u < 0 || b.v >= g.node_count() || !g.has_edge(b.u, b.v)) {
        return std::nullopt;
      }
      LabeledGraph p = g;
      const int label = g.edge_label(b.u, b.v);
      p.remove_edge(b.u, b.v);
      return Reversal{std::move(p), GraphAction::add_edge(b.u, b.v, label)};
    }
    default:
      return std::nullopt;
  }
}

GraphAction Environment::reverse_action(const LabeledGraph& g,
                                        const GraphAction& a) const {
  switch (a.type) {
    case ActionType::kAddNode:
      return GraphAction::remove_node(g.node_count());
    case ActionType::kAddEdge:
      return GraphAction::remove_edge(a.u, a.v);
    case ActionType::kStop:
      return GraphAction::unstop();
    default:
      throw IllegalActionError(a.to_string() + " has no generic reversal");
  }
}

double Environment::reward(const LabeledGraph& g) const {
  if (!g.terminated()) throw DomainError("reward requested for a non-terminal graph");
  const double r = base_reward(g);
  if (!(r > 0)) throw DomainError("environment produced a non-positive reward");
  return r;
}

double Environment::log_reward_correction(const LabeledGraph& /*terminal*/,
                                          std::uint64_t aut) const {
  // The initial graph's group is constant over terminals and only rescales Z;
  // dividing by it keeps Z equal to the reward sum.
  const std::uint64_t aut0 = automorphism_group(initial_graph()).order();
  return std::log(static_cast<double>(aut)) - std::log(static_cast<double>(aut0));
}

double Environment::log_transition_ratio(const LabeledGraph& /*g*/,
                                         const GraphAction& /*a*/,
                                         std::uint64_t aut_g,
                                         std::uint64_t aut_next) const {
  return std::log(static_cast<double>(aut_g)) -
         std::log(static_cast<double>(aut_next));
}

// --- NodeEnv ---------------------------------------------------------------

NodeEnv::NodeEnv(NodeEnvSpec spec) : spec_(std::move(spec)) {
  if (spec_.max_nodes < 1 || spec_.max_nodes > LabeledGraph::kMaxNodes) {
    throw ConfigError("max_nodes must be in 1..64");
  }
  if (spec_.initial_nodes < 0 || spec_.initial_nodes > spec_.max_nodes) {
    throw ConfigError("initial node count exceeds max_nodes");
  }
  if (spec_.node_types < 1 || spec_.node_types > 256) {
    throw ConfigError("node_types must be in 1..256");
  }
  if (!(spec_.reward_floor > 0) && spec_.reward == RewardKind::kConstant) {
    throw ConfigError("constant reward must be positive");
  }
  if (spec_.reward_floor <= 0) throw ConfigError("reward_floor must be positive");
}

LabeledGraph NodeEnv::initial_graph() const {
  return LabeledGraph(spec_.initial_nodes);
}

nlohmann::json NodeEnv::config_json() const {
  nlohmann::json j;
  j["env"] = spec_.name;
  j["max_nodes"] = spec_.max_nodes;
  j["reward_floor"] = spec_.reward_floor;
  if (spec_.max_edges >= 0) j["max_edges"] = spec_.max_edges;
  if (spec_.max_degree >= 0) j["max_degree"] = spec_.max_degree;
  j["node_types"] = spec_.node_types;
  return j;
}

std::string NodeEnv::state_violation(const LabeledGraph& g) const {
  if (g.terminated()) return "terminated";
  const int n = g.node_count();
  if (n > spec_.max_nodes) return "more than max_nodes nodes";
  if (!spec_.add_node && n != spec_.initial_nodes) return "node count is fixed";
  if (n < spec_.initial_nodes) return "fewer nodes than the initial graph";
  if (spec_.max_edges >= 0 && g.edge_count() > spec_.max_edges) {
    return "more than max_edges edges";
  }
  for (int v = 0; v < n; ++v) {
    if (g.node_label(v) >= spec_.node_types) return "unknown node type";
    if (spec_.max_degree >= 0 && g.degree(v) > spec_.max_degree) {
      return "degree above max_degree";
    }
  }
  for (const Edge& e : g.edges()) {
    if (e.label != 0) return "edge labels are not used";
  }
  if (spec_.connected_states && !g.is_connected()) return "disconnected";
  return "";
}

std::vector<GraphAction> NodeEnv::forward_candidates(
    const LabeledGraph& g) const {
  std::vector<GraphAction> out;
  const int n = g.node_count();
  if (spec_.add_node) {
    for (int t = 0; t < spec_.node_types; ++t) {
      if (n == 0) {
        out.push_back(GraphAction::add_node(-1, t));
      } else {
        for (int u = 0; u < n; ++u) out.push_back(GraphAction::add_node(u, t));
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) out.push_back(GraphAction::add_edge(u, v));
    }
  }
  out.push_back(GraphAction::stop());
  return out;
}

std::string NodeEnv::forward_rule(const LabeledGraph& g,
                                  const GraphAction& a) const {
  const int n = g.node_count();
  const int e = g.edge_count();
  switch (a.type) {
    case ActionType::kAddNode: {
      if (!spec_.add_node) return "AddNode is not allowed";
      if (n >= spec_.max_nodes) return "max_nodes reached";
      if (a.label < 0 || a.label >= spec_.node_types) return "unknown node type";
      if (n == 0) return a.u == -1 ? "" : "the first node has no anchor";
      if (a.u < 0 || a.u >= n) return "anchor out of range";
      if (spec_.max_edges >= 0 && e + 1 > spec_.max_edges) {
        return "max_edges reached";
      }
      if (spec_.max_degree >= 0 && g.degree(a.u) + 1 > spec_.max_degree) {
        return "anchor at max_degree";
      }
      return "";
    }
    case ActionType::kAddEdge: {
      if (a.u < 0 || a.v >= n || a.u == a.v) return "endpoints out of range";
      if (g.has_edge(a.u, a.v)) return "edge already present";
      if (a.label != 0) return "edge labels are not used";
      if (spec_.max_edges >= 0 && e + 1 > spec_.max_edges) {
        return "max_edges reached";
      }
      if (spec_.max_degree >= 0 && (g.degree(a.u) + 1 > spec_.max_degree ||
                                    g.degree(a.v) + 1 > spec_.max_degree)) {
        return "endpoint at max_degree";
      }
      return "";
    }
    case ActionType::kStop:
      if (n == 0) return "cannot stop on the empty graph";
      if (!g.is_connected()) return "cannot stop on a disconnected graph";
      return "";
    default:
      return "action type not supported by this environment";
  }
}

int count_typed_4cliques(const LabeledGraph& g) {
  const int n = g.node_count();
  int count = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!g.has_edge(a, b)) continue;
      for (int c = b + 1; c < n; ++c) {
        if (!g.has_edge(a, c) || !g.has_edge(b, c)) continue;
        for (int d = c + 1; d < n; ++d) {
          if (!g.has_edge(a, d) || !g.has_edge(b, d) || !g.has_edge(c, d)) {
            continue;
          }
          const int t[4] = {g.node_label(a), g.node_label(b), g.node_label(c),
                            g.node_label(d)};
          int best = 0;
          for (int i = 0; i < 4; ++i) {
            best = std::max<int>(best, std::count(t, t + 4, t[i]));
          }
          count += best >= 3;
        }
      }
    }
  }
  return count;
}

int cyclomatic_number(const LabeledGraph& g) {
  return g.edge_count() - g.node_count() + g.component_count();
}

double NodeEnv::base_reward(const LabeledGraph& g) const {
  switch (spec_.reward) {
    case RewardKind::kConstant:
      return spec_.reward_floor;
    case RewardKind::kCliques:
      return spec_.reward_floor + count_typed_4cliques(g);
    case RewardKind::kCycles:
      return spec_.reward_floor + cyclomatic_number(g);
  }
  return spec_.reward_floor;
}

NodeEnvSpec illustrative_spec() {
  NodeEnvSpec s;
  s.name = "illustrative";
  s.initial_nodes = 6;
  s.max_nodes = 6;
  s.add_node = false;
  s.connected_states = false;
  s.reward = RewardKind::kConstant;
  s.reward_floor = 1.0;
  return s;
}

NodeEnvSpec clique_spec() {
  NodeEnvSpec s;
  s.name = "clique";
  s.max_nodes = 7;
  s.node_types = 2;
  s.reward = RewardKind::kCliques;
  s.reward_floor = 0.1;
  return s;
}

NodeEnvSpec cycle_spec() {
  NodeEnvSpec s;
  s.name = "cycle";
  s.max_nodes = 10;
  s.max_edges = 10;
  s.max_degree = 4;
  s.reward = RewardKind::kCycles;
  s.reward_floor = 1.0;
  return s;
}

}  // namespace sagfn
