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

#include <algorithm>
#include <cmath>

#include "sagfn/errors.h"
#include "sagfn/fragments.h"

namespace sagfn {
namespace {

bool is_open(const LabeledGraph& g, int v) {
  return attach_of(g.node_label(v)) == kAttachOpen;
}

bool has_open(const LabeledGraph& g, const std::vector<int>& vertices) {
  return std::any_of(vertices.begin(), vertices.end(),
                     [&](int v) { return is_open(g, v); });
}

std::vector<std::vector<int>> components(const LabeledGraph& g) {
  const std::vector<int> comp = g.component_ids();
  std::vector<std::vector<int>> out;
  for (int v = 0; v < g.node_count(); ++v) {
    if (comp[v] >= static_cast<int>(out.size())) out.resize(comp[v] + 1);
    out[comp[v]].push_back(v);
  }
  return out;
}

}  // namespace

FragmentEnv::FragmentEnv(Vocabulary vocab, int max_fragments,
                         double reward_floor)
    : vocab_(std::move(vocab)),
      max_fragments_(max_fragments),
      reward_floor_(reward_floor) {
  if (vocab_.size() == 0) throw ConfigError("empty fragment vocabulary");
  if (max_fragments_ < 1) throw ConfigError("max_fragments must be positive");
  if (!(reward_floor_ > 0)) throw ConfigError("reward_floor must be positive");
}

nlohmann::json FragmentEnv::config_json() const {
  nlohmann::json j;
  j["env"] = "fragment";
  j["max_fragments"] = max_fragments_;
  j["reward_floor"] = reward_floor_;
  if (!vocabulary_path_.empty()) j["vocabulary"] = vocabulary_path_;
  return j;
}

std::string FragmentEnv::state_violation(const LabeledGraph& g) const {
  if (g.terminated()) return "terminated";
  if (g.node_count() == 0) return "";
  FragmentAssembly a;
  try {
    a = decompose(vocab_, g);
  } catch (const DomainError& e) {
    return e.what();
  }
  if (static_cast<int>(a.fragments.size()) > max_fragments_) {
    return "more than max_fragments fragments";
  }
  // Attachment bookkeeping: used points carry exactly one inter-fragment
  // edge, everything else none.
  std::vector<int> inter_deg(g.node_count(), 0);
  for (const Edge& e : a.inter_edges) {
    ++inter_deg[e.u];
    ++inter_deg[e.v];
  }
  std::vector<int> piece(g.node_count());
  for (size_t i = 0; i < a.fragments.size(); ++i) {
    for (int v : a.fragments[i].vertices) piece[v] = static_cast<int>(i);
  }
  for (int v = 0; v < g.node_count(); ++v) {
    const bool used = attach_of(g.node_label(v)) == kAttachUsed;
    if (inter_deg[v] != (used ? 1 : 0)) return "attachment bookkeeping broken";
  }
  for (const Edge& e : a.inter_edges) {
    if (piece[e.u] == piece[e.v]) return "inter-fragment edge inside a fragment";
  }
  const auto comps = components(g);
  const int frags = static_cast<int>(a.fragments.size());
  if (static_cast<int>(a.inter_edges.size()) != frags - static_cast<int>(comps.size())) {
    return "fragments do not form a tree";
  }
  if (comps.size() == 1) return "";
  if (comps.size() > 2) return "more than two components";
  // Pending: one component is a fresh fragment, the other a body with a free
  // attachment point.
  for (int fresh = 0; fresh < 2; ++fresh) {
    const auto& f = comps[fresh];
    const auto& body = comps[1 - fresh];
    int pieces_in_fresh = 0;
    for (const auto& p : a.fragments) {
      pieces_in_fresh += std::binary_search(f.begin(), f.end(), p.vertices[0]);
    }
    if (pieces_in_fresh != 1) continue;
    bool pristine = true;
    for (int v : f) pristine &= attach_of(g.node_label(v)) != kAttachUsed;
    if (pristine && has_open(g, f) && has_open(g, body)) return "";
  }
  return "two components but neither is a fresh fragment beside a body";
}

std::vector<GraphAction> FragmentEnv::forward_candidates(
    const LabeledGraph& g) const {
  std::vector<GraphAction> out;
  const auto comps = components(g);
  if (comps.size() == 2) {
    for (int u = 0; u < g.node_count(); ++u) {
      for (int v = u + 1; v < g.node_count(); ++v) {
        out.push_back(GraphAction::add_fragment_edge(u, v));
      }
    }
    return out;
  }
  for (int id = 0; id < vocab_.size(); ++id) {
    out.push_back(GraphAction::add_fragment(id));
  }
  out.push_back(GraphAction::stop());
  return out;
}

std::string FragmentEnv::forward_rule(const LabeledGraph& g,
                                      const GraphAction& a) const {
  const auto comps = components(g);
  const bool pending = comps.size() == 2;
  switch (a.type) {
    case ActionType::kAddFragment: {
      if (pending) return "a fragment is waiting to be attached";
      if (a.label < 0 || a.label >= vocab_.size()) return "unknown fragment";
      const Fragment& f = vocab_[a.label];
      if (g.node_count() + f.graph.node_count() > LabeledGraph::kMaxNodes) {
        return "graph would exceed 64 nodes";
      }
      if (g.node_count() == 0) return "";
      if (static_cast<int>(decompose(vocab_, g).fragments.size()) >= max_fragments_) {
        return "max_fragments reached";
      }
      if (f.attachment_points.empty()) return "fragment has no attachment point";
      std::vector<int> all(g.node_count());
      for (int v = 0; v < g.node_count(); ++v) all[v] = v;
      if (!has_open(g, all)) return "no open attachment point";
      return "";
    }
    case ActionType::kAddFragmentEdge: {
      if (!pending) return "no fragment is waiting to be attached";
      if (a.u < 0 || a.v >= g.node_count()) return "endpoints out of range";
      if (!is_open(g, a.u) || !is_open(g, a.v)) {
        return "endpoints must be open attachment points";
      }
      const std::vector<int> comp = g.component_ids();
      if (comp[a.u] == comp[a.v]) return "endpoints in the same component";
      return "";
    }
    case ActionType::kStop:
      if (g.node_count() == 0) return "cannot stop on the empty graph";
      if (pending) return "a fragment is waiting to be attached";
      return "";
    default:
      return "action type not supported by this environment";
  }
}

LabeledGraph FragmentEnv::do_apply(const LabeledGraph& g,
                                   const GraphAction& a) const {
  switch (a.type) {
    case ActionType::kAddFragment:
      return disjoint_union(g, vocab_[a.label].marked());
    case ActionType::kAddFragmentEdge: {
      LabeledGraph h = g;
      h.add_edge(a.u, a.v, kInterEdge);
      h.set_node_label(a.u, state_label(atom_of(g.node_label(a.u)), kAttachUsed));
      h.set_node_label(a.v, state_label(atom_of(g.node_label(a.v)), kAttachUsed));
      return h;
    }
    default:
      return Environment::do_apply(g, a);
  }
}

GraphAction FragmentEnv::reverse_action(const LabeledGraph& g,
                                        const GraphAction& a) const {
  switch (a.type) {
    case ActionType::kAddFragment: {
      std::vector<int> vs;
      for (int i = 0; i < vocab_[a.label].graph.node_count(); ++i) {
        vs.push_back(g.node_count() + i);
      }
      return GraphAction::remove_fragment(vs);
    }
    case ActionType::kAddFragmentEdge:
      return GraphAction::remove_fragment_edge(a.u, a.v);
    default:
      return Environment::reverse_action(g, a);
  }
}

std::vector<GraphAction> FragmentEnv::backward_candidates(
    const LabeledGraph& g) const {
  std::vector<GraphAction> out;
  if (g.terminated()) {
    out.push_back(GraphAction::unstop());
    return out;
  }
  for (const auto& c : components(g)) out.push_back(GraphAction::remove_fragment(c));
  for (const Edge& e : g.edges()) {
    if (e.label == kInterEdge) {
      out.push_back(GraphAction::remove_fragment_edge(e.u, e.v));
    }
  }
  return out;
}

std::optional<Environment::Reversal> FragmentEnv::reverse(
    const LabeledGraph& g, const GraphAction& b) const {
  switch (b.type) {
    case ActionType::kRemoveFragment: {
      const int n = g.node_count();
      std::vector<char> in(n, 0);
      for (int v : b.vertices) {
        if (v < 0 || v >= n) return std::nullopt;
        in[v] = 1;
      }
      for (const Edge& e : g.edges()) {
        if (in[e.u] != in[e.v]) return std::nullopt;
      }
      const int id = vocab_.find(induced_subgraph(g, b.vertices));
      if (id < 0) return std::nullopt;
      std::vector<int> rest;
      for (int v = 0; v < n; ++v) {
        if (!in[v]) rest.push_back(v);
      }
      LabeledGraph p = induced_subgraph(g, rest);
      return Reversal{std::move(p), GraphAction::add_fragment(id)};
    }
    case ActionType::kRemoveFragmentEdge: {
      if (b.u < 0 || b.v >= g.node_count() || g.edge_label(b.u, b.v) != kInterEdge) {
        return std::nullopt;
      }
      LabeledGraph p = g;
      p.remove_edge(b.u, b.v);
      for (int v : {b.u, b.v}) {
        if (attach_of(g.node_label(v)) != kAttachUsed) return std::nullopt;
        p.set_node_label(v, state_label(atom_of(g.node_label(v)), kAttachOpen));
      }
      return Reversal{std::move(p), GraphAction::add_fragment_edge(b.u, b.v)};
    }
    default:
      return Environment::reverse(g, b);
  }
}

double FragmentEnv::base_reward(const LabeledGraph& g) const {
  return reward_floor_ + static_cast<double>(decompose(vocab_, g).fragments.size());
}

double FragmentEnv::log_reward_correction(const LabeledGraph& terminal,
                                          std::uint64_t aut) const {
  double s = std::log(static_cast<double>(aut));
  for (const PlacedFragment& p : decompose(vocab_, terminal).fragments) {
    s -= std::log(static_cast<double>(vocab_[p.id].aut_order));
  }
  return s;
}

double FragmentEnv::log_transition_ratio(const LabeledGraph& g,
                                         const GraphAction& a,
                                         std::uint64_t aut_g,
                                         std::uint64_t aut_next) const {
  double r = Environment::log_transition_ratio(g, a, aut_g, aut_next);
  if (a.type == ActionType::kAddFragment) {
    r += std::log(static_cast<double>(vocab_[a.label].aut_order));
  }
  return r;
}

}  // namespace sagfn
