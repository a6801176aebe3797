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

#ifndef SAGFN_ENVIRONMENT_H_
#define SAGFN_ENVIRONMENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sagfn/action.h"
#include "sagfn/labeled_graph.h"

namespace sagfn {

// A finite graph-building MDP. States are graphs; forward actions build,
// backward actions undo. Backward legality is derived from forward legality:
// b is legal on g iff its predecessor is a legal state from which the
// reversed forward action is legal. That keeps both directions in bijection.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual LabeledGraph initial_graph() const = 0;
  virtual nlohmann::json config_json() const = 0;

  // Complete, duplicate-free, sorted. Empty for terminated graphs.
  std::vector<GraphAction> forward_actions(const LabeledGraph& g) const;
  // Empty for the initial graph.
  std::vector<GraphAction> backward_actions(const LabeledGraph& g) const;

  // Throw IllegalActionError naming the violated rule.
  LabeledGraph apply(const LabeledGraph& g, const GraphAction& a) const;
  LabeledGraph apply_backward(const LabeledGraph& g, const GraphAction& b) const;

  // Empty string when legal, else the violated rule.
  std::string forward_violation(const LabeledGraph& g,
                                const GraphAction& a) const;
  std::string backward_violation(const LabeledGraph& g,
                                 const GraphAction& b) const;

  // Predecessor of g under b and the forward action leading back to g.
  // Throws IllegalActionError like apply_backward.
  std::pair<LabeledGraph, GraphAction> undo(const LabeledGraph& g,
                                            const GraphAction& b) const;

  // The backward action on apply(g, a) that undoes `a`.
  virtual GraphAction reverse_action(const LabeledGraph& g,
                                     const GraphAction& a) const;

  // Strictly positive. Throws DomainError on non-terminal graphs.
  double reward(const LabeledGraph& g) const;

  // log C(x) of the exact symmetry correction for a terminal graph whose
  // automorphism group has `aut` elements: R~(x) = C(x) R(x).
  virtual double log_reward_correction(const LabeledGraph& terminal,
                                       std::uint64_t aut) const;

  // log(m_f / m_b) for forward action a on g: the ratio of its orbit size to
  // that of its reversal on the successor. Node and edge actions give
  // log |Aut(g)| - log |Aut(g')|.
  virtual double log_transition_ratio(const LabeledGraph& g,
                                      const GraphAction& a,
                                      std::uint64_t aut_g,
                                      std::uint64_t aut_next) const;

  virtual bool supports_flow_matching() const { return true; }

  // Whether g is a legal non-terminal state of this environment.
  virtual std::string state_violation(const LabeledGraph& g) const = 0;

 protected:
  virtual std::vector<GraphAction> forward_candidates(
      const LabeledGraph& g) const = 0;
  virtual std::vector<GraphAction> backward_candidates(
      const LabeledGraph& g) const;
  virtual std::string forward_rule(const LabeledGraph& g,
                                   const GraphAction& a) const = 0;
  virtual double base_reward(const LabeledGraph& g) const = 0;

  // Structural application without legality checks.
  virtual LabeledGraph do_apply(const LabeledGraph& g,
                                const GraphAction& a) const;
  // Predecessor and the forward action leading back to g, or nullopt when
  // no forward action of this environment could have produced g this way.
  struct Reversal {
    LabeledGraph predecessor;
    GraphAction forward;
  };
  virtual std::optional<Reversal> reverse(const LabeledGraph& g,
                                          const GraphAction& b) const;
};

enum class RewardKind { kConstant, kCliques, kCycles };

// Node-by-node environments: every state is built by AddNode, AddEdge and
// Stop under size, edge and degree limits.
struct NodeEnvSpec {
  std::string name;
  int initial_nodes = 0;  // isolated nodes in the initial graph
  int max_nodes = 7;
  int max_edges = -1;     // -1: unlimited
  int max_degree = -1;    // -1: unlimited
  int node_types = 1;
  bool add_node = true;
  // Non-empty states are connected; AddNode attaches to an anchor.
  bool connected_states = true;
  RewardKind reward = RewardKind::kConstant;
  double reward_floor = 1.0;
};

class NodeEnv : public Environment {
 public:
  explicit NodeEnv(NodeEnvSpec spec);

  std::string name() const override { return spec_.name; }
  LabeledGraph initial_graph() const override;
  nlohmann::json config_json() const override;
  std::string state_violation(const LabeledGraph& g) const override;
  const NodeEnvSpec& spec() const { return spec_; }

 protected:
  std::vector<GraphAction> forward_candidates(
      const LabeledGraph& g) const override;
  std::string forward_rule(const LabeledGraph& g,
                           const GraphAction& a) const override;
  double base_reward(const LabeledGraph& g) const override;

 private:
  NodeEnvSpec spec_;
};

// 6 fixed nodes, AddEdge and Stop, Stop only when connected, reward 1.
NodeEnvSpec illustrative_spec();
// Up to 7 nodes of 2 types; reward = floor + number of 4-cliques with at
// least three nodes of one type.
NodeEnvSpec clique_spec();
// Up to 10 nodes and 10 edges, degree <= 4; reward = floor + cyclomatic
// number.
NodeEnvSpec cycle_spec();

// Number of 4-cliques with at least three nodes sharing a type.
int count_typed_4cliques(const LabeledGraph& g);
// |E| - |V| + components.
int cyclomatic_number(const LabeledGraph& g);

// JSON environment selection:
// {"env": "illustrative|clique|cycle|fragment", "max_nodes": .., "reward_floor":
// .., "max_edges": .., "max_degree": .., "node_types": .., "vocabulary": ..,
// "max_fragments": ..}. Unknown keys are rejected with ConfigError.
struct EnvConfig {
  std::string env = "illustrative";
  std::optional<int> max_nodes;
  std::optional<double> reward_floor;
  std::optional<int> max_edges;
  std::optional<int> max_degree;
  std::optional<int> node_types;
  std::optional<std::string> vocabulary;
  std::optional<int> max_fragments;

  static EnvConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Node-by-node environments only; see make_environment for the full set.
std::unique_ptr<NodeEnv> make_node_env(const EnvConfig& config);

}  // namespace sagfn

#endif  // SAGFN_ENVIRONMENT_H_
