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

#ifndef SAGFN_POLICY_H_
#define SAGFN_POLICY_H_

#include <random>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sagfn/distribution.h"
#include "sagfn/state_dag.h"

namespace sagfn {

// Tabular parameters over an enumerated DAG: one logit per (state, orbit
// class), one log-flow per state and log Z. Every concrete action of a class
// shares the class logit, so orbit-equivalent actions are always equally
// likely. The DAG must outlive the table.
class PolicyTable {
 public:
  explicit PolicyTable(const StateDag& dag);

  const StateDag& dag() const { return *dag_; }

  // Indexed by flat forward class (DagState::fwd_begin + i).
  std::vector<double>& logits() { return logits_; }
  const std::vector<double>& logits() const { return logits_; }
  // Indexed by state.
  std::vector<double>& log_flows() { return log_flows_; }
  const std::vector<double>& log_flows() const { return log_flows_; }
  double& log_z() { return log_z_; }
  double log_z() const { return log_z_; }

  // Softmax over the classes of s.
  void class_probabilities(int s, std::span<double> out) const;
  // (1 - epsilon) softmax + epsilon uniform over classes.
  void sampling_probabilities(int s, double epsilon, std::span<double> out) const;

  // Probability of every concrete forward action on g (any labeling of a
  // DAG state): class probability split evenly over its members.
  std::vector<std::pair<GraphAction, double>> forward_probabilities(
      const LabeledGraph& g, double epsilon = 0) const;

  // Terminating distribution of the softmax policy.
  ExactDistribution terminating_distribution() const;

  // {"env": .., "log_Z": .., "logits": {state hash: {class key: logit}},
  //  "log_flows": {state hash: value}}. Zero entries are omitted.
  nlohmann::json to_json() const;
  // Throws ConfigError on an env mismatch or unknown states or classes.
  static PolicyTable from_json(const StateDag& dag, const nlohmann::json& j);

 private:
  const StateDag* dag_;
  std::vector<double> logits_;
  std::vector<double> log_flows_;
  double log_z_ = 0;
};

// Key of a forward class in checkpoints: its representative, printed.
std::string class_key(const ForwardClass& c);

// Uniform over concrete backward actions. Throws DomainError on graphs with
// no backward action (the initial graph).
std::vector<std::pair<GraphAction, double>> backward_probabilities(
    const Environment& env, const LabeledGraph& g);

// A trajectory through DAG states: classes[t] is taken at states[t].
struct StateTrajectory {
  std::vector<int> states;
  std::vector<int> classes;
};

StateTrajectory sample_state_trajectory(const PolicyTable& policy,
                                        double epsilon, std::mt19937_64& rng);

// Concrete graphs and actions with per-step log p_E and log q_E.
struct GraphTrajectory {
  std::vector<LabeledGraph> graphs;
  std::vector<GraphAction> actions;
  std::vector<int> multiplicities;  // orbit class size of each action
  std::vector<double> log_pe;
  std::vector<double> log_qe;
  double reward = 0;
};

// Throws DomainError on a non-terminal state without forward actions.
GraphTrajectory sample_trajectory(const PolicyTable& policy,
                                  const Environment& env, double epsilon,
                                  std::mt19937_64& rng);

// Index drawn from the given probabilities.
int sample_index(std::span<const double> probs, std::mt19937_64& rng);

}  // namespace sagfn

#endif  // SAGFN_POLICY_H_
