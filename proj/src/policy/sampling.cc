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

#include <cmath>

#include "sagfn/errors.h"
#include "sagfn/policy.h"

namespace sagfn {

int sample_index(std::span<const double> probs, std::mt19937_64& rng) {
  double total = 0;
  for (double p : probs) total += p;
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  // Rounding at the top end: the last index with positive mass.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0) return static_cast<int>(i);
  }
  throw DomainError("no probability mass to sample from");
}

StateTrajectory sample_state_trajectory(const PolicyTable& policy,
                                        double epsilon, std::mt19937_64& rng) {
  const StateDag& dag = policy.dag();
  StateTrajectory t;
  std::vector<double> probs;
  int s = dag.initial();
  t.states.push_back(s);
  while (!dag.state(s).terminal) {
    const auto cls = dag.forward(s);
    probs.resize(cls.size());
    policy.sampling_probabilities(s, epsilon, probs);
    const int c = sample_index(probs, rng);
    t.classes.push_back(c);
    s = cls[c].successor;
    t.states.push_back(s);
  }
  return t;
}

GraphTrajectory sample_trajectory(const PolicyTable& policy,
                                  const Environment& env, double epsilon,
                                  std::mt19937_64& rng) {
  GraphTrajectory t;
  LabeledGraph g = env.initial_graph();
  t.graphs.push_back(g);
  std::vector<double> probs;
  while (!g.terminated()) {
    const auto options = policy.forward_probabilities(g, epsilon);
    if (options.empty()) throw DomainError("dead-end state " + g.debug_string());
    probs.clear();
    for (const auto& [a, p] : options) probs.push_back(p);
    const int pick = sample_index(probs, rng);
    const GraphAction& a = options[pick].first;
    const StateDag::Location loc = policy.dag().locate_forward(g, a);
    g = env.apply(g, a);
    t.actions.push_back(a);
    t.multiplicities.push_back(policy.dag().forward(loc.state)[loc.cls].multiplicity);
    t.log_pe.push_back(std::log(options[pick].second));
    t.log_qe.push_back(-std::log(static_cast<double>(env.backward_actions(g).size())));
    t.graphs.push_back(g);
  }
  t.reward = env.reward(g);
  return t;
}

}  // namespace sagfn
