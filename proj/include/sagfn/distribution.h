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

#ifndef SAGFN_DISTRIBUTION_H_
#define SAGFN_DISTRIBUTION_H_

#include <functional>
#include <span>
#include <vector>

#include "sagfn/state_dag.h"

namespace sagfn {

// Probability of each terminal state, aligned with StateDag::terminals().
struct ExactDistribution {
  std::vector<int> states;
  std::vector<double> p;
  // Sum before renormalization minus one (DP), or unused (targets).
  double deviation = 0;
  // Z for reward-proportional targets.
  double normalizer = 1;

  double prob_of_state(int s) const;
};

// Fills `out` with the probability of each forward class of state s.
using ClassProbabilities = std::function<void(int s, std::span<double> out)>;

// Forward dynamic programming over the DAG in topological order.
ExactDistribution terminating_distribution(const StateDag& dag,
                                           const ClassProbabilities& probs);
// Probability of reaching every state, indexed by state id.
std::vector<double> reach_probabilities(const StateDag& dag,
                                        const ClassProbabilities& probs);

// p(x) = R(x) / sum R.
ExactDistribution target_distribution(const StateDag& dag);
// p(x) proportional to R(x) / C(x): where an uncorrected sampler settles.
ExactDistribution uncorrected_target(const StateDag& dag);
// p(x) proportional to weight(x).
ExactDistribution weighted_distribution(
    const StateDag& dag, const std::function<double(const DagState&)>& weight);

// Sum of absolute differences. Throws DomainError on mismatched supports.
double l1_error(const ExactDistribution& p, const ExactDistribution& q);

}  // namespace sagfn

#endif  // SAGFN_DISTRIBUTION_H_
