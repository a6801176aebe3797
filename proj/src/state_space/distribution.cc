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

#include "sagfn/distribution.h"

#include <algorithm>
#include <cmath>

#include "sagfn/errors.h"
#include "sagfn/kernels.h"

namespace sagfn {

double ExactDistribution::prob_of_state(int s) const {
  auto it = std::lower_bound(states.begin(), states.end(), s);
  if (it == states.end() || *it != s) throw DomainError("not a terminal state");
  return p[it - states.begin()];
}

std::vector<double> reach_probabilities(const StateDag& dag,
                                        const ClassProbabilities& probs) {
  std::vector<double> reach(dag.size(), 0.0);
  reach[dag.initial()] = 1.0;
  std::vector<double> buf;
  for (int s : dag.topological_order()) {
    const auto cls = dag.forward(s);
    if (cls.empty() || reach[s] == 0) continue;
    buf.assign(cls.size(), 0.0);
    probs(s, buf);
    for (size_t i = 0; i < cls.size(); ++i) reach[cls[i].successor] += reach[s] * buf[i];
  }
  return reach;
}

ExactDistribution terminating_distribution(const StateDag& dag,
                                           const ClassProbabilities& probs) {
  const std::vector<double> reach = reach_probabilities(dag, probs);
  ExactDistribution d;
  d.states = dag.terminals();
  d.p.reserve(d.states.size());
  for (int s : d.states) d.p.push_back(reach[s]);
  const double total = kernels::sum(d.p.data(), d.p.size());
  d.deviation = total - 1.0;
  for (double& x : d.p) x /= total;
  return d;
}

ExactDistribution weighted_distribution(
    const StateDag& dag, const std::function<double(const DagState&)>& weight) {
  ExactDistribution d;
  d.states = dag.terminals();
  for (int s : d.states) d.p.push_back(weight(dag.state(s)));
  d.normalizer = kernels::sum(d.p.data(), d.p.size());
  for (double& x : d.p) x /= d.normalizer;
  return d;
}

ExactDistribution target_distribution(const StateDag& dag) {
  return weighted_distribution(dag, [](const DagState& st) { return st.reward; });
}

ExactDistribution uncorrected_target(const StateDag& dag) {
  return weighted_distribution(dag, [](const DagState& st) {
    return st.reward * std::exp(-st.log_correction);
  });
}

double l1_error(const ExactDistribution& p, const ExactDistribution& q) {
  if (p.states != q.states) throw DomainError("distributions have different supports");
  return kernels::l1_distance(p.p.data(), q.p.data(), p.p.size());
}

}  // namespace sagfn
