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
#include "sagfn/kernels.h"
#include "sagfn/policy.h"

namespace sagfn {

PolicyTable::PolicyTable(const StateDag& dag)
    : dag_(&dag),
      logits_(dag.forward_class_count(), 0.0),
      log_flows_(dag.size(), 0.0) {}

void PolicyTable::class_probabilities(int s, std::span<double> out) const {
  const DagState& st = dag_->state(s);
  const double* x = logits_.data() + st.fwd_begin;
  const std::size_t n = st.fwd_end - st.fwd_begin;
  const double lse = kernels::logsumexp(x, n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i] - lse);
}

void PolicyTable::sampling_probabilities(int s, double epsilon,
                                         std::span<double> out) const {
  class_probabilities(s, out);
  if (epsilon <= 0) return;
  const double u = epsilon / out.size();
  for (double& p : out) p = (1 - epsilon) * p + u;
}

std::vector<std::pair<GraphAction, double>> PolicyTable::forward_probabilities(
    const LabeledGraph& g, double epsilon) const {
  std::vector<std::pair<GraphAction, double>> out;
  std::vector<double> probs;
  int state = -1;
  for (const GraphAction& a : dag_->env().forward_actions(g)) {
    const StateDag::Location loc = dag_->locate_forward(g, a);
    if (state < 0) {
      state = loc.state;
      probs.resize(dag_->forward(state).size());
      sampling_probabilities(state, epsilon, probs);
    }
    out.emplace_back(a, probs[loc.cls] / dag_->forward(state)[loc.cls].multiplicity);
  }
  return out;
}

ExactDistribution PolicyTable::terminating_distribution() const {
  return sagfn::terminating_distribution(
      *dag_, [this](int s, std::span<double> out) { class_probabilities(s, out); });
}

std::string class_key(const ForwardClass& c) {
  return c.representative.expand().to_string();
}

std::vector<std::pair<GraphAction, double>> backward_probabilities(
    const Environment& env, const LabeledGraph& g) {
  const std::vector<GraphAction> bwd = env.backward_actions(g);
  if (bwd.empty()) throw DomainError("graph has no backward action");
  std::vector<std::pair<GraphAction, double>> out;
  for (const GraphAction& b : bwd) out.emplace_back(b, 1.0 / bwd.size());
  return out;
}

}  // namespace sagfn
