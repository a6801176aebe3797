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
#include <vector>

#include "sagfn/errors.h"
#include "sagfn/symmetry.h"
#include "sagfn/training.h"

namespace sagfn {

LikelihoodEstimate estimate_likelihood(const PolicyTable& policy,
                                       const LabeledGraph& terminal, int m,
                                       std::mt19937_64& rng, double epsilon) {
  if (m < 1) throw ConfigError("likelihood needs at least one sample");
  const StateDag& dag = policy.dag();
  const Environment& env = dag.env();
  LabeledGraph x = terminal;
  x.set_terminated(true);
  const int sx = dag.find(x);
  if (sx < 0 || !dag.state(sx).terminal) {
    throw DomainError("graph is not a terminal state of this environment");
  }
  const LabeledGraph g0 = env.initial_graph();
  const CanonicalForm start = canonical_form(g0);
  // Labeled graphs of one class reached with equal probability; the count
  // reachable from the initial labeling is C(x).
  const double log_aut_ratio = -dag.state(sx).log_correction;

  std::vector<double> probs;
  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    LabeledGraph g = x;
    double log_w = log_aut_ratio;
    while (true) {
      const auto back = env.backward_actions(g);
      if (back.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, back.size() - 1);
      auto [pred, a] = env.undo(g, back[pick(rng)]);
      const auto loc = dag.locate_forward(pred, a);
      const auto& st = dag.state(loc.state);
      probs.assign(static_cast<std::size_t>(st.fwd_end - st.fwd_begin), 0.0);
      policy.sampling_probabilities(loc.state, epsilon, probs);
      const auto& cls = dag.forward(loc.state)[static_cast<std::size_t>(loc.cls)];
      log_w += std::log(probs[static_cast<std::size_t>(loc.cls)] / cls.multiplicity) +
               std::log(static_cast<double>(back.size()));
      g = std::move(pred);
    }
    if (canonical_form(g) != start) throw DomainError("backward walk ended away from the initial state");
    weights.push_back(std::exp(log_w));
  }
  double mean = 0;
  for (double w : weights) mean += w;
  mean /= m;
  double var = 0;
  for (double w : weights) var += (w - mean) * (w - mean);
  LikelihoodEstimate out;
  out.estimate = mean;
  out.samples = m;
  out.std_error = m > 1 ? std::sqrt(var / (m - 1) / m) : 0.0;
  return out;
}

}  // namespace sagfn
