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

#ifndef SAGFN_TRAINING_H_
#define SAGFN_TRAINING_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "sagfn/environment.h"
#include "sagfn/objectives.h"
#include "sagfn/policy.h"

namespace sagfn {

// JSON run configuration. Unknown keys are rejected with ConfigError.
struct RunConfig {
  EnvConfig env;
  Objective objective = Objective::kTB;
  CorrectionMode mode = CorrectionMode::kRewardScaling;
  std::int64_t steps = 20000;
  int batch_size = 32;          // fresh trajectories per update
  int replay_batch = 0;         // extra trajectories drawn from the buffer
  int replay_capacity = 10000;  // FIFO
  double epsilon = 0.1;         // uniform exploration over classes
  double beta = 1.0;            // reward exponent
  std::optional<std::uint64_t> seed;
  std::int64_t eval_every = 1000;
  double lr_logits = 0.01;
  double lr_flows = 0.05;  // log-flows and log Z
  int workers = 1;
  std::int64_t max_states = 10'000'000;
  std::string output_dir;

  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  // Throws ConfigError on out-of-range values.
  void validate() const;
};

// Adam on the entries a gradient touches; each parameter keeps its own step
// count for bias correction.
class SparseAdam {
 public:
  SparseAdam(const PolicyTable& policy, double lr_logits, double lr_flows);
  void step(PolicyTable& policy, const Gradient& grad);

 private:
  struct Slot {
    double m = 0, v = 0;
    std::int64_t t = 0;
  };
  double update(Slot& s, double g, double lr);

  double lr_logits_, lr_flows_;
  std::vector<Slot> logits_, flows_;
  Slot log_z_;
};

// Uniform sampling from the last `capacity` trajectories.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}
  void add(StateTrajectory t);
  std::size_t size() const { return items_.size(); }
  const StateTrajectory& sample(std::mt19937_64& rng) const;

 private:
  std::size_t capacity_;
  std::deque<StateTrajectory> items_;
};

struct MetricRow {
  std::int64_t step = 0;
  double l1_error = 0;  // exact, against R/Z
  double log_z = 0;
  double loss_mean = 0;
};

class Trainer {
 public:
  // Throws UnsupportedModeError for unsupported objective/mode pairs.
  Trainer(const StateDag& dag, const RunConfig& config);
  Trainer(const StateDag& dag, const RunConfig& config, PolicyTable initial);

  // One update; returns the mean loss. Throws DomainError on a NaN loss.
  double step();
  MetricRow evaluate(double loss_mean) const;

  const PolicyTable& policy() const { return policy_; }
  PolicyTable& policy() { return policy_; }
  const LossContext& context() const { return ctx_; }
  std::int64_t steps_done() const { return steps_; }

 private:
  const StateDag& dag_;
  RunConfig config_;
  PolicyTable policy_;
  std::optional<PeTable> pe_;
  LossContext ctx_;
  SparseAdam adam_;
  ReplayBuffer replay_;
  std::mt19937_64 rng_;
  ExactDistribution target_;
  std::int64_t steps_ = 0;
};

struct TrainResult {
  PolicyTable policy;
  std::vector<MetricRow> metrics;
};

// Runs config.steps updates, evaluating at step 0, every eval_every steps
// and at the end.
TrainResult train(const StateDag& dag, const RunConfig& config,
                  const std::function<void(const MetricRow&)>& on_metric = {});

// Header "step,l1_error,log_Z,loss_mean".
void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const MetricRow& row);

struct LikelihoodEstimate {
  double estimate = 0;
  double std_error = 0;
  int samples = 0;
};

// Importance-sampled probability that the policy terminates in the class of
// `terminal`, from M uniform backward walks:
// (1 / (M C(x))) * sum p_E(tau) / q_E(tau | G_n), where C(x) is the reward
// correction, |Aut(G_n)| / |Aut(G_0)| for node-by-node builds.
// Throws DomainError for non-terminal graphs or backward dead ends.
LikelihoodEstimate estimate_likelihood(const PolicyTable& policy,
                                       const LabeledGraph& terminal, int m,
                                       std::mt19937_64& rng,
                                       double epsilon = 0);

}  // namespace sagfn

#endif  // SAGFN_TRAINING_H_
