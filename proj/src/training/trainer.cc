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
#include <iomanip>

#include "sagfn/distribution.h"
#include "sagfn/errors.h"
#include "sagfn/training.h"

namespace sagfn {
namespace {

ExactDistribution tempered_target(const StateDag& dag, double beta) {
  if (beta == 1.0) return target_distribution(dag);
  return weighted_distribution(
      dag, [beta](const DagState& st) { return std::pow(st.reward, beta); });
}

std::uint64_t resolve_seed(const RunConfig& c) { return c.seed.value_or(0); }

}  // namespace

Trainer::Trainer(const StateDag& dag, const RunConfig& config)
    : Trainer(dag, config, PolicyTable(dag)) {}

Trainer::Trainer(const StateDag& dag, const RunConfig& config, PolicyTable initial)
    : dag_(dag),
      config_(config),
      policy_(std::move(initial)),
      adam_(policy_, config.lr_logits, config.lr_flows),
      replay_(static_cast<std::size_t>(config.replay_capacity)),
      rng_(resolve_seed(config)),
      target_(tempered_target(dag, config.beta)) {
  config_.validate();
  check_supported(dag.env(), config.objective, config.mode);
  if (config.mode == CorrectionMode::kPositionalEncoding) pe_ = build_pe_table(dag);
  ctx_.dag = &dag_;
  ctx_.mode = config.mode;
  ctx_.beta = config.beta;
  ctx_.pe = pe_ ? &*pe_ : nullptr;
}

double Trainer::step() {
  Gradient total;
  double loss_sum = 0;
  int count = 0;
  auto accumulate = [&](const StateTrajectory& t) {
    Gradient g;
    const double loss = objective_loss(config_.objective, policy_, ctx_, t, &g);
    if (!std::isfinite(loss)) throw DomainError("non-finite loss at step " + std::to_string(steps_));
    loss_sum += loss;
    total.add(g);
    ++count;
  };
  std::vector<StateTrajectory> fresh;
  fresh.reserve(static_cast<std::size_t>(config_.batch_size));
  for (int i = 0; i < config_.batch_size; ++i) {
    fresh.push_back(sample_state_trajectory(policy_, config_.epsilon, rng_));
    accumulate(fresh.back());
  }
  if (replay_.size() > 0) {
    for (int i = 0; i < config_.replay_batch; ++i) accumulate(replay_.sample(rng_));
  }
  for (auto& t : fresh) replay_.add(std::move(t));
  Gradient mean;
  mean.add(total, 1.0 / count);
  adam_.step(policy_, mean);
  ++steps_;
  return loss_sum / count;
}

MetricRow Trainer::evaluate(double loss_mean) const {
  MetricRow row;
  row.step = steps_;
  row.l1_error = l1_error(policy_.terminating_distribution(), target_);
  row.log_z = policy_.log_z();
  row.loss_mean = loss_mean;
  return row;
}

TrainResult train(const StateDag& dag, const RunConfig& config,
                  const std::function<void(const MetricRow&)>& on_metric) {
  Trainer trainer(dag, config);
  TrainResult result{PolicyTable(dag), {}};
  auto emit = [&](double loss) {
    result.metrics.push_back(trainer.evaluate(loss));
    if (on_metric) on_metric(result.metrics.back());
  };
  emit(std::nan(""));
  double window = 0;
  std::int64_t in_window = 0;
  for (std::int64_t s = 1; s <= config.steps; ++s) {
    window += trainer.step();
    ++in_window;
    if (s % config.eval_every == 0 || s == config.steps) {
      emit(window / static_cast<double>(in_window));
      window = 0;
      in_window = 0;
    }
  }
  result.policy = trainer.policy();
  return result;
}

void write_metrics_header(std::ostream& out) { out << "step,l1_error,log_Z,loss_mean\n"; }

void write_metrics_row(std::ostream& out, const MetricRow& row) {
  out << row.step << ',' << std::setprecision(10) << row.l1_error << ','
      << row.log_z << ',';
  if (std::isnan(row.loss_mean)) {
    out << "";
  } else {
    out << row.loss_mean;
  }
  out << '\n';
}

}  // namespace sagfn
