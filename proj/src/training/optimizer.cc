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

#include "sagfn/training.h"

namespace sagfn {
namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.9999;
constexpr double kEps = 1e-8;

}  // namespace

SparseAdam::SparseAdam(const PolicyTable& policy, double lr_logits, double lr_flows)
    : lr_logits_(lr_logits),
      lr_flows_(lr_flows),
      logits_(policy.logits().size()),
      flows_(policy.log_flows().size()) {}

double SparseAdam::update(Slot& s, double g, double lr) {
  ++s.t;
  s.m = kBeta1 * s.m + (1 - kBeta1) * g;
  s.v = kBeta2 * s.v + (1 - kBeta2) * g * g;
  const double m_hat = s.m / (1 - std::pow(kBeta1, static_cast<double>(s.t)));
  const double v_hat = s.v / (1 - std::pow(kBeta2, static_cast<double>(s.t)));
  return -lr * m_hat / (std::sqrt(v_hat) + kEps);
}

void SparseAdam::step(PolicyTable& policy, const Gradient& grad) {
  for (const auto& [i, g] : grad.logits) policy.logits()[i] += update(logits_[i], g, lr_logits_);
  for (const auto& [i, g] : grad.flows) policy.log_flows()[i] += update(flows_[i], g, lr_flows_);
  if (grad.log_z != 0) policy.log_z() += update(log_z_, grad.log_z, lr_flows_);
}

void ReplayBuffer::add(StateTrajectory t) {
  if (capacity_ == 0) return;
  if (items_.size() == capacity_) items_.pop_front();
  items_.push_back(std::move(t));
}

const StateTrajectory& ReplayBuffer::sample(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
  return items_[pick(rng)];
}

}  // namespace sagfn
