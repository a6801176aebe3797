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

#ifndef SAGFN_OBJECTIVES_H_
#define SAGFN_OBJECTIVES_H_

#include <string>
#include <unordered_map>

#include "sagfn/policy.h"
#include "sagfn/positional_encoding.h"

namespace sagfn {

enum class Objective { kTB, kDB, kFM };

enum class CorrectionMode {
  kVanilla,
  kTransitionCorrection,
  kPositionalEncoding,
  kRewardScaling,
  kFlowScaling,
};

// "tb", "db", "fm".
Objective parse_objective(const std::string& s);
std::string objective_name(Objective o);
// "vanilla", "transition-correction", "pe", "reward-scaling", "flow-scaling".
CorrectionMode parse_mode(const std::string& s);
std::string mode_name(CorrectionMode m);

// Sparse gradient of a loss with respect to the policy table.
struct Gradient {
  std::unordered_map<int, double> logits;  // flat forward class
  std::unordered_map<int, double> flows;   // state
  double log_z = 0;

  void add(const Gradient& other, double scale = 1.0);
};

struct LossContext {
  const StateDag* dag = nullptr;
  CorrectionMode mode = CorrectionMode::kVanilla;
  double beta = 1.0;  // reward exponent
  // Required for kPositionalEncoding.
  const PeTable* pe = nullptr;
};

// Throws UnsupportedModeError for combinations the environment cannot
// support: flow matching or PE matching on fragment assemblies.
void check_supported(const Environment& env, Objective objective,
                     CorrectionMode mode);

// log R~(x): beta log R(x), plus log C(x) under reward scaling.
double log_target_reward(const LossContext& ctx, int terminal);

// log p and log q of the transition taken by class `cls` at state s, as seen
// by the mode. Gradient of log p is added into `grad` scaled by `scale`.
double log_forward(const PolicyTable& policy, const LossContext& ctx, int s,
                   int cls, Gradient* grad = nullptr, double scale = 0);
double log_backward(const LossContext& ctx, int s, int cls);

// Squared log-ratios. `grad`, when given, receives the gradient.
double tb_loss(const PolicyTable& policy, const LossContext& ctx,
               const StateTrajectory& t, Gradient* grad = nullptr);
// One transition: class `cls` taken at state s.
double db_transition_loss(const PolicyTable& policy, const LossContext& ctx,
                          int s, int cls, Gradient* grad = nullptr);
double db_loss(const PolicyTable& policy, const LossContext& ctx,
               const StateTrajectory& t, Gradient* grad = nullptr);
// Flow matching at one state. The logits are log edge flows of each class;
// log Z is the inflow of the initial state and R~ the outflow of terminals.
double fm_state_loss(const PolicyTable& policy, const LossContext& ctx, int s,
                     Gradient* grad = nullptr);
double fm_loss(const PolicyTable& policy, const LossContext& ctx,
               const StateTrajectory& t, Gradient* grad = nullptr);

double objective_loss(Objective o, const PolicyTable& policy,
                      const LossContext& ctx, const StateTrajectory& t,
                      Gradient* grad = nullptr);

}  // namespace sagfn

#endif  // SAGFN_OBJECTIVES_H_
