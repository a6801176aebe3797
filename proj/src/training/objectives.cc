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

#include "sagfn/objectives.h"

#include <cmath>
#include <limits>

#include "sagfn/errors.h"
#include "sagfn/fragments.h"
#include "sagfn/kernels.h"

namespace sagfn {

Objective parse_objective(const std::string& s) {
  if (s == "tb") return Objective::kTB;
  if (s == "db") return Objective::kDB;
  if (s == "fm") return Objective::kFM;
  throw ConfigError("unknown objective '" + s + "' (tb, db, fm)");
}

std::string objective_name(Objective o) {
  switch (o) {
    case Objective::kTB: return "tb";
    case Objective::kDB: return "db";
    case Objective::kFM: return "fm";
  }
  return "";
}

CorrectionMode parse_mode(const std::string& s) {
  if (s == "vanilla") return CorrectionMode::kVanilla;
  if (s == "transition-correction") return CorrectionMode::kTransitionCorrection;
  if (s == "pe") return CorrectionMode::kPositionalEncoding;
  if (s == "reward-scaling") return CorrectionMode::kRewardScaling;
  if (s == "flow-scaling") return CorrectionMode::kFlowScaling;
  throw ConfigError("unknown mode '" + s +
                    "' (vanilla, transition-correction, pe, reward-scaling, flow-scaling)");
}

std::string mode_name(CorrectionMode m) {
  switch (m) {
    case CorrectionMode::kVanilla: return "vanilla";
    case CorrectionMode::kTransitionCorrection: return "transition-correction";
    case CorrectionMode::kPositionalEncoding: return "pe";
    case CorrectionMode::kRewardScaling: return "reward-scaling";
    case CorrectionMode::kFlowScaling: return "flow-scaling";
  }
  return "";
}

void Gradient::add(const Gradient& other, double scale) {
  for (const auto& [k, v] : other.logits) logits[k] += scale * v;
  for (const auto& [k, v] : other.flows) flows[k] += scale * v;
  log_z += scale * other.log_z;
}

void check_supported(const Environment& env, Objective objective,
                     CorrectionMode mode) {
  if (objective == Objective::kFM && !env.supports_flow_matching()) {
    throw UnsupportedModeError("flow matching is not supported on the " + env.name() +
                               " environment");
  }
  if (mode == CorrectionMode::kPositionalEncoding &&
      dynamic_cast<const FragmentEnv*>(&env) != nullptr) {
    throw UnsupportedModeError("PE matching is not supported on fragment assemblies");
  }
}

double log_target_reward(const LossContext& ctx, int terminal) {
  const DagState& st = ctx.dag->state(terminal);
  double r = ctx.beta * std::log(st.reward);
  if (ctx.mode == CorrectionMode::kRewardScaling) r += st.log_correction;
  return r;
}

namespace {

// Softmax of the logits of state s into `out`.
void softmax(const PolicyTable& policy, int s, std::vector<double>& out) {
  out.resize(policy.dag().forward(s).size());
  policy.class_probabilities(s, out);
}

// Classes of s that the mode lumps together with `cls`, or none when the mode
// works with single orbit classes.
bool lumped(const LossContext& ctx, int s, int cls, int other) {
  const auto f = ctx.dag->forward(s);
  if (ctx.mode == CorrectionMode::kTransitionCorrection) {
    return f[other].successor == f[cls].successor;
  }
  const int base = ctx.dag->state(s).fwd_begin;
  return ctx.pe->forward_group[base + other] == ctx.pe->forward_group[base + cls];
}

}  // namespace

double log_forward(const PolicyTable& policy, const LossContext& ctx, int s,
                   int cls, Gradient* grad, double scale) {
  thread_local std::vector<double> pi;
  softmax(policy, s, pi);
  const int base = ctx.dag->state(s).fwd_begin;
  const auto f = ctx.dag->forward(s);
  if (ctx.mode == CorrectionMode::kTransitionCorrection ||
      ctx.mode == CorrectionMode::kPositionalEncoding) {
    double mass = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (lumped(ctx, s, cls, static_cast<int>(j))) mass += pi[j];
    }
    if (grad) {
      for (std::size_t j = 0; j < f.size(); ++j) {
        const double in = lumped(ctx, s, cls, static_cast<int>(j)) ? 1.0 / mass : 0.0;
        grad->logits[base + j] += scale * pi[j] * (in - 1.0);
      }
    }
    return std::log(mass);
  }
  if (grad) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      grad->logits[base + j] += scale * ((static_cast<int>(j) == cls ? 1.0 : 0.0) - pi[j]);
    }
  }
  return std::log(pi[cls]) - std::log(static_cast<double>(f[cls].multiplicity));
}

double log_backward(const LossContext& ctx, int s, int cls) {
  const ForwardClass& fc = ctx.dag->forward(s)[cls];
  const int next = fc.successor;
  const DagState& nx = ctx.dag->state(next);
  const double log_total = std::log(static_cast<double>(nx.backward_total));
  switch (ctx.mode) {
    case CorrectionMode::kVanilla:
    case CorrectionMode::kRewardScaling:
      return -log_total;
    case CorrectionMode::kFlowScaling: {
      const int mb = ctx.dag->backward(next)[fc.back_class].multiplicity;
      return -log_total + std::log(static_cast<double>(mb) / fc.multiplicity);
    }
    case CorrectionMode::kTransitionCorrection: {
      int same = 0;
      for (const BackwardClass& b : ctx.dag->backward(next)) {
        if (b.predecessor == s) same += b.multiplicity;
      }
      return std::log(static_cast<double>(same)) - log_total;
    }
    case CorrectionMode::kPositionalEncoding:
      return std::log(static_cast<double>(
                 ctx.pe->backward_count[nx.bwd_begin + fc.back_class])) -
             log_total;
  }
  return 0;
}

double tb_loss(const PolicyTable& policy, const LossContext& ctx,
               const StateTrajectory& t, Gradient* grad) {
  double delta = policy.log_z() - log_target_reward(ctx, t.states.back());
  for (std::size_t k = 0; k < t.classes.size(); ++k) {
    delta += log_forward(policy, ctx, t.states[k], t.classes[k]) -
             log_backward(ctx, t.states[k], t.classes[k]);
  }
  if (grad) {
    grad->log_z += 2 * delta;
    for (std::size_t k = 0; k < t.classes.size(); ++k) {
      log_forward(policy, ctx, t.states[k], t.classes[k], grad, 2 * delta);
    }
  }
  return delta * delta;
}

double db_transition_loss(const PolicyTable& policy, const LossContext& ctx,
                          int s, int cls, Gradient* grad) {
  const int next = ctx.dag->forward(s)[cls].successor;
  const bool source = s == ctx.dag->initial();
  const bool sink = ctx.dag->state(next).terminal;
  const double from = source ? policy.log_z() : policy.log_flows()[s];
  const double to = sink ? log_target_reward(ctx, next) : policy.log_flows()[next];
  const double delta =
      from + log_forward(policy, ctx, s, cls) - to - log_backward(ctx, s, cls);
  if (grad) {
    if (source) {
      grad->log_z += 2 * delta;
    } else {
      grad->flows[s] += 2 * delta;
    }
    if (!sink) grad->flows[next] -= 2 * delta;
    log_forward(policy, ctx, s, cls, grad, 2 * delta);
  }
  return delta * delta;
}

double db_loss(const PolicyTable& policy, const LossContext& ctx,
               const StateTrajectory& t, Gradient* grad) {
  double loss = 0;
  for (std::size_t k = 0; k < t.classes.size(); ++k) {
    loss += db_transition_loss(policy, ctx, t.states[k], t.classes[k], grad);
  }
  return loss;
}

double fm_state_loss(const PolicyTable& policy, const LossContext& ctx, int s,
                     Gradient* grad) {
  const StateDag& dag = *ctx.dag;
  const DagState& st = dag.state(s);
  const auto& theta = policy.logits();

  // Inflow: log Z at the source, else weighted parent edge flows.
  thread_local std::vector<double> in_terms;
  thread_local std::vector<int> in_index;
  in_terms.clear();
  in_index.clear();
  double log_in;
  if (s == dag.initial()) {
    log_in = policy.log_z();
  } else {
    const auto bwd = dag.backward(s);
    for (std::size_t b = 0; b < bwd.size(); ++b) {
      const BackwardClass& bc = bwd[b];
      const int flat = dag.state(bc.predecessor).fwd_begin + bc.forward_class;
      const int mc = dag.forward(bc.predecessor)[bc.forward_class].multiplicity;
      double log_w = 0;
      switch (ctx.mode) {
        case CorrectionMode::kVanilla:
        case CorrectionMode::kRewardScaling:
          log_w = std::log(static_cast<double>(bc.multiplicity) / mc);
          break;
        case CorrectionMode::kFlowScaling:
        case CorrectionMode::kTransitionCorrection:
          break;
        case CorrectionMode::kPositionalEncoding:
          log_w = std::log(static_cast<double>(bc.multiplicity) / mc *
                           ctx.pe->forward_count[flat] /
                           ctx.pe->backward_count[st.bwd_begin + b]);
          break;
      }
      in_terms.push_back(theta[flat] + log_w);
      in_index.push_back(flat);
    }
    log_in = kernels::logsumexp(in_terms.data(), in_terms.size());
  }

  double log_out;
  const std::size_t nout = st.fwd_end - st.fwd_begin;
  if (st.terminal) {
    log_out = log_target_reward(ctx, s);
  } else {
    log_out = kernels::logsumexp(theta.data() + st.fwd_begin, nout);
  }
  const double delta = log_in - log_out;
  if (grad) {
    if (s == dag.initial()) {
      grad->log_z += 2 * delta;
    } else {
      for (std::size_t i = 0; i < in_terms.size(); ++i) {
        grad->logits[in_index[i]] += 2 * delta * std::exp(in_terms[i] - log_in);
      }
    }
    if (!st.terminal) {
      for (std::size_t i = 0; i < nout; ++i) {
        grad->logits[st.fwd_begin + i] -=
            2 * delta * std::exp(theta[st.fwd_begin + i] - log_out);
      }
    }
  }
  return delta * delta;
}

double fm_loss(const PolicyTable& policy, const LossContext& ctx,
               const StateTrajectory& t, Gradient* grad) {
  double loss = 0;
  for (int s : t.states) loss += fm_state_loss(policy, ctx, s, grad);
  return loss;
}

double objective_loss(Objective o, const PolicyTable& policy,
                      const LossContext& ctx, const StateTrajectory& t,
                      Gradient* grad) {
  switch (o) {
    case Objective::kTB: return tb_loss(policy, ctx, t, grad);
    case Objective::kDB: return db_loss(policy, ctx, t, grad);
    case Objective::kFM: return fm_loss(policy, ctx, t, grad);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace sagfn
