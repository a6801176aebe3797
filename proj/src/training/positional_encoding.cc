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

#include "sagfn/positional_encoding.h"

#include <cmath>

#include "sagfn/errors.h"
#include "sagfn/kernels.h"

namespace sagfn {

std::vector<PeVector> pe_vectors(const LabeledGraph& g) {
  const int n = g.node_count();
  // Row-major W = A D^-1: W[u][v] = A[u][v] / deg(v).
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int v = 0; v < n; ++v) {
    const int d = g.degree(v);
    if (d == 0) continue;
    for (int u = 0; u < n; ++u) {
      if (g.has_edge(u, v)) w[u * n + v] = 1.0 / d;
    }
  }
  std::vector<double> x(n), y(n);
  for (int u = 0; u < n; ++u) x[u] = std::log(g.node_label(u) + 2.0);
  std::vector<PeVector> out(n);
  for (int k = 0; k < kPeDim; ++k) {
    for (int u = 0; u < n; ++u) out[u][k] = x[u];
    if (k + 1 < kPeDim) {
      kernels::matvec(w.data(), x.data(), y.data(), n, n);
      std::swap(x, y);
    }
  }
  return out;
}

bool pe_equal(const PeVector& a, const PeVector& b) {
  for (int k = 0; k < kPeDim; ++k) {
    const double scale = std::max({std::abs(a[k]), std::abs(b[k]), 1e-300});
    if (std::abs(a[k] - b[k]) > 1e-9 * scale) return false;
  }
  return true;
}

namespace {

struct PeKey {
  int type;
  int label;
  bool has_target;
  PeVector pe;
};

PeKey pe_key(const std::vector<PeVector>& pe, const GraphAction& a) {
  PeKey k{static_cast<int>(a.type), a.label, true, {}};
  auto add = [&](int v) {
    for (int i = 0; i < kPeDim; ++i) k.pe[i] += pe[v][i];
  };
  switch (a.type) {
    case ActionType::kAddNode:
    case ActionType::kSetNodeAttribute:
    case ActionType::kRemoveNode:
      if (a.u >= 0) {
        add(a.u);
      } else {
        k.has_target = false;
      }
      break;
    case ActionType::kAddEdge:
    case ActionType::kSetEdgeAttribute:
    case ActionType::kAddFragmentEdge:
    case ActionType::kRemoveEdge:
    case ActionType::kRemoveFragmentEdge:
      add(a.u);
      add(a.v);
      break;
    case ActionType::kRemoveFragment:
      for (int v : a.vertices) add(v);
      break;
    case ActionType::kStop:
    case ActionType::kUnstop:
    case ActionType::kAddFragment:
      k.has_target = false;
      break;
  }
  return k;
}

bool same_group(const PeKey& a, const PeKey& b) {
  return a.type == b.type && a.label == b.label && a.has_target == b.has_target &&
         (!a.has_target || pe_equal(a.pe, b.pe));
}

}  // namespace

std::vector<ActionClass> pe_group(const LabeledGraph& g,
                                  const std::vector<GraphAction>& actions) {
  const std::vector<PeVector> pe = pe_vectors(g);
  std::vector<ActionClass> out;
  std::vector<PeKey> keys;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const PeKey k = pe_key(pe, actions[i]);
    std::size_t j = 0;
    while (j < keys.size() && !same_group(keys[j], k)) ++j;
    if (j == keys.size()) {
      keys.push_back(k);
      ActionClass c;
      c.representative = actions[i];
      c.kind = ClassKind::kOrbit;
      out.push_back(std::move(c));
    }
    out[j].members.push_back(static_cast<int>(i));
    ++out[j].multiplicity;
  }
  return out;
}

namespace {

// For each orbit class (as member lists over `actions`), the PE group id and
// that group's size, written from index `at` on.
void assign_groups(const LabeledGraph& g, const std::vector<GraphAction>& actions,
                   const std::vector<ActionClass>& orbits, int at,
                   std::vector<int>* group, std::vector<int>* count, int* merged) {
  const std::vector<ActionClass> groups = pe_group(g, actions);
  std::vector<int> group_of(actions.size());
  for (std::size_t j = 0; j < groups.size(); ++j) {
    for (int m : groups[j].members) group_of[m] = static_cast<int>(j);
  }
  std::vector<int> orbits_in(groups.size(), 0);
  for (const ActionClass& c : orbits) {
    const int gid = group_of[c.members[0]];
    for (int m : c.members) {
      if (group_of[m] != gid) throw DomainError("PE grouping split an orbit");
    }
    ++orbits_in[gid];
  }
  for (const ActionClass& c : orbits) {
    const int gid = group_of[c.members[0]];
    if (group) (*group)[at] = gid;
    (*count)[at] = groups[gid].multiplicity;
    if (merged && orbits_in[gid] > 1) ++*merged;
    ++at;
  }
}

}  // namespace

PeTable build_pe_table(const StateDag& dag) {
  PeTable t;
  t.forward_group.assign(dag.forward_class_count(), -1);
  t.forward_count.assign(dag.forward_class_count(), 0);
  t.backward_count.assign(dag.backward_class_count(), 0);
  const Environment& env = dag.env();
  for (int s = 0; s < dag.size(); ++s) {
    const DagState& st = dag.state(s);
    const AutomorphismGroup grp = automorphism_group(st.graph);
    // Same action lists and grouping the DAG was built from, so orbit
    // classes come out in DAG order.
    const std::vector<GraphAction> bwd = env.backward_actions(st.graph);
    assign_groups(st.graph, bwd, group_by_orbit(st.graph, bwd, grp), st.bwd_begin, nullptr,
                  &t.backward_count, nullptr);
    if (st.terminal) continue;
    const std::vector<GraphAction> fwd = env.forward_actions(st.graph);
    assign_groups(st.graph, fwd, group_by_orbit(st.graph, fwd, grp), st.fwd_begin,
                  &t.forward_group, &t.forward_count, &t.merged_forward_classes);
  }
  return t;
}

}  // namespace sagfn
