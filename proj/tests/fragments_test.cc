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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "fixtures.h"
#include "oracles.h"
#include "sagfn/errors.h"
#include "sagfn/fragments.h"
#include "sagfn/grouping.h"
#include "sagfn/symmetry.h"

namespace sagfn {
namespace {

LabeledGraph triangle() { return fixture::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

std::uint64_t oracle_aut(const LabeledGraph& g) {
  return oracle::all_automorphisms(g).size();
}

TEST(LemmaG1, SingleNodeAndTriangle) {
  LabeledGraph g(1, {7});
  const LabeledGraph c = triangle();
  EXPECT_TRUE(lemma_g1_check(g, c));
  const LabeledGraph u = disjoint_union(g, c);
  EXPECT_EQ(automorphism_group(u).order(), 6u);
  EXPECT_EQ(subgraph_orbit_size(u, {1, 2, 3}), 1u);
}

TEST(LemmaG1, CopiesOfAnAsymmetricGraph) {
  LabeledGraph g = fixture::from_edges(3, {{0, 1}, {1, 2}});
  g.set_node_label(0, 1);
  g.set_node_label(1, 2);
  ASSERT_EQ(automorphism_group(g).order(), 1u);
  const LabeledGraph u = disjoint_union(g, g);
  EXPECT_EQ(subgraph_orbit_size(u, {3, 4, 5}), 2u);
  EXPECT_EQ(automorphism_group(u).order(), 2u);
  EXPECT_TRUE(lemma_g1_check(g, g));
}

TEST(LemmaG1, RandomPairsAgainstBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const LabeledGraph g = oracle::random_graph(rng, size(rng), 0.5, 2);
    const LabeledGraph c = oracle::random_graph(rng, size(rng), 0.5, 2);
    const LabeledGraph u = disjoint_union(g, c);
    std::vector<int> cv;
    for (int i = 0; i < c.node_count(); ++i) cv.push_back(g.node_count() + i);
    EXPECT_EQ(oracle::set_orbit_size(u, cv) * oracle_aut(g) * oracle_aut(c),
              oracle_aut(u));
    EXPECT_TRUE(lemma_g1_check(g, c));
  }
  std::uniform_int_distribution<int> big(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const LabeledGraph g = oracle::random_graph(rng, big(rng), 0.4);
    const LabeledGraph c = oracle::random_graph(rng, big(rng), 0.4);
    EXPECT_TRUE(lemma_g1_check(g, c));
  }
}

TEST(Fragment, AutOrderCountsAttachmentPoints) {
  const Vocabulary v = builtin_vocabulary();
  ASSERT_EQ(v.size(), 4);
  EXPECT_EQ(v[0].aut_order, 6u);
  EXPECT_EQ(v[1].aut_order, 4u);
  EXPECT_EQ(v[2].aut_order, 2u);
  EXPECT_EQ(v[3].aut_order, 1u);
  for (const Fragment& f : v.fragments()) {
    EXPECT_EQ(f.aut_order, oracle_aut(f.marked())) << f.name;
  }
  // One attachment point on a triangle leaves only the swap of the others.
  EXPECT_EQ(make_fragment("t1", triangle(), {0}).aut_order, 2u);
}

TEST(Fragment, RejectsMalformed) {
  EXPECT_THROW(make_fragment("empty", LabeledGraph(), {}), ConfigError);
  EXPECT_THROW(make_fragment("split", LabeledGraph(2), {0}), ConfigError);
  EXPECT_THROW(make_fragment("bad", triangle(), {3}), ConfigError);
  EXPECT_THROW(make_fragment("dup", triangle(), {0, 0}), ConfigError);
  EXPECT_THROW(make_fragment("n0", triangle(), {0}, 0), ConfigError);
  EXPECT_THROW(Vocabulary({make_fragment("a", triangle(), {0}),
                           make_fragment("b", triangle(), {2})}),
               ConfigError);
}

TEST(CorrectedReward, SingleFragmentIsUnchanged) {
  const Vocabulary v = builtin_vocabulary();
  for (const Fragment& f : v.fragments()) {
    EXPECT_NEAR(fragment_corrected_reward(v, f.marked(), 2.5), 2.5, 1e-12);
  }
  EXPECT_THROW(fragment_corrected_reward(v, v[0].marked(), 0.0), DomainError);
  EXPECT_THROW(fragment_corrected_reward(v, LabeledGraph(5), 1.0), DomainError);
}

TEST(CorrectedReward, TriangleWithTail) {
  const Vocabulary v = builtin_vocabulary();
  FragmentEnv env(v, 2);
  LabeledGraph g = env.apply(env.initial_graph(), GraphAction::add_fragment(0));
  g = env.apply(g, GraphAction::add_fragment(3));
  g = env.apply(g, GraphAction::add_fragment_edge(0, 4));
  // Triangle with a pendant path: swap of the two free corners only.
  EXPECT_EQ(oracle_aut(g), 2u);
  EXPECT_NEAR(fragment_corrected_reward(v, g, 3.0), 3.0 * 2.0 / 6.0, 1e-12);
}

TEST(CorrectedReward, NonIncreasingInFragmentSymmetry) {
  // Same shape, with and without the symmetry-breaking attachment choice.
  const Vocabulary sym({make_fragment("tri", triangle(), {0, 1, 2}),
                        make_fragment("tail", fixture::from_edges(2, {{0, 1}}), {0})});
  const Vocabulary asym({make_fragment("tri", triangle(), {0}),
                         make_fragment("tail", fixture::from_edges(2, {{0, 1}}), {0})});
  auto build = [](const Vocabulary& v) {
    FragmentEnv env(v, 2);
    LabeledGraph g = env.apply(env.initial_graph(), GraphAction::add_fragment(0));
    g = env.apply(g, GraphAction::add_fragment(1));
    return env.apply(g, GraphAction::add_fragment_edge(0, 3));
  };
  ASSERT_GT(sym[0].aut_order, asym[0].aut_order);
  EXPECT_LT(fragment_corrected_reward(sym, build(sym), 1.0),
            fragment_corrected_reward(asym, build(asym), 1.0));
}

TEST(ApproxReward, AllOnesIsUnchanged) {
  const Vocabulary v({make_fragment("a", triangle(), {0}, 1),
                      make_fragment("b", fixture::from_edges(2, {{0, 1}}), {0}, 1)});
  FragmentEnv env(v, 2);
  LabeledGraph g = env.apply(env.initial_graph(), GraphAction::add_fragment(0));
  g = env.apply(g, GraphAction::add_fragment(1));
  g = env.apply(g, GraphAction::add_fragment_edge(0, 3));
  EXPECT_NEAR(approx_corrected_reward(v, g, 4.0), 4.0, 1e-12);
}

TEST(ApproxReward, SixFoldRingDividesBySix) {
  const Vocabulary v({make_fragment("ring", fixture::cycle(6), {0, 1, 2, 3, 4, 5}, 6),
                      make_fragment("dot", LabeledGraph(1, {1}), {0}, 1)});
  EXPECT_NEAR(approx_corrected_reward(v, v[0].marked(), 12.0), 2.0, 1e-12);
  EXPECT_THROW(approx_corrected_reward(builtin_vocabulary(), LabeledGraph(5), 1.0),
               DomainError);
}

TEST(ApproxReward, AgreesWithExactWithoutBackwardSymmetry) {
  LabeledGraph tail(2, {1, 0});
  tail.add_edge(0, 1);
  const Vocabulary v({make_fragment("ring", fixture::cycle(6), {0, 1, 2, 3, 4, 5}, 6),
                      make_fragment("tri", triangle(), {0, 1, 2}, 3),
                      make_fragment("tail", tail, {1}, 1)});
  for (int id : {0, 1}) {
    FragmentEnv env(v, 2);
    LabeledGraph g = env.apply(env.initial_graph(), GraphAction::add_fragment(id));
    const int n = g.node_count();
    g = env.apply(g, GraphAction::add_fragment(2));
    g = env.apply(g, GraphAction::add_fragment_edge(0, n + 1));
    EXPECT_NEAR(approx_corrected_reward(v, g, 1.0),
                fragment_corrected_reward(v, g, 1.0), 1e-12)
        << v[id].name;
  }
  // A missing N is an error.
  const Vocabulary partial({make_fragment("tri", triangle(), {0})});
  EXPECT_THROW(approx_corrected_reward(partial, partial[0].marked(), 1.0),
               DomainError);
}

TEST(AttachmentPoints, SinglePointIsValid) {
  for (int v = 0; v < 6; ++v) {
    EXPECT_TRUE(validate_attachment_points(make_fragment("h", fixture::cycle(6), {v})).valid);
  }
}

TEST(AttachmentPoints, HexagonCases) {
  const AttachmentCheck odd =
      validate_attachment_points(make_fragment("h", fixture::cycle(6), {0, 2, 3}));
  EXPECT_FALSE(odd.valid);
  EXPECT_FALSE(odd.offending.empty());
  EXPECT_NE(odd.diagnostics.find("(0,2)"), std::string::npos) << odd.diagnostics;
  EXPECT_TRUE(
      validate_attachment_points(make_fragment("h", fixture::cycle(6), {0, 2, 4})).valid);
  EXPECT_TRUE(validate_attachment_points(
                  make_fragment("h", fixture::cycle(6), {0, 1, 2, 3, 4, 5}))
                  .valid);
}

std::vector<int> oracle_orbits(const LabeledGraph& g) {
  std::vector<int> orbit(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) {
    orbit[v] = v;
    for (const auto& a : oracle::all_automorphisms(g)) orbit[v] = std::min(orbit[v], a[v]);
  }
  return orbit;
}

TEST(AttachmentPoints, RandomAgainstBruteForce) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size(2, 7);
  int flagged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    LabeledGraph g = oracle::random_graph(rng, n, 0.5);
    if (!g.is_connected()) continue;
    std::vector<int> aps;
    for (int v = 0; v < n; ++v) {
      if (rng() % 2) aps.push_back(v);
    }
    const Fragment f = make_fragment("r", g, aps);
    const std::vector<int> bare = oracle_orbits(f.graph);
    const std::vector<int> marked = oracle_orbits(f.marked());
    bool expected = true;
    for (int a : aps) {
      for (int b : aps) {
        if (a < b && bare[a] == bare[b] && marked[a] != marked[b]) expected = false;
      }
    }
    const AttachmentCheck got = validate_attachment_points(f);
    EXPECT_EQ(got.valid, expected);
    flagged += !got.valid;
  }
  EXPECT_GT(flagged, 0);
}

// Walks every trajectory up to isomorphism of successors. Multiplicities are
// plain counts of concrete actions whose results are isomorphic, with no use
// of orbit machinery. Along each path, prod m_b / m_f must equal
// |Aut(G_n)| / prod |Aut(C_i)|, with the groups taken by brute force.
struct TrajectoryStats {
  int terminals = 0;
  int trajectories = 0;
  double max_error = 0;
};

void walk(const FragmentEnv& env, const LabeledGraph& g, double log_ratio,
          TrajectoryStats& stats) {
  if (g.terminated()) {
    ++stats.trajectories;
    double expected = std::log(static_cast<double>(oracle_aut(g)));
    for (const PlacedFragment& p : decompose(env.vocabulary(), g).fragments) {
      expected -= std::log(static_cast<double>(oracle_aut(env.vocabulary()[p.id].marked())));
    }
    stats.max_error = std::max(stats.max_error, std::abs(log_ratio - expected));
    const double r = env.reward(g);
    stats.max_error = std::max(
        stats.max_error,
        std::abs(std::log(fragment_corrected_reward(env.vocabulary(), g, r) / r) - expected));
    stats.max_error = std::max(
        stats.max_error, std::abs(env.log_reward_correction(g, oracle_aut(g)) - expected));
    return;
  }
  const std::vector<GraphAction> fwd = env.forward_actions(g);
  const CanonicalForm here = canonical_form(g);
  for (const ActionClass& cls : group_by_transition(env, g, fwd)) {
    const LabeledGraph next = env.apply(g, cls.representative);
    int m_b = 0;
    for (const GraphAction& b : env.backward_actions(next)) {
      m_b += canonical_form(env.apply_backward(next, b)) == here;
    }
    EXPECT_GT(m_b, 0);
    walk(env, next, log_ratio + std::log(static_cast<double>(m_b) / cls.multiplicity),
         stats);
  }
}

TEST(FragmentEnv, InitialAndPendingActions) {
  FragmentEnv env(builtin_vocabulary(), 3);
  const std::vector<GraphAction> a0 = env.forward_actions(env.initial_graph());
  ASSERT_EQ(a0.size(), 4u);
  for (const GraphAction& a : a0) EXPECT_EQ(a.type, ActionType::kAddFragment);
  LabeledGraph g = env.apply(env.initial_graph(), GraphAction::add_fragment(0));
  EXPECT_TRUE(env.backward_actions(env.initial_graph()).empty());
  EXPECT_EQ(env.forward_actions(g).size(), 5u);  // 4 fragments + Stop
  g = env.apply(g, GraphAction::add_fragment(1));
  // Pending: 3 open corners times 2 open square corners, nothing else.
  const std::vector<GraphAction> pending = env.forward_actions(g);
  ASSERT_EQ(pending.size(), 6u);
  for (const GraphAction& a : pending) EXPECT_EQ(a.type, ActionType::kAddFragmentEdge);
  EXPECT_THROW(env.apply(g, GraphAction::stop()), IllegalActionError);
  EXPECT_THROW(env.apply(g, GraphAction::add_fragment_edge(1, 4)), IllegalActionError);
  EXPECT_FALSE(env.supports_flow_matching());
}

TEST(FragmentEnv, BackwardUndoesForward) {
  FragmentEnv env(builtin_vocabulary(), 3);
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LabeledGraph g = env.initial_graph();
    while (!g.terminated()) {
      const auto fwd = env.forward_actions(g);
      const GraphAction a = fwd[rng() % fwd.size()];
      const LabeledGraph next = env.apply(g, a);
      const GraphAction b = env.reverse_action(g, a);
      EXPECT_EQ(env.backward_violation(next, b), "") << a.to_string();
      EXPECT_EQ(env.apply_backward(next, b), g) << a.to_string();
      g = next;
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(FragmentEnv, TrajectoryOracleBuiltinVocabulary) {
  for (int k : {1, 2, 3}) {
    FragmentEnv env(builtin_vocabulary(), k);
    TrajectoryStats stats;
    walk(env, env.initial_graph(), 0.0, stats);
    EXPECT_GT(stats.trajectories, 0);
    EXPECT_LT(stats.max_error, 1e-9) << "max_fragments " << k;
  }
}

TEST(FragmentEnv, TrajectoryOracleRandomVocabularies) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> size(1, 5);
  int built = 0;
  while (built < 25) {
    std::vector<Fragment> frags;
    for (int i = 0; i < 2; ++i) {
      LabeledGraph g;
      do {
        g = oracle::random_graph(rng, size(rng), 0.6, 2);
      } while (!g.is_connected());
      std::vector<int> aps;
      for (int v = 0; v < g.node_count(); ++v) {
        if (rng() % 2) aps.push_back(v);
      }
      if (aps.empty()) aps.push_back(0);
      frags.push_back(make_fragment("f" + std::to_string(i), g, aps));
    }
    std::optional<Vocabulary> vocab;
    try {
      vocab.emplace(frags);
    } catch (const ConfigError&) {
      continue;
    }
    FragmentEnv env(*vocab, 2);
    TrajectoryStats stats;
    walk(env, env.initial_graph(), 0.0, stats);
    EXPECT_LT(stats.max_error, 1e-9);
    ++built;
  }
}

TEST(Vocabulary, JsonRoundTrip) {
  const Vocabulary v = builtin_vocabulary();
  const Vocabulary w = Vocabulary::from_json(v.to_json());
  ASSERT_EQ(w.size(), v.size());
  for (int i = 0; i < v.size(); ++i) {
    EXPECT_EQ(w[i].name, v[i].name);
    EXPECT_EQ(w[i].aut_order, v[i].aut_order);
    EXPECT_EQ(w[i].approx_n, v[i].approx_n);
    EXPECT_EQ(w.find(v[i].marked()), i);
  }
  EXPECT_THROW(Vocabulary::from_json(nlohmann::json::object()), ConfigError);
  EXPECT_THROW(Vocabulary::from_json(nlohmann::json::parse(
                   R"([{"n": 2, "edges": [[0, 1, 0]], "attachment_points": [5]}])")),
               ConfigError);
  EXPECT_THROW(Vocabulary::load("/nonexistent/vocab.json"), ConfigError);
}

TEST(Vocabulary, EnvironmentFromConfig) {
  const std::string path = testing::TempDir() + "sagfn_vocab.json";
  {
    std::ofstream out(path);
    out << R"([{"name": "edge", "n": 2, "edges": [[0, 1, 0]], "attachment_points": [0, 1], "approx_N": 2},
              {"name": "tri", "n": 3, "edges": [[0, 1, 0], [1, 2, 0], [0, 2, 0]], "attachment_points": [0]}])";
  }
  EnvConfig c = EnvConfig::from_json(
      {{"env", "fragment"}, {"vocabulary", path}, {"max_fragments", 2}});
  auto env = make_environment(c);
  EXPECT_EQ(env->name(), "fragment");
  EXPECT_EQ(env->forward_actions(env->initial_graph()).size(), 2u);
  EXPECT_EQ(env->config_json()["vocabulary"], path);
  std::remove(path.c_str());
  EXPECT_THROW(make_environment(EnvConfig::from_json({{"env", "fragment"}, {"max_nodes", 3}})),
               ConfigError);
  EXPECT_EQ(make_environment(EnvConfig::from_json({{"env", "cycle"}}))->name(), "cycle");
}

}  // namespace
}  // namespace sagfn
