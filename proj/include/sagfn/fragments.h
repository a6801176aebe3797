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

#ifndef SAGFN_FRAGMENTS_H_
#define SAGFN_FRAGMENTS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sagfn/environment.h"
#include "sagfn/labeled_graph.h"

namespace sagfn {

// Node labels inside fragment-env states: atom * 4 + attachment state.
inline constexpr int kAttachNone = 0;
inline constexpr int kAttachOpen = 1;
inline constexpr int kAttachUsed = 2;
inline constexpr int kIntraEdge = 0;
inline constexpr int kInterEdge = 1;

inline int state_label(int atom, int attach) { return atom * 4 + attach; }
inline int atom_of(int label) { return label / 4; }
inline int attach_of(int label) { return label % 4; }

struct Fragment {
  std::string name;
  LabeledGraph graph;  // node labels are atom types, edges unlabeled
  std::vector<int> attachment_points;
  std::optional<int> approx_n;
  std::uint64_t aut_order = 1;  // attachment points count as labels

  // The fragment as it appears in a state: open attachment points marked.
  LabeledGraph marked() const;
};

// Validates and fills aut_order. Throws ConfigError.
Fragment make_fragment(std::string name, LabeledGraph graph,
                       std::vector<int> attachment_points,
                       std::optional<int> approx_n = std::nullopt);

class Vocabulary {
 public:
  Vocabulary() = default;
  // Throws ConfigError on isomorphic duplicates.
  explicit Vocabulary(std::vector<Fragment> fragments);

  int size() const { return static_cast<int>(fragments_.size()); }
  const Fragment& operator[](int id) const { return fragments_[id]; }
  const std::vector<Fragment>& fragments() const { return fragments_; }
  // Id of the fragment isomorphic to `marked` (open attachments), or -1.
  int find(const LabeledGraph& marked) const;

  nlohmann::json to_json() const;
  static Vocabulary from_json(const nlohmann::json& j);
  static Vocabulary load(const std::string& path);

 private:
  std::vector<Fragment> fragments_;
  std::map<std::string, int> by_form_;
};

// Triangle (3 attachment points), square with two opposite attachment
// points, 3-path attached at both ends, and an asymmetric 2-atom tail.
Vocabulary builtin_vocabulary();

struct PlacedFragment {
  int id;
  std::vector<int> vertices;  // sorted
};

// A state graph split back into fragments and inter-fragment edges.
struct FragmentAssembly {
  std::vector<PlacedFragment> fragments;
  std::vector<Edge> inter_edges;
};

// Throws DomainError when g is not an assembly of vocabulary fragments.
FragmentAssembly decompose(const Vocabulary& vocab, const LabeledGraph& g);

// |Aut(G)| R(G) / prod |Aut(C_i)|, with |Aut(G)| taken on the state graph.
double fragment_corrected_reward(const Vocabulary& vocab, const LabeledGraph& g,
                                 double base_reward);
// R(G) / prod N(C_i). Throws DomainError if some N is missing.
double approx_corrected_reward(const Vocabulary& vocab, const LabeledGraph& g,
                               double base_reward);

struct AttachmentCheck {
  bool valid = true;
  // Attachment points sharing an orbit of the bare fragment but not of the
  // fragment with attachment points marked.
  std::vector<std::pair<int, int>> offending;
  std::string diagnostics;
};
AttachmentCheck validate_attachment_points(const Fragment& fragment);

// |Orb(g u c, V_c)| |Aut(g)| |Aut(c)| == |Aut(g u c)|, evaluated exactly.
bool lemma_g1_check(const LabeledGraph& g, const LabeledGraph& c);

// Builds trees of vocabulary fragments. From a complete body, AddFragment
// places a fragment beside it; the only next move is AddFragmentEdge between
// an open attachment point of the body and one of the new fragment.
class FragmentEnv : public Environment {
 public:
  FragmentEnv(Vocabulary vocab, int max_fragments, double reward_floor = 1.0);

  std::string name() const override { return "fragment"; }
  LabeledGraph initial_graph() const override { return LabeledGraph(); }
  nlohmann::json config_json() const override;
  std::string state_violation(const LabeledGraph& g) const override;
  GraphAction reverse_action(const LabeledGraph& g,
                             const GraphAction& a) const override;
  double log_reward_correction(const LabeledGraph& terminal,
                               std::uint64_t aut) const override;
  double log_transition_ratio(const LabeledGraph& g, const GraphAction& a,
                              std::uint64_t aut_g,
                              std::uint64_t aut_next) const override;
  bool supports_flow_matching() const override { return false; }

  const Vocabulary& vocabulary() const { return vocab_; }
  int max_fragments() const { return max_fragments_; }

 protected:
  std::vector<GraphAction> forward_candidates(
      const LabeledGraph& g) const override;
  std::vector<GraphAction> backward_candidates(
      const LabeledGraph& g) const override;
  std::string forward_rule(const LabeledGraph& g,
                           const GraphAction& a) const override;
  double base_reward(const LabeledGraph& g) const override;
  LabeledGraph do_apply(const LabeledGraph& g,
                        const GraphAction& a) const override;
  std::optional<Reversal> reverse(const LabeledGraph& g,
                                  const GraphAction& b) const override;

 private:
  Vocabulary vocab_;
  int max_fragments_;
  double reward_floor_;
  std::string vocabulary_path_;
  friend std::unique_ptr<Environment> make_environment(const EnvConfig&);
};

// All environments, including the fragment env.
std::unique_ptr<Environment> make_environment(const EnvConfig& config);

}  // namespace sagfn

#endif  // SAGFN_FRAGMENTS_H_
