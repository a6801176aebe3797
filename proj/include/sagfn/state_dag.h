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

#ifndef SAGFN_STATE_DAG_H_
#define SAGFN_STATE_DAG_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sagfn/action.h"
#include "sagfn/environment.h"
#include "sagfn/labeled_graph.h"

namespace sagfn {

// GraphAction without heap storage; vertex sets become bit masks.
struct CompactAction {
  std::uint64_t vertices = 0;
  std::int16_t label = 0;
  std::int8_t type = 0;
  std::int8_t u = -1;
  std::int8_t v = -1;

  static CompactAction from(const GraphAction& a);
  GraphAction expand() const;
};

// One orbit class of forward actions on a state's canonical graph.
struct ForwardClass {
  CompactAction representative;  // smallest member, canonical coordinates
  int successor = -1;
  int multiplicity = 0;
  int back_class = -1;  // index into the successor's backward classes
};

struct BackwardClass {
  CompactAction representative;
  int predecessor = -1;
  int multiplicity = 0;
  int forward_class = -1;  // index into the predecessor's forward classes
};

struct DagState {
  LabeledGraph graph;  // canonical representative
  std::uint64_t hash = 0;
  std::uint64_t aut = 1;
  bool terminal = false;
  double reward = 0;          // terminal states only
  double log_correction = 0;  // log R~/R, terminal states only
  int backward_total = 0;     // concrete backward actions
  int fwd_begin = 0, fwd_end = 0;
  int bwd_begin = 0, bwd_end = 0;
};

// Zero-padded lowercase hex, as CanonicalForm::hex().
std::string hash_hex(std::uint64_t hash);

struct EnumerateOptions {
  std::int64_t max_states = 10'000'000;
};

// Every isomorphism class reachable from the initial graph, with orbit-class
// transitions. Both directions are stored so that each forward class is
// paired with the backward class that undoes it.
class StateDag {
 public:
  // Throws EnumerationOverflowError past the state cap and DomainError on
  // dead ends or transitions that break the orbit ratio law.
  static StateDag enumerate(const Environment& env,
                            const EnumerateOptions& options = {});

  const Environment& env() const { return *env_; }
  int size() const { return static_cast<int>(states_.size()); }
  int initial() const { return 0; }
  const DagState& state(int s) const { return states_[s]; }
  std::span<const ForwardClass> forward(int s) const {
    return {forward_.data() + states_[s].fwd_begin,
            forward_.data() + states_[s].fwd_end};
  }
  std::span<const BackwardClass> backward(int s) const {
    return {backward_.data() + states_[s].bwd_begin,
            backward_.data() + states_[s].bwd_end};
  }
  // Flat indices: forward(s)[i] is forward_class(state(s).fwd_begin + i).
  int forward_class_count() const { return static_cast<int>(forward_.size()); }
  int backward_class_count() const { return static_cast<int>(backward_.size()); }
  const std::vector<int>& terminals() const { return terminals_; }
  // Every transition goes from an earlier to a later state in this order.
  const std::vector<int>& topological_order() const { return order_; }

  // -1 when g is not isomorphic to an enumerated state.
  int find(const LabeledGraph& g) const;
  // -1 when unknown. Throws DomainError if two states share a hash.
  int find_hash(std::uint64_t hash) const;

  // State of g and the forward (or backward) class containing action a.
  struct Location {
    int state = -1;
    int cls = -1;
  };
  Location locate_forward(const LabeledGraph& g, const GraphAction& a) const;
  Location locate_backward(const LabeledGraph& g, const GraphAction& b) const;

  // One JSON object per line: id, hash, terminal, aut, reward, successors.
  void write_jsonl(std::ostream& out) const;

 private:
  Location locate(const LabeledGraph& g, const GraphAction& a, bool fwd) const;

  const Environment* env_ = nullptr;
  std::vector<DagState> states_;
  std::vector<ForwardClass> forward_;
  std::vector<BackwardClass> backward_;
  std::vector<int> terminals_;
  std::vector<int> order_;
  std::map<std::string, int> by_form_;
  std::unordered_map<std::uint64_t, int> by_hash_;
  bool hash_collision_ = false;
};

}  // namespace sagfn

#endif  // SAGFN_STATE_DAG_H_
