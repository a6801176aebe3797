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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sagfn/errors.h"
#include "sagfn/fragments.h"
#include "sagfn/symmetry.h"

namespace sagfn {

LabeledGraph Fragment::marked() const {
  LabeledGraph m = graph;
  for (int v = 0; v < graph.node_count(); ++v) {
    m.set_node_label(v, state_label(graph.node_label(v), kAttachNone));
  }
  for (int v : attachment_points) {
    m.set_node_label(v, state_label(graph.node_label(v), kAttachOpen));
  }
  return m;
}

Fragment make_fragment(std::string name, LabeledGraph graph,
                       std::vector<int> attachment_points,
                       std::optional<int> approx_n) {
  if (graph.node_count() == 0) throw ConfigError("fragment '" + name + "' is empty");
  if (!graph.is_connected()) {
    throw ConfigError("fragment '" + name + "' is disconnected");
  }
  for (int v = 0; v < graph.node_count(); ++v) {
    if (state_label(graph.node_label(v), 3) > LabeledGraph::kMaxNodeLabel) {
      throw ConfigError("fragment '" + name + "' has an atom type out of range");
    }
  }
  for (const Edge& e : graph.edges()) {
    if (e.label != kIntraEdge) {
      throw ConfigError("fragment '" + name + "' has labeled edges");
    }
  }
  std::sort(attachment_points.begin(), attachment_points.end());
  for (size_t i = 0; i < attachment_points.size(); ++i) {
    const int v = attachment_points[i];
    if (v < 0 || v >= graph.node_count() ||
        (i > 0 && attachment_points[i - 1] == v)) {
      throw ConfigError("fragment '" + name + "' has bad attachment points");
    }
  }
  if (approx_n && *approx_n < 1) {
    throw ConfigError("fragment '" + name + "' has approx_N < 1");
  }
  graph.erase_attribute(LabeledGraph::kTerminatedKey);
  Fragment f{std::move(name), std::move(graph), std::move(attachment_points),
             approx_n, 1};
  f.aut_order = automorphism_group(f.marked()).order();
  return f;
}

Vocabulary::Vocabulary(std::vector<Fragment> fragments)
    : fragments_(std::move(fragments)) {
  for (int id = 0; id < size(); ++id) {
    const std::string key = canonical_form(fragments_[id].marked()).bytes();
    if (!by_form_.emplace(key, id).second) {
      throw ConfigError("fragment '" + fragments_[id].name +
                        "' duplicates an earlier fragment");
    }
  }
}

int Vocabulary::find(const LabeledGraph& marked) const {
  auto it = by_form_.find(canonical_form(marked).bytes());
  return it == by_form_.end() ? -1 : it->second;
}

FragmentAssembly decompose(const Vocabulary& vocab, const LabeledGraph& g) {
  const int n = g.node_count();
  LabeledGraph intra(n, g.node_labels());
  FragmentAssembly out;
  for (const Edge& e : g.edges()) {
    if (e.label == kIntraEdge) {
      intra.add_edge(e.u, e.v, kIntraEdge);
    } else if (e.label == kInterEdge) {
      out.inter_edges.push_back(e);
    } else {
      throw DomainError("unknown edge label in a fragment assembly");
    }
  }
  const std::vector<int> comp = intra.component_ids();
  const int parts = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  out.fragments.resize(parts);
  for (int v = 0; v < n; ++v) out.fragments[comp[v]].vertices.push_back(v);
  for (PlacedFragment& p : out.fragments) {
    LabeledGraph piece = induced_subgraph(intra, p.vertices);
    for (int i = 0; i < piece.node_count(); ++i) {
      const int label = piece.node_label(i);
      if (attach_of(label) == kAttachUsed) {
        piece.set_node_label(i, state_label(atom_of(label), kAttachOpen));
      }
    }
    p.id = vocab.find(piece);
    if (p.id < 0) {
      throw DomainError("a component is not a vocabulary fragment: " +
                        piece.debug_string());
    }
  }
  return out;
}

namespace {

double log_fragment_product(const Vocabulary& vocab, const FragmentAssembly& a) {
  double s = 0;
  for (const PlacedFragment& p : a.fragments) {
    s += std::log(static_cast<double>(vocab[p.id].aut_order));
  }
  return s;
}

}  // namespace

double fragment_corrected_reward(const Vocabulary& vocab, const LabeledGraph& g,
                                 double base_reward) {
  if (!(base_reward > 0)) throw DomainError("reward must be positive");
  const FragmentAssembly a = decompose(vocab, g);
  const double aut = static_cast<double>(automorphism_group(g).order());
  return base_reward * std::exp(std::log(aut) - log_fragment_product(vocab, a));
}

double approx_corrected_reward(const Vocabulary& vocab, const LabeledGraph& g,
                               double base_reward) {
  if (!(base_reward > 0)) throw DomainError("reward must be positive");
  double r = base_reward;
  for (const PlacedFragment& p : decompose(vocab, g).fragments) {
    if (!vocab[p.id].approx_n) {
      throw DomainError("fragment '" + vocab[p.id].name + "' has no approx_N");
    }
    r /= *vocab[p.id].approx_n;
  }
  return r;
}

AttachmentCheck validate_attachment_points(const Fragment& f) {
  const AutomorphismGroup bare = automorphism_group(f.graph);
  const AutomorphismGroup marked = automorphism_group(f.marked());
  AttachmentCheck out;
  const auto& ap = f.attachment_points;
  for (size_t i = 0; i < ap.size(); ++i) {
    for (size_t j = i + 1; j < ap.size(); ++j) {
      if (bare.node_orbit(ap[i]) == bare.node_orbit(ap[j]) &&
          marked.node_orbit(ap[i]) != marked.node_orbit(ap[j])) {
        out.offending.emplace_back(ap[i], ap[j]);
      }
    }
  }
  out.valid = out.offending.empty();
  std::ostringstream os;
  if (out.valid) {
    os << "ok";
  } else {
    os << "attachment points equivalent without marks but not with marks:";
    for (auto [u, v] : out.offending) os << " (" << u << "," << v << ")";
  }
  out.diagnostics = os.str();
  return out;
}

bool lemma_g1_check(const LabeledGraph& g, const LabeledGraph& c) {
  const LabeledGraph u = disjoint_union(g, c);
  std::vector<int> cv(c.node_count());
  std::iota(cv.begin(), cv.end(), g.node_count());
  const unsigned __int128 lhs =
      static_cast<unsigned __int128>(subgraph_orbit_size(u, cv)) *
      automorphism_group(g).order() * automorphism_group(c).order();
  return lhs == automorphism_group(u).order();
}

}  // namespace sagfn
