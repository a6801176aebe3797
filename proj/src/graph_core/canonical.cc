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

// Canonical labeling by colour refinement and individualization, in the
// style of nauty and bliss. The same search tree yields a generating set of
// the automorphism group: leaves with equal certificates differ by an
// automorphism, and automorphisms found so far prune equivalent subtrees.

#include <algorithm>
#include <array>
#include <bit>
#include <climits>
#include <cstdint>
#include <numeric>
#include <vector>

#include "sagfn/errors.h"
#include "sagfn/symmetry.h"

namespace sagfn {
namespace {

constexpr int kMax = LabeledGraph::kMaxNodes;
constexpr int kNoJump = INT_MAX;

struct Coloring {
  // Each vertex is coloured by the first position of its cell in the ordered
  // partition, so colours double as canonical positions once discrete.
  std::array<std::uint8_t, kMax> color;
  int cells = 0;
};

class Searcher {
 public:
  explicit Searcher(const LabeledGraph& g)
      : g_(g),
        n_(g.node_count()),
        sig_(static_cast<size_t>(n_) * n_),
        len_(n_),
        order_(n_),
        prefix_(n_) {}

  void run() {
    Coloring c;
    std::vector<int> idx(n_);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return g_.node_label(a) < g_.node_label(b);
    });
    int start = 0;
    for (int i = 0; i < n_; ++i) {
      if (i > 0 && g_.node_label(idx[i]) != g_.node_label(idx[i - 1])) {
        start = i;
      }
      if (start == i) ++c.cells;
      c.color[idx[i]] = static_cast<std::uint8_t>(start);
    }
    dfs(c, 0, 0);
  }

  const std::vector<int>& best_positions() const { return best_pos_; }

  std::vector<Permutation> generators() const {
    std::vector<Permutation> out;
    out.reserve(gens_.size());
    for (const auto& m : gens_) out.emplace_back(m);
    return out;
  }

  // Product over the first path of the orbit sizes of the individualized
  // vertex under generators fixing the earlier path vertices.
  std::uint64_t group_order() const {
    std::uint64_t order = 1;
    std::vector<int> root(n_);
    for (size_t d = 0; d < first_path_.size(); ++d) {
      std::iota(root.begin(), root.end(), 0);
      for (const auto& gen : gens_) {
        if (!fixes_prefix(gen, first_path_.data(), static_cast<int>(d))) {
          continue;
        }
        for (int v = 0; v < n_; ++v) unite(root, v, gen[v]);
      }
      const int r = find(root, first_path_[d]);
      std::uint64_t size = 0;
      for (int v = 0; v < n_; ++v) size += find(root, v) == r;
      if (__builtin_mul_overflow(order, size, &order)) {
        throw DomainError("automorphism group order exceeds 64 bits");
      }
    }
    return order;
  }

 private:
  static int find(std::vector<int>& root, int v) {
    while (root[v] != v) {
      root[v] = root[root[v]];
      v = root[v];
    }
    return v;
  }

  static void unite(std::vector<int>& root, int a, int b) {
    a = find(root, a);
    b = find(root, b);
    if (a == b) return;
    if (a < b) {
      root[b] = a;
    } else {
      root[a] = b;
    }
  }

  static bool fixes_prefix(const std::vector<int>& gen, const int* prefix,
                           int len) {
    for (int i = 0; i < len; ++i) {
      if (gen[prefix[i]] != prefix[i]) return false;
    }
    return true;
  }

  bool key_less(const Coloring& c, int a, int b) const {
    if (c.color[a] != c.color[b]) return c.color[a] < c.color[b];
    if (len_[a] != len_[b]) return len_[a] < len_[b];
    const std::uint16_t* sa = &sig_[a * n_];
    const std::uint16_t* sb = &sig_[b * n_];
    return std::lexicographical_compare(sa, sa + len_[a], sb, sb + len_[b]);
  }

  // Splits cells by the multiset of (neighbour colour, edge label) until the
  // partition is equitable.
  void refine(Coloring& c) {
    while (c.cells < n_) {
      for (int v = 0; v < n_; ++v) {
        std::uint16_t* s = &sig_[v * n_];
        int k = 0;
        for (std::uint64_t m = g_.neighbor_mask(v); m; m &= m - 1) {
          const int w = std::countr_zero(m);
          s[k++] = static_cast<std::uint16_t>((c.color[w] << 8) |
                                              g_.edge_label(v, w));
        }
        std::sort(s, s + k);
        len_[v] = k;
      }
      std::iota(order_.begin(), order_.end(), 0);
      std::sort(order_.begin(), order_.end(),
                [&](int a, int b) { return key_less(c, a, b); });
      Coloring next;
      int start = 0;
      for (int i = 0; i < n_; ++i) {
        if (i == 0 || key_less(c, order_[i - 1], order_[i])) {
          start = i;
          ++next.cells;
        }
        next.color[order_[i]] = static_cast<std::uint8_t>(start);
      }
      if (next.cells == c.cells) return;
      c = next;
    }
  }

  // Returns the tree level the search should unwind to, or kNoJump.
  int dfs(Coloring c, int level, int common) {
    refine(c);
    if (c.cells == n_) return leaf(c, common);

    // Target cell: smallest non-singleton, lowest colour on ties.
    std::array<int, kMax> size{};
    for (int v = 0; v < n_; ++v) ++size[c.color[v]];
    int target = -1;
    for (int col = 0; col < n_; ++col) {
      if (size[col] > 1 && (target < 0 || size[col] < size[target])) {
        target = col;
      }
    }
    std::vector<int> cell;
    for (int v = 0; v < n_; ++v) {
      if (c.color[v] == target) cell.push_back(v);
    }

    std::vector<int> explored;
    std::vector<int> root(n_);
    size_t seen_gens = SIZE_MAX;
    for (int v : cell) {
      if (!explored.empty()) {
        if (seen_gens != gens_.size()) {
          std::iota(root.begin(), root.end(), 0);
          for (const auto& gen : gens_) {
            if (!fixes_prefix(gen, prefix_.data(), level)) continue;
            for (int x = 0; x < n_; ++x) unite(root, x, gen[x]);
          }
          seen_gens = gens_.size();
        }
        const int r = find(root, v);
        bool pruned = false;
        for (int x : explored) {
          if (find(root, x) == r) {
            pruned = true;
            break;
          }
        }
        if (pruned) continue;
      }
      explored.push_back(v);
      prefix_[level] = v;
      if (!have_first_) first_path_.push_back(v);
      int next_common = common;
      if (common == level && have_first_ && first_path_[level] == v) {
        next_common = level + 1;
      } else if (!have_first_) {
        next_common = level + 1;
      }

      Coloring child = c;
      const std::uint8_t col = c.color[v];
      for (int x : cell) {
        if (x != v) child.color[x] = static_cast<std::uint8_t>(col + 1);
      }
      ++child.cells;
      const int back = dfs(child, level + 1, next_common);
      if (back < level) return back;
    }
    return kNoJump;
  }

  int leaf(const Coloring& c, int common) {
    const size_t cert_len = n_ + static_cast<size_t>(n_) * (n_ - 1) / 2;
    cert_.resize(cert_len);
    pos_.resize(n_);
    inv_.resize(n_);
    for (int v = 0; v < n_; ++v) {
      pos_[v] = c.color[v];
      inv_[c.color[v]] = v;
    }
    size_t k = 0;
    for (int i = 0; i < n_; ++i) {
      cert_[k++] = static_cast<std::uint16_t>(g_.node_label(inv_[i]));
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        cert_[k++] = static_cast<std::uint16_t>(g_.edge_label(inv_[i], inv_[j]) + 1);
      }
    }

    if (!have_first_) {
      have_first_ = true;
      first_cert_ = best_cert_ = cert_;
      first_inv_ = best_inv_ = inv_;
      best_pos_ = pos_;
      return kNoJump;
    }
    if (cert_ == first_cert_) {
      add_generator(first_inv_);
      return common;
    }
    if (cert_ == best_cert_) {
      add_generator(best_inv_);
      return kNoJump;
    }
    if (cert_ < best_cert_) {
      best_cert_ = cert_;
      best_inv_ = inv_;
      best_pos_ = pos_;
    }
    return kNoJump;
  }

  void add_generator(const std::vector<int>& target_inv) {
    std::vector<int> gen(n_);
    bool identity = true;
    for (int v = 0; v < n_; ++v) {
      gen[v] = target_inv[pos_[v]];
      identity &= gen[v] == v;
    }
    if (!identity) gens_.push_back(std::move(gen));
  }

  const LabeledGraph& g_;
  const int n_;
  std::vector<std::uint16_t> sig_;
  std::vector<int> len_;
  std::vector<int> order_;
  std::vector<int> prefix_;

  bool have_first_ = false;
  std::vector<int> first_path_;
  std::vector<std::uint16_t> cert_, first_cert_, best_cert_;
  std::vector<int> pos_, inv_, first_inv_, best_inv_, best_pos_;
  std::vector<std::vector<int>> gens_;
};

void put_u16(std::string& out, int x) {
  out.push_back(static_cast<char>(x & 0xff));
  out.push_back(static_cast<char>((x >> 8) & 0xff));
}

CanonicalForm serialize(const LabeledGraph& h) {
  std::string out;
  const int n = h.node_count();
  out.push_back(static_cast<char>(n));
  for (int v = 0; v < n; ++v) put_u16(out, h.node_label(v));
  const std::vector<Edge> edges = h.edges();
  put_u16(out, static_cast<int>(edges.size()));
  for (const Edge& e : edges) {
    out.push_back(static_cast<char>(e.u));
    out.push_back(static_cast<char>(e.v));
    out.push_back(static_cast<char>(e.label));
  }
  out.push_back(static_cast<char>(h.attributes().size()));
  for (const auto& [key, value] : h.attributes()) {
    out.push_back(static_cast<char>(key.size()));
    out += key;
    const auto u = static_cast<std::uint32_t>(value);
    for (int s = 0; s < 32; s += 8) out.push_back(static_cast<char>((u >> s) & 0xff));
  }
  return CanonicalForm(std::move(out));
}

struct SearchOutput {
  Permutation labeling;
  std::uint64_t order;
  std::vector<Permutation> generators;
};

SearchOutput search(const LabeledGraph& g) {
  const int n = g.node_count();
  if (n == 0) return {Permutation::identity(0), 1, {}};
  if (g.attributes().size() > 255) throw DomainError("too many attributes");
  Searcher s(g);
  s.run();
  return {Permutation(s.best_positions()), s.group_order(), s.generators()};
}

}  // namespace

CanonicalResult canonicalize(const LabeledGraph& g) {
  SearchOutput out = search(g);
  CanonicalResult r;
  r.graph = apply_permutation(g, out.labeling);
  r.form = serialize(r.graph);
  r.group = AutomorphismGroup(g.node_count(), out.order,
                              std::move(out.generators));
  r.labeling = std::move(out.labeling);
  return r;
}

CanonicalForm canonical_form(const LabeledGraph& g) {
  return serialize(apply_permutation(g, search(g).labeling));
}

AutomorphismGroup automorphism_group(const LabeledGraph& g) {
  SearchOutput out = search(g);
  return AutomorphismGroup(g.node_count(), out.order,
                           std::move(out.generators));
}

}  // namespace sagfn
