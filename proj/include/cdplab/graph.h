// Copyright 2026 The cdplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CDPLAB_GRAPH_H_
#define CDPLAB_GRAPH_H_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "cdplab/bit_vector.h"
#include "cdplab/errors.h"

namespace cdplab {

// Simple undirected graph whose vertices are hypercube points.
class Graph {
 public:
  explicit Graph(std::vector<BitVector> vertices)
      : vertices_(std::move(vertices)), adjacency_(vertices_.size()) {}

  void AddEdge(int u, int v) {
    if (u == v) throw Error(ErrorCode::kParameter, "self-loops are not allowed");
    if (HasEdge(u, v)) return;
    adjacency_.at(u).push_back(v);
    adjacency_.at(v).push_back(u);
    ++edge_count_;
  }

  bool HasEdge(int u, int v) const {
    const auto& nbrs = adjacency_.at(u);
    return std::find(nbrs.begin(), nbrs.end(), v) != nbrs.end();
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<BitVector>& vertices() const { return vertices_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }

  Graph InducedSubgraph(const std::vector<int>& keep) const {
    std::vector<int> position(vertices_.size(), -1);
    std::vector<BitVector> sub_vertices;
    for (int v : keep) {
      position.at(v) = static_cast<int>(sub_vertices.size());
      sub_vertices.push_back(vertices_[v]);
    }
    Graph sub(std::move(sub_vertices));
    for (int v : keep) {
      for (int w : adjacency_[v]) {
        if (position[w] >= 0 && position[v] < position[w]) sub.AddEdge(position[v], position[w]);
      }
    }
    return sub;
  }

 private:
  std::vector<BitVector> vertices_;
  std::vector<std::vector<int>> adjacency_;
  std::size_t edge_count_ = 0;
};

// Distance graph on {0,1}^n: edges join points at distance 1..d. With
// `restrict`, the subgraph induced on the points it accepts.
inline Graph HypercubeGraph(int n, int d,
                            const std::function<bool(const BitVector&)>& restrict = {},
                            const Guards& guards = DefaultGuards()) {
  if (n < 1 || n > guards.max_graph_n) {
    throw Error(ErrorCode::kCapacity, "hypercube graph needs 1 <= n <= " +
                                          std::to_string(guards.max_graph_n));
  }
  if (d < 0) throw Error(ErrorCode::kParameter, "distance must be >= 0");
  std::vector<BitVector> vertices;
  std::vector<std::uint64_t> index;
  ForEachPoint(n, [&](const BitVector& z) {
    if (!restrict || restrict(z)) {
      index.push_back(z.ToIndex());
      vertices.push_back(z);
    }
  });
  Graph g(std::move(vertices));
  for (std::size_t i = 0; i < index.size(); ++i) {
    for (std::size_t j = i + 1; j < index.size(); ++j) {
      const int dist = std::popcount(index[i] ^ index[j]);
      if (dist >= 1 && dist <= d) g.AddEdge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

namespace internal {

// Branch and bound for a maximum independent set, run as a maximum clique
// search in the complement with a greedy clique-cover bound. In decision mode
// it stops as soon as an independent set of size `target` is found.
class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const Graph& g) : n_(static_cast<int>(g.vertex_count())) {
    words_ = (n_ + 63) / 64;
    // Relabel by ascending degree in g so that low-degree vertices, which are
    // likely in large independent sets, are tried first.
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return g.neighbors(a).size() < g.neighbors(b).size();
    });
    std::vector<int> label(n_);
    for (int i = 0; i < n_; ++i) label[order[i]] = i;
    compatible_.assign(static_cast<std::size_t>(n_) * words_, 0);
    for (int v = 0; v < n_; ++v) {
      Word* row = Row(label[v]);
      for (int w = 0; w < n_; ++w) {
        if (w != v) Set(row, label[w]);
      }
      for (int w : g.neighbors(v)) Reset(row, label[w]);
    }
  }

  int Maximum() {
    best_ = 0;
    target_ = -1;
    Run();
    return best_;
  }

  // True iff some independent set has at least `target` vertices.
  bool Reaches(int target) {
    if (target <= 0) return true;
    best_ = 0;
    target_ = target;
    Run();
    return best_ >= target;
  }

 private:
  using Word = std::uint64_t;

  Word* Row(int v) { return compatible_.data() + static_cast<std::size_t>(v) * words_; }
  static void Set(Word* bits, int i) { bits[i / 64] |= Word{1} << (i % 64); }
  static void Reset(Word* bits, int i) { bits[i / 64] &= ~(Word{1} << (i % 64)); }

  void Run() {
    if (n_ == 0) return;
    std::vector<Word> all(words_, 0);
    for (int i = 0; i < n_; ++i) Set(all.data(), i);
    done_ = false;
    Expand(all, 0);
  }

  bool Any(const std::vector<Word>& bits) const {
    for (Word w : bits) {
      if (w) return true;
    }
    return false;
  }

  void Expand(std::vector<Word> candidates, int size) {
    // Greedy partition of the candidates into cliques of g: each part holds at
    // most one vertex of any independent set.
    std::vector<int> order;
    std::vector<int> bound;
    std::vector<Word> uncolored = candidates;
    std::vector<Word> pool(words_);
    int parts = 0;
    while (Any(uncolored)) {
      ++parts;
      pool = uncolored;
      for (int wi = 0; wi < words_; ++wi) {
        while (pool[wi]) {
          const int v = wi * 64 + std::countr_zero(pool[wi]);
          Reset(pool.data(), v);
          Reset(uncolored.data(), v);
          const Word* row = Row(v);
          for (int k = wi; k < words_; ++k) pool[k] &= ~row[k];
          order.push_back(v);
          bound.push_back(parts);
        }
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (done_) return;
      const int limit = target_ > 0 ? target_ - 1 : best_;
      if (size + bound[i] <= limit) return;
      const int v = order[i];
      std::vector<Word> next(words_);
      const Word* row = Row(v);
      for (int k = 0; k < words_; ++k) next[k] = candidates[k] & row[k];
      if (!Any(next)) {
        if (size + 1 > best_) best_ = size + 1;
      } else {
        Expand(std::move(next), size + 1);
      }
      if (target_ > 0 && best_ >= target_) {
        done_ = true;
        return;
      }
      Reset(candidates.data(), v);
    }
  }

  int n_;
  int words_ = 0;
  std::vector<Word> compatible_;  // row v: vertices non-adjacent to v in g
  int best_ = 0;
  int target_ = -1;
  bool done_ = false;
};

}  // namespace internal

// Exact independence number.
inline int MaxIndependentSet(const Graph& g, const Guards& guards = DefaultGuards()) {
  if (g.vertex_count() > guards.max_independent_set_vertices) {
    throw Error(ErrorCode::kCapacity,
                "max_independent_set guard: " + std::to_string(g.vertex_count()) +
                    " vertices > " + std::to_string(guards.max_independent_set_vertices));
  }
  return internal::IndependentSetSearch(g).Maximum();
}

// Exact decision: does g have an independent set of size > bound? Unlike
// MaxIndependentSet this has no vertex guard, since refuting a loose bound is
// usually cheap even on large graphs.
inline bool IndependenceNumberExceeds(const Graph& g, int bound) {
  return internal::IndependentSetSearch(g).Reaches(bound + 1);
}

// Exact maximum matching size (Edmonds' blossom algorithm, valid for
// non-bipartite graphs).
inline std::size_t MaxMatching(const Graph& g, const Guards& guards = DefaultGuards()) {
  if (g.vertex_count() > guards.max_matching_vertices) {
    throw Error(ErrorCode::kCapacity, "max_matching guard exceeded");
  }
  using BoostGraph =
      boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BoostGraph bg(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (int w : g.neighbors(static_cast<int>(v))) {
      if (static_cast<std::size_t>(w) > v) boost::add_edge(v, w, bg);
    }
  }
  std::vector<boost::graph_traits<BoostGraph>::vertex_descriptor> mate(g.vertex_count());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  return boost::matching_size(bg, &mate[0]);
}

}  // namespace cdplab

#endif  // CDPLAB_GRAPH_H_
