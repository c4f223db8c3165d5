#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace testsupport {

// Edges are (dependency, dependent) index pairs: the dependent file needs the
// dependency placed before it.
using Edge = std::pair<int, int>;

// Visits every labeled DAG on n nodes exactly once. Each unordered node pair
// is absent, x->y or y->x; a branch is cut as soon as it would close a cycle,
// so only acyclic graphs are ever produced.
template <typename Fn>
class DagEnumerator {
public:
  DagEnumerator(int n, Fn& fn) : n_(n), fn_(fn) {
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) pairs_.emplace_back(x, y);
    }
    edges_.reserve(pairs_.size());
  }

  void run() {
    std::vector<std::uint32_t> reach(n_, 0);
    recurse(0, reach);
  }

private:
  void recurse(std::size_t p, const std::vector<std::uint32_t>& reach) {
    if (p == pairs_.size()) {
      fn_(n_, edges_);
      return;
    }
    recurse(p + 1, reach);
    const auto [x, y] = pairs_[p];
    for (const auto& [from, to] : {Edge{x, y}, Edge{y, x}}) {
      if (reach[to] & (1u << from)) continue;  // to already reaches from
      std::vector<std::uint32_t> next = reach;
      const std::uint32_t add = (1u << to) | reach[to];
      for (int u = 0; u < n_; ++u) {
        if (u == from || (reach[u] & (1u << from))) next[u] |= add;
      }
      edges_.emplace_back(from, to);
      recurse(p + 1, next);
      edges_.pop_back();
    }
  }

  int n_;
  Fn& fn_;
  std::vector<Edge> pairs_;
  std::vector<Edge> edges_;
};

template <typename Fn>
void for_each_labeled_dag(int n, Fn&& fn) {
  DagEnumerator<Fn> e(n, fn);
  e.run();
}

/// Random DAG: edges only go from lower to higher rank under a random
/// permutation of the node labels, each present with probability `density`.
inline std::vector<Edge> random_dag(int n, double density, std::mt19937_64& rng) {
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(rank[i], rank[static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1))]);
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (rank[a] < rank[b] && static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) edges.emplace_back(a, b);
    }
  }
  return edges;
}

/// Random directed graph, self-loops excluded, cycles allowed.
inline std::vector<Edge> random_digraph(int n, double density, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) edges.emplace_back(a, b);
    }
  }
  return edges;
}

} // namespace testsupport
