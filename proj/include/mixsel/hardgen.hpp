#pragma once

// Hardness-instance generators: independent-set matrices, lottery-hardness
// instances, G(n,1/2) / planted-clique graphs, and the exact small-graph
// oracle used to verify their claimed optima. Generator entries are exact
// rationals (integer numerators over a 4n or 8n denominator), converted to
// floats only at the matrix boundary.

#include <bit>
#include <utility>

#include "mixsel/applications.hpp"
#include "mixsel/core.hpp"

namespace mixsel {

struct UndirectedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // normalized i < j, no duplicates
  std::vector<int> self_loops;             // sorted node list

  explicit UndirectedGraph(int n_) : n(n_) {
    if (n < 1) throw InvalidShape("graph: n >= 1 required");
  }
  UndirectedGraph(int n_, std::vector<std::pair<int, int>> e,
                  std::vector<int> loops = {})
      : UndirectedGraph(n_) {
    for (auto [a, b] : e) add_edge(a, b);
    for (int v : loops) add_self_loop(v);
  }

  void add_edge(int a, int b) {
    if (a == b) throw InvalidParam("graph: use add_self_loop for loops");
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw InvalidParam("graph: endpoint out of range");
    if (a > b) std::swap(a, b);
    if (has_edge(a, b)) throw InvalidParam("graph: duplicate edge");
    edges.emplace_back(a, b);
  }
  void add_self_loop(int v) {
    if (v < 0 || v >= n) throw InvalidParam("graph: node out of range");
    if (std::find(self_loops.begin(), self_loops.end(), v) != self_loops.end())
      throw InvalidParam("graph: duplicate self-loop");
    self_loops.insert(
        std::upper_bound(self_loops.begin(), self_loops.end(), v), v);
  }
  bool has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) !=
           edges.end();
  }
  bool has_self_loop(int v) const {
    return std::binary_search(self_loops.begin(), self_loops.end(), v);
  }

  // Adjacency bitmasks, self-loops excluded; requires n <= 64.
  std::vector<std::uint64_t> adjacency_masks() const {
    if (n > 64) throw InvalidParam("adjacency_masks: n <= 64 required");
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : edges) {
      adj[static_cast<std::size_t>(a)] |= 1ULL << b;
      adj[static_cast<std::size_t>(b)] |= 1ULL << a;
    }
    return adj;
  }
};

// 0/1 adjacency matrix; the diagonal carries the self-loops.
inline BoundedMatrix adjacency_matrix(const UndirectedGraph& g) {
  std::vector<double> d(static_cast<std::size_t>(g.n) * g.n, 0.0);
  for (auto [a, b] : g.edges) {
    d[static_cast<std::size_t>(a) * g.n + b] = 1.0;
    d[static_cast<std::size_t>(b) * g.n + a] = 1.0;
  }
  for (int v : g.self_loops) d[static_cast<std::size_t>(v) * g.n + v] = 1.0;
  return BoundedMatrix(g.n, g.n, std::move(d), Domain::Unsigned);
}

// ---------------------------------------------------------------------------
// Independent-set matrix: diagonal 1/2, edges -1, non-adjacent pairs -1/(4n).
// The scaled variant returns exact numerators over denominator 4n
// (diagonal 2n, edge -4n, non-edge -1) for strict sign arguments.

inline std::vector<long long> gen_is_matrix_scaled(const UndirectedGraph& g) {
  const int n = g.n;
  std::vector<long long> a(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = 2LL * n;
  for (auto [i, j] : g.edges) {
    a[static_cast<std::size_t>(i) * n + j] = -4LL * n;
    a[static_cast<std::size_t>(j) * n + i] = -4LL * n;
  }
  return a;
}

inline BoundedMatrix gen_is_matrix(const UndirectedGraph& g) {
  const auto scaled = gen_is_matrix_scaled(g);
  std::vector<double> d(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i)
    d[i] = static_cast<double>(scaled[i]) / (4.0 * g.n);
  return BoundedMatrix(g.n, g.n, std::move(d), Domain::Signed);
}

// ---------------------------------------------------------------------------
// Lottery hardness: (8n^2 + n) x n instance with uniform weights. The n
// graph rows have diagonal 3/4, edge entries 0, non-edge 1/2 - 1/(8n); the
// 8n^2 dummy rows are constant p* = 1/2 + 1/(8n). Numerators over 8n:
// diagonal 6n, edge 0, non-edge 4n - 1, dummy 4n + 1.

inline std::vector<long long> gen_lottery_hard_scaled(const UndirectedGraph& g) {
  const int n = g.n;
  const int rows = 8 * n * n + n;
  std::vector<long long> a(static_cast<std::size_t>(rows) * n, 4LL * n - 1);
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = 6LL * n;
  for (auto [i, j] : g.edges) {
    a[static_cast<std::size_t>(i) * n + j] = 0;
    a[static_cast<std::size_t>(j) * n + i] = 0;
  }
  for (int r = n; r < rows; ++r)
    for (int c = 0; c < n; ++c)
      a[static_cast<std::size_t>(r) * n + c] = 4LL * n + 1;
  return a;
}

inline LotteryInstance gen_lottery_hard(const UndirectedGraph& g) {
  const int n = g.n;
  const int rows = 8 * n * n + n;
  const auto scaled = gen_lottery_hard_scaled(g);
  std::vector<double> d(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i)
    d[i] = static_cast<double>(scaled[i]) / (8.0 * n);
  return LotteryInstance(
      BoundedMatrix(rows, n, std::move(d), Domain::Unsigned),
      SimplexVector(std::vector<double>(static_cast<std::size_t>(rows),
                                        1.0 / rows)));
}

// The optimal revenue r* = p* (8n^2 + OPT_IS) / (8n^2 + n), p* = 1/2 + 1/(8n).
inline double lottery_hard_opt(int n, int opt_is) {
  if (n < 1 || opt_is < 1 || opt_is > n)
    throw InvalidParam("lottery_hard_opt: need 1 <= OPT_IS <= n");
  const double p_star = 0.5 + 1.0 / (8.0 * n);
  return p_star * (8.0 * n * n + opt_is) / (8.0 * n * n + n);
}

// ---------------------------------------------------------------------------
// Random graph models. Both include each self-loop independently with
// probability 1/2; the planted model forces all pairs within the clique.

inline UndirectedGraph gen_gnp(int n, SeededRng& rng) {
  UndirectedGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_u64() & 1) g.add_edge(i, j);
  for (int v = 0; v < n; ++v)
    if (rng.next_u64() & 1) g.add_self_loop(v);
  return g;
}

struct PlantedGraph {
  UndirectedGraph graph;
  std::vector<int> clique;  // sorted planted node set
};

inline PlantedGraph gen_planted(int n, int k, SeededRng& rng) {
  if (k < 1 || k > n) throw InvalidParam("gen_planted: need 1 <= k <= n");
  std::vector<int> nodes(static_cast<std::size_t>(n));
  std::iota(nodes.begin(), nodes.end(), 0);
  for (int i = 0; i < k; ++i)
    std::swap(nodes[static_cast<std::size_t>(i)],
              nodes[static_cast<std::size_t>(i + rng.next_index(n - i))]);
  std::vector<int> clique(nodes.begin(), nodes.begin() + k);
  std::sort(clique.begin(), clique.end());
  std::vector<bool> in_clique(static_cast<std::size_t>(n), false);
  for (int v : clique) in_clique[static_cast<std::size_t>(v)] = true;

  UndirectedGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool coin = (rng.next_u64() & 1) != 0;
      if ((in_clique[static_cast<std::size_t>(i)] &&
           in_clique[static_cast<std::size_t>(j)]) ||
          coin)
        g.add_edge(i, j);
    }
  for (int v = 0; v < n; ++v)
    if (rng.next_u64() & 1) g.add_self_loop(v);
  return PlantedGraph{std::move(g), std::move(clique)};
}

// ---------------------------------------------------------------------------
// Exact maximum independent set (branch and bound on bitmasks), n <= 24.

struct IndependentSet {
  int size = 0;
  std::vector<int> nodes;
};

namespace detail {

inline void mis_recurse(const std::vector<std::uint64_t>& adj,
                        std::uint64_t candidates, int current,
                        std::uint64_t chosen, int& best,
                        std::uint64_t& best_set) {
  if (current + std::popcount(candidates) <= best) return;
  if (candidates == 0) {
    if (current > best) {
      best = current;
      best_set = chosen;
    }
    return;
  }
  const int v = std::countr_zero(candidates);
  const std::uint64_t bit = 1ULL << v;
  // Include v: drop v and its neighbors.
  mis_recurse(adj, candidates & ~(bit | adj[static_cast<std::size_t>(v)]),
              current + 1, chosen | bit, best, best_set);
  // Exclude v.
  mis_recurse(adj, candidates & ~bit, current, chosen, best, best_set);
}

}  // namespace detail

inline IndependentSet max_independent_set_bruteforce(const UndirectedGraph& g) {
  if (g.n > 24)
    throw InvalidParam("max_independent_set_bruteforce: n <= 24 required");
  const auto adj = g.adjacency_masks();
  int best = 0;
  std::uint64_t best_set = 0;
  detail::mis_recurse(adj, (g.n == 64 ? ~0ULL : (1ULL << g.n) - 1), 0, 0, best,
                      best_set);
  IndependentSet out;
  out.size = best;
  for (int v = 0; v < g.n; ++v)
    if (best_set & (1ULL << v)) out.nodes.push_back(v);
  return out;
}

}  // namespace mixsel
