#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nzflow/errors.hpp"
#include "nzflow/pairing.hpp"

namespace nzflow {

// 5-regular multigraph induced by a pairing. Loops are allowed and count 2
// towards the degree of their vertex. Edges are stored sorted with
// multiplicities, loops as u == v.
struct MultiGraph {
  struct Edge {
    int u, v;   // u <= v
    int mult;
  };

  int n = 0;
  std::vector<Edge> edges;

  std::vector<int> degrees() const {
    std::vector<int> deg(n, 0);
    for (const auto& e : edges) {
      if (e.u == e.v) {
        deg[e.u] += 2 * e.mult;
      } else {
        deg[e.u] += e.mult;
        deg[e.v] += e.mult;
      }
    }
    return deg;
  }

  long long edge_count() const {
    long long m = 0;
    for (const auto& e : edges) m += e.mult;
    return m;
  }
};

inline MultiGraph to_multigraph(const Pairing& p) {
  MultiGraph g;
  g.n = p.n;
  std::vector<std::pair<int, int>> vp;
  vp.reserve(p.pairs.size());
  for (const auto& pr : p.pairs) {
    int u = Pairing::vertex_of(pr[0]);
    int v = Pairing::vertex_of(pr[1]);
    vp.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(vp.begin(), vp.end());
  for (size_t i = 0; i < vp.size();) {
    size_t j = i;
    while (j < vp.size() && vp[j] == vp[i]) ++j;
    g.edges.push_back({vp[i].first, vp[i].second, static_cast<int>(j - i)});
    i = j;
  }
  return g;
}

inline bool is_simple(const MultiGraph& g) {
  for (const auto& e : g.edges)
    if (e.u == e.v || e.mult > 1) return false;
  return true;
}

inline bool is_simple(const Pairing& p) {
  std::vector<std::pair<int, int>> vp;
  vp.reserve(p.pairs.size());
  for (const auto& pr : p.pairs) {
    int u = Pairing::vertex_of(pr[0]);
    int v = Pairing::vertex_of(pr[1]);
    if (u == v) return false;
    vp.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(vp.begin(), vp.end());
  return std::adjacent_find(vp.begin(), vp.end()) == vp.end();
}

// Number of k-cycles X_k. Conventions: loops are 1-cycles; a pair of
// parallel edges is a 2-cycle (choose(mult, 2) per vertex pair); for k >= 3 a
// cycle visits k distinct vertices and is counted once up to rotation and
// reflection, with parallel edges giving one cycle per edge choice.
inline long long count_cycles(const MultiGraph& g, int k) {
  if (k < 1) throw std::domain_error("count_cycles: k must be >= 1");
  if (k == 1) {
    long long x = 0;
    for (const auto& e : g.edges)
      if (e.u == e.v) x += e.mult;
    return x;
  }
  if (k == 2) {
    long long x = 0;
    for (const auto& e : g.edges)
      if (e.u != e.v) x += static_cast<long long>(e.mult) * (e.mult - 1) / 2;
    return x;
  }

  // Adjacency among distinct vertices only.
  std::vector<std::vector<std::pair<int, int>>> adj(g.n);  // (neighbor, mult)
  for (const auto& e : g.edges) {
    if (e.u == e.v) continue;
    adj[e.u].emplace_back(e.v, e.mult);
    adj[e.v].emplace_back(e.u, e.mult);
  }

  long long directed = 0;  // closed walks with distinct vertices, min vertex first
  std::vector<char> on_path(g.n, 0);
  std::vector<int> path;
  path.reserve(k);

  // DFS over vertex sequences (s, v2, ..., vk) with all vi > s distinct;
  // weight = product of chosen-edge multiplicities, closing edge included.
  auto dfs = [&](auto&& self, int s, int cur, int depth, long long weight) -> void {
    if (depth == k - 1) {
      for (const auto& [w, m] : adj[cur])
        if (w == s) directed += weight * m;
      return;
    }
    for (const auto& [w, m] : adj[cur]) {
      if (w <= s || on_path[w]) continue;
      on_path[w] = 1;
      self(self, s, w, depth + 1, weight * m);
      on_path[w] = 0;
    }
  };

  for (int s = 0; s < g.n; ++s) {
    on_path[s] = 1;
    dfs(dfs, s, s, 0, 1);
    on_path[s] = 0;
  }
  // Each undirected cycle was traversed in both directions.
  return directed / 2;
}

inline long long count_cycles(const Pairing& p, int k) { return count_cycles(to_multigraph(p), k); }

// Rejection sampler for uniform simple 5-regular graphs, kept at pairing
// level so orientations can be attached afterwards.
inline Pairing sample_simple_pairing(int n, std::uint64_t seed, int max_attempts = 10000) {
  if (n <= 0 || n % 2 != 0)
    throw std::domain_error("sample_simple_pairing: n must be even and positive");
  for (int a = 0; a < max_attempts; ++a) {
    Pairing p = sample_pairing(n, derive_seed(seed, static_cast<std::uint64_t>(a)));
    if (is_simple(p)) return p;
  }
  throw retry_exhausted_error("sample_simple_pairing: attempt budget exhausted");
}

inline MultiGraph sample_simple_regular(int n, std::uint64_t seed, int max_attempts = 10000) {
  return to_multigraph(sample_simple_pairing(n, seed, max_attempts));
}

}  // namespace nzflow
