#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "nzflow/errors.hpp"
#include "nzflow/pairing.hpp"
#include "nzflow/rational.hpp"
#include "nzflow/rng.hpp"

namespace nzflow {

// One direction per pair: to_second[i] == 1 orients pairs[i][0] -> pairs[i][1]
// (so pairs[i][1] is the in-point), 0 the other way. A loop still carries a
// direction: its two point-level orientations are distinct objects even
// though both contribute in-degree 1 to the vertex.
struct Orientation {
  std::vector<std::uint8_t> to_second;

  int num_pairs() const { return static_cast<int>(to_second.size()); }
};

inline int in_point_of(const Pairing& p, const Orientation& o, int i) {
  return o.to_second[i] ? p.pairs[i][1] : p.pairs[i][0];
}
inline int out_point_of(const Pairing& p, const Orientation& o, int i) {
  return o.to_second[i] ? p.pairs[i][0] : p.pairs[i][1];
}

struct ValidityReport {
  std::vector<int> in_degrees;
  bool valid = false;
  std::vector<int> violators;       // vertices with in-degree not in {1,4}
  std::vector<std::int8_t> kind;    // +1 in-vertex (indeg 1), -1 out-vertex (indeg 4), 0 violator
  int num_in_vertices = 0;
  int num_out_vertices = 0;
};

// Valid <=> every vertex has in-degree 1 or 4; by 5-regularity this is the
// same as every out-degree being 1 or 4.
inline ValidityReport validate(const Pairing& p, const Orientation& o) {
  if (o.num_pairs() != p.num_pairs())
    throw std::invalid_argument("validate: orientation does not cover the pairing");
  ValidityReport r;
  r.in_degrees.assign(p.n, 0);
  for (int i = 0; i < p.num_pairs(); ++i) r.in_degrees[Pairing::vertex_of(in_point_of(p, o, i))]++;
  r.kind.assign(p.n, 0);
  r.valid = true;
  for (int v = 0; v < p.n; ++v) {
    if (r.in_degrees[v] == 1) {
      r.kind[v] = 1;
      r.num_in_vertices++;
    } else if (r.in_degrees[v] == 4) {
      r.kind[v] = -1;
      r.num_out_vertices++;
    } else {
      r.valid = false;
      r.violators.push_back(v);
    }
  }
  return r;
}

struct PointCensus {
  long long in_points = 0;
  long long out_points = 0;
};

inline PointCensus in_out_point_census(const Pairing& p, const Orientation& o) {
  if (o.num_pairs() != p.num_pairs())
    throw std::invalid_argument("in_out_point_census: orientation does not cover the pairing");
  std::vector<char> is_in(p.num_points(), 0);
  for (int i = 0; i < p.num_pairs(); ++i) is_in[in_point_of(p, o, i)] = 1;
  PointCensus c;
  for (char b : is_in) (b ? c.in_points : c.out_points)++;
  return c;
}

inline Orientation reverse_all(const Orientation& o) {
  Orientation r = o;
  for (auto& b : r.to_second) b ^= 1;
  return r;
}

// Exact number of valid orientations Y(p), by backtracking over the non-loop
// pairs with per-vertex feasibility pruning. Loops always contribute
// in-degree 1 and have two point-level directions each, giving a factor
// 2^{#loops}. Throws size_cap_error above max_pairs.
inline BigInt count_valid(const Pairing& p, int max_pairs = 40) {
  p.check();
  if (p.num_pairs() > max_pairs)
    throw size_cap_error("count_valid: pairing exceeds the exact-count cap");

  const int n = p.n;
  std::vector<int> base_in(n, 0);  // forced in-degree from loops
  int num_loops = 0;
  std::vector<std::array<int, 2>> nl;  // non-loop pairs as (vertex, vertex)
  for (const auto& pr : p.pairs) {
    int u = Pairing::vertex_of(pr[0]);
    int v = Pairing::vertex_of(pr[1]);
    if (u == v) {
      base_in[u]++;
      num_loops++;
    } else {
      nl.push_back({u, v});
    }
  }
  // Locality order: finish low-numbered vertices first so their in-degree
  // constraint closes early and prunes.
  for (auto& e : nl)
    if (e[0] > e[1]) std::swap(e[0], e[1]);
  std::sort(nl.begin(), nl.end());

  std::vector<int> undecided(n, 0);
  for (const auto& e : nl) {
    undecided[e[0]]++;
    undecided[e[1]]++;
  }
  std::vector<int> indeg = base_in;

  auto feasible = [&](int v) {
    const int lo = indeg[v];
    const int hi = indeg[v] + undecided[v];
    return (lo <= 1 && 1 <= hi) || (lo <= 4 && 4 <= hi);
  };
  for (int v = 0; v < n; ++v)
    if (!feasible(v)) return BigInt(0);

  std::uint64_t leaves = 0;
  const int m = static_cast<int>(nl.size());

  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      leaves++;
      return;
    }
    const int u = nl[i][0], v = nl[i][1];
    undecided[u]--;
    undecided[v]--;
    for (int head = 0; head < 2; ++head) {
      const int w = head == 0 ? u : v;
      indeg[w]++;
      if (feasible(u) && feasible(v)) self(self, i + 1);
      indeg[w]--;
    }
    undecided[u]++;
    undecided[v]++;
  };
  rec(rec, 0);

  return BigInt(leaves) << num_loops;
}

struct OrientationSearchResult {
  std::optional<Orientation> orientation;  // set iff a valid orientation was found
  int best_defect = std::numeric_limits<int>::max();
  std::uint64_t steps_used = 0;
  int restarts = 0;
};

// Local-search heuristic for a valid orientation. The potential is the
// number of vertices whose in-degree is outside {1,4}; moves are single-edge
// reversals with negative gain, then reversals of directed paths between a
// defect vertex and a repairable partner (flow-augmentation style), with a
// full random restart after prolonged stagnation. One extra move class is
// required: when a probe's reachable set contains no repair partner, the set
// is closed off by a directed cut whose arcs no improving move can flip, so
// the search reopens it by reversing up to two randomly chosen cut-crossing
// arcs (each costs at most +2 potential). Success is certified with
// validate() before returning.
inline OrientationSearchResult find_valid(const Pairing& p, std::uint64_t budget = 1'000'000,
                                          std::uint64_t seed = 0) {
  p.check();
  const int n = p.n;
  const int m = p.num_pairs();
  Rng rng(seed);

  // phi[d]: distance of in-degree d from {1,4}, capped at 1 since every
  // repair move shifts a degree by one.
  static constexpr int phi[6] = {1, 0, 1, 1, 0, 1};

  std::vector<int> va(m), vb(m);
  std::vector<char> is_loop(m, 0);
  std::vector<std::vector<int>> inc(n);  // incident non-loop pair ids
  std::vector<int> base_in(n, 0);
  for (int i = 0; i < m; ++i) {
    va[i] = Pairing::vertex_of(p.pairs[i][0]);
    vb[i] = Pairing::vertex_of(p.pairs[i][1]);
    if (va[i] == vb[i]) {
      is_loop[i] = 1;
      base_in[va[i]]++;
    } else {
      inc[va[i]].push_back(i);
      inc[vb[i]].push_back(i);
    }
  }

  std::vector<std::uint8_t> dir(m);  // 1: oriented a->b (head vb), 0: b->a (head va)
  std::vector<int> indeg(n);
  auto head_of = [&](int i) { return dir[i] ? vb[i] : va[i]; };
  auto tail_of = [&](int i) { return dir[i] ? va[i] : vb[i]; };

  // Bad-vertex set with O(1) add/remove.
  std::vector<int> bad;
  std::vector<int> bad_pos(n, -1);
  auto set_badness = [&](int v) {
    const bool should = phi[indeg[v]] != 0;
    const bool is_in = bad_pos[v] >= 0;
    if (should && !is_in) {
      bad_pos[v] = static_cast<int>(bad.size());
      bad.push_back(v);
    } else if (!should && is_in) {
      int last = bad.back();
      bad[bad_pos[v]] = last;
      bad_pos[last] = bad_pos[v];
      bad.pop_back();
      bad_pos[v] = -1;
    }
  };

  std::vector<int> work;  // greedy worklist of pair ids
  std::vector<char> in_work(m, 0);
  auto push_work = [&](int i) {
    if (!is_loop[i] && !in_work[i]) {
      in_work[i] = 1;
      work.push_back(i);
    }
  };
  auto push_incident = [&](int v) {
    for (int i : inc[v]) push_work(i);
  };

  auto randomize = [&] {
    for (int i = 0; i < m; ++i) dir[i] = static_cast<std::uint8_t>(rng.coin());
    indeg = base_in;
    for (int i = 0; i < m; ++i)
      if (!is_loop[i]) indeg[head_of(i)]++;
    bad.clear();
    std::fill(bad_pos.begin(), bad_pos.end(), -1);
    for (int v = 0; v < n; ++v) set_badness(v);
    work.clear();
    std::fill(in_work.begin(), in_work.end(), 0);
    for (int i = 0; i < m; ++i) push_work(i);
  };

  // BFS scratch.
  std::vector<int> visit_epoch(n, -1), parent_pair(n, -1), queue_buf(n);
  int epoch = 0;

  OrientationSearchResult result;
  std::uint64_t steps = 0;
  const std::uint64_t stagnation_limit = 50ull * static_cast<std::uint64_t>(n);

  auto flip = [&](int i) {
    const int h = head_of(i), t = tail_of(i);
    dir[i] ^= 1;
    indeg[h]--;
    indeg[t]++;
    set_badness(h);
    set_badness(t);
  };

  randomize();
  int best_since_restart = static_cast<int>(bad.size());
  std::uint64_t last_improvement = 0;
  result.best_defect = best_since_restart;

  auto note_progress = [&] {
    const int d = static_cast<int>(bad.size());
    if (d < best_since_restart) {
      best_since_restart = d;
      last_improvement = steps;
    }
    if (d < result.best_defect) result.best_defect = d;
  };

  while (steps < budget) {
    // Greedy single-edge phase.
    while (!work.empty() && steps < budget && !bad.empty()) {
      int i = work.back();
      work.pop_back();
      in_work[i] = 0;
      const int h = head_of(i), t = tail_of(i);
      const int gain = phi[indeg[t] + 1] - phi[indeg[t]] + phi[indeg[h] - 1] - phi[indeg[h]];
      if (gain < 0) {
        flip(i);
        ++steps;
        push_incident(h);
        push_incident(t);
        note_progress();
      }
    }
    if (bad.empty()) break;
    if (steps >= budget) break;

    // Path phase: pick a random defect vertex and search for a partner.
    const int r = bad[rng.below(bad.size())];
    const bool deficit = indeg[r] == 0 || indeg[r] == 3;  // wants +1 in-degree
    ++epoch;
    int qh = 0, qt = 0;
    queue_buf[qt++] = r;
    visit_epoch[r] = epoch;
    parent_pair[r] = -1;
    int target = -1;       // strict-improvement partner
    int fallback = -1;     // partner that keeps the potential flat at its end
    int plateau = -1;      // good vertex, reservoir-sampled for diffusion
    int plateau_seen = 0;
    while (qh < qt && target < 0) {
      const int x = queue_buf[qh++];
      for (int i : inc[x]) {
        // Deficit search walks forward along out-edges (reversal raises
        // indeg[r]); surplus search walks backward along in-edges.
        const int from = deficit ? tail_of(i) : head_of(i);
        if (from != x) continue;
        const int w = deficit ? head_of(i) : tail_of(i);
        if (visit_epoch[w] == epoch) continue;
        visit_epoch[w] = epoch;
        parent_pair[w] = i;
        queue_buf[qt++] = w;
        const int nd = deficit ? indeg[w] - 1 : indeg[w] + 1;
        if (phi[indeg[w]] != 0) {
          if (phi[nd] < phi[indeg[w]]) {
            target = w;
            break;
          }
          if (fallback < 0) fallback = w;
        } else if (phi[nd] != 0) {
          // Moving the defect onto w: keep a uniform random candidate.
          plateau_seen++;
          if (static_cast<std::uint64_t>(rng.below(plateau_seen)) == 0) plateau = w;
        }
      }
    }
    if (target < 0 && fallback < 0) {
      // Defect-free reachable set: blocked by a directed cut. Reverse up to
      // two crossing arcs to reopen it; fall back to defect diffusion when
      // the probe already reached the whole graph.
      int flipped = 0;
      for (int attempt = 0; attempt < 256 && flipped < 2; ++attempt) {
        const int x = queue_buf[rng.below(static_cast<std::uint64_t>(qt))];
        for (int i : inc[x]) {
          const int inner = deficit ? head_of(i) : tail_of(i);
          const int outer = deficit ? tail_of(i) : head_of(i);
          if (inner != x || visit_epoch[outer] == epoch) continue;
          const int h = head_of(i), tl = tail_of(i);
          dir[i] ^= 1;
          indeg[h]--;
          indeg[tl]++;
          set_badness(h);
          set_badness(tl);
          ++steps;
          ++flipped;
          break;
        }
      }
      if (flipped == 0 && plateau >= 0) {
        target = plateau;
      } else if (flipped == 0) {
        ++steps;  // dead-end probe still spends budget
      }
    }

    const int t = target >= 0 ? target : fallback;
    if (t >= 0) {
      for (int x = t; x != r;) {
        const int i = parent_pair[x];
        const int nxt = deficit ? tail_of(i) : head_of(i);
        dir[i] ^= 1;
        ++steps;
        x = nxt;
      }
      if (deficit) {
        indeg[r]++;
        indeg[t]--;
      } else {
        indeg[r]--;
        indeg[t]++;
      }
      set_badness(r);
      set_badness(t);
      push_incident(r);
      push_incident(t);
      note_progress();
    }

    if (bad.empty()) break;
    if (steps - last_improvement > stagnation_limit) {
      randomize();
      result.restarts++;
      best_since_restart = static_cast<int>(bad.size());
      last_improvement = steps;
      ++steps;
    }
  }

  result.steps_used = steps;
  if (bad.empty()) {
    Orientation o;
    o.to_second = dir;
    if (!validate(p, o).valid) throw std::logic_error("find_valid: certification failed");
    result.best_defect = 0;
    result.orientation = std::move(o);
  }
  return result;
}

}  // namespace nzflow
