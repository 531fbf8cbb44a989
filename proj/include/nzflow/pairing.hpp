#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nzflow/rng.hpp"

namespace nzflow {

inline constexpr int kPointsPerVertex = 5;

// A perfect matching on 5n points. Point p belongs to vertex p / 5; the
// induced multigraph is a random 5-regular multigraph when the matching is
// uniform.
struct Pairing {
  int n = 0;                               // vertex count, even
  std::vector<std::array<int, 2>> pairs;   // 5n/2 pairs over points 0..5n-1

  int num_points() const { return kPointsPerVertex * n; }
  int num_pairs() const { return static_cast<int>(pairs.size()); }

  static int vertex_of(int point) { return point / kPointsPerVertex; }

  // Throws if the point partition or the pair count is broken.
  void check() const {
    if (n <= 0 || n % 2 != 0) throw std::domain_error("Pairing: n must be even and positive");
    const int s = num_points();
    if (static_cast<int>(pairs.size()) != s / 2)
      throw std::domain_error("Pairing: wrong number of pairs");
    std::vector<char> seen(s, 0);
    for (const auto& pr : pairs) {
      for (int p : pr) {
        if (p < 0 || p >= s) throw std::domain_error("Pairing: point out of range");
        if (seen[p]) throw std::domain_error("Pairing: point matched twice");
        seen[p] = 1;
      }
      if (pr[0] == pr[1]) throw std::domain_error("Pairing: self-matched point");
    }
  }
};

// Uniform random pairing of 5n points: repeatedly match the lowest-indexed
// unmatched point with a partner chosen uniformly among the remaining
// unmatched points. O(n), exactly uniform, deterministic given the seed.
inline Pairing sample_pairing(int n, std::uint64_t seed) {
  if (n <= 0 || n % 2 != 0) throw std::domain_error("sample_pairing: n must be even and positive");
  Rng rng(seed);
  const int s = kPointsPerVertex * n;
  std::vector<int> pool(s);
  std::vector<int> pos(s);
  std::vector<char> matched(s, 0);
  for (int i = 0; i < s; ++i) pool[i] = pos[i] = i;

  auto remove_from_pool = [&](int p) {
    int i = pos[p];
    int last = pool.back();
    pool[i] = last;
    pos[last] = i;
    pool.pop_back();
    matched[p] = 1;
  };

  Pairing out;
  out.n = n;
  out.pairs.reserve(s / 2);
  for (int p = 0; p < s; ++p) {
    if (matched[p]) continue;
    remove_from_pool(p);
    int q = pool[rng.below(pool.size())];
    remove_from_pool(q);
    out.pairs.push_back({p, q});
  }
  return out;
}

}  // namespace nzflow
