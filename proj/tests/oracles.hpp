#pragma once

// Slow reference implementations used only by the tests.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "freeprod/subcover.hpp"

namespace oracle {

using freeprod::SubCover;

inline SubCover relabel(const SubCover& z, const std::vector<int>& perm) {
  // perm[old] = new
  std::vector<int> inv(perm.size());
  for (size_t v = 0; v < perm.size(); ++v) inv[static_cast<size_t>(perm[v])] = static_cast<int>(v);
  SubCover out(z.presentation());
  for (size_t k = 0; k < inv.size(); ++k) out.add_vertex(z.fiber(inv[k]));
  for (auto [l, s, d] : z.edges()) out.add_edge(l, perm[static_cast<size_t>(s)], perm[static_cast<size_t>(d)]);
  std::vector<int> base;
  for (int b : z.basepoints()) base.push_back(perm[static_cast<size_t>(b)]);
  out.set_basepoints(base);
  return out;
}

inline SubCover shuffled(const SubCover& z, std::mt19937& rng) {
  std::vector<int> perm(static_cast<size_t>(z.vertex_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(z, perm);
}

// Fiber-preserving bijections that map the edge set onto itself.
inline long automorphisms(const SubCover& z) {
  int n = z.vertex_count();
  auto edges = z.edges();
  std::set<std::tuple<int, int, int>> es(edges.begin(), edges.end());
  std::vector<int> img(static_cast<size_t>(n), -1);
  std::vector<char> used(static_cast<size_t>(n), 0);
  long count = 0;
  std::function<void(int)> go = [&](int v) {
    if (v == n) {
      for (auto [l, s, d] : edges)
        if (!es.count({l, img[static_cast<size_t>(s)], img[static_cast<size_t>(d)]})) return;
      ++count;
      return;
    }
    for (int u = 0; u < n; ++u) {
      if (used[static_cast<size_t>(u)] || z.fiber(u) != z.fiber(v)) continue;
      used[static_cast<size_t>(u)] = 1;
      img[static_cast<size_t>(v)] = u;
      go(v + 1);
      used[static_cast<size_t>(u)] = 0;
    }
  };
  go(0);
  return count;
}

// Every set partition of 0..n-1 (restricted growth strings) whose blocks
// stay inside one fiber.
inline void fiber_partitions(const SubCover& z, const std::function<void(const std::vector<int>&)>& f) {
  int n = z.vertex_count();
  std::vector<int> block(static_cast<size_t>(n), 0);
  std::vector<int> block_fiber;
  std::function<void(int)> go = [&](int v) {
    if (v == n) {
      f(block);
      return;
    }
    for (int b = 0; b < static_cast<int>(block_fiber.size()); ++b) {
      if (block_fiber[static_cast<size_t>(b)] != z.fiber(v)) continue;
      block[static_cast<size_t>(v)] = b;
      go(v + 1);
    }
    block[static_cast<size_t>(v)] = static_cast<int>(block_fiber.size());
    block_fiber.push_back(z.fiber(v));
    go(v + 1);
    block_fiber.pop_back();
  };
  go(0);
}

// Quotient if every label still acts as a partial injection and the
// result satisfies the cycle conditions; empty vertex set otherwise.
inline bool valid_quotient(const SubCover& z, const std::vector<int>& block) {
  std::map<std::pair<int, int>, int> fwd, bwd;
  for (auto [l, s, d] : z.edges()) {
    int bs = block[static_cast<size_t>(s)], bd = block[static_cast<size_t>(d)];
    auto [it, fresh] = fwd.emplace(std::make_pair(l, bs), bd);
    if (!fresh && it->second != bd) return false;
    auto [jt, fresh2] = bwd.emplace(std::make_pair(l, bd), bs);
    if (!fresh2 && jt->second != bs) return false;
  }
  int blocks = *std::max_element(block.begin(), block.end()) + 1;
  std::vector<int> fib(static_cast<size_t>(blocks));
  for (int v = 0; v < z.vertex_count(); ++v) fib[static_cast<size_t>(block[static_cast<size_t>(v)])] = z.fiber(v);
  SubCover q(z.presentation());
  for (int f : fib) q.add_vertex(f);
  for (auto [key, d] : fwd) q.add_edge(key.first, key.second, d);
  return q.valid();
}

}  // namespace oracle
