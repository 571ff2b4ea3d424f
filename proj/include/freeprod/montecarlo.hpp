#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "freeprod/group.hpp"

namespace freeprod {

using Perm = std::vector<int>;
using Rng = std::mt19937_64;

// Images of the generators: perms[i][j] is generator j of factor i.
struct Hom {
  int n = 0;
  std::vector<std::vector<Perm>> perms;
  std::vector<std::vector<Perm>> inverses;
};

// Unbiased integer in [0, bound).
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Uniform sigma in Sym(n) with sigma^q = id, built cycle by cycle.
Perm sample_order_divider(int q, int n, Rng& rng);
Perm sample_permutation(int n, Rng& rng);
Hom sample_hom(const Presentation& p, int n, Rng& rng);
Hom make_hom(const Presentation& p, int n, std::vector<std::vector<Perm>> perms);

// Image of w, acting on points from the right (x -> x.w).
Perm evaluate(const Presentation& p, const Hom& hom, const Word& w);
int fix_count(const Perm& perm);
// counts[L] = number of L-cycles, L = 0..max_len (counts[0] unused).
std::vector<int> cycle_counts(const Perm& perm, int max_len);

struct EmpiricalStats {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;
  double stderr_mean = 0.0;
  std::map<long, std::uint64_t> pmf;
  std::uint64_t seed = 0;
};

struct Estimate {
  EmpiricalStats fix;
  std::vector<EmpiricalStats> cyc;  // cyc[L-1] for L = 1..max_len
};

// Seed of chunk c of a run with master seed s (splitmix64 of s + c*golden).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t chunk);
inline constexpr std::uint64_t kChunkTrials = 1024;

// Results depend only on (p, w, n, trials, seed, max_len), never on threads.
Estimate estimate(const Presentation& p, const Word& w, int n, std::uint64_t trials,
                  std::uint64_t seed, int max_len = 3, int threads = 1);

// Total variation distance between an empirical pmf and a reference pmf
// indexed by value; reference mass beyond its end counts as 0.
double total_variation(const EmpiricalStats& s, const std::vector<double>& reference);

}  // namespace freeprod
