#include "freeprod/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "freeprod/exact.hpp"

namespace freeprod {
namespace {

// cdf[m][k]: probability that the cycle through the next point has length
// at most divisors[k] when m points remain.
struct CycleTable {
  std::vector<int> divisors;
  std::vector<std::vector<double>> cdf;
};

std::shared_ptr<const CycleTable> cycle_table(int q, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const CycleTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.lower_bound({q, n});
    if (it != cache.end() && it->first.first == q) return it->second;
  }
  auto t = std::make_shared<CycleTable>();
  for (int d = 1; d <= q; ++d)
    if (q % d == 0) t->divisors.push_back(d);
  t->cdf.resize(static_cast<size_t>(n) + 1);
  for (int m = 1; m <= n; ++m) {
    BigInt h = hom_count(q, m);
    double acc = 0.0;
    for (int d : t->divisors) {
      if (d <= m) acc += Rational(falling(m - 1, d - 1) * hom_count(q, m - d), h).get_d();
      t->cdf[m].push_back(acc);
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[{q, n}] = t;
  return t;
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Perm invert(const Perm& p) {
  Perm inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

}  // namespace

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

Perm sample_order_divider(int q, int n, Rng& rng) {
  auto table = cycle_table(q, n);
  Perm perm(static_cast<size_t>(n));
  std::vector<int> rest(static_cast<size_t>(n));
  std::iota(rest.begin(), rest.end(), 0);
  size_t m = rest.size();
  while (m > 0) {
    const std::vector<double>& cdf = table->cdf[m];
    int first = rest[--m];
    double u = uniform01(rng) * cdf.back();
    size_t k = 0;
    while (k + 1 < cdf.size() && u >= cdf[k]) ++k;
    int d = table->divisors[k];
    int prev = first;
    for (int s = 1; s < d; ++s) {
      size_t j = uniform_below(rng, m);
      int x = rest[j];
      std::swap(rest[j], rest[m - 1]);
      --m;
      perm[static_cast<size_t>(prev)] = x;
      prev = x;
    }
    perm[static_cast<size_t>(prev)] = first;
  }
  return perm;
}

Perm sample_permutation(int n, Rng& rng) {
  Perm perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  return perm;
}

Hom make_hom(const Presentation& p, int n, std::vector<std::vector<Perm>> perms) {
  Hom h;
  h.n = n;
  h.perms = std::move(perms);
  if (static_cast<int>(h.perms.size()) != p.size()) throw std::invalid_argument("make_hom: arity");
  for (int i = 0; i < p.size(); ++i) {
    if (static_cast<int>(h.perms[i].size()) != p.factor(i).generators())
      throw std::invalid_argument("make_hom: generator count");
    std::vector<Perm> inv;
    for (const Perm& g : h.perms[i]) inv.push_back(invert(g));
    h.inverses.push_back(std::move(inv));
  }
  return h;
}

Hom sample_hom(const Presentation& p, int n, Rng& rng) {
  std::vector<std::vector<Perm>> perms;
  for (const Factor& f : p.factors()) {
    std::vector<Perm> gens;
    if (f.cyclic())
      gens.push_back(sample_order_divider(f.n, n, rng));
    else
      for (int j = 0; j < f.n; ++j) gens.push_back(sample_permutation(n, rng));
    perms.push_back(std::move(gens));
  }
  return make_hom(p, n, std::move(perms));
}

Perm evaluate(const Presentation& p, const Hom& hom, const Word& w) {
  Perm out(static_cast<size_t>(hom.n));
  for (int x = 0; x < hom.n; ++x) {
    int y = x;
    for (const Syllable& s : w.syl) {
      const auto& gens = hom.perms[s.factor];
      if (p.factor(s.factor).cyclic()) {
        const Perm& g = gens[0];
        for (int t = 0; t < s.exponent; ++t) y = g[static_cast<size_t>(y)];
      } else {
        for (int l : s.letters) {
          size_t j = static_cast<size_t>(std::abs(l) - 1);
          y = l > 0 ? gens[j][static_cast<size_t>(y)] : hom.inverses[s.factor][j][static_cast<size_t>(y)];
        }
      }
    }
    out[static_cast<size_t>(x)] = y;
  }
  return out;
}

int fix_count(const Perm& perm) {
  int n = 0;
  for (size_t i = 0; i < perm.size(); ++i) n += perm[i] == static_cast<int>(i);
  return n;
}

std::vector<int> cycle_counts(const Perm& perm, int max_len) {
  std::vector<int> counts(static_cast<size_t>(max_len) + 1, 0);
  std::vector<char> seen(perm.size(), 0);
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = static_cast<size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    if (len <= max_len) ++counts[static_cast<size_t>(len)];
  }
  return counts;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(seed + chunk * 0x9E3779B97F4A7C15ULL);
}

namespace {

using Tally = std::vector<std::map<long, std::uint64_t>>;  // [0] fix, [L] cyc_L

EmpiricalStats finish(const std::map<long, std::uint64_t>& pmf, std::uint64_t trials,
                      std::uint64_t seed) {
  EmpiricalStats s;
  s.trials = trials;
  s.seed = seed;
  s.pmf = pmf;
  if (trials == 0) return s;
  long double sum = 0, sq = 0;
  for (auto [v, c] : pmf) {
    sum += static_cast<long double>(v) * c;
    sq += static_cast<long double>(v) * v * c;
  }
  long double mean = sum / trials;
  s.mean = static_cast<double>(mean);
  if (trials > 1) {
    long double var = (sq - trials * mean * mean) / (trials - 1);
    s.variance = static_cast<double>(std::max<long double>(var, 0));
  }
  s.stderr_mean = std::sqrt(s.variance / static_cast<double>(trials));
  return s;
}

}  // namespace

Estimate estimate(const Presentation& p, const Word& w, int n, std::uint64_t trials,
                  std::uint64_t seed, int max_len, int threads) {
  if (n < 1) throw std::invalid_argument("estimate: N must be positive");
  if (max_len < 0) max_len = 0;
  std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<Tally> per_chunk(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      Rng rng(stream_seed(seed, c));
      Tally t(static_cast<size_t>(max_len) + 1);
      std::uint64_t begin = c * kChunkTrials;
      std::uint64_t end = std::min(trials, begin + kChunkTrials);
      for (std::uint64_t k = begin; k < end; ++k) {
        Perm img = evaluate(p, sample_hom(p, n, rng), w);
        ++t[0][fix_count(img)];
        std::vector<int> cyc = cycle_counts(img, max_len);
        for (int L = 1; L <= max_len; ++L) ++t[static_cast<size_t>(L)][cyc[static_cast<size_t>(L)]];
      }
      per_chunk[c] = std::move(t);
    }
  };
  int nt = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Tally total(static_cast<size_t>(max_len) + 1);
  for (const Tally& t : per_chunk)
    for (size_t k = 0; k < t.size(); ++k)
      for (auto [v, c] : t[k]) total[k][v] += c;
  Estimate e;
  e.fix = finish(total[0], trials, seed);
  for (int L = 1; L <= max_len; ++L) e.cyc.push_back(finish(total[static_cast<size_t>(L)], trials, seed));
  return e;
}

double total_variation(const EmpiricalStats& s, const std::vector<double>& reference) {
  if (s.trials == 0) return 0.0;
  double tv = 0.0;
  double covered = 0.0;
  for (size_t k = 0; k < reference.size(); ++k) {
    auto it = s.pmf.find(static_cast<long>(k));
    double emp = it == s.pmf.end() ? 0.0 : static_cast<double>(it->second) / s.trials;
    tv += std::abs(emp - reference[k]);
    covered += reference[k];
  }
  for (auto [v, c] : s.pmf)
    if (v < 0 || static_cast<size_t>(v) >= reference.size())
      tv += static_cast<double>(c) / s.trials;
  tv += std::max(0.0, 1.0 - covered);
  return tv / 2.0;
}

}  // namespace freeprod
