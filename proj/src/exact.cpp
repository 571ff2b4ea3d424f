#include "freeprod/exact.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace freeprod {

HomCountTable::HomCountTable(int q) : q_(q) {
  if (q < 1) throw std::invalid_argument("HomCountTable: q must be positive");
  for (int d = 1; d <= q; ++d)
    if (q % d == 0) divisors_.push_back(d);
  values_.push_back(1);
}

BigInt HomCountTable::at(long n) {
  if (n < 0) throw std::invalid_argument("hom_count: negative N");
  std::lock_guard<std::mutex> lock(mu_);
  while (static_cast<long>(values_.size()) <= n) {
    long m = static_cast<long>(values_.size());
    BigInt h = 0;
    for (int d : divisors_)
      if (d <= m) h += falling(m - 1, d - 1) * values_[static_cast<size_t>(m - d)];
    values_.push_back(h);
  }
  return values_[static_cast<size_t>(n)];
}

HomCountTable& hom_table(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<HomCountTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto& t = tables[q];
  if (!t) t = std::make_unique<HomCountTable>(q);
  return *t;
}

BigInt hom_count(int q, long n) { return hom_table(q).at(n); }

namespace {

struct ExtensionMemo {
  std::mutex mu;
  std::map<std::pair<std::vector<int>, long>, BigInt> values;
};

ExtensionMemo& extension_memo(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<ExtensionMemo>> memos;
  std::lock_guard<std::mutex> lock(mu);
  auto& m = memos[q];
  if (!m) m = std::make_unique<ExtensionMemo>();
  return *m;
}

// Chains are grouped by their number of points: count[l] chains with l
// points, l = 1..q. The chain of least size is anchored; we choose which
// other chains share its cycle, their order after it, the cycle length and
// the free points filling the gaps.
class Extender {
 public:
  explicit Extender(int q) : q_(q), memo_(extension_memo(q)) {
    for (int d = 1; d <= q; ++d)
      if (q % d == 0) divisors_.push_back(d);
  }

  BigInt count(std::vector<int>& c, long free) {
    if (std::all_of(c.begin(), c.end(), [](int x) { return x == 0; }))
      return hom_count(q_, free);
    auto key = std::make_pair(c, free);
    {
      std::lock_guard<std::mutex> lock(memo_.mu);
      auto it = memo_.values.find(key);
      if (it != memo_.values.end()) return it->second;
    }
    int a = 1;
    while (c[a] == 0) ++a;
    --c[a];
    std::vector<int> k(c.size(), 0);
    BigInt total = 0;
    choose(c, k, 1, a, 0, BigInt(1), free, total);
    ++c[a];
    std::lock_guard<std::mutex> lock(memo_.mu);
    memo_.values.emplace(std::move(key), total);
    return total;
  }

 private:
  void choose(std::vector<int>& c, std::vector<int>& k, int len, int used, int others,
              const BigInt& ways, long free, BigInt& total) {
    if (len > q_) {
      BigInt w = ways * factorial(others);
      for (int d : divisors_) {
        if (d < used) continue;
        long gap = d - used;
        if (gap > free) break;
        for (size_t l = 1; l < c.size(); ++l) c[l] -= k[l];
        BigInt rest = count(c, free - gap);
        for (size_t l = 1; l < c.size(); ++l) c[l] += k[l];
        total += w * binomial(gap + others, others) * falling(free, gap) * rest;
      }
      return;
    }
    for (int t = 0; t <= c[len] && used + t * len <= q_; ++t) {
      k[len] = t;
      choose(c, k, len + 1, used + t * len, others + t, ways * binomial(c[len], t), free,
             total);
    }
    k[len] = 0;
  }

  int q_;
  std::vector<int> divisors_;
  ExtensionMemo& memo_;
};

}  // namespace

BigInt count_extensions(int q, long n, const CyclicProfile& profile) {
  long used = 0;
  for (int d : profile.cycles) {
    if (d < 1 || q % d) return 0;
    used += d;
  }
  std::vector<int> c(static_cast<size_t>(q) + 1, 0);
  for (int s : profile.arcs) {
    if (s < 0) throw std::invalid_argument("count_extensions: negative arc");
    if (s + 1 > q) return 0;
    ++c[static_cast<size_t>(s) + 1];
    used += s + 1;
  }
  if (used > n) return 0;
  return Extender(q).count(c, n - used);
}

EmbProfile profile_of(const SubCover& z) {
  const Presentation& p = z.presentation();
  EmbProfile e;
  e.o = z.count_in_fiber(kOFiber);
  for (int i = 0; i < p.size(); ++i) {
    EmbProfile::FactorPart part;
    part.vertices = z.count_in_fiber(i);
    part.e_edges = z.edge_count(z.e_label(i));
    if (p.factor(i).cyclic()) {
      for (const CyclicComponent& c : cyclic_components(z, i))
        (c.closed ? part.cyclic.cycles : part.cyclic.arcs).push_back(c.edges());
      std::sort(part.cyclic.arcs.begin(), part.cyclic.arcs.end());
      std::sort(part.cyclic.cycles.begin(), part.cyclic.cycles.end());
    } else {
      for (int j = 0; j < p.factor(i).n; ++j)
        part.gen_edges.push_back(z.edge_count(z.gen_label(p.first_generator(i) + j)));
    }
    e.factors.push_back(std::move(part));
  }
  return e;
}

Rational chi_of(const Presentation& p, const EmbProfile& e) {
  Rational chi = e.o;
  for (int i = 0; i < p.size(); ++i) {
    const auto& part = e.factors[i];
    chi -= part.e_edges;
    if (p.factor(i).cyclic()) {
      chi += static_cast<long>(part.cyclic.arcs.size());
      for (int d : part.cyclic.cycles) chi += Rational(d, p.factor(i).n);
    } else {
      chi += part.vertices;
      for (int m : part.gen_edges) chi -= m;
    }
  }
  chi.canonicalize();
  return chi;
}

Rational emb_expectation(const Presentation& p, const EmbProfile& e, long n) {
  if (e.o > n) return 0;
  Rational r = Rational(falling(n, e.o));
  for (int i = 0; i < p.size(); ++i) {
    const auto& part = e.factors[i];
    if (part.vertices > n) return 0;
    r *= Rational(falling(n - part.e_edges, part.vertices - part.e_edges));
    if (p.factor(i).cyclic()) {
      int q = p.factor(i).n;
      r *= Rational(count_extensions(q, n, part.cyclic), hom_count(q, n));
    } else {
      for (int m : part.gen_edges) r /= Rational(falling(n, m));
    }
    r.canonicalize();
    if (r == 0) return 0;
  }
  return r;
}

Rational emb_expectation(const SubCover& z, long n) {
  return emb_expectation(z.presentation(), profile_of(z), n);
}

Rational ResolutionSummary::expectation(long n) const {
  Rational total = 0;
  for (const auto& [prof, count] : profiles)
    total += emb_expectation(presentation, prof, n) * Rational(BigInt(std::to_string(count)));
  total.canonicalize();
  return total;
}

ResolutionSummary summarize(const SubCover& source, std::uint64_t budget) {
  ResolutionSummary s;
  s.presentation = source.presentation();
  for_each_quotient_partition(
      source,
      [&](const std::vector<int>& blocks) {
        EmbProfile e = profile_of(quotient_of(source, blocks));
        if (chi_of(s.presentation, e) == 0) ++s.zero_classes;
        ++s.profiles[e];
        ++s.classes;
      },
      budget);
  return s;
}

SubCover lift_source(const Presentation& p, const Word& w) {
  Word r = cyclic_reduce(p, w).first;
  ElementClass ec = classify(p, r);
  if (ec.kind == ElementClass::Kind::Trivial) {
    SubCover z(p);
    z.add_basepoint(z.add_vertex(kOFiber));
    return z;
  }
  if (ec.kind == ElementClass::Kind::Torsion) {
    int q = p.factor(ec.factor).n;
    int g = std::gcd(q, ec.exponent);
    SubCover z(p);
    int l = z.gen_label(p.first_generator(ec.factor));
    for (int k = 0; k < g; ++k) z.add_vertex(ec.factor);
    for (int k = 0; k < g; ++k) z.add_edge(l, k, (k + 1) % g);
    z.add_basepoint(0);
    return z;
  }
  return build_Y(p, r);
}

std::shared_ptr<const ResolutionSummary> resolution_of(const Presentation& p,
                                                        const std::vector<Word>& words,
                                                        std::uint64_t budget) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const ResolutionSummary>> cache;
  std::string key = p.to_string();
  for (const Word& w : words) key += "|" + to_string(p, cyclic_reduce(p, w).first);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<SubCover> parts;
  for (const Word& w : words) parts.push_back(lift_source(p, w));
  auto s = std::make_shared<const ResolutionSummary>(summarize(disjoint_union(parts), budget));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, s);
  return s;
}

Rational torsion_fix_expectation(int q, long j, long n) {
  long g = std::gcd(static_cast<long>(q), j);
  if (g == 0) g = q;
  BigInt h = hom_count(q, n);
  Rational total = 0;
  for (long d = 1; d <= g; ++d) {
    if (g % d || d > n) continue;
    total += Rational(falling(n, d) * hom_count(q, n - d), h);
  }
  total.canonicalize();
  return total;
}

Rational fix_expectation(const Presentation& p, const Word& w, long n, std::uint64_t budget) {
  ElementClass ec = classify(p, w);
  if (ec.kind == ElementClass::Kind::Trivial) return n;
  if (ec.kind == ElementClass::Kind::Torsion)
    return torsion_fix_expectation(p.factor(ec.factor).n, ec.exponent, n);
  return resolution_of(p, {w}, budget)->expectation(n);
}

Rational fix_moment(const Presentation& p, const Word& w, int r, long n, std::uint64_t budget) {
  if (r < 0) throw std::invalid_argument("fix_moment: negative r");
  if (r == 0) return 1;
  if (r == 1) return fix_expectation(p, w, n, budget);
  return resolution_of(p, std::vector<Word>(static_cast<size_t>(r), w), budget)->expectation(n);
}

Rational joint_fix_expectation(const Presentation& p, const Word& w1, const Word& w2, long n,
                               std::uint64_t budget) {
  return resolution_of(p, {w1, w2}, budget)->expectation(n);
}

Rational cyc_expectation(const Presentation& p, const Word& w, long len, long n,
                         std::uint64_t budget) {
  if (len < 1) throw std::invalid_argument("cyc_expectation: L must be positive");
  Rational total = 0;
  for (long d = 1; d <= len; ++d) {
    if (len % d) continue;
    int mu = mobius(len / d);
    if (mu == 0) continue;
    total += mu * fix_expectation(p, power(p, w, d), n, budget);
  }
  total /= len;
  total.canonicalize();
  return total;
}

}  // namespace freeprod
