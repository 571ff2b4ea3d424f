#include "freeprod/limits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "freeprod/exact.hpp"

namespace freeprod {
namespace {

void require_infinite(const Presentation& p, const Word& w, const char* what) {
  if (classify(p, w).kind != ElementClass::Kind::Infinite)
    throw std::invalid_argument(std::string(what) + ": word must have infinite order");
}

// Number of closed cycles over cyclic factors that carry a nontrivial
// subgroup (length d < q).
int torsion_pieces(const SubCover& core) {
  const Presentation& p = core.presentation();
  int n = 0;
  for (int i = 0; i < p.size(); ++i) {
    if (!p.factor(i).cyclic()) continue;
    for (const CyclicComponent& c : cyclic_components(core, i))
      if (c.closed && c.edges() < p.factor(i).n) ++n;
  }
  return n;
}

std::vector<std::vector<Rational>> stirling2(int r) {
  std::vector<std::vector<Rational>> s(r + 1, std::vector<Rational>(r + 1, 0));
  s[0][0] = 1;
  for (int n = 1; n <= r; ++n)
    for (int k = 1; k <= n; ++k) s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1];
  return s;
}

}  // namespace

Rational PoissonMixture::mean() const {
  Rational m = 0;
  for (const PoissonTerm& t : terms) m += t.alpha;
  m /= scale;
  m.canonicalize();
  return m;
}

namespace {

ZeroSubgroup make_zero_subgroup(const Presentation& p, SubCover codomain, int basepoint,
                                const Word& conj) {
  ZeroSubgroup z;
  z.core = complete_cyclic(codomain);
  z.codomain = std::move(codomain);
  z.basepoint = basepoint;
  z.conjugator = conj;
  int pieces = torsion_pieces(z.core);
  z.kind = pieces == 0 ? ZeroSubgroup::Kind::InfiniteCyclic
                       : ZeroSubgroup::Kind::InfiniteDihedral;
  for (const Word& g : plab_generators(z.core, z.basepoint)) {
    bool involution = element_order(p, g) == 2;
    if (z.kind == ZeroSubgroup::Kind::InfiniteDihedral && !involution) continue;
    z.generators.push_back(conjugate(p, conj, g));
  }
  return z;
}

// Word read along a spanning tree from the basepoint to each vertex.
std::vector<Word> tree_paths(const SubCover& y, int base) {
  const Presentation& p = y.presentation();
  std::vector<Word> path(static_cast<size_t>(y.vertex_count()));
  std::vector<char> seen(path.size(), 0);
  std::vector<int> queue{base};
  seen[static_cast<size_t>(base)] = 1;
  for (size_t k = 0; k < queue.size(); ++k) {
    int v = queue[k];
    for (int l = 0; l < y.label_count(); ++l)
      for (int dir : {1, -1}) {
        int w = dir > 0 ? y.out(l, v) : y.in(l, v);
        if (w < 0 || seen[static_cast<size_t>(w)]) continue;
        seen[static_cast<size_t>(w)] = 1;
        path[static_cast<size_t>(w)] = path[static_cast<size_t>(v)];
        if (!y.is_e_label(l))
          path[static_cast<size_t>(w)] = multiply(p, path[static_cast<size_t>(w)],
                                                  generator_word(p, l - p.size(), dir));
        queue.push_back(w);
      }
  }
  return path;
}

// Blocks restricted to the first n vertices, renumbered by first appearance.
std::vector<int> restrict_blocks(const std::vector<int>& blocks, int n) {
  std::map<int, int> ids;
  std::vector<int> out(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto [it, fresh] = ids.try_emplace(blocks[static_cast<size_t>(v)], static_cast<int>(ids.size()));
    out[static_cast<size_t>(v)] = it->second;
  }
  return out;
}

}  // namespace

// Direct construction. With gamma = root^q cyclically reduced, the subgroups
// are <root^j> for j | q and, when an involution s inverts root, <s, root^j>.
// Their images are folds of Y: a rotation by j periods, plus a half cycle
// through a vertex u whose loop word conjugates a factor involution.
std::vector<ZeroSubgroup> h_gamma(const Presentation& p, const Word& gamma,
                                  std::uint64_t budget) {
  require_infinite(p, gamma, "h_gamma");
  auto [reduced, conj] = cyclic_reduce(p, gamma);
  ElementClass ec = classify(p, reduced);
  const Word& root = ec.root;
  const long q = ec.power;
  SubCover y = build_Y(p, reduced);
  const int n = y.vertex_count();
  if (power(p, root, q) != reduced || n % q != 0)
    throw std::logic_error("h_gamma: lift is not periodic in the root");
  const int period = static_cast<int>(n / q);
  const int base = y.basepoints().at(0);

  std::vector<Word> paths = tree_paths(y, base);
  const Word root_inv = inverse(p, root);
  std::vector<int> candidates;
  for (int u = 0; u < n; ++u) {
    int f = y.fiber(u);
    if (f == kOFiber || !p.factor(f).cyclic() || p.factor(f).n % 2) continue;
    Word x = generator_word(p, p.first_generator(f), p.factor(f).n / 2);
    const Word& pu = paths[static_cast<size_t>(u)];
    Word s = multiply(p, multiply(p, pu, x), inverse(p, pu));
    if (multiply(p, multiply(p, s, root), s) == root_inv) candidates.push_back(u);
  }

  std::uint64_t work = 0;
  auto charge = [&](int size) {
    work += static_cast<std::uint64_t>(size);
    if (work > budget)
      throw BudgetExceeded("h_gamma exceeded budget of " + std::to_string(budget) + " steps");
  };

  std::set<std::vector<int>> found;
  std::vector<std::pair<std::string, ZeroSubgroup>> out;
  auto emit = [&](const std::vector<int>& blocks) {
    if (!found.insert(blocks).second) return;
    SubCover z = quotient_of(y, blocks);
    if (chi_grp(z).total != 0) throw std::logic_error("h_gamma: constructed image has chi != 0");
    int b = blocks[static_cast<size_t>(base)];
    SubCover based = z;
    based.set_basepoints({b});
    out.emplace_back(canonical_form(based, SignatureMode::Based),
                     make_zero_subgroup(p, std::move(z), b, conj));
  };

  for (long j = 1; j <= q; ++j) {
    if (q % j) continue;
    std::vector<std::pair<int, int>> seeds;
    if (j < q) seeds.emplace_back(base, static_cast<int>(j) * period);
    charge(n);
    emit(restrict_blocks(*fold_closure(y, seeds, Folding::Complete), n));
    for (int u : candidates) {
      int f = y.fiber(u);
      int label = y.gen_label(p.first_generator(f));
      int half = p.factor(f).n / 2;
      // Walk x^half from u inside Y, then extend with fresh vertices.
      SubCover ext = y;
      int v = u, steps = 0;
      while (steps < half && ext.out(label, v) >= 0) {
        v = ext.out(label, v);
        ++steps;
      }
      for (; steps < half; ++steps) {
        int w = ext.add_vertex(f);
        ext.add_edge(label, v, w);
        v = w;
      }
      std::vector<std::pair<int, int>> s = seeds;
      s.emplace_back(v, u);
      charge(ext.vertex_count());
      emit(restrict_blocks(*fold_closure(ext, s, Folding::Complete), n));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ZeroSubgroup> subs;
  for (auto& [sig, z] : out) subs.push_back(std::move(z));
  return subs;
}

std::vector<ZeroSubgroup> h_gamma_by_resolution(const Presentation& p, const Word& gamma,
                                                std::uint64_t budget) {
  require_infinite(p, gamma, "h_gamma_by_resolution");
  auto [reduced, conj] = cyclic_reduce(p, gamma);
  SubCover y = build_Y(p, reduced);
  std::vector<ZeroSubgroup> out;
  for (const Quotient& q : enumerate_quotients(y, budget)) {
    if (chi_grp(q.codomain).total != 0) continue;
    out.push_back(make_zero_subgroup(p, q.codomain, q.base_images.at(0), conj));
  }
  return out;
}

std::vector<ConjugacyClass> conjugacy_classes(const std::vector<ZeroSubgroup>& subs) {
  std::map<std::string, size_t> index;
  std::vector<ConjugacyClass> classes;
  std::vector<std::string> keys;
  for (const ZeroSubgroup& z : subs) {
    std::string key = canonical_form(z.core, SignatureMode::Unbased);
    auto it = index.find(key);
    if (it != index.end()) {
      ++classes[it->second].alpha;
      continue;
    }
    index.emplace(key, classes.size());
    keys.push_back(key);
    ConjugacyClass c;
    c.representative = z;
    c.alpha = 1;
    c.beta = automorphism_count(z.core).get_si();
    classes.push_back(std::move(c));
  }
  std::vector<size_t> order(classes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (classes[a].beta != classes[b].beta) return classes[a].beta > classes[b].beta;
    if (classes[a].alpha != classes[b].alpha) return classes[a].alpha < classes[b].alpha;
    return keys[a] < keys[b];
  });
  std::vector<ConjugacyClass> sorted;
  for (size_t i : order) sorted.push_back(classes[i]);
  return sorted;
}

PoissonMixture mixture_of(const std::vector<ConjugacyClass>& classes, long scale) {
  PoissonMixture m;
  m.scale = scale;
  for (const ConjugacyClass& c : classes) m.terms.push_back({c.alpha, c.beta});
  return m;
}

PoissonMixture limit_distribution(const Presentation& p, const Word& gamma,
                                  std::uint64_t budget) {
  return mixture_of(conjugacy_classes(h_gamma(p, gamma, budget)));
}

Rational mixture_moment(const PoissonMixture& mix, int r) {
  auto s = stirling2(r);
  std::vector<Rational> acc(r + 1, 0);
  acc[0] = 1;
  for (const PoissonTerm& t : mix.terms) {
    Rational c = t.alpha * t.beta;
    Rational lambda(1, t.beta);
    std::vector<Rational> m(r + 1, 0);
    for (int k = 0; k <= r; ++k) {
      Rational sum = 0, lp = 1;
      for (int j = 0; j <= k; ++j) {
        sum += s[k][j] * lp;
        lp *= lambda;
      }
      Rational ck = 1;
      for (int i = 0; i < k; ++i) ck *= c;
      m[k] = ck * sum;
    }
    std::vector<Rational> next(r + 1, 0);
    for (int n = 0; n <= r; ++n)
      for (int k = 0; k <= n; ++k) next[n] += Rational(binomial(n, k)) * m[k] * acc[n - k];
    acc = next;
  }
  Rational result = acc[r];
  for (int i = 0; i < r; ++i) result /= mix.scale;
  result.canonicalize();
  return result;
}

std::vector<double> mixture_pmf(const PoissonMixture& mix, int kmax) {
  std::vector<double> pmf(static_cast<size_t>(kmax) + 1, 0.0);
  pmf[0] = 1.0;
  for (const PoissonTerm& t : mix.terms) {
    long c = t.alpha * t.beta;
    double lambda = 1.0 / static_cast<double>(t.beta);
    std::vector<double> term(pmf.size(), 0.0);
    double w = std::exp(-lambda);
    for (long m = 0; m * c <= kmax; ++m) {
      term[static_cast<size_t>(m * c)] = w;
      w *= lambda / static_cast<double>(m + 1);
    }
    std::vector<double> next(pmf.size(), 0.0);
    for (int a = 0; a <= kmax; ++a) {
      if (pmf[a] == 0.0) continue;
      for (int b = 0; a + b <= kmax; ++b) next[a + b] += pmf[a] * term[b];
    }
    pmf = std::move(next);
  }
  return pmf;
}

std::uint64_t limit_moment_via_resolution(const Presentation& p, const Word& gamma, int r,
                                          std::uint64_t budget) {
  require_infinite(p, gamma, "limit_moment_via_resolution");
  if (r < 1) return 1;
  return resolution_of(p, std::vector<Word>(static_cast<size_t>(r), gamma), budget)
      ->zero_classes;
}

std::optional<long> minimal_power_in(const Presentation& p, const Word& gamma,
                                     const ZeroSubgroup& h) {
  require_infinite(p, gamma, "minimal_power_in");
  Word delta = conjugate(p, inverse(p, h.conjugator), gamma);
  long bound = h.core.vertex_count() + 1;
  for (long len = 1; len <= bound; ++len) {
    auto end = trace_word(h.core, h.basepoint, power(p, delta, len));
    if (end && *end == h.basepoint) return len;
  }
  return std::nullopt;
}

std::vector<ZeroSubgroup> h_gamma_L(const Presentation& p, const Word& gamma, long len,
                                    std::uint64_t budget) {
  require_infinite(p, gamma, "h_gamma_L");
  if (len < 1) throw std::invalid_argument("h_gamma_L: L must be positive");
  std::vector<ZeroSubgroup> out;
  for (ZeroSubgroup& z : h_gamma(p, power(p, gamma, len), budget)) {
    auto m = minimal_power_in(p, gamma, z);
    if (m && *m == len) out.push_back(std::move(z));
  }
  return out;
}

CycLimit cyc_limit(const Presentation& p, const Word& gamma, long len, std::uint64_t budget) {
  std::vector<ZeroSubgroup> subs = h_gamma_L(p, gamma, len, budget);
  CycLimit c;
  c.mean = Rational(static_cast<long>(subs.size()), len);
  c.mean.canonicalize();
  c.mixture = mixture_of(conjugacy_classes(subs), len);
  return c;
}

IndependenceResult asymptotically_independent(const Presentation& p, const Word& g1,
                                              const Word& g2, std::uint64_t budget) {
  require_infinite(p, g1, "asymptotically_independent");
  require_infinite(p, g2, "asymptotically_independent");
  std::set<std::string> first;
  for (const ZeroSubgroup& z : h_gamma(p, g1, budget))
    first.insert(canonical_form(z.core, SignatureMode::Unbased));
  IndependenceResult r;
  for (const ZeroSubgroup& z : h_gamma(p, g2, budget)) {
    if (first.count(canonical_form(z.core, SignatureMode::Unbased))) {
      r.independent = false;
      r.witness = z.core;
      break;
    }
  }
  return r;
}

Rational rf_bound(const Presentation& p, const Word& gamma, int r, long n,
                  std::uint64_t budget) {
  Rational c = mixture_moment(limit_distribution(p, gamma, budget), r);
  for (int i = 0; i < r; ++i) c /= n;
  c.canonicalize();
  return c;
}

}  // namespace freeprod
