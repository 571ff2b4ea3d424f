#include "freeprod/bruteforce.hpp"

#include <algorithm>
#include <numeric>

#include "freeprod/exact.hpp"

namespace freeprod {
namespace {

void extend_cycles(int q, Perm& perm, std::vector<int>& rest, std::vector<Perm>& out) {
  if (rest.empty()) {
    out.push_back(perm);
    return;
  }
  int first = rest.front();
  std::vector<int> others(rest.begin() + 1, rest.end());
  for (int d = 1; d <= q && d <= static_cast<int>(rest.size()); ++d) {
    if (q % d) continue;
    // Ordered choice of d-1 further points from others.
    std::vector<int> chosen;
    std::vector<char> used(others.size(), 0);
    std::function<void()> pick = [&] {
      if (static_cast<int>(chosen.size()) == d - 1) {
        int prev = first;
        for (int x : chosen) {
          perm[static_cast<size_t>(prev)] = x;
          prev = x;
        }
        perm[static_cast<size_t>(prev)] = first;
        std::vector<int> left;
        for (size_t k = 0; k < others.size(); ++k)
          if (!used[k]) left.push_back(others[k]);
        extend_cycles(q, perm, left, out);
        return;
      }
      for (size_t k = 0; k < others.size(); ++k) {
        if (used[k]) continue;
        used[k] = 1;
        chosen.push_back(others[k]);
        pick();
        chosen.pop_back();
        used[k] = 0;
      }
    };
    pick();
  }
}

}  // namespace

std::vector<Perm> order_dividing_perms(int q, int n) {
  std::vector<Perm> out;
  Perm perm(static_cast<size_t>(n));
  std::vector<int> rest(static_cast<size_t>(n));
  std::iota(rest.begin(), rest.end(), 0);
  extend_cycles(q, perm, rest, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

BigInt hom_total(const Presentation& p, int n) {
  BigInt total = 1;
  for (const Factor& f : p.factors()) {
    if (f.cyclic()) {
      total *= hom_count(f.n, n);
    } else {
      BigInt fac = factorial(n);
      for (int j = 0; j < f.n; ++j) total *= fac;
    }
  }
  return total;
}

void enumerate_homs(const Presentation& p, int n, const std::function<void(const Hom&)>& visit,
                    std::uint64_t cap) {
  if (n < 0) throw std::invalid_argument("enumerate_homs: negative N");
  BigInt total = hom_total(p, n);
  if (total > BigInt(std::to_string(cap)))
    throw HomCapExceeded("enumerating " + total.get_str() + " homomorphisms exceeds cap " +
                         std::to_string(cap));
  std::map<int, std::vector<Perm>> cyclic_lists;
  std::vector<Perm> sym;
  bool need_sym = false;
  for (const Factor& f : p.factors()) {
    if (f.cyclic() && !cyclic_lists.count(f.n)) cyclic_lists[f.n] = order_dividing_perms(f.n, n);
    if (!f.cyclic()) need_sym = true;
  }
  if (need_sym) sym = all_perms(n);
  // One list per generator, walked as an odometer.
  std::vector<const std::vector<Perm>*> lists;
  std::vector<std::pair<int, int>> slot;
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.factor(i).generators(); ++j) {
      lists.push_back(p.factor(i).cyclic() ? &cyclic_lists[p.factor(i).n] : &sym);
      slot.emplace_back(i, j);
    }
  std::vector<std::vector<Perm>> init;
  for (const Factor& f : p.factors()) init.emplace_back(static_cast<size_t>(f.generators()), Perm(static_cast<size_t>(n)));
  Hom hom = make_hom(p, n, init);
  std::vector<size_t> idx(lists.size(), 0);
  auto load = [&](size_t g) {
    auto [i, j] = slot[g];
    const Perm& perm = (*lists[g])[idx[g]];
    hom.perms[i][j] = perm;
    for (size_t x = 0; x < perm.size(); ++x) hom.inverses[i][j][static_cast<size_t>(perm[x])] = static_cast<int>(x);
  };
  for (size_t g = 0; g < lists.size(); ++g) load(g);
  for (;;) {
    visit(hom);
    size_t g = 0;
    while (g < lists.size()) {
      if (++idx[g] < lists[g]->size()) {
        load(g);
        break;
      }
      idx[g] = 0;
      load(g);
      ++g;
    }
    if (g == lists.size()) return;
  }
}

namespace {

ExhaustiveStats run(const Presentation& p, const Word& w1, const Word* w2, int n, int max_len,
                    std::uint64_t cap) {
  ExhaustiveStats s;
  s.n = n;
  s.cyc_distributions.resize(static_cast<size_t>(std::max(0, max_len)));
  std::map<std::pair<long, long>, std::uint64_t> joint;
  BigInt sum_second = 0;
  enumerate_homs(
      p, n,
      [&](const Hom& hom) {
        Perm img = evaluate(p, hom, w1);
        int f = fix_count(img);
        ++s.total_homs;
        ++s.fix_distribution[f];
        if (f == n) ++s.identity_count;
        std::vector<int> cyc = cycle_counts(img, max_len);
        for (int L = 1; L <= max_len; ++L)
          ++s.cyc_distributions[static_cast<size_t>(L - 1)][cyc[static_cast<size_t>(L)]];
        if (w2) {
          int f2 = fix_count(evaluate(p, hom, *w2));
          ++joint[{f, f2}];
          sum_second += f2;
        }
      },
      cap);
  BigInt total(std::to_string(s.total_homs));
  for (int r = 1; r <= 3; ++r) {
    BigInt sum = 0;
    for (auto [v, c] : s.fix_distribution) {
      BigInt vr = 1;
      for (int k = 0; k < r; ++k) vr *= v;
      sum += vr * BigInt(std::to_string(c));
    }
    Rational m(sum, total);
    m.canonicalize();
    s.moments[r] = m;
  }
  for (const auto& dist : s.cyc_distributions) {
    BigInt sum = 0;
    for (auto [v, c] : dist) sum += BigInt(v) * BigInt(std::to_string(c));
    Rational m(sum, total);
    m.canonicalize();
    s.cyc_means.push_back(m);
  }
  if (w2) {
    BigInt sum = 0;
    for (auto [k, c] : joint) sum += BigInt(k.first * k.second) * BigInt(std::to_string(c));
    Rational jm(sum, total), sm(sum_second, total);
    jm.canonicalize();
    sm.canonicalize();
    s.joint_distribution = std::move(joint);
    s.joint_mean = jm;
    s.second_mean = sm;
  }
  return s;
}

}  // namespace

ExhaustiveStats exact_stats(const Presentation& p, const Word& w, int n, int max_len,
                            std::uint64_t cap) {
  return run(p, w, nullptr, n, max_len, cap);
}

ExhaustiveStats exact_stats(const Presentation& p, const Word& w1, const Word& w2, int n,
                            int max_len, std::uint64_t cap) {
  return run(p, w1, &w2, n, max_len, cap);
}

}  // namespace freeprod
