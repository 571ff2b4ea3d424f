#include "freeprod/subcover.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace freeprod {

SubCover::SubCover(Presentation p) : p_(std::move(p)) {
  labels_ = p_.size() + p_.generator_count();
}

int SubCover::add_vertex(int fiber) {
  if (fiber < kOFiber || fiber >= p_.size())
    throw std::logic_error("add_vertex: bad fiber");
  fiber_.push_back(fiber);
  adj_.resize(adj_.size() + 2 * static_cast<size_t>(labels_), -1);
  return vertex_count() - 1;
}

void SubCover::add_edge(int l, int src, int dst) {
  if (l < 0 || l >= labels_ || src < 0 || dst < 0 || src >= vertex_count() ||
      dst >= vertex_count())
    throw std::logic_error("add_edge: bad label or vertex");
  int want_src = is_e_label(l) ? kOFiber : label_factor(l);
  if (fiber_[src] != want_src || fiber_[dst] != label_factor(l))
    throw std::logic_error("add_edge: fiber mismatch");
  size_t so = static_cast<size_t>(src) * 2 * labels_ + 2 * l;
  size_t di = static_cast<size_t>(dst) * 2 * labels_ + 2 * l + 1;
  if (adj_[so] == dst && adj_[di] == src) return;
  if (adj_[so] != -1 || adj_[di] != -1)
    throw std::logic_error("add_edge: immersion violated");
  adj_[so] = dst;
  adj_[di] = src;
}

int SubCover::count_in_fiber(int f) const {
  return static_cast<int>(std::count(fiber_.begin(), fiber_.end(), f));
}

int SubCover::edge_count(int l) const {
  int n = 0;
  for (int v = 0; v < vertex_count(); ++v) n += out(l, v) >= 0;
  return n;
}

std::vector<std::tuple<int, int, int>> SubCover::edges() const {
  std::vector<std::tuple<int, int, int>> e;
  for (int l = 0; l < labels_; ++l)
    for (int v = 0; v < vertex_count(); ++v)
      if (out(l, v) >= 0) e.emplace_back(l, v, out(l, v));
  return e;
}

bool SubCover::valid(std::string* why) const {
  for (int i = 0; i < p_.size(); ++i) {
    const Factor& f = p_.factor(i);
    if (!f.cyclic()) continue;
    for (const CyclicComponent& c : cyclic_components(*this, i)) {
      if (c.closed && f.n % c.edges() != 0) {
        if (why) *why = "cycle of length " + std::to_string(c.edges()) +
                        " over C" + std::to_string(f.n);
        return false;
      }
      if (!c.closed && c.edges() > f.n - 1) {
        if (why) *why = "arc of length " + std::to_string(c.edges()) +
                        " over C" + std::to_string(f.n);
        return false;
      }
    }
  }
  return true;
}

std::vector<CyclicComponent> cyclic_components(const SubCover& z, int factor) {
  std::vector<CyclicComponent> out;
  const Presentation& p = z.presentation();
  int l = z.gen_label(p.first_generator(factor));
  std::vector<char> seen(z.vertex_count(), 0);
  for (int v = 0; v < z.vertex_count(); ++v) {
    if (z.fiber(v) != factor || seen[v]) continue;
    CyclicComponent c;
    int start = v;
    for (;;) {
      int prev = z.in(l, start);
      if (prev < 0) break;
      if (prev == v) {
        c.closed = true;
        start = v;
        break;
      }
      start = prev;
    }
    int x = start;
    do {
      c.verts.push_back(x);
      seen[x] = 1;
      x = z.out(l, x);
    } while (x >= 0 && x != start);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<int> connected_components(const SubCover& z, int* count) {
  int n = z.vertex_count();
  std::vector<int> comp(n, -1);
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int l = 0; l < z.label_count(); ++l) {
        for (int w : {z.out(l, u), z.in(l, u)}) {
          if (w >= 0 && comp[w] < 0) {
            comp[w] = c;
            stack.push_back(w);
          }
        }
      }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

SubCover build_Y(const Presentation& p, const Word& gamma) {
  ElementClass ec = classify(p, gamma);
  if (ec.kind == ElementClass::Kind::Trivial)
    throw std::invalid_argument("build_Y: trivial word");
  if (ec.kind == ElementClass::Kind::Torsion)
    throw std::invalid_argument("build_Y: torsion word");
  if (cyclic_reduce(p, gamma).first != gamma)
    throw std::invalid_argument("build_Y: word is not cyclically reduced");

  SubCover y(p);
  if (gamma.length() == 1) {
    const Syllable& s = gamma.syl[0];
    int g0 = p.first_generator(s.factor);
    int n = static_cast<int>(s.letters.size());
    std::vector<int> vs;
    for (int k = 0; k < n; ++k) vs.push_back(y.add_vertex(s.factor));
    for (int k = 0; k < n; ++k) {
      int a = vs[k], b = vs[(k + 1) % n];
      int letter = s.letters[k];
      int l = y.gen_label(g0 + std::abs(letter) - 1);
      if (letter > 0)
        y.add_edge(l, a, b);
      else
        y.add_edge(l, b, a);
    }
    y.add_basepoint(vs[0]);
    return y;
  }

  int len = static_cast<int>(gamma.length());
  int o0 = y.add_vertex(kOFiber);
  int o = o0;
  for (int j = 0; j < len; ++j) {
    const Syllable& s = gamma.syl[j];
    const Factor& f = p.factor(s.factor);
    int g0 = p.first_generator(s.factor);
    int cur = y.add_vertex(s.factor);
    y.add_edge(y.e_label(s.factor), o, cur);
    auto step = [&](int l, bool forward) {
      int nxt = y.add_vertex(s.factor);
      if (forward)
        y.add_edge(l, cur, nxt);
      else
        y.add_edge(l, nxt, cur);
      cur = nxt;
    };
    if (f.cyclic()) {
      int t = s.exponent;
      bool forward = 2 * t <= f.n;
      int steps = forward ? t : f.n - t;
      for (int k = 0; k < steps; ++k) step(y.gen_label(g0), forward);
    } else {
      for (int letter : s.letters) step(y.gen_label(g0 + std::abs(letter) - 1), letter > 0);
    }
    int next_o = j + 1 == len ? o0 : y.add_vertex(kOFiber);
    y.add_edge(y.e_label(s.factor), next_o, cur);
    o = next_o;
  }
  y.add_basepoint(o0);
  return y;
}

ChiReport chi_grp(const SubCover& z) {
  int nc = 0;
  std::vector<int> comp = connected_components(z, &nc);
  std::vector<Rational> chi(nc, 0);
  const Presentation& p = z.presentation();
  for (int v = 0; v < z.vertex_count(); ++v) {
    if (z.fiber(v) == kOFiber) {
      chi[comp[v]] += 1;
      for (int i = 0; i < p.size(); ++i)
        if (z.out(z.e_label(i), v) >= 0) chi[comp[v]] -= 1;
    } else if (!p.factor(z.fiber(v)).cyclic()) {
      chi[comp[v]] += 1;
      for (int j = 0; j < p.factor(z.fiber(v)).n; ++j)
        if (z.out(z.gen_label(p.first_generator(z.fiber(v)) + j), v) >= 0) chi[comp[v]] -= 1;
    }
  }
  for (int i = 0; i < p.size(); ++i) {
    if (!p.factor(i).cyclic()) continue;
    for (const CyclicComponent& c : cyclic_components(z, i)) {
      if (c.closed)
        chi[comp[c.verts[0]]] += Rational(c.edges(), p.factor(i).n);
      else
        chi[comp[c.verts[0]]] += 1;
    }
  }
  ChiReport r;
  r.total = 0;
  for (int c = 0; c < nc; ++c) {
    chi[c].canonicalize();
    r.per_component.emplace_back(c, chi[c]);
    r.total += chi[c];
  }
  return r;
}

namespace {

// Breadth-first encoding of the component of root. Vertices already
// numbered in num are reused; new ones get consecutive numbers.
void encode_from(const SubCover& z, int root, std::vector<int>& num, std::vector<int>& order,
                 std::vector<int>& code) {
  size_t head = order.size();
  num[root] = static_cast<int>(order.size());
  order.push_back(root);
  for (; head < order.size(); ++head) {
    int u = order[head];
    code.push_back(z.fiber(u) + 1);
    for (int l = 0; l < z.label_count(); ++l) {
      for (int w : {z.out(l, u), z.in(l, u)}) {
        if (w < 0) {
          code.push_back(-1);
          continue;
        }
        if (num[w] < 0) {
          num[w] = static_cast<int>(order.size());
          order.push_back(w);
        }
        code.push_back(num[w]);
      }
    }
  }
}

std::vector<int> rooted_code(const SubCover& z, int root, std::vector<int>& num) {
  std::vector<int> order, code;
  encode_from(z, root, num, order, code);
  for (int v : order) num[v] = -1;
  return code;
}

std::vector<int> min_code(const SubCover& z, const std::vector<int>& members,
                          std::vector<int>& num) {
  int best_fiber = 1 << 30;
  for (int v : members) best_fiber = std::min(best_fiber, z.fiber(v));
  std::vector<int> best;
  for (int v : members) {
    if (z.fiber(v) != best_fiber) continue;
    std::vector<int> c = rooted_code(z, v, num);
    if (best.empty() || c < best) best = std::move(c);
  }
  return best;
}

void append_code(std::string& s, const std::vector<int>& code) {
  for (int x : code) {
    s += std::to_string(x);
    s += ',';
  }
}

std::vector<std::vector<int>> members_by_component(const SubCover& z, const std::vector<int>& comp,
                                                   int nc) {
  std::vector<std::vector<int>> m(nc);
  for (int v = 0; v < z.vertex_count(); ++v) m[comp[v]].push_back(v);
  return m;
}

}  // namespace

std::string canonical_form(const SubCover& z, SignatureMode mode) {
  int nc = 0;
  std::vector<int> comp = connected_components(z, &nc);
  auto members = members_by_component(z, comp, nc);
  std::vector<int> num(z.vertex_count(), -1);
  std::string sig = z.presentation().to_string() + ":";
  std::vector<char> done(nc, 0);
  if (mode == SignatureMode::Based) {
    std::vector<int> order, code;
    for (int b : z.basepoints()) {
      if (num[b] >= 0) continue;
      done[comp[b]] = 1;
      encode_from(z, b, num, order, code);
      code.push_back(-2);
    }
    append_code(sig, code);
    sig += '#';
    for (int b : z.basepoints()) sig += std::to_string(num[b]) + ",";
    sig += '#';
    for (int v : order) num[v] = -1;
  }
  std::vector<std::vector<int>> rest;
  for (int c = 0; c < nc; ++c)
    if (!done[c]) rest.push_back(min_code(z, members[c], num));
  std::sort(rest.begin(), rest.end());
  for (const auto& c : rest) {
    append_code(sig, c);
    sig += '|';
  }
  return sig;
}

BigInt automorphism_count(const SubCover& z) {
  int nc = 0;
  std::vector<int> comp = connected_components(z, &nc);
  auto members = members_by_component(z, comp, nc);
  std::vector<int> num(z.vertex_count(), -1);
  std::map<std::vector<int>, std::pair<long, long>> classes;  // code -> (|Aut|, multiplicity)
  for (int c = 0; c < nc; ++c) {
    std::vector<int> best = min_code(z, members[c], num);
    auto it = classes.find(best);
    if (it != classes.end()) {
      ++it->second.second;
      continue;
    }
    long aut = 0;
    for (int v : members[c])
      if (z.fiber(v) + 1 == best[0] && rooted_code(z, v, num) == best) ++aut;
    classes.emplace(best, std::make_pair(aut, 1L));
  }
  BigInt total = 1;
  for (const auto& [code, am] : classes) {
    BigInt a;
    mpz_pow_ui(a.get_mpz_t(), BigInt(am.first).get_mpz_t(), static_cast<unsigned long>(am.second));
    total *= a * factorial(am.second);
  }
  return total;
}

namespace {

Word label_word(const SubCover& z, int l) {
  if (z.is_e_label(l)) return {};
  return generator_word(z.presentation(), l - z.factor_count());
}

}  // namespace

std::vector<Word> plab_generators(const SubCover& z, int base) {
  const Presentation& p = z.presentation();
  int n = z.vertex_count();
  std::vector<std::optional<Word>> word(n);
  std::vector<char> used(static_cast<size_t>(n) * z.label_count(), 0);
  std::vector<Word> gens;
  std::deque<int> queue{base};
  word[base] = Word{};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int l = 0; l < z.label_count(); ++l) {
      for (int dir = 0; dir < 2; ++dir) {
        int w = dir == 0 ? z.out(l, u) : z.in(l, u);
        if (w < 0) continue;
        int src = dir == 0 ? u : w;
        int dst = dir == 0 ? w : u;
        char& mark = used[static_cast<size_t>(src) * z.label_count() + l];
        if (mark) continue;
        mark = 1;
        Word lw = label_word(z, l);
        if (!word[w]) {
          word[w] = dir == 0 ? multiply(p, *word[u], lw) : multiply(p, *word[u], inverse(p, lw));
          queue.push_back(w);
          continue;
        }
        Word g = multiply(p, multiply(p, *word[src], lw), inverse(p, *word[dst]));
        if (!g.empty() && std::find(gens.begin(), gens.end(), g) == gens.end())
          gens.push_back(std::move(g));
      }
    }
  }
  return gens;
}

std::optional<int> trace_word(const SubCover& z, int start, const Word& w) {
  const Presentation& p = z.presentation();
  int cur = start;
  auto to_o = [&]() -> bool {
    if (z.fiber(cur) == kOFiber) return true;
    int o = z.in(z.e_label(z.fiber(cur)), cur);
    if (o < 0) return false;
    cur = o;
    return true;
  };
  auto to_factor = [&](int i) -> bool {
    if (z.fiber(cur) == i) return true;
    if (!to_o()) return false;
    int v = z.out(z.e_label(i), cur);
    if (v < 0) return false;
    cur = v;
    return true;
  };
  for (const Syllable& s : w.syl) {
    if (!to_factor(s.factor)) return std::nullopt;
    const Factor& f = p.factor(s.factor);
    int g0 = p.first_generator(s.factor);
    if (f.cyclic()) {
      int l = z.gen_label(g0);
      bool forward = 2 * s.exponent <= f.n;
      int steps = forward ? s.exponent : f.n - s.exponent;
      for (int k = 0; k < steps; ++k) {
        cur = forward ? z.out(l, cur) : z.in(l, cur);
        if (cur < 0) return std::nullopt;
      }
    } else {
      for (int letter : s.letters) {
        int l = z.gen_label(g0 + std::abs(letter) - 1);
        cur = letter > 0 ? z.out(l, cur) : z.in(l, cur);
        if (cur < 0) return std::nullopt;
      }
    }
  }
  bool ok = z.fiber(start) == kOFiber ? to_o() : to_factor(z.fiber(start));
  if (!ok) return std::nullopt;
  return cur;
}

SubCover complete_cyclic(const SubCover& z) {
  SubCover out = z;
  const Presentation& p = z.presentation();
  for (int i = 0; i < p.size(); ++i) {
    if (!p.factor(i).cyclic()) continue;
    int q = p.factor(i).n;
    int l = z.gen_label(p.first_generator(i));
    for (const CyclicComponent& c : cyclic_components(z, i)) {
      if (c.closed) continue;
      int prev = c.verts.back();
      for (int k = static_cast<int>(c.verts.size()); k < q; ++k) {
        int v = out.add_vertex(i);
        out.add_edge(l, prev, v);
        prev = v;
      }
      out.add_edge(l, prev, c.verts.front());
    }
  }
  return out;
}

SubCover quotient_of(const SubCover& z, const std::vector<int>& block) {
  int nb = 0;
  for (int b : block) nb = std::max(nb, b + 1);
  std::vector<int> fib(nb, -2);
  for (int v = 0; v < z.vertex_count(); ++v) {
    if (fib[block[v]] == -2)
      fib[block[v]] = z.fiber(v);
    else if (fib[block[v]] != z.fiber(v))
      throw std::logic_error("quotient_of: block mixes fibers");
  }
  SubCover q(z.presentation());
  for (int b = 0; b < nb; ++b) q.add_vertex(fib[b]);
  for (auto [l, s, d] : z.edges()) q.add_edge(l, block[s], block[d]);
  std::vector<int> base;
  for (int b : z.basepoints()) base.push_back(block[b]);
  q.set_basepoints(std::move(base));
  return q;
}

std::string to_json(const SubCover& z) {
  using nlohmann::ordered_json;
  const Presentation& p = z.presentation();
  ordered_json j;
  j["group"] = p.to_string();
  ordered_json verts = ordered_json::array();
  for (int v = 0; v < z.vertex_count(); ++v) {
    ordered_json e;
    e["id"] = v;
    e["fiber"] = z.fiber(v) == kOFiber ? std::string("o") : "v" + std::to_string(z.fiber(v));
    verts.push_back(e);
  }
  j["vertices"] = verts;
  ordered_json edges = ordered_json::array();
  for (auto [l, s, d] : z.edges()) {
    std::string name = z.is_e_label(l) ? "e" + std::to_string(l) : p.name(l - p.size());
    edges.push_back(ordered_json::array({name, s, d}));
  }
  j["edges"] = edges;
  j["basepoints"] = z.basepoints();
  return j.dump();
}

}  // namespace freeprod
