#include "freeprod/resolution.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

namespace freeprod {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("FREEPROD_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return kDefaultBudget;
}

namespace {

// Union-find over the source vertices with rollback. Each root keeps one
// representative neighbour per (label, direction); merging two roots queues
// their neighbours for merging, which is Stallings folding. In Complete mode
// cyclic fibers are also folded by the order of their factor.
class Folder {
 public:
  Folder(const SubCover& s, bool torsion) : s_(s), torsion_(torsion) {
    n_ = s.vertex_count();
    slots_ = 2 * s.label_count();
    parent_.resize(n_);
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(n_, 1);
    minv_.resize(n_);
    std::iota(minv_.begin(), minv_.end(), 0);
    nbr_.assign(static_cast<size_t>(n_) * slots_, -1);
    for (int v = 0; v < n_; ++v)
      for (int l = 0; l < s.label_count(); ++l) {
        nbr_[slot(v, l, 0)] = s.out(l, v);
        nbr_[slot(v, l, 1)] = s.in(l, v);
      }
    const Presentation& p = s.presentation();
    for (int i = 0; i < p.size(); ++i) {
      order_.push_back(p.factor(i).cyclic() ? p.factor(i).n : 0);
      gen_label_.push_back(s.gen_label(p.first_generator(i)));
    }
  }

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  size_t mark() const { return undo_.size(); }

  void rollback(size_t m) {
    while (undo_.size() > m) {
      Undo u = undo_.back();
      undo_.pop_back();
      if (u.kind == 0) {
        parent_[u.a] = u.a;
        size_[u.b] = u.c;
        minv_[u.b] = u.d;
      } else {
        nbr_[static_cast<size_t>(u.a)] = -1;
      }
    }
    queue_.clear();
    touched_.clear();
  }

  // Merges a and b and everything forced by them. Fails if two blocks whose
  // least vertices both precede cursor would be merged.
  bool merge(int a, int b, int cursor) {
    queue_.clear();
    touched_.clear();
    queue_.emplace_back(a, b);
    for (;;) {
      while (!queue_.empty()) {
        auto [x, y] = queue_.back();
        queue_.pop_back();
        if (!unite(x, y, cursor)) return false;
      }
      if (!torsion_ || touched_.empty()) return true;
      std::vector<int> t;
      t.swap(touched_);
      for (int r : t) check_order(find(r));
    }
  }

  std::vector<int> blocks() const {
    std::vector<int> id(n_, -1), out(n_);
    int next = 0;
    for (int v = 0; v < n_; ++v) {
      int r = find(v);
      if (id[r] < 0) id[r] = next++;
      out[v] = id[r];
    }
    return out;
  }

  int least(int v) const { return minv_[find(v)]; }

 private:
  struct Undo {
    int kind, a, b, c, d;
  };

  size_t slot(int v, int l, int dir) const {
    return static_cast<size_t>(v) * slots_ + 2 * l + dir;
  }

  bool unite(int x, int y, int cursor) {
    int ra = find(x), rb = find(y);
    if (ra == rb) return true;
    if (std::max(minv_[ra], minv_[rb]) < cursor) return false;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    undo_.push_back({0, rb, ra, size_[ra], minv_[ra]});
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    minv_[ra] = std::min(minv_[ra], minv_[rb]);
    for (int k = 0; k < slots_; ++k) {
      int nb = nbr_[static_cast<size_t>(rb) * slots_ + k];
      if (nb < 0) continue;
      size_t sa = static_cast<size_t>(ra) * slots_ + k;
      if (nbr_[sa] < 0) {
        nbr_[sa] = nb;
        undo_.push_back({1, static_cast<int>(sa), 0, 0, 0});
      } else {
        queue_.emplace_back(nbr_[sa], nb);
      }
    }
    int f = s_.fiber(ra);
    if (torsion_ && f >= 0 && order_[f] > 0) touched_.push_back(ra);
    return true;
  }

  int step(int r, int l, int dir) const {
    int v = nbr_[slot(r, l, dir)];
    return v < 0 ? -1 : find(v);
  }

  // Over C_q every walk of q generator steps is closed, so a cycle of
  // length d folds onto length gcd(d, q) and an arc of length >= q closes.
  void check_order(int r) {
    int f = s_.fiber(r);
    int q = order_[f], l = gen_label_[f];
    int x = r, back = 0;
    while (back < q) {
      int p = step(x, l, 1);
      if (p < 0) break;
      x = p;
      ++back;
      if (x == r) {
        if (q % back) {
          int g = std::gcd(back, q);
          int y = r;
          for (int k = 0; k < g; ++k) y = step(y, l, 0);
          queue_.emplace_back(r, y);
        }
        return;
      }
    }
    if (back == q) {
      queue_.emplace_back(x, r);
      return;
    }
    int y = r, fwd = 0;
    while (back + fwd < q) {
      int n = step(y, l, 0);
      if (n < 0) break;
      y = n;
      ++fwd;
    }
    if (back + fwd == q) queue_.emplace_back(x, y);
  }

  const SubCover& s_;
  bool torsion_;
  int n_ = 0, slots_ = 0;
  std::vector<int> parent_, size_, minv_, nbr_;
  std::vector<int> order_, gen_label_;
  std::vector<Undo> undo_;
  std::vector<std::pair<int, int>> queue_;
  std::vector<int> touched_;
};

class Search {
 public:
  Search(const SubCover& s, const std::function<void(const std::vector<int>&)>& visit,
         std::uint64_t budget)
      : s_(s), folder_(s, true), visit_(visit), budget_(budget) {
    news_.resize(static_cast<size_t>(s.factor_count()) + 1);
  }

  void run() { descend(0); }

 private:
  void tick() {
    if (++nodes_ > budget_)
      throw BudgetExceeded("quotient search exceeded budget of " + std::to_string(budget_) +
                           " nodes");
  }

  // Vertices are decided in index order: each either opens a new block or
  // joins the block of an earlier block-opening vertex of its fiber. A
  // block opener must stay the least vertex of its block, which makes every
  // partition reachable along exactly one path.
  void descend(int u) {
    tick();
    int n = s_.vertex_count();
    while (u < n && folder_.least(u) < u) ++u;
    if (u == n) {
      visit_(folder_.blocks());
      return;
    }
    auto& opened = news_[static_cast<size_t>(s_.fiber(u) + 1)];
    for (size_t k = 0; k < opened.size(); ++k) {
      tick();
      size_t m = folder_.mark();
      if (folder_.merge(u, opened[k], u)) descend(u + 1);
      folder_.rollback(m);
    }
    opened.push_back(u);
    descend(u + 1);
    opened.pop_back();
  }

  const SubCover& s_;
  Folder folder_;
  const std::function<void(const std::vector<int>&)>& visit_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<int>> news_;
};

}  // namespace

std::optional<std::vector<int>> fold_closure(const SubCover& source,
                                             const std::vector<std::pair<int, int>>& seeds,
                                             Folding mode) {
  Folder f(source, mode == Folding::Complete);
  for (auto [a, b] : seeds) {
    if (source.fiber(a) != source.fiber(b))
      throw std::invalid_argument("fold_closure: seed pair crosses fibers");
    f.merge(a, b, 0);
  }
  std::vector<int> blocks = f.blocks();
  if (mode == Folding::Immersion && !quotient_of(source, blocks).valid()) return std::nullopt;
  return blocks;
}

void for_each_quotient_partition(const SubCover& source,
                                 const std::function<void(const std::vector<int>&)>& visit,
                                 std::uint64_t budget) {
  Search(source, visit, budget).run();
}

std::vector<Quotient> enumerate_quotients(const SubCover& source, std::uint64_t budget) {
  auto src = std::make_shared<const SubCover>(source);
  std::vector<Quotient> out;
  for_each_quotient_partition(
      *src,
      [&](const std::vector<int>& blocks) {
        Quotient q;
        q.source = src;
        q.partition = blocks;
        q.codomain = quotient_of(*src, blocks);
        q.base_images = q.codomain.basepoints();
        q.signature = canonical_form(q.codomain, SignatureMode::Based);
        out.push_back(std::move(q));
      },
      budget);
  std::sort(out.begin(), out.end(),
            [](const Quotient& a, const Quotient& b) { return a.signature < b.signature; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Quotient& a, const Quotient& b) {
                          return a.signature == b.signature;
                        }),
            out.end());
  return out;
}

SubCover disjoint_union(const std::vector<SubCover>& parts) {
  if (parts.empty()) throw std::invalid_argument("disjoint_union: no parts");
  SubCover u(parts[0].presentation());
  std::vector<int> base;
  for (const SubCover& z : parts) {
    if (!(z.presentation() == parts[0].presentation()))
      throw std::invalid_argument("disjoint_union: mixed presentations");
    int off = u.vertex_count();
    for (int v = 0; v < z.vertex_count(); ++v) u.add_vertex(z.fiber(v));
    for (auto [l, s, d] : z.edges()) u.add_edge(l, s + off, d + off);
    for (int b : z.basepoints()) base.push_back(b + off);
  }
  u.set_basepoints(std::move(base));
  return u;
}

}  // namespace freeprod
