#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "freeprod/arith.hpp"
#include "freeprod/group.hpp"

namespace freeprod {

inline constexpr int kOFiber = -1;

// Finite piece of a cover of the graph of spaces: o-vertices, one vertex
// fiber per factor, e-edges joining o-vertices to factor fibers, and
// generator edges inside each factor fiber. Labels 0..k-1 are the e-edges
// of the k factors, labels k.. are the generators in presentation order.
class SubCover {
 public:
  SubCover() = default;
  explicit SubCover(Presentation p);

  const Presentation& presentation() const { return p_; }

  int add_vertex(int fiber);
  // Adds a directed edge; adding an existing edge again is a no-op.
  // Throws std::logic_error on a fiber mismatch or immersion violation.
  void add_edge(int label, int src, int dst);
  void add_basepoint(int v) { basepoints_.push_back(v); }

  int vertex_count() const { return static_cast<int>(fiber_.size()); }
  int fiber(int v) const { return fiber_[v]; }
  int label_count() const { return labels_; }
  int factor_count() const { return p_.size(); }
  bool is_e_label(int l) const { return l < p_.size(); }
  int e_label(int factor) const { return factor; }
  int gen_label(int g) const { return p_.size() + g; }
  // Factor whose fiber the label's target lies in.
  int label_factor(int l) const {
    return is_e_label(l) ? l : p_.gen_factor(l - p_.size());
  }
  int out(int l, int v) const { return adj_[static_cast<size_t>(v) * 2 * labels_ + 2 * l]; }
  int in(int l, int v) const { return adj_[static_cast<size_t>(v) * 2 * labels_ + 2 * l + 1]; }

  const std::vector<int>& basepoints() const { return basepoints_; }
  void set_basepoints(std::vector<int> b) { basepoints_ = std::move(b); }

  int count_in_fiber(int fiber) const;
  int edge_count(int l) const;
  // (label, src, dst) sorted.
  std::vector<std::tuple<int, int, int>> edges() const;

  // Closed cycles divide the order and arcs are shorter than the order.
  bool valid(std::string* why = nullptr) const;

 private:
  Presentation p_;
  int labels_ = 0;
  std::vector<int> fiber_;
  std::vector<int> adj_;
  std::vector<int> basepoints_;
};

// A maximal chain of generator edges over a cyclic factor.
struct CyclicComponent {
  std::vector<int> verts;  // in edge order
  bool closed = false;
  int edges() const { return closed ? static_cast<int>(verts.size()) : static_cast<int>(verts.size()) - 1; }
};
std::vector<CyclicComponent> cyclic_components(const SubCover& z, int factor);

struct ChiReport {
  Rational total;
  std::vector<std::pair<int, Rational>> per_component;
};

// Component id per vertex (ids in order of smallest vertex).
std::vector<int> connected_components(const SubCover& z, int* count = nullptr);

SubCover build_Y(const Presentation& p, const Word& gamma);
ChiReport chi_grp(const SubCover& z);

enum class SignatureMode { Based, Unbased };
std::string canonical_form(const SubCover& z, SignatureMode mode);
BigInt automorphism_count(const SubCover& z);

// Generators of the labeled fundamental group at base, one per edge outside
// a breadth-first spanning tree; trivial elements are dropped.
std::vector<Word> plab_generators(const SubCover& z, int base);

// Endpoint of the path reading w from start, if the path exists.
std::optional<int> trace_word(const SubCover& z, int start, const Word& w);

// Replaces every arc over a cyclic factor by a full cycle of length q, which
// is the universal lift of that vertex space piece. Basepoints are kept.
SubCover complete_cyclic(const SubCover& z);

// Codomain of the quotient by a partition (block ids 0..B-1).
SubCover quotient_of(const SubCover& z, const std::vector<int>& block);

std::string to_json(const SubCover& z);

}  // namespace freeprod
