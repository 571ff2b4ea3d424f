#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "freeprod/arith.hpp"
#include "freeprod/group.hpp"
#include "freeprod/resolution.hpp"
#include "freeprod/subcover.hpp"

namespace freeprod {

// h_q(N): permutations of N points whose order divides q.
class HomCountTable {
 public:
  explicit HomCountTable(int q);
  int q() const { return q_; }
  BigInt at(long n);

 private:
  int q_;
  std::vector<int> divisors_;
  std::deque<BigInt> values_;
  std::mutex mu_;
};

HomCountTable& hom_table(int q);
BigInt hom_count(int q, long n);

struct CyclicProfile {
  std::vector<int> arcs;    // edge counts s >= 0
  std::vector<int> cycles;  // lengths d
  auto operator<=>(const CyclicProfile&) const = default;
};

// Number of sigma in Sym(N) with sigma^q = id that extend a fixed
// placement of the arcs (s edges on s+1 points) and cycles.
BigInt count_extensions(int q, long n, const CyclicProfile& profile);

// Everything the embedding expectation depends on.
struct EmbProfile {
  struct FactorPart {
    int vertices = 0;
    int e_edges = 0;
    CyclicProfile cyclic;        // cyclic factors
    std::vector<int> gen_edges;  // free factors
    auto operator<=>(const FactorPart&) const = default;
  };
  int o = 0;
  std::vector<FactorPart> factors;
  auto operator<=>(const EmbProfile&) const = default;
};

EmbProfile profile_of(const SubCover& z);
Rational chi_of(const Presentation& p, const EmbProfile& e);
Rational emb_expectation(const Presentation& p, const EmbProfile& e, long n);
Rational emb_expectation(const SubCover& z, long n);

// Multiset of codomain profiles over all quotients of a source.
struct ResolutionSummary {
  Presentation presentation;
  std::map<EmbProfile, std::uint64_t> profiles;
  std::uint64_t classes = 0;
  std::uint64_t zero_classes = 0;  // quotients with chi = 0

  Rational expectation(long n) const;
};

ResolutionSummary summarize(const SubCover& source, std::uint64_t budget = default_budget());

// The complex whose lifts at a point are the points fixed by w: a single
// o-vertex for the trivial word, the full cycle of <x^j> for torsion, and
// the circle of the cyclic reduction otherwise.
SubCover lift_source(const Presentation& p, const Word& w);

// Cached summary of the quotients of lift_source(w_1) + ... + lift_source(w_k).
std::shared_ptr<const ResolutionSummary> resolution_of(const Presentation& p,
                                                        const std::vector<Word>& words,
                                                        std::uint64_t budget = default_budget());

Rational torsion_fix_expectation(int q, long j, long n);
Rational fix_expectation(const Presentation& p, const Word& w, long n,
                         std::uint64_t budget = default_budget());
Rational fix_moment(const Presentation& p, const Word& w, int r, long n,
                    std::uint64_t budget = default_budget());
Rational joint_fix_expectation(const Presentation& p, const Word& w1, const Word& w2, long n,
                               std::uint64_t budget = default_budget());
Rational cyc_expectation(const Presentation& p, const Word& w, long len, long n,
                         std::uint64_t budget = default_budget());

}  // namespace freeprod
