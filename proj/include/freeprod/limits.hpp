#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "freeprod/arith.hpp"
#include "freeprod/group.hpp"
#include "freeprod/resolution.hpp"
#include "freeprod/subcover.hpp"

namespace freeprod {

struct ZeroSubgroup {
  enum class Kind { InfiniteCyclic, InfiniteDihedral };
  Kind kind = Kind::InfiniteCyclic;
  std::vector<Word> generators;  // one generator, or the two involutions
  SubCover codomain;             // image of the circle
  SubCover core;                 // codomain with cyclic arcs completed
  int basepoint = 0;
  Word conjugator;               // subgroup = conjugator * plab(core) * conjugator^-1
};

struct PoissonTerm {
  long alpha = 1;
  long beta = 1;
  bool operator==(const PoissonTerm&) const = default;
};

// Sum over terms of alpha*beta*Poi(1/beta), optionally scaled by 1/scale.
struct PoissonMixture {
  std::vector<PoissonTerm> terms;
  long scale = 1;

  Rational mean() const;
};

struct ConjugacyClass {
  ZeroSubgroup representative;
  long alpha = 0;
  long beta = 0;
};

// Built directly from root rotations and inverting involutions; budget caps fold work.
std::vector<ZeroSubgroup> h_gamma(const Presentation& p, const Word& gamma,
                                  std::uint64_t budget = default_budget());
// Reference: every quotient of Y filtered by chi = 0. Exponential in |gamma|.
std::vector<ZeroSubgroup> h_gamma_by_resolution(const Presentation& p, const Word& gamma,
                                                std::uint64_t budget = default_budget());
std::vector<ConjugacyClass> conjugacy_classes(const std::vector<ZeroSubgroup>& subs);
PoissonMixture mixture_of(const std::vector<ConjugacyClass>& classes, long scale = 1);
PoissonMixture limit_distribution(const Presentation& p, const Word& gamma,
                                  std::uint64_t budget = default_budget());

// E[X^r] for the mixture, exactly.
Rational mixture_moment(const PoissonMixture& mix, int r);
// P[X = k] for k = 0..kmax (the scale is ignored: X takes integer values
// before scaling).
std::vector<double> mixture_pmf(const PoissonMixture& mix, int kmax);

std::uint64_t limit_moment_via_resolution(const Presentation& p, const Word& gamma, int r,
                                          std::uint64_t budget = default_budget());

// Least L >= 1 with gamma^L in H, or nullopt if no power lies in H.
std::optional<long> minimal_power_in(const Presentation& p, const Word& gamma,
                                     const ZeroSubgroup& h);
std::vector<ZeroSubgroup> h_gamma_L(const Presentation& p, const Word& gamma, long len,
                                    std::uint64_t budget = default_budget());

struct CycLimit {
  Rational mean;
  PoissonMixture mixture;
};
CycLimit cyc_limit(const Presentation& p, const Word& gamma, long len,
                   std::uint64_t budget = default_budget());

struct IndependenceResult {
  bool independent = true;
  std::optional<SubCover> witness;
};
IndependenceResult asymptotically_independent(const Presentation& p, const Word& g1,
                                              const Word& g2,
                                              std::uint64_t budget = default_budget());

Rational rf_bound(const Presentation& p, const Word& gamma, int r, long n,
                  std::uint64_t budget = default_budget());

}  // namespace freeprod
