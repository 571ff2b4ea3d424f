#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "freeprod/arith.hpp"
#include "freeprod/group.hpp"
#include "freeprod/montecarlo.hpp"

namespace freeprod {

inline constexpr std::uint64_t kDefaultHomCap = 100'000'000;

class HomCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All sigma in Sym(n) with sigma^q = id, generated by cycle type.
std::vector<Perm> order_dividing_perms(int q, int n);
std::vector<Perm> all_perms(int n);

// |Hom(Gamma, Sym(n))| without enumerating.
BigInt hom_total(const Presentation& p, int n);

// Calls visit once per homomorphism.
void enumerate_homs(const Presentation& p, int n, const std::function<void(const Hom&)>& visit,
                    std::uint64_t cap = kDefaultHomCap);

struct ExhaustiveStats {
  int n = 0;
  std::uint64_t total_homs = 0;
  std::map<long, std::uint64_t> fix_distribution;
  std::map<int, Rational> moments;  // r = 1..3
  std::uint64_t identity_count = 0; // homs sending the word to id
  std::vector<std::map<long, std::uint64_t>> cyc_distributions;  // [L-1]
  std::vector<Rational> cyc_means;                               // [L-1]
  // Second word, if any.
  std::optional<std::map<std::pair<long, long>, std::uint64_t>> joint_distribution;
  std::optional<Rational> joint_mean;  // E[fix_1 fix_2]
  std::optional<Rational> second_mean;
};

ExhaustiveStats exact_stats(const Presentation& p, const Word& w, int n, int max_len = 3,
                            std::uint64_t cap = kDefaultHomCap);
ExhaustiveStats exact_stats(const Presentation& p, const Word& w1, const Word& w2, int n,
                            int max_len = 3, std::uint64_t cap = kDefaultHomCap);

}  // namespace freeprod
