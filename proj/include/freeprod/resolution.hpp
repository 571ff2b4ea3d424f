#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "freeprod/subcover.hpp"

namespace freeprod {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Search budget exhausted. The CLI maps this to exit code 2.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Budget from FREEPROD_BUDGET if set, otherwise the default.
std::uint64_t default_budget();

struct Quotient {
  std::shared_ptr<const SubCover> source;
  std::vector<int> partition;  // vertex -> block id
  SubCover codomain;
  std::vector<int> base_images;
  std::string signature;  // based signature of the codomain
};

enum class Folding {
  Immersion,  // identify heads and tails of equally labeled edges only
  Complete,   // also identify vertices forced together by the order of each cyclic factor
};

// Smallest partition containing the seeds whose quotient is an immersion.
// With Folding::Immersion, an invalid quotient yields nullopt (a conflict).
// With Folding::Complete the result is the smallest valid quotient and
// never conflicts.
std::optional<std::vector<int>> fold_closure(const SubCover& source,
                                             const std::vector<std::pair<int, int>>& seeds,
                                             Folding mode = Folding::Immersion);

// Calls visit once for every partition of the source vertices whose
// quotient is a valid sub-cover. Block ids follow the order of the least
// vertex of each block.
void for_each_quotient_partition(const SubCover& source,
                                 const std::function<void(const std::vector<int>&)>& visit,
                                 std::uint64_t budget = default_budget());

std::vector<Quotient> enumerate_quotients(const SubCover& source,
                                          std::uint64_t budget = default_budget());

SubCover disjoint_union(const std::vector<SubCover>& parts);

}  // namespace freeprod
