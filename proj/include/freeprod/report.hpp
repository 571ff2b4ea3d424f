#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "freeprod/bruteforce.hpp"
#include "freeprod/group.hpp"
#include "freeprod/limits.hpp"
#include "freeprod/montecarlo.hpp"

namespace freeprod {

using Json = nlohmann::ordered_json;

// {"exact": "p/q", "decimal": "..."}
Json rational_json(const Rational& r, int digits = 12);

// Limit report for one word: H_gamma with classes, mixture, mean, moments.
// Torsion words get the leading growth term instead.
Json analyze_report(const Presentation& p, const Word& w, std::uint64_t budget, int digits = 12);

struct ExactRow {
  long n = 0;
  Rational fix, fix2;
  std::vector<Rational> cyc;  // L = 1..max_len
  std::optional<double> decay;  // (E - |H|) * N^(1/m)
};
std::vector<ExactRow> exact_table(const Presentation& p, const Word& w,
                                  const std::vector<long>& grid, int max_len,
                                  std::uint64_t budget);
Json exact_json(const Presentation& p, const Word& w, const std::vector<ExactRow>& rows,
                int digits = 12);

Json exhaustive_json(const Presentation& p, const std::vector<Word>& words,
                     const ExhaustiveStats& s, int digits = 12);
Json empirical_json(const Presentation& p, const Word& w, int n, const Estimate& e);

// Markdown rows: group, word, limit, generators.
std::string markdown_table(const std::vector<Json>& analyze_reports);
std::string csv_exact(const Presentation& p, const Word& w, const std::vector<ExactRow>& rows,
                      int digits = 12);

}  // namespace freeprod
