#include <gtest/gtest.h>

#include "freeprod/report.hpp"

using namespace freeprod;

TEST(Report, AnalyzeRoundTrip) {
  Presentation p = Presentation::parse("C2*C2");
  Json j = analyze_report(p, parse_word("(a*b)^3", p), kDefaultBudget);
  Json back = Json::parse(j.dump());
  EXPECT_EQ(back, j);
  EXPECT_EQ(back["mean"]["exact"], "6");
  EXPECT_EQ(back["H_gamma"].size(), 6u);
  EXPECT_EQ(back["mixture"].size(), 4u);
  for (const char* key : {"word", "group", "H_gamma", "mixture", "mean", "moments"})
    EXPECT_TRUE(back.contains(key)) << key;
  for (const Json& h : back["H_gamma"])
    for (const char* key : {"kind", "generators", "alpha_class", "beta"}) EXPECT_TRUE(h.contains(key));
}

TEST(Report, TorsionLeadingTerm) {
  Presentation p = Presentation::parse("C2*C3");
  Json j = analyze_report(p, parse_word("b*a*b^-1", p), kDefaultBudget);
  EXPECT_EQ(j["torsion"]["order"], 2);
  EXPECT_EQ(j["torsion"]["leading_term"], "N^(1/2)");
  EXPECT_FALSE(j.contains("mean"));
}

TEST(Report, ExactTable) {
  Presentation f = Presentation::parse("F2");
  Word c = parse_word("[x,y]", f);
  auto rows = exact_table(f, c, {2, 4, 8}, 2, kDefaultBudget);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].fix, Rational(4, 3));
  ASSERT_TRUE(rows[2].decay.has_value());
  EXPECT_NEAR(*rows[2].decay, (8.0 / 7.0 - 1.0) * 8.0, 1e-12);  // m = 1
  Json j = Json::parse(exact_json(f, c, rows).dump());
  EXPECT_EQ(j["rows"][0]["fix"]["exact"], "2");
  EXPECT_EQ(j["rows"][2]["cyc"].size(), 2u);
  std::string csv = csv_exact(f, c, rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(Report, MarkdownTable) {
  Presentation p = Presentation::parse("C2*C4");
  std::vector<Json> reps = {analyze_report(p, parse_word("a*b*a*b^-1", p), kDefaultBudget),
                            analyze_report(p, parse_word("b^2", p), kDefaultBudget)};
  std::string md = markdown_table(reps);
  EXPECT_NE(md.find("| C2*C4 | a*b*a*b^-1 | 2 |"), std::string::npos);
  EXPECT_NE(md.find("N^(1/2)"), std::string::npos);
}

TEST(Report, ExhaustiveAndEmpirical) {
  Presentation p = Presentation::parse("C2*C3");
  Word a = parse_word("a*b", p), b = parse_word("b", p);
  Json j = exhaustive_json(p, {a, b}, exact_stats(p, a, b, 3));
  EXPECT_EQ(Json::parse(j.dump()), j);
  EXPECT_EQ(j["total_homs"], 12);
  EXPECT_TRUE(j.contains("joint"));
  Json e = empirical_json(p, a, 10, estimate(p, a, 10, 100, 1));
  EXPECT_EQ(e["trials"], 100);
  EXPECT_EQ(Json::parse(e.dump()), e);
}

TEST(Report, RationalFormatting) {
  Json j = rational_json(Rational(1, 3), 5);
  EXPECT_EQ(j["exact"], "1/3");
  EXPECT_EQ(j["decimal"], "0.33333");
}
