// freeprod: fixed points and short cycles of random permutation actions of
// free products.
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "freeprod/bruteforce.hpp"
#include "freeprod/exact.hpp"
#include "freeprod/limits.hpp"
#include "freeprod/montecarlo.hpp"
#include "freeprod/report.hpp"
#include "freeprod/resolution.hpp"

using namespace freeprod;

namespace {

constexpr int kExitBudget = 2;
constexpr int kExitParse = 3;
constexpr int kExitVerify = 4;

struct Config {
  std::string group;
  std::vector<std::string> words;
  long n = 5;
  std::string grid;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  std::string format = "json";
  int threads = 1;
  int max_len = 3;
  int precision = 12;
  bool quick = false;
};

std::vector<long> parse_grid(const std::string& text, long fallback) {
  if (text.empty()) return {fallback};
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
  try {
    if (parts.size() == 1) return {std::stol(parts[0])};
    if (parts.size() != 3) throw ParseError("n-grid must look like a:b:mult");
    long a = std::stol(parts[0]), b = std::stol(parts[1]), mult = std::stol(parts[2]);
    if (a < 1 || mult < 2 || b < a) throw ParseError("n-grid needs 1 <= a <= b and mult >= 2");
    std::vector<long> out;
    for (long n = a; n <= b; n *= mult) out.push_back(n);
    return out;
  } catch (const std::logic_error&) {
    throw ParseError("bad n-grid '" + text + "'");
  }
}

std::vector<Word> words_of(const Presentation& p, const Config& c) {
  if (c.words.empty()) throw ParseError("no word given");
  std::vector<Word> out;
  for (const std::string& w : c.words) out.push_back(parse_word(w, p));
  return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_analyze(const Config& c) {
  Presentation p = Presentation::parse(c.group);
  std::vector<Json> reports;
  for (const Word& w : words_of(p, c)) reports.push_back(analyze_report(p, w, c.budget, c.precision));
  if (c.format == "markdown") {
    std::cout << markdown_table(reports);
  } else if (c.format == "csv") {
    std::cout << "group,word,mean,mixture\n";
    for (const Json& r : reports) {
      std::cout << r["group"].get<std::string>() << ',' << r["word"].get<std::string>() << ',';
      if (r.contains("torsion")) {
        std::cout << r["torsion"]["leading_term"].get<std::string>() << ",\n";
        continue;
      }
      std::cout << r["mean"]["exact"].get<std::string>() << ',';
      bool first = true;
      for (const Json& t : r["mixture"]) {
        if (!first) std::cout << ' ';
        first = false;
        std::cout << t[0].get<long>() << 'x' << t[1].get<long>();
      }
      std::cout << '\n';
    }
  } else {
    emit(reports.size() == 1 ? reports[0] : Json(reports));
  }
  return 0;
}

int cmd_exact(const Config& c) {
  Presentation p = Presentation::parse(c.group);
  std::vector<long> grid = parse_grid(c.grid, c.n);
  Json all = Json::array();
  for (const Word& w : words_of(p, c)) {
    auto rows = exact_table(p, w, grid, c.max_len, c.budget);
    if (c.format == "csv")
      std::cout << csv_exact(p, w, rows, c.precision);
    else
      all.push_back(exact_json(p, w, rows, c.precision));
  }
  if (c.format != "csv") emit(all.size() == 1 ? all[0] : all);
  return 0;
}

int cmd_sample(const Config& c) {
  Presentation p = Presentation::parse(c.group);
  Json all = Json::array();
  for (const Word& w : words_of(p, c)) {
    Estimate e = estimate(p, w, static_cast<int>(c.n), c.trials, c.seed, c.max_len, c.threads);
    all.push_back(empirical_json(p, w, static_cast<int>(c.n), e));
  }
  emit(all.size() == 1 ? all[0] : all);
  return 0;
}

int cmd_brute(const Config& c) {
  Presentation p = Presentation::parse(c.group);
  std::vector<Word> ws = words_of(p, c);
  if (ws.size() > 2) throw ParseError("brute takes one or two words");
  int n = static_cast<int>(c.n);
  ExhaustiveStats s = ws.size() == 2 ? exact_stats(p, ws[0], ws[1], n, c.max_len)
                                     : exact_stats(p, ws[0], n, c.max_len);
  emit(exhaustive_json(p, ws, s, c.precision));
  return 0;
}

// Quotients of the lift of one word, with chi and codomain.
int cmd_resolve(const Config& c) {
  Presentation p = Presentation::parse(c.group);
  std::vector<Word> ws = words_of(p, c);
  Json out;
  out["group"] = p.to_string();
  Json names = Json::array();
  std::vector<SubCover> parts;
  for (const Word& w : ws) {
    names.push_back(to_string(p, w));
    parts.push_back(lift_source(p, w));
  }
  out["words"] = names;
  SubCover source = disjoint_union(parts);
  std::vector<Quotient> qs = enumerate_quotients(source, c.budget);
  Json list = Json::array();
  long zero = 0;
  for (const Quotient& q : qs) {
    Json e;
    Rational chi = chi_grp(q.codomain).total;
    zero += chi == 0;
    e["chi"] = to_string(chi);
    e["vertices"] = q.codomain.vertex_count();
    e["codomain"] = Json::parse(to_json(q.codomain));
    list.push_back(e);
  }
  out["size"] = qs.size();
  out["chi_zero"] = zero;
  out["quotients"] = list;
  emit(out);
  return 0;
}

struct Case {
  const char* group;
  const char* word;
};

const std::vector<Case>& verify_corpus() {
  static const std::vector<Case> corpus = {
      {"C2*C2", "a*b"},         {"C2*C2", "a*b*a*b"},     {"C2*C2", "[a,b]"},
      {"C2*C3", "a*b"},         {"C2*C3", "a*b*a*b^-1"},  {"C2*C3", "a*b^-1*a*b"},
      {"C2*C4", "a*b*a*b^-1"},  {"C2*C4", "a*b^2"},       {"C3*C3", "a*b"},
      {"C3*C3", "a*b^-1"},      {"F2", "x*y*x^-1*y^-1"},  {"F2", "x^2"},
      {"F2", "x*y"},            {"C2*F1", "a*b"},         {"C2*F1", "a*b*a*b^-1"},
      {"C2*C3", "b"},           {"C2*C4", "b^2"},         {"F2", "x*y^-1"},
      {"C2*C2", "a*b*a"},       {"C3*C3", "a*b*a^-1*b^-1"},
  };
  return corpus;
}

int cmd_verify(const Config& c) {
  int max_n = c.quick ? 5 : 6;
  std::uint64_t cap = c.quick ? 2'000'000 : 20'000'000;
  Json failures = Json::array();
  long checks = 0;
  auto check = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  };
  const auto& corpus = verify_corpus();
  for (size_t k = 0; k < corpus.size(); ++k) {
    if (c.quick && k % 2) continue;
    Presentation p = Presentation::parse(corpus[k].group);
    Word w = parse_word(corpus[k].word, p);
    std::string tag = std::string(corpus[k].group) + " " + corpus[k].word;
    // Partner word for the joint check: the next corpus entry over the same group.
    std::optional<Word> partner;
    if (k + 1 < corpus.size() && std::string(corpus[k + 1].group) == corpus[k].group)
      partner = parse_word(corpus[k + 1].word, p);
    for (int n = 1; n <= max_n; ++n) {
      if (hom_total(p, n) > BigInt(std::to_string(cap))) break;
      ExhaustiveStats s = partner ? exact_stats(p, w, *partner, n, 3, cap)
                                  : exact_stats(p, w, n, 3, cap);
      std::string at = tag + " N=" + std::to_string(n);
      check(fix_expectation(p, w, n, c.budget) == s.moments.at(1), at + " fix");
      for (int r = 2; r <= 3; ++r)
        check(fix_moment(p, w, r, n, c.budget) == s.moments.at(r), at + " moment " + std::to_string(r));
      for (int L = 1; L <= 3; ++L)
        check(cyc_expectation(p, w, L, n, c.budget) == s.cyc_means[static_cast<size_t>(L - 1)],
              at + " cyc " + std::to_string(L));
      if (partner)
        check(joint_fix_expectation(p, w, *partner, n, c.budget) == *s.joint_mean, at + " joint");
    }
    if (classify(p, w).kind == ElementClass::Kind::Infinite) {
      PoissonMixture mix = limit_distribution(p, w, c.budget);
      for (int r = 1; r <= (c.quick ? 2 : 3); ++r)
        check(Rational(limit_moment_via_resolution(p, w, r, c.budget)) == mixture_moment(mix, r),
              tag + " limit moment " + std::to_string(r));
    }
  }
  Json out;
  out["checks"] = checks;
  out["failures"] = failures;
  out["ok"] = failures.empty();
  emit(out);
  return failures.empty() ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed points and short cycles of random permutation actions of free products"};
  app.require_subcommand(1);
  Config c;
  c.budget = default_budget();

  auto common = [&](CLI::App* sub) {
    sub->add_option("-g,--group", c.group, "group, e.g. C2*C3 or F2")->required();
    sub->add_option("-w,--word", c.words, "word; repeatable")->required()->allow_extra_args(false);
    sub->add_option("--budget", c.budget, "quotient search budget (nodes)");
    sub->add_option("--precision", c.precision, "significant digits of decimals");
    sub->add_option("-L,--max-cycle-len", c.max_len, "largest cycle length reported");
  };
  auto* analyze = app.add_subcommand("analyze", "limit distribution of fix");
  common(analyze);
  analyze->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv", "markdown"}));

  auto* exact = app.add_subcommand("exact", "exact expectations over an N grid");
  common(exact);
  exact->add_option("-N", c.n, "single N");
  exact->add_option("--n-grid", c.grid, "a:b:mult");
  exact->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));

  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate");
  common(sample);
  sample->add_option("-N", c.n)->check(CLI::PositiveNumber);
  sample->add_option("--trials", c.trials);
  sample->add_option("--seed", c.seed);
  sample->add_option("--threads", c.threads)->check(CLI::PositiveNumber);

  auto* brute = app.add_subcommand("brute", "exhaustive statistics over Hom(G, Sym(N))");
  common(brute);
  brute->add_option("-N", c.n)->check(CLI::NonNegativeNumber);

  auto* resolve = app.add_subcommand("resolve", "list the quotients of the lifted circles");
  common(resolve);

  auto* verify = app.add_subcommand("verify", "cross-check exact formulas against brute force");
  verify->add_flag("--quick", c.quick, "N <= 5 on half the corpus");
  verify->add_option("--budget", c.budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze) return cmd_analyze(c);
    if (*exact) return cmd_exact(c);
    if (*sample) return cmd_sample(c);
    if (*brute) return cmd_brute(c);
    if (*resolve) return cmd_resolve(c);
    if (*verify) return cmd_verify(c);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const HomCapExceeded& e) {
    std::cerr << "hom cap exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
