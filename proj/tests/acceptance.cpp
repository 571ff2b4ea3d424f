// Acceptance checks: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "freeprod/bruteforce.hpp"
#include "freeprod/exact.hpp"
#include "freeprod/limits.hpp"
#include "freeprod/montecarlo.hpp"

using namespace freeprod;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int k, bool ok, const std::string& detail, bool blocking = true) {
  const char* tag = ok ? "PASS" : (blocking ? "FAIL" : "WARN");
  std::printf("%s criterion %d: %s\n", tag, k, detail.c_str());
  std::fflush(stdout);
  if (!ok && blocking) ++failures;
}

// Runs a criterion body; exceptions count as failures.
void run(int k, bool blocking, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    report(k, ok, detail, blocking);
  } catch (const std::exception& e) {
    report(k, false, std::string("exception: ") + e.what(), blocking);
  }
}

Word w(const Presentation& p, const char* s) { return parse_word(s, p); }

bool infinite(const Presentation& p, const Word& x) {
  return classify(p, x).kind == ElementClass::Kind::Infinite;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

int main() {
  run(1, true, [] {
    struct Row {
      const char* g;
      const char* w;
      long want;
    };
    std::vector<Row> rows = {
        {"C2*C2", "[x,y]", 5}, {"C2*C3", "[x,y]", 2}, {"C2*C4", "[x,y]", 2},
        {"C2*C5", "[x,y]", 2}, {"C3*C4", "[x,y]", 1}, {"F2", "[x,y]", 1},
        {"C2*C2", "(x*y)^3", 6}, {"C3*C4", "[x,y^2]", 2},
    };
    Timer t;
    bool ok = true;
    std::ostringstream got;
    for (const Row& r : rows) {
      Presentation p = Presentation::parse(r.g);
      Rational mean = limit_distribution(p, w(p, r.w)).mean();
      ok &= mean == r.want;
      got << to_string(mean) << ' ';
    }
    ok &= t.seconds() < 10;
    return std::pair{ok, "reference limits " + got.str() + "in " + fmt(t.seconds()) + " s"};
  });

  run(2, true, [] {
    Presentation p = Presentation::parse("C2*C2");
    PoissonMixture m = limit_distribution(p, w(p, "(a*b)^3"));
    std::vector<long> alpha, beta;
    for (const PoissonTerm& term : m.terms) {
      alpha.push_back(term.alpha);
      beta.push_back(term.beta);
    }
    bool ok = alpha == std::vector<long>{1, 1, 1, 3} && beta == std::vector<long>{6, 2, 1, 1};
    std::ostringstream s;
    s << "(ab)^3 mixture t=" << m.terms.size() << " alpha=";
    for (long a : alpha) s << a << ',';
    s << " beta=";
    for (long b : beta) s << b << ',';
    return std::pair{ok, s.str()};
  });

  run(3, true, [] {
    Presentation p = Presentation::parse("C2*C4");
    auto qs = enumerate_quotients(build_Y(p, w(p, "a*b*a*b^-1")));
    long zero = 0;
    for (const Quotient& q : qs) zero += chi_grp(q.codomain).total == 0;
    return std::pair{qs.size() == 5 && zero == 2,
                     "|R| = " + std::to_string(qs.size()) + ", |R0| = " + std::to_string(zero)};
  });

  run(4, true, [] {
    Timer t;
    const BigInt six_cap = 2'000'000;
    long checks = 0, bad = 0;
    std::string first_bad;
    for (const CorpusEntry& c : corpus()) {
      Presentation p = Presentation::parse(c.group);
      Word x = w(p, c.word), y = w(p, c.partner);
      for (int n = 1; n <= 6; ++n) {
        if (n == 6 && hom_total(p, n) > six_cap) break;
        ExhaustiveStats s = exact_stats(p, x, y, n, 3);
        auto check = [&](bool ok, const char* what) {
          ++checks;
          if (!ok && bad++ == 0)
            first_bad = std::string(c.group) + " " + c.word + " N=" + std::to_string(n) + " " + what;
        };
        check(fix_expectation(p, x, n) == s.moments.at(1), "fix");
        check(fix_moment(p, x, 2, n) == s.moments.at(2), "moment 2");
        check(fix_moment(p, x, 3, n) == s.moments.at(3), "moment 3");
        check(joint_fix_expectation(p, x, y, n) == *s.joint_mean, "joint");
        for (int L = 1; L <= 3; ++L)
          check(cyc_expectation(p, x, L, n) == s.cyc_means[static_cast<size_t>(L - 1)], "cyc");
      }
    }
    bool ok = bad == 0 && corpus().size() >= 20 && t.seconds() < 300;
    std::string detail = std::to_string(corpus().size()) + " words, " + std::to_string(checks) +
                         " exact comparisons, " + std::to_string(bad) + " mismatches in " +
                         fmt(t.seconds()) + " s";
    if (bad) detail += "; first: " + first_bad;
    return std::pair{ok, detail};
  });

  run(5, true, [] {
    Presentation f = Presentation::parse("F2");
    Word c = w(f, "[x,y]");
    long bad = 0;
    for (long n = 2; n <= 50; ++n) {
      Rational want(n, n - 1);
      want.canonicalize();
      bad += fix_expectation(f, c, n) != want;
    }
    return std::pair{bad == 0, "E[fix] = N/(N-1) for N = 2..50, " + std::to_string(bad) + " mismatches"};
  });

  run(6, true, [] {
    double c = 0;
    for (long n : {16L, 64L, 256L, 1024L, 4096L}) {
      double x = static_cast<double>(n);
      double approx = std::sqrt(x) + std::pow(x, 0.25) - 0.5 - 0.75 * std::pow(x, -0.25);
      double diff = std::abs(torsion_fix_expectation(4, 2, n).get_d() - approx);
      c = std::max(c, diff * std::sqrt(x));
    }
    Presentation c4 = Presentation::parse("C4");
    Rational brute = exact_stats(c4, w(c4, "a^2"), 4).moments.at(1);
    Rational exact = torsion_fix_expectation(4, 2, 4);
    bool ok = c < 10 && exact == Rational(5, 2) && brute == exact;
    return std::pair{ok, "fitted C = " + fmt(c) + ", N=4 value " + to_string(exact) +
                             " (brute force " + to_string(brute) + ")"};
  });

  run(7, true, [] {
    Presentation p = Presentation::parse("C2*C3");
    Word g = w(p, "a*b*a*b^-1");
    std::vector<double> seq;
    for (long n : {20L, 40L, 80L, 160L, 320L})
      seq.push_back((fix_expectation(p, g, n).get_d() - 2.0) * std::pow(static_cast<double>(n), 1.0 / 6));
    bool finite = std::all_of(seq.begin(), seq.end(), [](double v) { return std::isfinite(v); });
    double med = median(seq);
    bool ok = finite && std::abs(seq.back()) < 2 * std::abs(med);
    std::string s = "(E-2)N^(1/6) =";
    for (double v : seq) s += " " + fmt(v);
    return std::pair{ok, s + ", median " + fmt(med)};
  });

  run(8, true, [] {
    long checks = 0, bad = 0;
    for (const CorpusEntry& c : corpus()) {
      Presentation p = Presentation::parse(c.group);
      Word x = w(p, c.word);
      if (!infinite(p, x)) continue;
      PoissonMixture m = limit_distribution(p, x);
      for (int r = 1; r <= 3; ++r) {
        ++checks;
        bad += Rational(limit_moment_via_resolution(p, x, r)) != mixture_moment(m, r);
      }
    }
    return std::pair{bad == 0, std::to_string(checks) + " moment identities, " +
                                   std::to_string(bad) + " mismatches"};
  });

  run(9, true, [] {
    Timer t;
    Presentation p = Presentation::parse("C2*C3");
    Word g = w(p, "a*b*a*b^-1");
    const int n = 500;
    Estimate e = estimate(p, g, n, 100000, 20240601, 1, 1);
    double exact = fix_expectation(p, g, n).get_d();
    double z = std::abs(e.fix.mean - exact) / e.fix.stderr_mean;
    double tv = total_variation(e.fix, mixture_pmf(limit_distribution(p, g), 200));
    bool ok = z <= 4 && tv <= 0.05 && t.seconds() < 120;
    return std::pair{ok, "mean " + fmt(e.fix.mean) + " vs exact " + fmt(exact) + " (" + fmt(z) +
                             " stderr), TV to limit " + fmt(tv) + ", " + fmt(t.seconds()) + " s"};
  });

  run(10, false, [] {
    Presentation p = Presentation::parse("C3*C3*C3");
    Word g = w(p, "a*b*c");
    std::vector<double> seq;
    for (long n : {30L, 60L, 120L, 240L}) {
      Rational d = fix_expectation(p, g, n) - 1 - Rational(1, n);
      seq.push_back(d.get_d() * std::pow(static_cast<double>(n), 4.0 / 3));
    }
    std::vector<double> mags;
    for (double v : seq) mags.push_back(std::abs(v));
    bool ok = std::abs(seq.back()) < 2 * median(mags);
    std::string s = "(E-1-1/N)N^(4/3) =";
    for (double v : seq) s += " " + fmt(v);
    return std::pair{ok, s};
  });

  run(11, true, [] {
    Presentation f = Presentation::parse("F2");
    bool free_ind = asymptotically_independent(f, w(f, "x"), w(f, "y")).independent;
    bool product = true;
    for (long n = 2; n <= 8; ++n)
      product &= joint_fix_expectation(f, w(f, "x"), w(f, "y"), n) ==
                 fix_expectation(f, w(f, "x"), n) * fix_expectation(f, w(f, "y"), n);
    Presentation p = Presentation::parse("C2*C2");
    Word ab = w(p, "a*b"), cube = w(p, "(a*b)^3");
    bool dep = !asymptotically_independent(p, ab, cube).independent;
    ExhaustiveStats s = exact_stats(p, ab, cube, 5);
    Rational cov = *s.joint_mean - s.moments.at(1) * *s.second_mean;
    bool ok = free_ind && product && dep && cov != 0;
    return std::pair{ok, std::string("x,y independent: ") + (free_ind ? "yes" : "no") +
                             ", joint = product: " + (product ? "yes" : "no") +
                             ", ab,(ab)^3 dependent: " + (dep ? "yes" : "no") +
                             ", covariance at N=5: " + to_string(cov)};
  });

  run(12, true, [] {
    long checks = 0, bad = 0;
    std::string first_bad;
    for (const CorpusEntry& c : corpus()) {
      Presentation p = Presentation::parse(c.group);
      Word x = w(p, c.word);
      if (!infinite(p, x)) continue;
      for (long L : {2L, 3L, 6L}) {
        size_t whole = h_gamma(p, power(p, x, L)).size();
        size_t parts = 0;
        Rational weighted = 0;
        for (long d = 1; d <= L; ++d) {
          if (L % d) continue;
          parts += h_gamma_L(p, x, d).size();
          weighted += d * cyc_limit(p, x, d).mean;
        }
        ++checks;
        if (parts != whole || weighted != static_cast<long>(whole)) {
          if (bad++ == 0) first_bad = std::string(c.group) + " " + c.word + " L=" + std::to_string(L);
        }
      }
    }
    Presentation p = Presentation::parse("C2*C2");
    Word ab = w(p, "a*b");
    size_t total = h_gamma_L(p, ab, 1).size() + h_gamma_L(p, ab, 3).size();
    bool ok = bad == 0 && total == 6;
    std::string detail = std::to_string(checks) + " splittings checked, " + std::to_string(bad) +
                         " mismatches, ab at L=3 total " + std::to_string(total);
    if (bad) detail += "; first: " + first_bad;
    return std::pair{ok, detail};
  });

  std::printf("%d blocking criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
