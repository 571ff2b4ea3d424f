#include "freeprod/report.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "freeprod/exact.hpp"

namespace freeprod {

Json rational_json(const Rational& r, int digits) {
  Json j;
  j["exact"] = to_string(r);
  j["decimal"] = to_decimal(r, digits);
  return j;
}

namespace {

std::string kind_name(ZeroSubgroup::Kind k) {
  return k == ZeroSubgroup::Kind::InfiniteCyclic ? "InfiniteCyclic" : "InfiniteDihedral";
}

Json pmf_json(const std::map<long, std::uint64_t>& pmf) {
  Json j = Json::object();
  for (auto [v, c] : pmf) j[std::to_string(v)] = c;
  return j;
}

}  // namespace

Json analyze_report(const Presentation& p, const Word& w, std::uint64_t budget, int digits) {
  Json j;
  j["word"] = to_string(p, w);
  j["group"] = p.to_string();
  ElementClass ec = classify(p, w);
  if (ec.kind != ElementClass::Kind::Infinite) {
    long order = element_order(p, w);
    Json t;
    t["order"] = order;
    t["leading_term"] = order == 1 ? std::string("N") : "N^(1/" + std::to_string(order) + ")";
    j["torsion"] = t;
    return j;
  }
  std::vector<ZeroSubgroup> subs = h_gamma(p, w, budget);
  std::vector<ConjugacyClass> classes = conjugacy_classes(subs);
  std::map<std::string, const ConjugacyClass*> by_sig;
  for (const ConjugacyClass& c : classes)
    by_sig[canonical_form(c.representative.core, SignatureMode::Unbased)] = &c;
  Json hs = Json::array();
  for (const ZeroSubgroup& z : subs) {
    const ConjugacyClass* c = by_sig.at(canonical_form(z.core, SignatureMode::Unbased));
    Json e;
    e["kind"] = kind_name(z.kind);
    Json gens = Json::array();
    for (const Word& g : z.generators) gens.push_back(to_string(p, g));
    e["generators"] = gens;
    e["alpha_class"] = c->alpha;
    e["beta"] = c->beta;
    hs.push_back(e);
  }
  j["H_gamma"] = hs;
  PoissonMixture mix = mixture_of(classes);
  Json m = Json::array();
  for (const PoissonTerm& t : mix.terms) m.push_back(Json::array({t.alpha, t.beta}));
  j["mixture"] = m;
  j["mean"] = rational_json(mix.mean(), digits);
  Json moments;
  for (int r = 1; r <= 3; ++r) moments[std::to_string(r)] = rational_json(mixture_moment(mix, r), digits);
  j["moments"] = moments;
  return j;
}

std::vector<ExactRow> exact_table(const Presentation& p, const Word& w,
                                  const std::vector<long>& grid, int max_len,
                                  std::uint64_t budget) {
  bool infinite = classify(p, w).kind == ElementClass::Kind::Infinite;
  long limit = infinite ? static_cast<long>(limit_moment_via_resolution(p, w, 1, budget)) : 0;
  std::vector<ExactRow> rows;
  for (long n : grid) {
    ExactRow r;
    r.n = n;
    r.fix = fix_expectation(p, w, n, budget);
    r.fix2 = fix_moment(p, w, 2, n, budget);
    for (int L = 1; L <= max_len; ++L) r.cyc.push_back(cyc_expectation(p, w, L, n, budget));
    if (infinite)
      r.decay = (r.fix.get_d() - static_cast<double>(limit)) *
                std::pow(static_cast<double>(n), 1.0 / static_cast<double>(p.m()));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json exact_json(const Presentation& p, const Word& w, const std::vector<ExactRow>& rows,
                int digits) {
  Json j;
  j["word"] = to_string(p, w);
  j["group"] = p.to_string();
  Json arr = Json::array();
  for (const ExactRow& r : rows) {
    Json e;
    e["N"] = r.n;
    e["fix"] = rational_json(r.fix, digits);
    e["fix2"] = rational_json(r.fix2, digits);
    Json cyc = Json::object();
    for (size_t L = 0; L < r.cyc.size(); ++L) cyc[std::to_string(L + 1)] = rational_json(r.cyc[L], digits);
    e["cyc"] = cyc;
    if (r.decay) e["decay"] = *r.decay;
    arr.push_back(e);
  }
  j["rows"] = arr;
  return j;
}

Json exhaustive_json(const Presentation& p, const std::vector<Word>& words,
                     const ExhaustiveStats& s, int digits) {
  Json j;
  j["group"] = p.to_string();
  Json ws = Json::array();
  for (const Word& w : words) ws.push_back(to_string(p, w));
  j["words"] = ws;
  j["N"] = s.n;
  j["total_homs"] = s.total_homs;
  j["fix_distribution"] = pmf_json(s.fix_distribution);
  Json moments;
  for (const auto& [r, m] : s.moments) moments[std::to_string(r)] = rational_json(m, digits);
  j["moments"] = moments;
  j["identity_count"] = s.identity_count;
  Json cyc = Json::array();
  for (size_t L = 0; L < s.cyc_distributions.size(); ++L) {
    Json c;
    c["L"] = L + 1;
    c["distribution"] = pmf_json(s.cyc_distributions[L]);
    c["mean"] = rational_json(s.cyc_means[L], digits);
    cyc.push_back(c);
  }
  j["cyc"] = cyc;
  if (s.joint_mean) {
    Json jt;
    jt["mean_product"] = rational_json(*s.joint_mean, digits);
    jt["mean_second"] = rational_json(*s.second_mean, digits);
    Rational cov = *s.joint_mean - s.moments.at(1) * *s.second_mean;
    cov.canonicalize();
    jt["covariance"] = rational_json(cov, digits);
    Json dist = Json::array();
    for (auto [k, c] : *s.joint_distribution) dist.push_back(Json::array({k.first, k.second, c}));
    jt["distribution"] = dist;
    j["joint"] = jt;
  }
  return j;
}

Json empirical_json(const Presentation& p, const Word& w, int n, const Estimate& e) {
  auto stats = [](const EmpiricalStats& s) {
    Json j;
    j["mean"] = s.mean;
    j["variance"] = s.variance;
    j["stderr"] = s.stderr_mean;
    j["pmf"] = pmf_json(s.pmf);
    return j;
  };
  Json j;
  j["group"] = p.to_string();
  j["word"] = to_string(p, w);
  j["N"] = n;
  j["trials"] = e.fix.trials;
  j["seed"] = e.fix.seed;
  j["fix"] = stats(e.fix);
  Json cyc = Json::object();
  for (size_t L = 0; L < e.cyc.size(); ++L) cyc[std::to_string(L + 1)] = stats(e.cyc[L]);
  j["cyc"] = cyc;
  return j;
}

std::string markdown_table(const std::vector<Json>& reports) {
  std::ostringstream out;
  out << "| group | word | limit | H_gamma generators |\n|---|---|---|---|\n";
  for (const Json& r : reports) {
    out << "| " << r["group"].get<std::string>() << " | " << r["word"].get<std::string>() << " | ";
    if (r.contains("torsion")) {
      out << r["torsion"]["leading_term"].get<std::string>() << " | torsion |\n";
      continue;
    }
    out << r["mean"]["exact"].get<std::string>() << " | ";
    bool first = true;
    for (const Json& h : r["H_gamma"]) {
      if (!first) out << ", ";
      first = false;
      out << "<";
      bool g1 = true;
      for (const Json& g : h["generators"]) {
        if (!g1) out << ", ";
        g1 = false;
        out << g.get<std::string>();
      }
      out << ">";
    }
    out << " |\n";
  }
  return out.str();
}

std::string csv_exact(const Presentation& p, const Word& w, const std::vector<ExactRow>& rows,
                      int digits) {
  std::ostringstream out;
  out << "group,word,N,fix,fix_decimal,fix2,fix2_decimal";
  size_t lens = rows.empty() ? 0 : rows[0].cyc.size();
  for (size_t L = 1; L <= lens; ++L) out << ",cyc" << L << ",cyc" << L << "_decimal";
  out << ",decay\n";
  for (const ExactRow& r : rows) {
    out << p.to_string() << ',' << to_string(p, w) << ',' << r.n << ',' << to_string(r.fix) << ','
        << to_decimal(r.fix, digits) << ',' << to_string(r.fix2) << ','
        << to_decimal(r.fix2, digits);
    for (const Rational& c : r.cyc) out << ',' << to_string(c) << ',' << to_decimal(c, digits);
    out << ',';
    if (r.decay) out << *r.decay;
    out << '\n';
  }
  return out.str();
}

}  // namespace freeprod
