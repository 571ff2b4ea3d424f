#include <gtest/gtest.h>

#include <random>

#include "freeprod/resolution.hpp"
#include "freeprod/subcover.hpp"
#include "oracles.hpp"

using namespace freeprod;

namespace {

Word w(const Presentation& p, const char* s) { return parse_word(s, p); }

int in_fiber(const SubCover& z, int f) { return z.count_in_fiber(f); }

Word random_word(const Presentation& p, std::mt19937& rng, int len) {
  std::vector<Syllable> raw;
  std::uniform_int_distribution<int> gen(0, p.generator_count() - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  Word out;
  for (int k = 0; k < len; ++k)
    out = multiply(p, out, generator_word(p, gen(rng), sign(rng) ? 1 : -1));
  return out;
}

}  // namespace

TEST(BuildY, CommutatorLikeWordOverC2C4) {
  Presentation p = Presentation::parse("C2*C4");
  SubCover y = build_Y(p, w(p, "a*b*a*b^-1"));
  EXPECT_EQ(in_fiber(y, kOFiber), 4);
  EXPECT_EQ(in_fiber(y, 0), 4);
  EXPECT_EQ(in_fiber(y, 1), 4);
  EXPECT_EQ(y.vertex_count(), 12);
  EXPECT_EQ(y.edge_count(y.e_label(0)) + y.edge_count(y.e_label(1)), 8);
  EXPECT_EQ(y.edge_count(y.gen_label(0)), 2);
  EXPECT_EQ(y.edge_count(y.gen_label(1)), 2);
  EXPECT_TRUE(y.valid());
  ASSERT_EQ(y.basepoints().size(), 1u);
  EXPECT_EQ(y.fiber(y.basepoints()[0]), kOFiber);
}

TEST(BuildY, ShortestWordConvention) {
  Presentation p = Presentation::parse("C2*C5");
  // b^3 = b^-2 over C5: two backward edges; b^2: two forward ones.
  SubCover y = build_Y(p, w(p, "a*b^3"));
  EXPECT_EQ(y.edge_count(y.gen_label(1)), 2);
  Presentation q = Presentation::parse("C2*C4");
  SubCover y2 = build_Y(q, w(q, "a*b^2"));
  EXPECT_EQ(y2.edge_count(y2.gen_label(1)), 2);
}

TEST(BuildY, SingleFreeSyllable) {
  Presentation p = Presentation::parse("F2");
  SubCover y = build_Y(p, w(p, "[x,y]"));
  EXPECT_EQ(y.vertex_count(), 4);
  EXPECT_EQ(in_fiber(y, kOFiber), 0);
  EXPECT_TRUE(y.valid());
}

TEST(BuildY, Rejects) {
  Presentation p = Presentation::parse("C2*C3");
  EXPECT_THROW(build_Y(p, w(p, "1")), std::invalid_argument);
  EXPECT_THROW(build_Y(p, w(p, "b")), std::invalid_argument);
  EXPECT_THROW(build_Y(p, w(p, "b*a*b^-1")), std::invalid_argument);
  EXPECT_THROW(build_Y(p, w(p, "b*a*b*a*b")), std::invalid_argument);
}

TEST(BuildY, RandomWordsGiveValidCircles) {
  std::mt19937 rng(11);
  for (const char* g : {"C2*C3*F1", "C3*C4", "C2*C2*C2", "F2", "C5*F2"}) {
    Presentation p = Presentation::parse(g);
    for (int k = 0; k < 200; ++k) {
      Word x = cyclic_reduce(p, random_word(p, rng, 1 + k % 12)).first;
      if (classify(p, x).kind != ElementClass::Kind::Infinite) continue;
      SubCover y = build_Y(p, x);
      std::string why;
      ASSERT_TRUE(y.valid(&why)) << g << " " << to_string(p, x) << ": " << why;
      EXPECT_EQ(chi_grp(y).total, 0) << to_string(p, x);
      int comps = 0;
      connected_components(y, &comps);
      EXPECT_EQ(comps, 1);
      auto end = trace_word(y, y.basepoints()[0], x);
      ASSERT_TRUE(end.has_value());
      EXPECT_EQ(*end, y.basepoints()[0]);
    }
  }
}

TEST(SubCoverData, ImmersionAndFiberChecks) {
  Presentation p = Presentation::parse("C4*F1");
  SubCover z(p);
  int a = z.add_vertex(0), b = z.add_vertex(0), c = z.add_vertex(0);
  int o = z.add_vertex(kOFiber);
  z.add_edge(z.gen_label(0), a, b);
  z.add_edge(z.gen_label(0), a, b);  // duplicate, ignored
  EXPECT_EQ(z.edge_count(z.gen_label(0)), 1);
  EXPECT_THROW(z.add_edge(z.gen_label(0), a, c), std::logic_error);
  EXPECT_THROW(z.add_edge(z.gen_label(0), c, b), std::logic_error);
  EXPECT_THROW(z.add_edge(z.gen_label(1), a, c), std::logic_error);  // wrong fiber
  EXPECT_THROW(z.add_edge(z.e_label(0), a, o), std::logic_error);
  z.add_edge(z.e_label(0), o, a);
  EXPECT_TRUE(z.valid());
}

TEST(SubCoverData, CycleConditions) {
  Presentation p = Presentation::parse("C4");
  SubCover z(p);
  std::vector<int> v;
  for (int k = 0; k < 3; ++k) v.push_back(z.add_vertex(0));
  z.add_edge(z.gen_label(0), v[0], v[1]);
  z.add_edge(z.gen_label(0), v[1], v[2]);
  EXPECT_TRUE(z.valid());
  z.add_edge(z.gen_label(0), v[2], v[0]);  // closed 3-cycle over C4
  EXPECT_FALSE(z.valid());

  SubCover arc(p);
  for (int k = 0; k < 5; ++k) arc.add_vertex(0);
  for (int k = 0; k < 3; ++k) arc.add_edge(arc.gen_label(0), k, k + 1);
  EXPECT_TRUE(arc.valid());
  arc.add_edge(arc.gen_label(0), 3, 4);  // 4 edges over C4
  EXPECT_FALSE(arc.valid());
}

TEST(Chi, SmallExamples) {
  Presentation p = Presentation::parse("C6");
  SubCover one(p);
  one.add_vertex(kOFiber);
  EXPECT_EQ(chi_grp(one).total, 1);
  for (int d : {1, 2, 3, 6}) {
    SubCover z(p);
    for (int k = 0; k < d; ++k) z.add_vertex(0);
    for (int k = 0; k < d; ++k) z.add_edge(z.gen_label(0), k, (k + 1) % d);
    Rational want(d, 6);
    want.canonicalize();
    EXPECT_EQ(chi_grp(z).total, want);
  }
  Presentation f = Presentation::parse("F2");
  SubCover rose(f);
  rose.add_vertex(0);
  rose.add_edge(rose.gen_label(0), 0, 0);
  rose.add_edge(rose.gen_label(1), 0, 0);
  EXPECT_EQ(chi_grp(rose).total, -1);
}

TEST(Chi, PerComponentSumsToTotal) {
  Presentation p = Presentation::parse("C2*C3");
  SubCover a = build_Y(p, w(p, "a*b"));
  SubCover b = complete_cyclic(build_Y(p, w(p, "a*b*a*b^-1")));
  ChiReport r = chi_grp(disjoint_union({a, b}));
  ASSERT_EQ(r.per_component.size(), 2u);
  Rational sum = 0;
  for (auto& [c, x] : r.per_component) sum += x;
  EXPECT_EQ(sum, r.total);
  EXPECT_EQ(r.total, chi_grp(a).total + chi_grp(b).total);
}

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937 rng(5);
  Presentation p = Presentation::parse("C2*C4");
  SubCover y = build_Y(p, w(p, "a*b*a*b^-1"));
  for (SubCover z : {y, complete_cyclic(y)}) {
    std::string based = canonical_form(z, SignatureMode::Based);
    std::string unbased = canonical_form(z, SignatureMode::Unbased);
    for (int k = 0; k < 20; ++k) {
      SubCover s = oracle::shuffled(z, rng);
      EXPECT_EQ(canonical_form(s, SignatureMode::Based), based);
      EXPECT_EQ(canonical_form(s, SignatureMode::Unbased), unbased);
    }
  }
}

TEST(Canonical, SeparatesNonIsomorphic) {
  Presentation p = Presentation::parse("C2*C2");
  SubCover y1 = build_Y(p, w(p, "a*b"));
  SubCover y3 = build_Y(p, w(p, "a*b*a*b*a*b"));
  EXPECT_NE(canonical_form(y1, SignatureMode::Unbased), canonical_form(y3, SignatureMode::Unbased));
  // Moving the basepoint along the circle changes the based class only.
  SubCover moved = y3;
  moved.set_basepoints({y3.vertex_count() - 1});
  EXPECT_EQ(canonical_form(moved, SignatureMode::Unbased), canonical_form(y3, SignatureMode::Unbased));
  EXPECT_NE(canonical_form(moved, SignatureMode::Based), canonical_form(y3, SignatureMode::Based));
}

TEST(Automorphisms, CoresOfPowers) {
  Presentation p = Presentation::parse("C2*C2");
  EXPECT_EQ(automorphism_count(complete_cyclic(build_Y(p, w(p, "a*b")))), 2);
  EXPECT_EQ(automorphism_count(complete_cyclic(build_Y(p, w(p, "(a*b)^3")))), 6);
  // The bare circle of (ab)^3 only has its rotations.
  EXPECT_EQ(automorphism_count(build_Y(p, w(p, "(a*b)^3"))), 3);
}

TEST(Automorphisms, MatchBruteForce) {
  struct Case {
    const char* g;
    const char* w;
  };
  for (Case c : {Case{"C2*C2", "a*b"}, Case{"C2*C2", "a*b*a*b"}, Case{"C2*C3", "a*b*a*b^-1"},
                 Case{"C3*C3", "a*b"}, Case{"F2", "x*y*x*y"}, Case{"C2*F1", "a*b*a*b"}}) {
    Presentation p = Presentation::parse(c.g);
    SubCover y = build_Y(p, cyclic_reduce(p, w(p, c.w)).first);
    for (const SubCover& z : std::vector<SubCover>{y, complete_cyclic(y), disjoint_union({y, y})}) {
      if (z.vertex_count() > 10) continue;
      EXPECT_EQ(automorphism_count(z), oracle::automorphisms(z)) << c.g << " " << c.w;
    }
  }
}

TEST(Plab, CircleReadsItsWord) {
  Presentation p = Presentation::parse("C2*C3");
  Word ab = w(p, "a*b");
  SubCover y = build_Y(p, ab);
  auto gens = plab_generators(y, y.basepoints()[0]);
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_TRUE(gens[0] == ab || gens[0] == inverse(p, ab));
}

TEST(Plab, GeneratorsCloseUp) {
  Presentation p = Presentation::parse("C2*C3");
  SubCover core = complete_cyclic(build_Y(p, w(p, "a*b*a*b^-1")));
  int base = core.basepoints()[0];
  auto gens = plab_generators(core, base);
  EXPECT_FALSE(gens.empty());
  for (const Word& g : gens) {
    auto end = trace_word(core, base, g);
    ASSERT_TRUE(end.has_value());
    EXPECT_EQ(*end, base);
  }
}

TEST(Complete, ArcsBecomeFullCycles) {
  Presentation p = Presentation::parse("C2*C4");
  SubCover c = complete_cyclic(build_Y(p, w(p, "a*b*a*b^-1")));
  EXPECT_EQ(c.count_in_fiber(0), 4);
  EXPECT_EQ(c.count_in_fiber(1), 8);
  EXPECT_EQ(c.edge_count(c.gen_label(1)), 8);
  EXPECT_TRUE(c.valid());
  for (const CyclicComponent& comp : cyclic_components(c, 1)) {
    EXPECT_TRUE(comp.closed);
    EXPECT_EQ(comp.verts.size(), 4u);
  }
}

TEST(Json, Deterministic) {
  Presentation p = Presentation::parse("C2*C3");
  SubCover y = build_Y(p, w(p, "a*b"));
  EXPECT_EQ(to_json(y), to_json(build_Y(p, w(p, "a*b"))));
  EXPECT_NE(to_json(y).find("\"basepoints\""), std::string::npos);
}
