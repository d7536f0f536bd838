#include <gtest/gtest.h>

#include "support/fincat_gen.hpp"
#include "support/prof_oracle.hpp"
#include "support/tdx_gen.hpp"
#include "tdx/action.hpp"
#include "tdx/profunctor.hpp"

namespace tdx {
namespace {

using testing::Rng;
using testing::pick;

TEST(FiniteCategory, ValidatorRejectsDefects) {
  EXPECT_NO_THROW(testing::chain3());
  // missing composite v∘u
  EXPECT_THROW((FiniteCategory{ObjectSet{"0", "1", "2"},
                               {{"i0", "0", "0"}, {"i1", "1", "1"}, {"i2", "2", "2"}, {"u", "0", "1"}, {"v", "1", "2"}},
                               {{"0", "i0"}, {"1", "i1"}, {"2", "i2"}},
                               {}}),
               InputError);
  // ill-typed composite
  EXPECT_THROW((FiniteCategory{ObjectSet{"0", "1"},
                               {{"i0", "0", "0"}, {"i1", "1", "1"}, {"u", "0", "1"}},
                               {{"0", "i0"}, {"1", "i1"}},
                               {{"u", "i0", "i1"}}}),
               InputError);
  // non-associative monoid table
  EXPECT_THROW(monoid_category({{"1", "a", "b"}, 0, {0, 1, 2, 1, 2, 2, 2, 1, 1}}), InputError);
  for (const auto& c : testing::small_categories()) EXPECT_FALSE(c.defect().has_value());
  EXPECT_EQ(testing::cyclic2().compose(1, 1), 0u);
}

TEST(FiniteCategory, FunctorsAndLimits) {
  auto I = interval_category();
  auto P = testing::point();
  EXPECT_EQ(enumerate_functors(I, I).size(), 3u);
  EXPECT_EQ(enumerate_functors(testing::cyclic2(), testing::cyclic2()).size(), 2u);
  EXPECT_EQ(enumerate_functors(testing::chain3(), I).size(), 4u);
  EXPECT_EQ(enumerate_functors(P, testing::chain3()).size(), 3u);
  for (const auto& f : enumerate_functors(testing::chain3(), I)) EXPECT_TRUE(is_functor(f));

  auto prod = product_category(I, testing::chain3());
  EXPECT_EQ(prod.category.object_count(), 6u);
  EXPECT_EQ(prod.category.morphism_count(), 18u);
  EXPECT_TRUE(is_functor(prod.left));
  EXPECT_TRUE(is_functor(prod.right));

  auto co = coproduct_category(I, testing::cyclic2());
  EXPECT_EQ(co.category.object_count(), 3u);
  EXPECT_EQ(co.category.morphism_count(), 5u);
  EXPECT_TRUE(is_functor(co.left));
  EXPECT_TRUE(is_functor(co.right));

  auto id = identity_functor(testing::chain3());
  auto eq = equalizer_category(id, id);
  EXPECT_TRUE(eq.category == testing::chain3());

  auto fs = enumerate_functors(I, I);
  // the two constant functors agree nowhere
  auto c0 = fs[0], c1 = fs[2];
  EXPECT_EQ(equalizer_category(c0, c1).category.object_count(), 0u);
  for (const auto& f : fs)
    for (const auto& g : fs) {
      auto e = equalizer_category(f, g);
      EXPECT_TRUE(is_functor(e.inclusion));
      EXPECT_TRUE(same_functor(compose_functors(e.inclusion, f), compose_functors(e.inclusion, g)));
    }
}

TEST(Profunctor, HomAndValidation) {
  for (const auto& c : testing::small_categories()) {
    auto h = hom_profunctor(c);
    EXPECT_FALSE(h.defect().has_value());
    for (std::size_t a = 0; a < c.object_count(); ++a) EXPECT_GE(h.size(a, a), 1u);
  }
  auto d = hom_profunctor(testing::two_points());
  EXPECT_EQ(d.size(0, 0), 1u);
  EXPECT_EQ(d.size(0, 1), 0u);
  EXPECT_EQ(d.size(1, 0), 0u);

  auto I = interval_category();
  auto h = hom_profunctor(I);
  // hom(1, 0) = I(0, 1) = {u}
  EXPECT_EQ(h.elements(1, 0), std::vector<std::string>{"u"});
  EXPECT_TRUE(h.elements(0, 1).empty());

  auto broken = h;
  broken.set_left(2, 0, {1});
  EXPECT_TRUE(broken.defect().has_value());
}

TEST(ComposeProf, DiscreteCountsAreCardinalityProducts) {
  Rng rng(11);
  for (int round = 0; round < 20; ++round) {
    auto A = FiniteCategory::discrete(ObjectSet(testing::states(pick(rng, 1, 3), "a").names()));
    auto B = FiniteCategory::discrete(ObjectSet(testing::states(pick(rng, 1, 3), "b").names()));
    auto C = FiniteCategory::discrete(ObjectSet(testing::states(pick(rng, 1, 3), "c").names()));
    auto p = testing::random_profunctor(rng, A, B);
    auto q = testing::random_profunctor(rng, B, C);
    auto r = compose_prof(p, q);
    EXPECT_FALSE(r.defect().has_value());
    for (std::size_t a = 0; a < A.object_count(); ++a)
      for (std::size_t c = 0; c < C.object_count(); ++c) {
        std::size_t expected = 0;
        for (std::size_t b = 0; b < B.object_count(); ++b) expected += p.size(a, b) * q.size(b, c);
        EXPECT_EQ(r.size(a, c), expected);
      }
  }
}

TEST(ComposeProf, WalkingArrowAgainstZigZagOracle) {
  auto I = interval_category();
  auto P = testing::point();
  // P(o, 0) = {x0, x1}, P(o, 1) = {y}; y·u = x1.
  FiniteProfunctor p(P, I, {{"x0", "x1"}, {"y"}});
  p.set_left(0, 0, {0, 1});
  p.set_left(0, 1, {0});
  p.set_right(0, 0, {0, 1});
  p.set_right(1, 0, {0});
  p.set_right(2, 0, {1});
  ASSERT_FALSE(p.defect().has_value());
  // Q(0, o) = {s}, Q(1, o) = {t0, t1}; u·s = t0.
  FiniteProfunctor q(I, P, {{"s"}, {"t0", "t1"}});
  q.set_left(0, 0, {0});
  q.set_left(1, 0, {0, 1});
  q.set_left(2, 0, {0});
  q.set_right(0, 0, {0});
  q.set_right(0, 1, {0, 1});
  ASSERT_FALSE(q.defect().has_value());
  auto r = compose_prof(p, q);
  // raw pairs: 2·1 + 1·2 = 4; (x1, s) ~ (y, t0)
  EXPECT_EQ(r.size(0, 0), 3u);
  EXPECT_EQ(oracle::zigzag_classes(p, q, 0, 0), 3u);
  EXPECT_EQ(r.elements(0, 0), (std::vector<std::string>{"<x0,s>", "<x1,s>", "<y,t1>"}));

  Rng rng(5);
  auto pool = testing::small_categories();
  for (int round = 0; round < 40; ++round) {
    const auto& A = testing::random_category(rng, pool);
    const auto& B = testing::random_category(rng, pool);
    const auto& C = testing::random_category(rng, pool);
    auto x = testing::random_profunctor(rng, A, B);
    auto y = testing::random_profunctor(rng, B, C);
    ASSERT_FALSE(x.defect().has_value());
    ASSERT_FALSE(y.defect().has_value());
    auto z = compose_prof(x, y);
    EXPECT_FALSE(z.defect().has_value());
    for (std::size_t a = 0; a < A.object_count(); ++a)
      for (std::size_t c = 0; c < C.object_count(); ++c) EXPECT_EQ(z.size(a, c), oracle::zigzag_classes(x, y, a, c));
  }
}

TEST(ComposeProf, UnitorsAndAssociatorAreNaturalIsos) {
  Rng rng(23);
  auto pool = testing::small_categories();
  for (int round = 0; round < 30; ++round) {
    const auto& A = testing::random_category(rng, pool);
    const auto& B = testing::random_category(rng, pool);
    const auto& C = testing::random_category(rng, pool);
    const auto& D = testing::random_category(rng, pool);
    auto p = testing::random_profunctor(rng, A, B);
    auto q = testing::random_profunctor(rng, B, C);
    auto r = testing::random_profunctor(rng, C, D);
    EXPECT_TRUE(is_iso(left_unitor(p)));
    EXPECT_TRUE(is_iso(right_unitor(p)));
    EXPECT_TRUE(is_iso(associator(p, q, r)));
  }
}

TEST(NatTransfEnumerate, Counts) {
  auto P = testing::point();
  EXPECT_EQ(nat_trans_enumerate(hom_profunctor(P), hom_profunctor(P)).size(), 1u);
  auto D = testing::two_points();
  auto empty = discrete_profunctor(D.objects(), D.objects(), {{}, {}, {}, {}});
  auto some = discrete_profunctor(D.objects(), D.objects(), {{"p", "q"}, {}, {"r"}, {}});
  EXPECT_EQ(nat_trans_enumerate(empty, some).size(), 1u);
  auto two = discrete_profunctor(P.objects(), P.objects(), {{"p", "q"}});
  auto all = nat_trans_enumerate(two, two);
  EXPECT_EQ(all.size(), 4u);
  std::size_t isos = 0;
  for (const auto& t : all) isos += is_iso(t);
  EXPECT_EQ(isos, 2u);
  // hom ⇒ hom on the walking arrow: only the identity
  auto I = interval_category();
  EXPECT_EQ(nat_trans_enumerate(hom_profunctor(I), hom_profunctor(I)).size(), 1u);
}

TEST(Collage, CountsBarrelAndFibers) {
  auto X = ObjectSet{"x0", "x1"};
  auto Y = ObjectSet{"y0", "y1"};
  auto rel = discrete_profunctor(X, Y, {{"r"}, {}, {"s"}, {"t"}});
  auto c = collage(rel);
  EXPECT_EQ(c.category.object_count(), 4u);
  EXPECT_EQ(c.category.morphism_count(), 4u + 3u);
  EXPECT_TRUE(is_functor(c.barrel));
  EXPECT_TRUE(is_functor(c.dom_inclusion));
  EXPECT_TRUE(is_functor(c.cod_inclusion));

  Rng rng(8);
  auto pool = testing::small_categories();
  for (int round = 0; round < 20; ++round) {
    const auto& A = testing::random_category(rng, pool);
    const auto& B = testing::random_category(rng, pool);
    auto p = testing::random_profunctor(rng, A, B);
    auto col = collage(p);
    EXPECT_EQ(col.category.morphism_count(), A.morphism_count() + B.morphism_count() + p.total_size());
    EXPECT_TRUE(is_functor(col.barrel));
    const std::size_t na = A.object_count();
    for (std::size_t m = 0; m < col.category.morphism_count(); ++m) {
      // nothing runs from the 𝒜-fiber to the ℬ-fiber
      EXPECT_FALSE(col.category.src(m) < na && col.category.tgt(m) >= na);
    }
    for (const auto& hs : col.hetero)
      for (auto h : hs)
        for (const auto& ks : col.hetero)
          for (auto k : ks) EXPECT_FALSE(col.category.try_compose(h, k).has_value());
  }
}

TEST(Cotabulator, ColimitCoconeAndCouniversality) {
  auto X = ObjectSet{"x"};
  auto Y = ObjectSet{"y0", "y1"};
  auto p0 = discrete_profunctor(X, Y, {{"a"}, {"b", "c"}});
  auto p1 = discrete_profunctor(X, Y, {{"d"}, {}});
  auto single = cotabulator({p0});
  EXPECT_TRUE(single.colimit == p0);
  EXPECT_EQ(single.collage.category.morphism_count(), collage(p0).category.morphism_count());

  auto sum = cotabulator({p0, p1});
  EXPECT_EQ(sum.colimit.size(0, 0), 2u);
  EXPECT_EQ(sum.colimit.size(0, 1), 2u);
  for (const auto& leg : sum.cocone) EXPECT_TRUE(is_natural(leg));

  // index 0 → 1 with transition p0 ⇒ p0' gluing b and c
  auto p0q = discrete_profunctor(X, Y, {{"a"}, {"bc"}});
  NatTransf glue{p0, p0q, {{0}, {0, 0}}};
  auto I = interval_category();
  auto glued = cotabulator(I, {p0, p0q},
                           {NatTransf{p0, p0, identity_cell(p0).components},
                            NatTransf{p0q, p0q, identity_cell(p0q).components}, glue});
  EXPECT_EQ(glued.colimit.size(0, 1), 1u);
  EXPECT_EQ(glued.colimit.size(0, 0), 1u);
  for (const auto& leg : glued.cocone) EXPECT_TRUE(is_natural(leg));

  // Functors out of the collage are exactly the triples (F, G, cell into hom).
  auto targets = std::vector<FiniteCategory>{testing::point(), interval_category(), testing::cyclic2()};
  for (const auto& T : targets) {
    const auto& col = sum.collage;
    const auto& P = sum.colimit;
    auto out = enumerate_functors(col.category, T);
    std::set<std::vector<std::size_t>> seen;
    for (const auto& f : out) {
      std::vector<std::size_t> key = f.on_objects;
      key.insert(key.end(), f.on_morphisms.begin(), f.on_morphisms.end());
      EXPECT_TRUE(seen.insert(key).second);
    }
    std::size_t triples = 0;
    auto homT = hom_profunctor(T);
    for (const auto& F : enumerate_functors(P.dom(), T))
      for (const auto& G : enumerate_functors(P.cod(), T)) {
        std::vector<IndexMap> comps;
        std::vector<std::size_t> choices;
        for (std::size_t a = 0; a < P.dom().object_count(); ++a)
          for (std::size_t b = 0; b < P.cod().object_count(); ++b) {
            comps.emplace_back(P.size(a, b), 0);
            choices.push_back(homT.size(F.on_objects[a], G.on_objects[b]));
          }
        std::function<void(std::size_t, std::size_t)> go = [&](std::size_t s, std::size_t x) {
          if (s == comps.size()) {
            triples += is_natural(ProfCell{P, homT, F, G, comps});
            return;
          }
          if (x == comps[s].size()) return go(s + 1, 0);
          for (std::size_t y = 0; y < choices[s]; ++y) {
            comps[s][x] = y;
            go(s, x + 1);
          }
        };
        go(0, 0);
      }
    EXPECT_EQ(out.size(), triples) << T.objects().size();
  }
}

TEST(CompanionProf, ExamplesAndSandwichExhaustive) {
  auto C = testing::chain3();
  auto id = identity_functor(C);
  EXPECT_TRUE(companion_prof(id) == hom_profunctor(C));

  auto I = interval_category();
  auto P = testing::point();
  FiniteFunctor to_point{I, P, {0, 0}, {0, 0, 0}};
  auto comp = companion_prof(to_point);
  for (std::size_t a = 0; a < 2; ++a) EXPECT_EQ(comp.size(a, 0), 1u);

  std::size_t checked = 0;
  for (const auto& A : testing::tiny_categories())
    for (const auto& B : testing::tiny_categories())
      for (const auto& f : enumerate_functors(A, B)) {
        EXPECT_TRUE(check_sandwich(companion_prof_cells(f), f, true));
        EXPECT_TRUE(check_sandwich(conjoint_prof_cells(f), f, false));
        ++checked;
      }
  EXPECT_GT(checked, 50u);

  auto z2 = identity_functor(testing::cyclic2());
  auto cells = companion_prof_cells(z2);
  cells.counit.components[0] = {1, 0};
  EXPECT_TRUE(is_natural(cells.counit));
  EXPECT_FALSE(check_sandwich(cells, z2, true));
}

TEST(FreePromonad, Relations) {
  auto id = free_promonad(2, {});
  EXPECT_EQ(id, (std::vector<std::vector<char>>{{1, 0}, {0, 1}}));
  EXPECT_EQ(free_promonad(1, {{0, 0}}), (std::vector<std::vector<char>>{{1}}));
  EXPECT_EQ(free_promonad(2, {{0, 1}, {1, 0}}), (std::vector<std::vector<char>>{{1, 1}, {1, 1}}));

  Rng rng(3);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = pick(rng, 1, 5);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = pick(rng, 0, 6); i > 0; --i) edges.emplace_back(pick(rng, 0, n - 1), pick(rng, 0, n - 1));
    // iterated squaring of the reflexive relation
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
    for (auto [x, y] : edges) r[x][y] = 1;
    for (std::size_t k = 0; k < 4; ++k) {
      auto sq = r;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t m = 0; m < n; ++m)
            if (r[i][m] && r[m][j]) sq[i][j] = 1;
      r = sq;
    }
    EXPECT_EQ(free_promonad(n, edges), r);
  }
}

TEST(FreePromonad, TruncatedProfunctorSum) {
  auto P = testing::point();
  auto loop = discrete_profunctor(P.objects(), P.objects(), {{"l"}});
  auto f = free_promonad(loop, 3);
  EXPECT_EQ(f.size(0, 0), 4u);
  EXPECT_FALSE(f.defect().has_value());
}

TEST(ActionCategory, RunningExampleFreeness) {
  auto g = action_graph(testing::running_example());
  auto a = adjacency(g);
  EXPECT_EQ(a, (std::vector<std::vector<std::size_t>>{{2, 1}, {1, 2}}));
  auto a2 = nat_mul(a, a);
  EXPECT_EQ(a2, (std::vector<std::vector<std::size_t>>{{5, 4}, {4, 5}}));
  for (std::size_t n = 0; n <= 4; ++n) {
    auto c = action_category(g, n);
    EXPECT_TRUE(is_free_on_graph(c)) << n;
  }
  auto c = action_category(g, 2);
  auto counts = generated_counts(c);
  EXPECT_EQ(counts[2][0][0] + counts[2][0][1], 9u);
  // the path a then b from 1 to 2 reads ab and outputs x
  for (std::size_t m = 0; m < c.category.morphism_count(); ++m)
    if (c.category.morphisms()[m] == "a[1,1];b[1,2]") {
      EXPECT_EQ(c.word[m], (Word{0, 1}));
      EXPECT_TRUE(equals(c.label[m], RegularLanguage::parse("x", g.outputs)));
    }
}

TEST(ActionCategory, EmptyGraphAndLoop) {
  Transducer none(testing::alphabet_of({"a"}), testing::alphabet_of({"x"}), StateSet{"p", "q"});
  auto c = action_category(action_graph(none), 3);
  EXPECT_EQ(c.category.morphism_count(), 2u);
  EXPECT_TRUE(is_free_on_graph(c));

  Transducer loop(testing::alphabet_of({"a"}), testing::alphabet_of({"x"}), StateSet{"q"});
  loop.set("a", "q", "q", "x");
  auto l = action_category(action_graph(loop), 3);
  auto counts = generated_counts(l);
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(counts[k][0][0], 1u);
  EXPECT_EQ(l.category.morphism_count(), 5u);
  EXPECT_TRUE(is_free_on_graph(l));
}

TEST(Tabulator, ObstructionAndObjectCounts) {
  EXPECT_FALSE(has_tabulator(testing::running_example()));
  EXPECT_THROW(tabulator_truncation(testing::running_example(), 2), NoTabulator);

  auto id = identity_transducer(testing::alphabet_of({"a", "b"}));
  ASSERT_TRUE(has_tabulator(id));
  auto t = tabulator_truncation(id, 1);
  EXPECT_EQ(t.category.objects().names(), (std::vector<std::string>{"<a,[a]>", "<b,[b]>"}));
  EXPECT_EQ(t.category.morphism_count(), 2u);

  auto collapsed = collapse_states(testing::running_example());
  for (std::size_t L = 0; L <= 3; ++L) {
    std::size_t expected = 0;
    for (std::size_t a = 0; a < collapsed.input().size(); ++a) expected += enumerate(collapsed.entry(a, 0, 0), L).size();
    EXPECT_EQ(tabulator_truncation(collapsed, L).category.object_count(), expected);
  }
  auto with_monoid = tabulator_truncation(id, 1, {{"1", "s"}, 0, {0, 1, 1, 0}});
  EXPECT_EQ(with_monoid.category.morphism_count(), 8u);
}

}  // namespace
}  // namespace tdx
