#include <gtest/gtest.h>

#include "support/oracle.hpp"
#include "support/random.hpp"
#include "tdx/lang.hpp"

using namespace tdx;
using tdx::testing::alphabet_of;
using tdx::testing::random_lang;
using tdx::testing::Rng;

namespace {

const Alphabet X = alphabet_of({"x"});
const Alphabet XY = alphabet_of({"x", "y"});

RegularLanguage re(const char* text, const Alphabet& a = X) { return RegularLanguage::parse(text, a); }

Word w(const char* comma, const Alphabet& a = X) { return parse_word(comma, a); }

std::vector<Word> words(std::initializer_list<const char*> ws, const Alphabet& a = X) {
  std::vector<Word> out;
  for (auto s : ws) out.push_back(w(s, a));
  return out;
}

}  // namespace

TEST(Membership, SpecExamples) {
  EXPECT_TRUE(membership(re("x+xx"), w("x,x")));
  EXPECT_TRUE(membership(re("x*"), w("")));
  // (xx)* up to length 3 is {e, xx}.
  auto bounded = oracle::bounded(re("(xx)*"), 3);
  EXPECT_EQ(bounded, (oracle::WordSet{w(""), w("x,x")}));
  EXPECT_FALSE(membership(re("(xx)*"), w("x,x,x")));
}

TEST(Membership, MatcherAgreesWithAutomaton) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto l = random_lang(rng, XY, 3);
    for (const auto& word : oracle::all_words(2, 5)) {
      ASSERT_EQ(membership(l, word), membership_by_matcher(l, word)) << l << " on " << format_word(word, XY);
    }
  }
}

TEST(Membership, ForeignSymbolIsInputError) {
  EXPECT_THROW(membership(re("x"), Word{3}), InputError);
  EXPECT_THROW(membership(re("x"), "y"), InputError);
}

TEST(Operations, ConcatUnionStarExamples) {
  auto l = concat(re("x"), re("x+xx"));
  EXPECT_EQ(enumerate(l, 3), words({"x,x", "x,x,x"}));
  EXPECT_EQ(oracle::bounded(l, 3), (oracle::WordSet{w("x,x"), w("x,x,x")}));

  auto m = re("x*+x x");
  EXPECT_TRUE(equals(concat(RegularLanguage::epsilon(X), m), m));
  EXPECT_TRUE(equals(star(RegularLanguage::empty(X)), RegularLanguage::epsilon(X)));
}

TEST(Operations, AlphabetMismatch) {
  EXPECT_THROW(unite(re("x"), re("x", XY)), FrameMismatch);
  EXPECT_THROW(concat(re("x"), re("y", XY)), FrameMismatch);
  EXPECT_THROW(equals(re("x"), re("x", XY)), FrameMismatch);
  EXPECT_THROW(includes(re("x"), re("x", XY)), FrameMismatch);
}

TEST(RestrictedStar, Examples) {
  EXPECT_TRUE(equals(restricted_star(re("x")), re("x*")));
  EXPECT_THROW(restricted_star(re("e + x")), NotReduced);
  auto s = restricted_star(re("xx + x"));
  EXPECT_EQ(oracle::bounded(s, 4), oracle::bounded(re("(x+xx)*"), 4));
  EXPECT_TRUE(equals(s, re("(x+xx)*")));
}

TEST(Equality, Examples) {
  EXPECT_TRUE(equals(re("x + x"), re("x")));
  EXPECT_EQ(oracle::bounded(re("x x*"), 5), oracle::bounded(re("x* x"), 5));
  EXPECT_TRUE(equals(re("x x*"), re("x* x")));
  EXPECT_TRUE(includes(re("x + e"), re("x*")));
  EXPECT_FALSE(includes(re("x*"), re("x + e")));
  EXPECT_EQ(inclusion_witness(re("x*"), re("x + e")), w("x,x"));
}

TEST(Equality, AgreesWithBoundedEnumeration) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    auto l = random_lang(rng, XY, 3);
    auto m = random_lang(rng, XY, 3);
    auto bl = oracle::bounded(l, 6);
    auto bm = oracle::bounded(m, 6);
    if (equals(l, m)) ASSERT_EQ(bl, bm);
    if (includes(l, m)) {
      for (const auto& word : bl) ASSERT_TRUE(bm.count(word));
    } else {
      auto wit = inclusion_witness(l, m);
      ASSERT_TRUE(wit);
      EXPECT_TRUE(membership_by_matcher(l, *wit));
      EXPECT_FALSE(membership_by_matcher(m, *wit));
    }
  }
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate(re("x*"), 2), words({"", "x", "x,x"}));
  EXPECT_TRUE(enumerate(RegularLanguage::empty(X), 5).empty());
  EXPECT_EQ(enumerate(re("x + xx"), 1), words({"x"}));
  EXPECT_EQ(enumerate(re("y x + x + e", XY), 2), words({"", "x", "y,x"}, XY));
}

TEST(Enumerate, MatchesOracleAndIsOrdered) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    auto l = random_lang(rng, XY, 3);
    auto listed = enumerate(l, 5);
    auto bounded = oracle::bounded(l, 5);
    ASSERT_EQ(listed.size(), bounded.size()) << l;
    for (std::size_t k = 0; k + 1 < listed.size(); ++k) {
      const auto& a = listed[k];
      const auto& b = listed[k + 1];
      ASSERT_TRUE(a.size() < b.size() || (a.size() == b.size() && a < b));
    }
    for (const auto& word : listed) ASSERT_TRUE(bounded.count(word));
  }
}

TEST(HomomorphicImage, Examples) {
  const Alphabet Y = alphabet_of({"y"});
  auto img = homomorphic_image(re("x+xx"), {{"x", "y"}}, Y);
  EXPECT_TRUE(equals(img, re("y+yy", Y)));
  EXPECT_EQ(img.to_string(), "y+yy");
  EXPECT_TRUE(homomorphic_image(RegularLanguage::empty(X), {{"x", "y"}}, Y).is_empty());

  const Alphabet BC = alphabet_of({"b", "c"});
  const Alphabet Z = alphabet_of({"z"});
  auto zz = homomorphic_image(re("(bc)*", BC), {{"b", "z"}, {"c", "z"}}, Z);
  EXPECT_EQ(oracle::bounded(zz, 4), oracle::bounded(re("(zz)*", Z), 4));
  EXPECT_TRUE(equals(zz, re("(zz)*", Z)));
}

TEST(HomomorphicImage, PartialMapIsInputError) {
  EXPECT_THROW(homomorphic_image(re("x+y", XY), {{"x", "x"}}, X), InputError);
}

TEST(HomomorphicImage, IsQuantaleMorphism) {
  Rng rng(3);
  const Alphabet Z = alphabet_of({"z", "u"});
  std::vector<std::size_t> h{0, 0};
  for (int i = 0; i < 100; ++i) {
    auto l = random_lang(rng, XY, 3);
    auto m = random_lang(rng, XY, 3);
    auto img = [&](const RegularLanguage& r) { return homomorphic_image(r, h, Z); };
    EXPECT_TRUE(equals(img(unite(l, m)), unite(img(l), img(m))));
    EXPECT_TRUE(equals(img(concat(l, m)), concat(img(l), img(m))));
    EXPECT_TRUE(equals(img(star(l)), star(img(l))));
  }
  EXPECT_TRUE(equals(homomorphic_image(RegularLanguage::epsilon(XY), h, Z), RegularLanguage::epsilon(Z)));
}

TEST(Sigma, Examples) {
  const Alphabet Y = alphabet_of({"y"});
  auto s = sigma(re("x"), re("y", Y));
  EXPECT_EQ(s.alphabet().names(), std::vector<std::string>{"<x,y>"});
  EXPECT_TRUE(equals(s, RegularLanguage::parse("<x,y>", s.alphabet())));
  EXPECT_EQ(s.to_string(), "<x,y>");
  EXPECT_TRUE(sigma(re("x*"), RegularLanguage::empty(Y)).is_empty());
  auto forced = sigma(re("x*"), re("yy", Y));
  EXPECT_TRUE(equals(forced, RegularLanguage::parse("<x,y><x,y>", forced.alphabet())));
}

TEST(Sigma, ProjectionsLieInFactors) {
  Rng rng(19);
  const Alphabet D = alphabet_of({"u", "v"});
  for (int i = 0; i < 100; ++i) {
    auto l = random_lang(rng, XY, 3);
    auto m = random_lang(rng, D, 3);
    auto s = sigma(l, m);
    auto bl = oracle::bounded(l, 4);
    auto bm = oracle::bounded(m, 4);
    bool common_length = false;
    for (const auto& p : bl)
      for (const auto& q : bm) common_length = common_length || p.size() == q.size();
    if (!s.is_empty()) {
      // Some common length exists, though maybe above the bound.
      auto listed = enumerate(s, 4);
      for (const auto& word : listed) {
        Word left, right;
        for (auto x : word) {
          left.push_back(x / 2);
          right.push_back(x % 2);
        }
        EXPECT_TRUE(bl.count(left));
        EXPECT_TRUE(bm.count(right));
      }
    } else {
      EXPECT_FALSE(common_length);
    }
  }
}

TEST(QuantaleLaws, RandomLanguages) {
  Rng rng(42);
  const auto zero = RegularLanguage::empty(XY);
  const auto one = RegularLanguage::epsilon(XY);
  for (int i = 0; i < 150; ++i) {
    auto a = random_lang(rng, XY, 3);
    auto b = random_lang(rng, XY, 3);
    auto c = random_lang(rng, XY, 3);
    EXPECT_TRUE(equals(unite(unite(a, b), c), unite(a, unite(b, c))));
    EXPECT_TRUE(equals(unite(a, b), unite(b, a)));
    EXPECT_TRUE(equals(unite(a, a), a));
    EXPECT_TRUE(equals(unite(a, zero), a));
    EXPECT_TRUE(equals(concat(concat(a, b), c), concat(a, concat(b, c))));
    EXPECT_TRUE(equals(concat(one, a), a));
    EXPECT_TRUE(equals(concat(a, one), a));
    EXPECT_TRUE(equals(concat(a, unite(b, c)), unite(concat(a, b), concat(a, c))));
    EXPECT_TRUE(equals(concat(unite(a, b), c), unite(concat(a, c), concat(b, c))));
    EXPECT_TRUE(concat(zero, a).is_empty());
    EXPECT_TRUE(equals(star(a), unite(one, concat(a, star(a)))));
  }
}

TEST(Parser, GrammarAndErrors) {
  EXPECT_TRUE(equals(re("0"), RegularLanguage::empty(X)));
  EXPECT_TRUE(equals(re("e"), RegularLanguage::epsilon(X)));
  EXPECT_TRUE(equals(re("x x*"), re("xx*")));
  EXPECT_TRUE(equals(re("'x'"), re("x")));
  EXPECT_THROW(re("z"), InputError);
  EXPECT_THROW(re("(x"), InputError);
  EXPECT_THROW(re(""), InputError);
  EXPECT_THROW(re("x+"), InputError);
  EXPECT_THROW(re("'x"), InputError);

  const Alphabet multi = alphabet_of({"ab", "a", "b", "e1"});
  auto l = RegularLanguage::parse("ab a b + 'e1'", multi);
  EXPECT_EQ(enumerate(l, 3).size(), 2u);
  EXPECT_TRUE(membership(l, "ab,a,b"));
  EXPECT_TRUE(membership(l, "e1"));
}

TEST(Parser, PrintParseRoundTrip) {
  Rng rng(23);
  const Alphabet odd = alphabet_of({"x1", "e", "<a,b>", "p q"});
  for (const Alphabet& a : {XY, odd}) {
    for (int i = 0; i < 200; ++i) {
      auto l = random_lang(rng, a, 3);
      auto text = l.to_string();
      auto back = RegularLanguage::parse(text, a);
      ASSERT_TRUE(equals(l, back)) << text;
      ASSERT_EQ(back.to_string(), text);
    }
  }
}

TEST(Compaction, LargeExpressionsKeepTheirLanguage) {
  Rng rng(29);
  for (int i = 0; i < 30; ++i) {
    auto l = random_lang(rng, XY, 3);
    auto acc = RegularLanguage::empty(XY);
    std::vector<RegularLanguage> parts;
    for (int k = 0; k < 12; ++k) {
      auto p = random_lang(rng, XY, 2);
      parts.push_back(p);
      acc = unite(acc, concat(l, p));
    }
    auto expected = oracle::WordSet{};
    for (auto& p : parts) expected = oracle::unite(expected, oracle::concat(oracle::bounded(l, 5), oracle::bounded(p, 5), 5));
    auto listed = enumerate(acc, 5);
    EXPECT_EQ(oracle::WordSet(listed.begin(), listed.end()), expected);
  }
}

TEST(SubsetCap, FailsLoudly) {
  auto saved = fa::subset_state_cap().load();
  fa::subset_state_cap() = 3;
  // (x+y)* x (x+y)(x+y) needs 8 subset states.
  auto l = RegularLanguage::parse("(x+y)*x(x+y)(x+y)", XY);
  EXPECT_THROW(l.dfa(), StateCapExceeded);
  fa::subset_state_cap() = saved;
}
