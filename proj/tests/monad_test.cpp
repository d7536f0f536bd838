#include <gtest/gtest.h>

#include "support/tdx_gen.hpp"
#include "tdx/monad.hpp"

namespace tdx {
namespace {

using testing::Rng;
using testing::pick;

/// Every entry A*, on states {0, 1} with xor.
MonadPresentation full_xor(const Alphabet& a) {
  Transducer t(a, a, StateSet{"0", "1"});
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = 0; q < 2; ++q) t.set(x, p, q, RegularLanguage::full(a));
  return {t, 0, {0, 1, 1, 0}};
}

MonadPresentation identity_presentation(const Alphabet& a) { return {identity_transducer(a), 0, {0}}; }

TEST(CheckMonoid, Examples) {
  auto a = testing::alphabet_of({"a", "b"});
  EXPECT_TRUE(check_monoid(identity_presentation(a)));
  EXPECT_TRUE(check_monoid(full_xor(a)));
  auto broken = full_xor(a);
  broken.mult = {0, 1, 1, 1};
  EXPECT_TRUE(check_monoid(broken));  // ({0,1}, max, 0) is a monoid too
  broken.mult = {1, 0, 0, 1};
  EXPECT_FALSE(check_monoid(broken));
  broken.mult = {0, 1, 1};
  EXPECT_FALSE(check_monoid(broken));
  // exhaustive over all 16 binary tables on two states with unit 0
  std::size_t monoids = 0;
  testing::for_each_map(4, 2, [&](const IndexMap& table) {
    auto p = full_xor(a);
    p.mult = table;
    monoids += check_monoid(p);
  });
  EXPECT_EQ(monoids, 2u);
}

TEST(CheckUnit, Examples) {
  auto a = testing::alphabet_of({"a", "b"});
  EXPECT_TRUE(check_unit(identity_presentation(a)));
  EXPECT_TRUE(check_unit(full_xor(a)));
  MonadPresentation running{testing::running_example(), 0, {0, 1, 1, 0}};
  EXPECT_FALSE(check_unit(running));
  auto v = unit_violation(running);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->letter, 0u);
}

TEST(CheckMult, Examples) {
  auto a = testing::alphabet_of({"a", "b"});
  EXPECT_TRUE(check_mult(identity_presentation(a)));
  auto full = full_xor(a);
  EXPECT_TRUE(check_mult(full));
  full.mult = {0, 1, 1, 1};
  EXPECT_TRUE(check_mult(full));

  auto perturbed = full_xor(a);
  perturbed.t.set(1, 0, 1, RegularLanguage::empty(a));
  auto v = mult_violation(perturbed);
  ASSERT_TRUE(v.has_value());
  ASSERT_TRUE(v->letter.has_value());
  ASSERT_TRUE(v->output_word.has_value());
  const auto& s = v->states;
  // the witness lies in the composite and not in the target entry
  auto tt = compose(perturbed.t, perturbed.t);
  EXPECT_TRUE(membership(tt.entry(*v->letter, s[0] * 2 + s[1], s[2] * 2 + s[3]), *v->output_word));
  EXPECT_FALSE(membership(perturbed.t.entry(*v->letter, s[0] ^ s[1], s[2] ^ s[3]), *v->output_word));
  EXPECT_TRUE(audit_mult(perturbed, 2).has_value());
}

TEST(CheckMonad, ReportOrderAndWitnesses) {
  auto a = testing::alphabet_of({"a", "b"});
  auto ok = check_monad(identity_presentation(a), 3);
  EXPECT_TRUE(ok.holds());
  EXPECT_FALSE(ok.violation.has_value());

  MonadPresentation running{testing::running_example(), 0, {0, 1, 1, 0}};
  auto r = check_monad(running);
  EXPECT_FALSE(r.holds());
  EXPECT_FALSE(r.unit);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(r.violation->axiom, "unit");

  auto bad = full_xor(a);
  bad.mult = {1, 0, 0, 1};
  auto rb = check_monad(bad);
  ASSERT_TRUE(rb.violation.has_value());
  EXPECT_EQ(rb.violation->axiom, "monoid");

  auto perturbed = full_xor(a);
  perturbed.t.set(0, 0, 0, RegularLanguage::empty(a));
  auto rp = check_monad(perturbed, 2);
  EXPECT_FALSE(rp.holds());
  ASSERT_TRUE(rp.violation.has_value());
  EXPECT_EQ(rp.violation->axiom, "unit");
}

TEST(CheckMonad, AuditAgreesWithLetterLevel) {
  Rng rng(31);
  auto a = testing::alphabet_of({"a", "b"});
  const std::vector<IndexMap> tables{{0}, {0, 1, 1, 0}, {0, 1, 1, 1}};
  std::size_t positive = 0;
  for (int round = 0; round < 50; ++round) {
    const auto& table = tables[pick(rng, 0, tables.size() - 1)];
    const std::size_t n = table.size() == 1 ? 1 : 2;
    MonadPresentation p{testing::random_transducer(rng, a, a, testing::states(n), 2), 0, table};
    if (pick(rng, 0, 2) == 0) {
      // entries either full or empty
      for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            p.t.set(x, i, j, pick(rng, 0, 3) ? RegularLanguage::full(a) : RegularLanguage::empty(a));
    }
    const bool letter = check_mult(p);
    positive += letter;
    EXPECT_EQ(!audit_mult(p, 3).has_value(), letter) << round;
  }
  EXPECT_GT(positive, 0u);
}

}  // namespace
}  // namespace tdx
