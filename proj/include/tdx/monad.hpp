#pragma once

// Monads in the posetal double category of transducers: an endo-transducer
// on A, a monoid (Q, ⊠, q₀) on its states, and the unit and multiplication
// axioms as language inclusions.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tdx/error.hpp"
#include "tdx/transducer.hpp"

namespace tdx {

struct MonadPresentation {
  Transducer t;
  std::size_t unit = 0;
  /// mult[x * |Q| + y] = x ⊠ y.
  IndexMap mult;
};

struct MonadViolation {
  std::string axiom;
  std::string message;
  /// Letter and states (x, x', y, y') of a failing square, where relevant.
  std::optional<std::size_t> letter;
  std::vector<std::size_t> states;
  /// Input word and output word witnessing the failure, where relevant.
  std::optional<Word> input_word, output_word;
};

struct MonadReport {
  bool monoid = false, unit = false, mult = false;
  std::optional<bool> audit;
  std::optional<MonadViolation> violation;

  [[nodiscard]] bool holds() const { return monoid && unit && mult && audit.value_or(true); }
};

namespace detail {
inline std::size_t table_mul(const MonadPresentation& p, std::size_t x, std::size_t y) {
  return p.mult[x * p.t.states().size() + y];
}

inline void require_endo(const MonadPresentation& p) {
  if (!(p.t.input() == p.t.output())) throw FrameMismatch("monad: input and output alphabets differ");
}
}  // namespace detail

inline std::optional<MonadViolation> monoid_violation(const MonadPresentation& p) {
  const std::size_t n = p.t.states().size();
  const auto& names = p.t.states();
  if (p.unit >= n) return MonadViolation{"monoid", "unit is not a state", {}, {}, {}, {}};
  if (p.mult.size() != n * n) return MonadViolation{"monoid", "multiplication is not total on Q×Q", {}, {}, {}, {}};
  for (auto v : p.mult)
    if (v >= n) return MonadViolation{"monoid", "multiplication leaves the state set", {}, {}, {}, {}};
  for (std::size_t x = 0; x < n; ++x)
    if (detail::table_mul(p, p.unit, x) != x || detail::table_mul(p, x, p.unit) != x)
      return MonadViolation{"monoid", "unit law fails at '" + names[x] + "'", {}, {x}, {}, {}};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (detail::table_mul(p, detail::table_mul(p, x, y), z) != detail::table_mul(p, x, detail::table_mul(p, y, z)))
          return MonadViolation{"monoid",
                                "associativity fails at (" + names[x] + ", " + names[y] + ", " + names[z] + ")",
                                {},
                                {x, y, z},
                                {},
                                {}};
  return std::nullopt;
}

inline bool check_monoid(const MonadPresentation& p) { return !monoid_violation(p).has_value(); }

/// Each letter a lies in gen(a) at (q₀, q₀). Letters are matched by name,
/// so a letter missing from the output alphabet fails.
inline std::optional<MonadViolation> unit_violation(const MonadPresentation& p) {
  if (p.unit >= p.t.states().size()) return MonadViolation{"unit", "unit is not a state", {}, {}, {}, {}};
  for (std::size_t a = 0; a < p.t.input().size(); ++a) {
    const Word w{a};
    auto b = p.t.output().find(p.t.input()[a]);
    if (!b || !membership(p.t.entry(a, p.unit, p.unit), Word{*b}))
      return MonadViolation{"unit", "gen(" + p.t.input()[a] + ") at the unit state misses the letter itself",
                            a,           {p.unit, p.unit},
                            w,           b ? std::optional<Word>(Word{*b}) : std::nullopt};
  }
  return std::nullopt;
}

inline bool check_unit(const MonadPresentation& p) { return !unit_violation(p).has_value(); }

/// Letter level: extend(gen(a)_{xy}, gen)_{x'y'} ⊆ gen(a)_{x⊠x', y⊠y'}.
inline std::optional<MonadViolation> mult_violation(const MonadPresentation& p) {
  detail::require_endo(p);
  if (auto bad = monoid_violation(p); bad && bad->states.empty())
    return MonadViolation{"mult", bad->message, {}, {}, {}, {}};
  const auto tt = compose(p.t, p.t);
  const std::size_t n = p.t.states().size();
  for (std::size_t a = 0; a < p.t.input().size(); ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t x2 = 0; x2 < n; ++x2)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t y2 = 0; y2 < n; ++y2) {
            const auto& lhs = tt.entry(a, x * n + x2, y * n + y2);
            if (lhs.is_empty()) continue;
            const auto& rhs = p.t.entry(a, detail::table_mul(p, x, x2), detail::table_mul(p, y, y2));
            if (auto w = inclusion_witness(lhs, rhs))
              return MonadViolation{"mult", "composite exceeds gen(" + p.t.input()[a] + ") at the product states",
                                    a,      {x, x2, y, y2},
                                    Word{a}, *w};
          }
  return std::nullopt;
}

inline bool check_mult(const MonadPresentation& p) { return !mult_violation(p).has_value(); }

/// The same inclusion on eval_word for every input word of length at most
/// maxlen.
inline std::optional<MonadViolation> audit_mult(const MonadPresentation& p, std::size_t maxlen) {
  detail::require_endo(p);
  if (auto bad = monoid_violation(p); bad && bad->states.empty())
    return MonadViolation{"audit", bad->message, {}, {}, {}, {}};
  const auto tt = compose(p.t, p.t);
  const std::size_t n = p.t.states().size(), k = p.t.input().size();
  std::vector<Word> frontier{Word{}};
  for (std::size_t len = 0; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      auto lhs = eval_word(tt, w);
      auto rhs = eval_word(p.t, w);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t x2 = 0; x2 < n; ++x2)
          for (std::size_t y = 0; y < n; ++y)
            for (std::size_t y2 = 0; y2 < n; ++y2) {
              const auto& l = lhs(x * n + x2, y * n + y2);
              if (l.is_empty()) continue;
              if (auto v = inclusion_witness(l, rhs(detail::table_mul(p, x, x2), detail::table_mul(p, y, y2))))
                return MonadViolation{"audit", "composite exceeds the evaluation at the product states",
                                      {},      {x, x2, y, y2},
                                      w,       *v};
            }
      if (len < maxlen)
        for (std::size_t a = 0; a < k; ++a) {
          auto u = w;
          u.push_back(a);
          next.push_back(std::move(u));
        }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

/// All axioms; the violation reported is the first failing one in the order
/// monoid, unit, multiplication, audit.
inline MonadReport check_monad(const MonadPresentation& p, std::optional<std::size_t> audit_len = std::nullopt) {
  MonadReport r;
  auto m = monoid_violation(p);
  auto u = unit_violation(p);
  const bool endo = p.t.input() == p.t.output();
  std::optional<MonadViolation> x;
  if (endo)
    x = mult_violation(p);
  else
    x = MonadViolation{"mult", "input and output alphabets differ", {}, {}, {}, {}};
  r.monoid = !m;
  r.unit = !u;
  r.mult = !x;
  std::optional<MonadViolation> a;
  if (audit_len) {
    a = endo ? audit_mult(p, *audit_len) : x;
    if (a) a->axiom = "audit";
    r.audit = !a;
  }
  if (m)
    r.violation = m;
  else if (u)
    r.violation = u;
  else if (x)
    r.violation = x;
  else if (a)
    r.violation = a;
  return r;
}

}  // namespace tdx
