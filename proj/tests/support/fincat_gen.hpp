#pragma once

#include <set>
#include <string>
#include <vector>

#include "support/random.hpp"
#include "tdx/profunctor.hpp"
#include "tdx/union_find.hpp"

namespace tdx::testing {

inline FiniteCategory point() { return FiniteCategory::discrete(ObjectSet{"o"}); }
inline FiniteCategory two_points() { return FiniteCategory::discrete(ObjectSet{"x", "y"}); }

inline FiniteCategory chain3() {
  return {ObjectSet{"0", "1", "2"},
          {{"i0", "0", "0"}, {"i1", "1", "1"}, {"i2", "2", "2"}, {"u", "0", "1"}, {"v", "1", "2"}, {"vu", "0", "2"}},
          {{"0", "i0"}, {"1", "i1"}, {"2", "i2"}},
          {{"v", "u", "vu"}}};
}

/// Two parallel arrows s, t : 0 → 1.
inline FiniteCategory parallel_pair() {
  return {ObjectSet{"0", "1"}, {{"i0", "0", "0"}, {"i1", "1", "1"}, {"s", "0", "1"}, {"t", "0", "1"}},
          {{"0", "i0"}, {"1", "i1"}}, {}};
}

/// z → x and z → y.
inline FiniteCategory span_shape() {
  return {ObjectSet{"x", "y", "z"},
          {{"ix", "x", "x"}, {"iy", "y", "y"}, {"iz", "z", "z"}, {"f", "z", "x"}, {"g", "z", "y"}},
          {{"x", "ix"}, {"y", "iy"}, {"z", "iz"}},
          {}};
}

inline FiniteCategory cyclic2() { return monoid_category({{"1", "s"}, 0, {0, 1, 1, 0}}); }
inline FiniteCategory idempotent() { return monoid_category({{"1", "e"}, 0, {0, 1, 1, 1}}); }

/// Small categories with at most three objects and eight morphisms.
inline std::vector<FiniteCategory> small_categories() {
  return {point(),    two_points(),  interval_category(), chain3(),
          cyclic2(),  idempotent(),  parallel_pair(),     span_shape(),
          coproduct_category(interval_category(), cyclic2()).category};
}

/// Categories with at most two objects.
inline std::vector<FiniteCategory> tiny_categories() {
  return {point(), two_points(), interval_category(), cyclic2(), idempotent(), parallel_pair()};
}

/// P(a, b) = 𝒜(x, a) × ℬ(b, y).
inline FiniteProfunctor representable(const FiniteCategory& A, std::size_t x, const FiniteCategory& B, std::size_t y) {
  const std::size_t nb = B.object_count();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(A.object_count() * nb);
  std::vector<std::vector<std::string>> elements(pairs.size());
  for (std::size_t a = 0; a < A.object_count(); ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (auto f : A.hom(x, a))
        for (auto g : B.hom(b, y)) {
          pairs[a * nb + b].emplace_back(f, g);
          elements[a * nb + b].push_back(pair_name(A.morphisms()[f], B.morphisms()[g]));
        }
  auto position = [&](std::size_t a, std::size_t b, std::pair<std::size_t, std::size_t> fg) {
    const auto& v = pairs[a * nb + b];
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), fg) - v.begin());
  };
  return make_profunctor(
      A, B, std::move(elements),
      [&](std::size_t u, std::size_t b, std::size_t i) {
        auto [f, g] = pairs[A.src(u) * nb + b][i];
        return position(A.tgt(u), b, {A.compose(u, f), g});
      },
      [&](std::size_t a, std::size_t i, std::size_t v) {
        auto [f, g] = pairs[a * nb + B.tgt(v)][i];
        return position(a, B.src(v), {f, B.compose(g, v)});
      });
}

/// The constant singleton profunctor.
inline FiniteProfunctor terminal_profunctor(const FiniteCategory& A, const FiniteCategory& B) {
  std::vector<std::vector<std::string>> elements(A.object_count() * B.object_count(), {"*"});
  return make_profunctor(A, B, std::move(elements), [](std::size_t, std::size_t, std::size_t) { return 0; },
                         [](std::size_t, std::size_t, std::size_t) { return 0; });
}

/// Quotient of P by the least action-stable equivalence containing `glue`,
/// given as (slot, x, y) triples.
inline FiniteProfunctor quotient(const FiniteProfunctor& p,
                                 const std::vector<std::array<std::size_t, 3>>& glue) {
  const auto& A = p.dom();
  const auto& B = p.cod();
  const std::size_t nb = B.object_count(), slots = A.object_count() * nb;
  std::vector<detail::DisjointSets> uf;
  for (std::size_t s = 0; s < slots; ++s) uf.emplace_back(p.size(s / nb, s % nb));
  for (auto [s, x, y] : glue) uf[s].unite(x, y);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t s = 0; s < slots; ++s) {
      const std::size_t a = s / nb, b = s % nb;
      for (std::size_t x = 0; x < p.size(a, b); ++x) {
        const auto r = uf[s].find(x);
        if (r == x) continue;
        for (std::size_t f = 0; f < A.morphism_count(); ++f) {
          if (A.src(f) != a) continue;
          auto& t = uf[A.tgt(f) * nb + b];
          auto fx = p.act_left(f, b, x), fr = p.act_left(f, b, r);
          if (t.find(fx) != t.find(fr)) {
            t.unite(fx, fr);
            grew = true;
          }
        }
        for (std::size_t g = 0; g < B.morphism_count(); ++g) {
          if (B.tgt(g) != b) continue;
          auto& t = uf[a * nb + B.src(g)];
          auto xg = p.act_right(a, x, g), rg = p.act_right(a, r, g);
          if (t.find(xg) != t.find(rg)) {
            t.unite(xg, rg);
            grew = true;
          }
        }
      }
    }
  }
  std::vector<std::vector<std::size_t>> cls(slots);
  std::vector<std::vector<std::size_t>> rep(slots);
  std::vector<std::vector<std::string>> elements(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    std::size_t count = 0;
    cls[s] = uf[s].classes(&count);
    rep[s].assign(count, 0);
    elements[s].resize(count);
    for (std::size_t x = p.size(s / nb, s % nb); x-- > 0;) {
      rep[s][cls[s][x]] = x;
      elements[s][cls[s][x]] = p.elements(s / nb, s % nb)[x];
    }
  }
  return make_profunctor(
      A, B, std::move(elements),
      [&](std::size_t f, std::size_t b, std::size_t k) {
        return cls[A.tgt(f) * nb + b][p.act_left(f, b, rep[A.src(f) * nb + b][k])];
      },
      [&](std::size_t a, std::size_t k, std::size_t g) {
        return cls[a * nb + B.src(g)][p.act_right(a, rep[a * nb + B.tgt(g)][k], g)];
      });
}

/// Sum of one to three representable or constant pieces, then glued at a
/// few random places.
inline FiniteProfunctor random_profunctor(Rng& rng, const FiniteCategory& A, const FiniteCategory& B) {
  std::vector<FiniteProfunctor> parts;
  const std::size_t pieces = pick(rng, 1, 3);
  for (std::size_t i = 0; i < pieces; ++i) {
    if (pick(rng, 0, 3) == 0)
      parts.push_back(terminal_profunctor(A, B));
    else
      parts.push_back(representable(A, pick(rng, 0, A.object_count() - 1), B, pick(rng, 0, B.object_count() - 1)));
  }
  auto p = profunctor_sum(parts);
  std::vector<std::array<std::size_t, 3>> glue;
  const std::size_t nb = B.object_count();
  for (std::size_t i = pick(rng, 0, 2); i > 0; --i) {
    const std::size_t s = pick(rng, 0, A.object_count() * nb - 1);
    const std::size_t n = p.size(s / nb, s % nb);
    if (n >= 2) glue.push_back({s, pick(rng, 0, n - 1), pick(rng, 0, n - 1)});
  }
  return glue.empty() ? p : quotient(p, glue);
}

inline const FiniteCategory& random_category(Rng& rng, const std::vector<FiniteCategory>& pool) {
  return pool[pick(rng, 0, pool.size() - 1)];
}

}  // namespace tdx::testing
