#pragma once

// Set-valued profunctors P : 𝒜 ⇸ ℬ between finite categories, covariant in
// 𝒜 and contravariant in ℬ. An element x ∈ P(a,b) is acted on by f : a → a'
// on the left (f·x ∈ P(a',b)) and by g : b' → b on the right
// (x·g ∈ P(a,b')).

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tdx/error.hpp"
#include "tdx/fincat.hpp"
#include "tdx/names.hpp"
#include "tdx/union_find.hpp"

namespace tdx {

class FiniteProfunctor {
 public:
  /// Value sets indexed by a * |ℬ| + b; actions start out undefined and are
  /// filled with set_left / set_right.
  FiniteProfunctor(FiniteCategory dom, FiniteCategory cod, std::vector<std::vector<std::string>> elements)
      : dom_(std::move(dom)), cod_(std::move(cod)), elements_(std::move(elements)) {
    if (elements_.size() != dom_.object_count() * cod_.object_count())
      throw InputError("profunctor: one value set per object pair is required");
    left_.assign(dom_.morphism_count(), std::vector<IndexMap>(cod_.object_count()));
    right_.assign(cod_.morphism_count(), std::vector<IndexMap>(dom_.object_count()));
  }

  [[nodiscard]] const FiniteCategory& dom() const noexcept { return dom_; }
  [[nodiscard]] const FiniteCategory& cod() const noexcept { return cod_; }
  [[nodiscard]] std::size_t slot(std::size_t a, std::size_t b) const { return a * cod_.object_count() + b; }
  [[nodiscard]] const std::vector<std::string>& elements(std::size_t a, std::size_t b) const {
    return elements_.at(slot(a, b));
  }
  [[nodiscard]] std::size_t size(std::size_t a, std::size_t b) const { return elements(a, b).size(); }
  [[nodiscard]] std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& e : elements_) n += e.size();
    return n;
  }

  /// f·x for f : a → a' and x ∈ P(a, b).
  [[nodiscard]] std::size_t act_left(std::size_t f, std::size_t b, std::size_t x) const { return left_[f][b].at(x); }
  /// x·g for x ∈ P(a, b) and g : b' → b.
  [[nodiscard]] std::size_t act_right(std::size_t a, std::size_t x, std::size_t g) const { return right_[g][a].at(x); }

  [[nodiscard]] const IndexMap& left_table(std::size_t f, std::size_t b) const { return left_[f][b]; }
  [[nodiscard]] const IndexMap& right_table(std::size_t g, std::size_t a) const { return right_[g][a]; }

  void set_left(std::size_t f, std::size_t b, IndexMap m) { left_.at(f).at(b) = std::move(m); }
  void set_right(std::size_t g, std::size_t a, IndexMap m) { right_.at(g).at(a) = std::move(m); }

  /// First violated profunctor axiom, if any.
  [[nodiscard]] std::optional<std::string> defect() const {
    const std::size_t na = dom_.object_count(), nb = cod_.object_count();
    for (std::size_t f = 0; f < dom_.morphism_count(); ++f)
      for (std::size_t b = 0; b < nb; ++b) {
        const auto& m = left_[f][b];
        if (m.size() != size(dom_.src(f), b)) return "left action of '" + dom_.morphisms()[f] + "' is not total";
        for (auto y : m)
          if (y >= size(dom_.tgt(f), b)) return "left action of '" + dom_.morphisms()[f] + "' leaves its target";
      }
    for (std::size_t g = 0; g < cod_.morphism_count(); ++g)
      for (std::size_t a = 0; a < na; ++a) {
        const auto& m = right_[g][a];
        if (m.size() != size(a, cod_.tgt(g))) return "right action of '" + cod_.morphisms()[g] + "' is not total";
        for (auto y : m)
          if (y >= size(a, cod_.src(g))) return "right action of '" + cod_.morphisms()[g] + "' leaves its target";
      }
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t x = 0; x < size(a, b); ++x) {
          if (act_left(dom_.identity(a), b, x) != x) return "left identity does not act trivially";
          if (act_right(a, x, cod_.identity(b)) != x) return "right identity does not act trivially";
        }
    for (std::size_t g = 0; g < dom_.morphism_count(); ++g)
      for (std::size_t f = 0; f < dom_.morphism_count(); ++f) {
        auto gf = dom_.try_compose(g, f);
        if (!gf) continue;
        for (std::size_t b = 0; b < nb; ++b)
          for (std::size_t x = 0; x < size(dom_.src(f), b); ++x)
            if (act_left(*gf, b, x) != act_left(g, b, act_left(f, b, x))) return "left action is not functorial";
      }
    for (std::size_t g = 0; g < cod_.morphism_count(); ++g)
      for (std::size_t f = 0; f < cod_.morphism_count(); ++f) {
        auto gf = cod_.try_compose(g, f);
        if (!gf) continue;
        // x·(g∘f) = (x·g)·f
        for (std::size_t a = 0; a < na; ++a)
          for (std::size_t x = 0; x < size(a, cod_.tgt(g)); ++x)
            if (act_right(a, x, *gf) != act_right(a, act_right(a, x, g), f)) return "right action is not functorial";
      }
    for (std::size_t f = 0; f < dom_.morphism_count(); ++f)
      for (std::size_t g = 0; g < cod_.morphism_count(); ++g) {
        const auto a = dom_.src(f), b = cod_.tgt(g);
        for (std::size_t x = 0; x < size(a, b); ++x)
          if (act_right(dom_.tgt(f), act_left(f, b, x), g) != act_left(f, cod_.src(g), act_right(a, x, g)))
            return "left and right actions do not commute";
      }
    return std::nullopt;
  }

  void validate() const {
    if (auto why = defect()) throw InputError("profunctor: " + *why);
  }

  friend bool operator==(const FiniteProfunctor& x, const FiniteProfunctor& y) {
    return x.dom_ == y.dom_ && x.cod_ == y.cod_ && x.elements_ == y.elements_ && x.left_ == y.left_ &&
           x.right_ == y.right_;
  }

 private:
  FiniteCategory dom_, cod_;
  std::vector<std::vector<std::string>> elements_;
  std::vector<std::vector<IndexMap>> left_;   // [f][b]
  std::vector<std::vector<IndexMap>> right_;  // [g][a]
};

/// Profunctor with the same value counts and all actions read off `act`.
inline FiniteProfunctor make_profunctor(
    const FiniteCategory& dom, const FiniteCategory& cod, std::vector<std::vector<std::string>> elements,
    const std::function<std::size_t(std::size_t f, std::size_t b, std::size_t x)>& left,
    const std::function<std::size_t(std::size_t a, std::size_t x, std::size_t g)>& right) {
  FiniteProfunctor p(dom, cod, std::move(elements));
  for (std::size_t f = 0; f < dom.morphism_count(); ++f)
    for (std::size_t b = 0; b < cod.object_count(); ++b) {
      IndexMap m;
      for (std::size_t x = 0; x < p.size(dom.src(f), b); ++x) m.push_back(left(f, b, x));
      p.set_left(f, b, std::move(m));
    }
  for (std::size_t g = 0; g < cod.morphism_count(); ++g)
    for (std::size_t a = 0; a < dom.object_count(); ++a) {
      IndexMap m;
      for (std::size_t x = 0; x < p.size(a, cod.tgt(g)); ++x) m.push_back(right(a, x, g));
      p.set_right(g, a, std::move(m));
    }
  return p;
}

/// Profunctor between discrete categories: a relation-like family of sets.
inline FiniteProfunctor discrete_profunctor(const ObjectSet& a, const ObjectSet& b,
                                            std::vector<std::vector<std::string>> elements) {
  auto da = FiniteCategory::discrete(a), db = FiniteCategory::discrete(b);
  return make_profunctor(da, db, std::move(elements), [](std::size_t, std::size_t, std::size_t x) { return x; },
                         [](std::size_t, std::size_t x, std::size_t) { return x; });
}

/// hom(a, a') = 𝒜(a', a), acted on by composition.
inline FiniteProfunctor hom_profunctor(const FiniteCategory& c) {
  const std::size_t n = c.object_count();
  std::vector<std::vector<std::size_t>> homs(n * n);
  std::vector<std::vector<std::string>> elements(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t a2 = 0; a2 < n; ++a2) {
      homs[a * n + a2] = c.hom(a2, a);
      for (auto m : homs[a * n + a2]) elements[a * n + a2].push_back(c.morphisms()[m]);
    }
  auto position = [&](std::size_t a, std::size_t a2, std::size_t m) {
    const auto& h = homs[a * n + a2];
    return static_cast<std::size_t>(std::find(h.begin(), h.end(), m) - h.begin());
  };
  return make_profunctor(
      c, c, std::move(elements),
      [&](std::size_t f, std::size_t b, std::size_t x) {
        return position(c.tgt(f), b, c.compose(f, homs[c.src(f) * n + b][x]));
      },
      [&](std::size_t a, std::size_t x, std::size_t g) {
        return position(a, c.src(g), c.compose(homs[a * n + c.tgt(g)][x], g));
      });
}

// ---------------------------------------------------------------------------
// Coend composition

/// Composite of P : 𝒜 ⇸ ℬ and Q : ℬ ⇸ 𝒞 with the class of every raw pair.
struct CoendComposite {
  FiniteProfunctor value;
  /// offsets[(a,c)][b]: start of the block of pairs over b in the raw
  /// enumeration of (a,c); class_of[(a,c)][raw] its class.
  std::vector<std::vector<std::size_t>> offsets;
  std::vector<std::vector<std::size_t>> class_of;
  /// Representative (b, p, q) of each class, the least raw pair.
  std::vector<std::vector<std::array<std::size_t, 3>>> representative;
  std::size_t inner_count = 0, outer_count = 0;

  [[nodiscard]] std::size_t cls(const FiniteProfunctor& q, std::size_t a, std::size_t b, std::size_t c, std::size_t x,
                                std::size_t y) const {
    const auto s = a * outer_count + c;
    return class_of[s][offsets[s][b] + x * q.size(b, c) + y];
  }
};

inline CoendComposite compose_prof_detailed(const FiniteProfunctor& p, const FiniteProfunctor& q) {
  if (!(p.cod() == q.dom())) throw FrameMismatch("compose_prof: codomain of the first is not the domain of the second");
  const auto& A = p.dom();
  const auto& B = p.cod();
  const auto& C = q.cod();
  const std::size_t na = A.object_count(), nb = B.object_count(), nc = C.object_count();
  CoendComposite out{FiniteProfunctor(A, C, std::vector<std::vector<std::string>>(na * nc)), {}, {}, {}, nb, nc};
  out.offsets.resize(na * nc);
  out.class_of.resize(na * nc);
  out.representative.resize(na * nc);
  std::vector<std::vector<std::string>> elements(na * nc);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t c = 0; c < nc; ++c) {
      const auto s = a * nc + c;
      std::size_t total = 0;
      for (std::size_t b = 0; b < nb; ++b) {
        out.offsets[s].push_back(total);
        total += p.size(a, b) * q.size(b, c);
      }
      auto raw = [&](std::size_t b, std::size_t x, std::size_t y) { return out.offsets[s][b] + x * q.size(b, c) + y; };
      detail::DisjointSets uf(total);
      // (x·f, y) ~ (x, f·y) for f : b' → b, x ∈ P(a,b), y ∈ Q(b',c).
      for (std::size_t f = 0; f < B.morphism_count(); ++f) {
        const auto b2 = B.src(f), b = B.tgt(f);
        for (std::size_t x = 0; x < p.size(a, b); ++x)
          for (std::size_t y = 0; y < q.size(b2, c); ++y)
            uf.unite(raw(b2, p.act_right(a, x, f), y), raw(b, x, q.act_left(f, c, y)));
      }
      std::size_t count = 0;
      out.class_of[s] = uf.classes(&count);
      out.representative[s].resize(count);
      std::vector<char> seen(count, 0);
      std::set<std::string> used;
      elements[s].resize(count);
      for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t x = 0; x < p.size(a, b); ++x)
          for (std::size_t y = 0; y < q.size(b, c); ++y) {
            auto k = out.class_of[s][raw(b, x, y)];
            if (seen[k]) continue;
            seen[k] = 1;
            out.representative[s][k] = {b, x, y};
            auto name = pair_name(p.elements(a, b)[x], q.elements(b, c)[y]);
            if (!used.insert(name).second) {
              name += "@" + B.objects()[b];
              used.insert(name);
            }
            elements[s][k] = name;
          }
    }
  out.value = make_profunctor(
      A, C, std::move(elements),
      [&](std::size_t f, std::size_t c, std::size_t k) {
        auto [b, x, y] = out.representative[A.src(f) * nc + c][k];
        return out.cls(q, A.tgt(f), b, c, p.act_left(f, b, x), y);
      },
      [&](std::size_t a, std::size_t k, std::size_t g) {
        auto [b, x, y] = out.representative[a * nc + C.tgt(g)][k];
        return out.cls(q, a, b, C.src(g), x, q.act_right(b, y, g));
      });
  return out;
}

/// Coend composite (Q∘P)(a,c) = ∫^b P(a,b) × Q(b,c), in diagrammatic order.
inline FiniteProfunctor compose_prof(const FiniteProfunctor& p, const FiniteProfunctor& q) {
  return compose_prof_detailed(p, q).value;
}

// ---------------------------------------------------------------------------
// Natural transformations and cells

/// Cell P ⇒ P' over functors F on domains and G on codomains: components
/// P(a,b) → P'(F a, G b).
struct ProfCell {
  FiniteProfunctor source, target;
  FiniteFunctor left, right;
  std::vector<IndexMap> components;  // indexed by source.slot(a, b)
};

/// Transformation between parallel profunctors.
struct NatTransf {
  FiniteProfunctor source, target;
  std::vector<IndexMap> components;
};

inline ProfCell as_cell(const NatTransf& t) {
  return {t.source, t.target, identity_functor(t.source.dom()), identity_functor(t.source.cod()), t.components};
}

inline std::optional<std::string> cell_defect(const ProfCell& c) {
  const auto& P = c.source;
  const auto& Q = c.target;
  if (!(c.left.dom == P.dom()) || !(c.left.cod == Q.dom()) || !(c.right.dom == P.cod()) || !(c.right.cod == Q.cod()))
    return "cell functors do not match the boundary profunctors";
  const std::size_t na = P.dom().object_count(), nb = P.cod().object_count();
  if (c.components.size() != na * nb) return "components are not total";
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& m = c.components[P.slot(a, b)];
      if (m.size() != P.size(a, b)) return "component is not total";
      for (auto y : m)
        if (y >= Q.size(c.left.on_objects[a], c.right.on_objects[b])) return "component leaves its target";
    }
  for (std::size_t f = 0; f < P.dom().morphism_count(); ++f)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t x = 0; x < P.size(P.dom().src(f), b); ++x) {
        auto lhs = c.components[P.slot(P.dom().tgt(f), b)][P.act_left(f, b, x)];
        auto rhs = Q.act_left(c.left.on_morphisms[f], c.right.on_objects[b], c.components[P.slot(P.dom().src(f), b)][x]);
        if (lhs != rhs) return "not natural in the domain variable";
      }
  for (std::size_t g = 0; g < P.cod().morphism_count(); ++g)
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t x = 0; x < P.size(a, P.cod().tgt(g)); ++x) {
        auto lhs = c.components[P.slot(a, P.cod().src(g))][P.act_right(a, x, g)];
        auto rhs = Q.act_right(c.left.on_objects[a], c.components[P.slot(a, P.cod().tgt(g))][x], c.right.on_morphisms[g]);
        if (lhs != rhs) return "not natural in the codomain variable";
      }
  return std::nullopt;
}

inline bool is_natural(const ProfCell& c) { return !cell_defect(c).has_value(); }
inline bool is_natural(const NatTransf& t) {
  if (!(t.source.dom() == t.target.dom()) || !(t.source.cod() == t.target.cod())) return false;
  return is_natural(as_cell(t));
}

inline bool is_iso(const NatTransf& t) {
  if (!is_natural(t)) return false;
  for (std::size_t s = 0; s < t.components.size(); ++s) {
    std::vector<char> hit(t.target.size(s / t.source.cod().object_count(), s % t.source.cod().object_count()), 0);
    if (hit.size() != t.components[s].size()) return false;
    for (auto y : t.components[s]) {
      if (hit[y]) return false;
      hit[y] = 1;
    }
  }
  return true;
}

inline bool cells_equal(const ProfCell& x, const ProfCell& y) {
  return x.source == y.source && x.target == y.target && same_functor(x.left, y.left) &&
         same_functor(x.right, y.right) && x.components == y.components;
}

/// β after α.
inline ProfCell vcompose(const ProfCell& alpha, const ProfCell& beta) {
  if (!(alpha.target == beta.source)) throw FrameMismatch("vcompose: cells are not composable");
  ProfCell out{alpha.source, beta.target, compose_functors(alpha.left, beta.left),
               compose_functors(alpha.right, beta.right), {}};
  const auto& P = alpha.source;
  for (std::size_t a = 0; a < P.dom().object_count(); ++a)
    for (std::size_t b = 0; b < P.cod().object_count(); ++b) {
      const auto& first = alpha.components[P.slot(a, b)];
      const auto& second = beta.components[alpha.target.slot(alpha.left.on_objects[a], alpha.right.on_objects[b])];
      IndexMap m;
      for (auto y : first) m.push_back(second[y]);
      out.components.push_back(std::move(m));
    }
  return out;
}

/// Horizontal composite of α : P ⇒ P' and β : Q ⇒ Q' sharing the middle
/// functor; classes [(x, y)] go to [(α x, β y)].
inline ProfCell hcompose(const ProfCell& alpha, const ProfCell& beta) {
  if (!same_functor(alpha.right, beta.left)) throw FrameMismatch("hcompose: cells do not share a tight boundary");
  auto src = compose_prof_detailed(alpha.source, beta.source);
  auto tgt = compose_prof_detailed(alpha.target, beta.target);
  const auto& P = alpha.source;
  const auto& Q = beta.source;
  const auto& G = alpha.right;
  const std::size_t na = P.dom().object_count(), nb = P.cod().object_count(), nc = Q.cod().object_count();
  ProfCell out{src.value, tgt.value, alpha.left, beta.right, std::vector<IndexMap>(na * nc)};
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t c = 0; c < nc; ++c) {
      const auto s = a * nc + c;
      std::vector<std::optional<std::size_t>> image(src.value.size(a, c));
      const auto fa = alpha.left.on_objects[a], hc = beta.right.on_objects[c];
      for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t x = 0; x < P.size(a, b); ++x)
          for (std::size_t y = 0; y < Q.size(b, c); ++y) {
            auto k = src.cls(Q, a, b, c, x, y);
            auto v = tgt.cls(beta.target, fa, G.on_objects[b], hc, alpha.components[P.slot(a, b)][x],
                             beta.components[Q.slot(b, c)][y]);
            if (image[k] && *image[k] != v) throw Error("hcompose: components are not compatible with the coend");
            image[k] = v;
          }
      for (auto& v : image) out.components[s].push_back(*v);
    }
  return out;
}

/// Identity cell on a profunctor.
inline ProfCell identity_cell(const FiniteProfunctor& p) {
  std::vector<IndexMap> comps;
  for (std::size_t a = 0; a < p.dom().object_count(); ++a)
    for (std::size_t b = 0; b < p.cod().object_count(); ++b) {
      IndexMap m(p.size(a, b));
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
      comps.push_back(std::move(m));
    }
  return {p, p, identity_functor(p.dom()), identity_functor(p.cod()), std::move(comps)};
}

/// Identity cell on a functor F : 𝒜 → ℬ, from hom_𝒜 to hom_ℬ: h ↦ F h.
inline ProfCell identity_cell(const FiniteFunctor& f) {
  auto src = hom_profunctor(f.dom);
  auto tgt = hom_profunctor(f.cod);
  const auto& A = f.dom;
  const auto& B = f.cod;
  std::vector<IndexMap> comps;
  for (std::size_t a = 0; a < A.object_count(); ++a)
    for (std::size_t a2 = 0; a2 < A.object_count(); ++a2) {
      auto target_hom = B.hom(f.on_objects[a2], f.on_objects[a]);
      IndexMap m;
      for (auto h : A.hom(a2, a))
        m.push_back(static_cast<std::size_t>(
            std::find(target_hom.begin(), target_hom.end(), f.on_morphisms[h]) - target_hom.begin()));
      comps.push_back(std::move(m));
    }
  return {src, tgt, f, f, std::move(comps)};
}

/// λ : hom ∘ P ⇒ P, [(h, x)] ↦ h·x.
inline NatTransf left_unitor(const FiniteProfunctor& p) {
  auto h = hom_profunctor(p.dom());
  auto comp = compose_prof_detailed(h, p);
  const auto& A = p.dom();
  NatTransf out{comp.value, p, {}};
  for (std::size_t a = 0; a < A.object_count(); ++a)
    for (std::size_t b = 0; b < p.cod().object_count(); ++b) {
      IndexMap m;
      for (const auto& [a2, x, y] : comp.representative[comp.value.slot(a, b)]) {
        auto arrow = A.hom(a2, a)[x];
        m.push_back(p.act_left(arrow, b, y));
      }
      out.components.push_back(std::move(m));
    }
  return out;
}

/// ρ : P ∘ hom ⇒ P, [(x, h)] ↦ x·h.
inline NatTransf right_unitor(const FiniteProfunctor& p) {
  auto h = hom_profunctor(p.cod());
  auto comp = compose_prof_detailed(p, h);
  const auto& B = p.cod();
  NatTransf out{comp.value, p, {}};
  for (std::size_t a = 0; a < p.dom().object_count(); ++a)
    for (std::size_t b = 0; b < B.object_count(); ++b) {
      IndexMap m;
      for (const auto& [b2, x, y] : comp.representative[comp.value.slot(a, b)]) {
        auto arrow = B.hom(b, b2)[y];
        m.push_back(p.act_right(a, x, arrow));
      }
      out.components.push_back(std::move(m));
    }
  return out;
}

/// α : (P;Q);R ⇒ P;(Q;R), [([x,y], z)] ↦ [(x, [y,z])], built by running
/// through every raw triple; throws if the assignment is not a function.
inline NatTransf associator(const FiniteProfunctor& p, const FiniteProfunctor& q, const FiniteProfunctor& r) {
  auto pq = compose_prof_detailed(p, q);
  auto qr = compose_prof_detailed(q, r);
  auto left = compose_prof_detailed(pq.value, r);
  auto right = compose_prof_detailed(p, qr.value);
  const std::size_t na = p.dom().object_count(), nb = p.cod().object_count(), nc = q.cod().object_count(),
                    nd = r.cod().object_count();
  NatTransf out{left.value, right.value, std::vector<IndexMap>(na * nd)};
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t d = 0; d < nd; ++d) {
      std::vector<std::optional<std::size_t>> image(left.value.size(a, d));
      for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t c = 0; c < nc; ++c)
          for (std::size_t x = 0; x < p.size(a, b); ++x)
            for (std::size_t y = 0; y < q.size(b, c); ++y)
              for (std::size_t z = 0; z < r.size(c, d); ++z) {
                auto l = left.cls(r, a, c, d, pq.cls(q, a, b, c, x, y), z);
                auto rr = right.cls(qr.value, a, b, d, x, qr.cls(r, b, c, d, y, z));
                if (image[l] && *image[l] != rr) throw Error("associator: not well defined");
                image[l] = rr;
              }
      for (auto& v : image) out.components[a * nd + d].push_back(*v);
    }
  return out;
}

/// Every natural family P ⇒ Q, by exhaustive search.
inline std::vector<NatTransf> nat_trans_enumerate(const FiniteProfunctor& p, const FiniteProfunctor& q) {
  if (!(p.dom() == q.dom()) || !(p.cod() == q.cod())) throw FrameMismatch("nat_trans_enumerate: not parallel");
  const std::size_t slots = p.dom().object_count() * p.cod().object_count();
  const std::size_t nb = p.cod().object_count();
  std::vector<NatTransf> out;
  std::vector<IndexMap> comps(slots);
  for (std::size_t s = 0; s < slots; ++s) comps[s].assign(p.size(s / nb, s % nb), 0);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t s, std::size_t x) {
    if (s == slots) {
      NatTransf t{p, q, comps};
      if (is_natural(t)) out.push_back(std::move(t));
      return;
    }
    if (x == comps[s].size()) return go(s + 1, 0);
    for (std::size_t y = 0; y < q.size(s / nb, s % nb); ++y) {
      comps[s][x] = y;
      go(s, x + 1);
    }
  };
  go(0, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Collage and cotabulator

/// The collage of P : 𝒜 ⇸ ℬ: objects 𝒜₀ ⊔ ℬ₀, and each x ∈ P(a,b) a
/// hetero-arrow b → a; the barrel sends the ℬ-fiber to 0 and the 𝒜-fiber to 1.
struct Collage {
  FiniteCategory category;
  FiniteFunctor barrel;
  FiniteFunctor dom_inclusion, cod_inclusion;
  /// Morphism index of the hetero-arrow of x ∈ P(a,b).
  std::vector<std::vector<std::size_t>> hetero;
};

inline Collage collage(const FiniteProfunctor& p) {
  const auto& A = p.dom();
  const auto& B = p.cod();
  const std::size_t na = A.object_count(), ma = A.morphism_count(), mb = B.morphism_count();
  auto objects = sum_names(A.objects(), B.objects());
  std::vector<std::string> names;
  IndexMap src, tgt;
  for (std::size_t f = 0; f < ma; ++f) {
    names.push_back(pair_name("l", A.morphisms()[f]));
    src.push_back(A.src(f));
    tgt.push_back(A.tgt(f));
  }
  for (std::size_t g = 0; g < mb; ++g) {
    names.push_back(pair_name("r", B.morphisms()[g]));
    src.push_back(na + B.src(g));
    tgt.push_back(na + B.tgt(g));
  }
  std::vector<std::vector<std::size_t>> hetero(na * B.object_count());
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < B.object_count(); ++b)
      for (std::size_t x = 0; x < p.size(a, b); ++x) {
        hetero[p.slot(a, b)].push_back(names.size());
        names.push_back(pair_name("h", pair_name(pair_name(A.objects()[a], B.objects()[b]), p.elements(a, b)[x])));
        src.push_back(na + b);
        tgt.push_back(a);
      }
  const std::size_t nm = names.size();
  IndexMap ids;
  for (std::size_t a = 0; a < na; ++a) ids.push_back(A.identity(a));
  for (std::size_t b = 0; b < B.object_count(); ++b) ids.push_back(ma + B.identity(b));
  std::vector<std::optional<std::size_t>> table(nm * nm);
  for (std::size_t g = 0; g < ma; ++g)
    for (std::size_t f = 0; f < ma; ++f) table[g * nm + f] = A.try_compose(g, f);
  for (std::size_t g = 0; g < mb; ++g)
    for (std::size_t f = 0; f < mb; ++f)
      if (auto r = B.try_compose(g, f)) table[(ma + g) * nm + ma + f] = ma + *r;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < B.object_count(); ++b)
      for (std::size_t x = 0; x < p.size(a, b); ++x) {
        auto h = hetero[p.slot(a, b)][x];
        for (std::size_t f = 0; f < ma; ++f)
          if (A.src(f) == a) table[f * nm + h] = hetero[p.slot(A.tgt(f), b)][p.act_left(f, b, x)];
        for (std::size_t g = 0; g < mb; ++g)
          if (B.tgt(g) == b) table[h * nm + ma + g] = hetero[p.slot(a, B.src(g))][p.act_right(a, x, g)];
      }
  FiniteCategory c(std::move(objects), MorphismSet(std::move(names)), src, tgt, ids, std::move(table));
  auto interval = interval_category();
  FiniteFunctor barrel{c, interval, {}, {}};
  for (std::size_t o = 0; o < c.object_count(); ++o) barrel.on_objects.push_back(o < na ? 1 : 0);
  for (std::size_t m = 0; m < nm; ++m) barrel.on_morphisms.push_back(m < ma ? 1 : (m < ma + mb ? 0 : 2));
  FiniteFunctor ia{A, c, {}, {}}, ib{B, c, {}, {}};
  for (std::size_t a = 0; a < na; ++a) ia.on_objects.push_back(a);
  for (std::size_t f = 0; f < ma; ++f) ia.on_morphisms.push_back(f);
  for (std::size_t b = 0; b < B.object_count(); ++b) ib.on_objects.push_back(na + b);
  for (std::size_t g = 0; g < mb; ++g) ib.on_morphisms.push_back(ma + g);
  return {c, barrel, ia, ib, hetero};
}

/// Colimit of a diagram of parallel profunctors indexed by a finite
/// category, together with the cotabulator (the collage of the colimit).
struct Cotabulator {
  FiniteProfunctor colimit;
  std::vector<NatTransf> cocone;
  Collage collage;
};

/// `diagram[i]` is the profunctor at index object i; `transitions[u]` the
/// transformation for index morphism u, from its source to its target.
inline Cotabulator cotabulator(const FiniteCategory& index, const std::vector<FiniteProfunctor>& diagram,
                               const std::vector<NatTransf>& transitions) {
  if (diagram.size() != index.object_count() || transitions.size() != index.morphism_count())
    throw InputError("cotabulator: diagram does not match the index category");
  if (diagram.empty()) throw InputError("cotabulator: empty diagram");
  const auto& A = diagram.front().dom();
  const auto& B = diagram.front().cod();
  for (const auto& d : diagram)
    if (!(d.dom() == A) || !(d.cod() == B)) throw FrameMismatch("cotabulator: profunctors do not share a frame");
  for (std::size_t u = 0; u < transitions.size(); ++u) {
    const auto& t = transitions[u];
    if (!(t.source == diagram[index.src(u)]) || !(t.target == diagram[index.tgt(u)]) || !is_natural(t))
      throw FrameMismatch("cotabulator: transition '" + index.morphisms()[u] + "' does not fit the diagram");
  }
  const std::size_t na = A.object_count(), nb = B.object_count(), ni = diagram.size();
  std::vector<std::vector<std::string>> elements(na * nb);
  // per slot: offsets by index object, classes, and a representative (i, x)
  std::vector<std::vector<std::size_t>> offsets(na * nb), cls(na * nb);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rep(na * nb);
  for (std::size_t s = 0; s < na * nb; ++s) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < ni; ++i) {
      offsets[s].push_back(total);
      total += diagram[i].size(s / nb, s % nb);
    }
    detail::DisjointSets uf(total);
    for (std::size_t u = 0; u < index.morphism_count(); ++u) {
      const auto i = index.src(u), j = index.tgt(u);
      const auto& comp = transitions[u].components[s];
      for (std::size_t x = 0; x < comp.size(); ++x) uf.unite(offsets[s][i] + x, offsets[s][j] + comp[x]);
    }
    std::size_t count = 0;
    cls[s] = uf.classes(&count);
    rep[s].resize(count);
    elements[s].resize(count);
    std::vector<char> seen(count, 0);
    std::set<std::string> used;
    for (std::size_t i = 0; i < ni; ++i)
      for (std::size_t x = 0; x < diagram[i].size(s / nb, s % nb); ++x) {
        auto k = cls[s][offsets[s][i] + x];
        if (seen[k]) continue;
        seen[k] = 1;
        rep[s][k] = {i, x};
        auto name = diagram[i].elements(s / nb, s % nb)[x];
        if (!used.insert(name).second) {
          name = pair_name(index.objects()[i], name);
          used.insert(name);
        }
        elements[s][k] = name;
      }
  }
  auto class_of = [&](std::size_t s, std::size_t i, std::size_t x) { return cls[s][offsets[s][i] + x]; };
  auto colim = make_profunctor(
      A, B, std::move(elements),
      [&](std::size_t f, std::size_t b, std::size_t k) {
        auto [i, x] = rep[A.src(f) * nb + b][k];
        return class_of(A.tgt(f) * nb + b, i, diagram[i].act_left(f, b, x));
      },
      [&](std::size_t a, std::size_t k, std::size_t g) {
        auto [i, x] = rep[a * nb + B.tgt(g)][k];
        return class_of(a * nb + B.src(g), i, diagram[i].act_right(a, x, g));
      });
  std::vector<NatTransf> cocone;
  for (std::size_t i = 0; i < ni; ++i) {
    NatTransf t{diagram[i], colim, {}};
    for (std::size_t s = 0; s < na * nb; ++s) {
      IndexMap m;
      for (std::size_t x = 0; x < diagram[i].size(s / nb, s % nb); ++x) m.push_back(class_of(s, i, x));
      t.components.push_back(std::move(m));
    }
    cocone.push_back(std::move(t));
  }
  auto col = collage(colim);
  return {colim, std::move(cocone), std::move(col)};
}

/// Cotabulator of a family indexed by a discrete set.
inline Cotabulator cotabulator(const std::vector<FiniteProfunctor>& family) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < family.size(); ++i) names.push_back(std::to_string(i));
  std::vector<NatTransf> identities;
  for (const auto& p : family) identities.push_back({p, p, identity_cell(p).components});
  return cotabulator(FiniteCategory::discrete(ObjectSet(std::move(names))), family, identities);
}

// ---------------------------------------------------------------------------
// Companions and conjoints of functors

/// F_*(a, b) = ℬ(b, F a), acting by F on the left and precomposition on the
/// right. The companion of the identity is hom.
inline FiniteProfunctor companion_prof(const FiniteFunctor& f) {
  const auto& A = f.dom;
  const auto& B = f.cod;
  const std::size_t nb = B.object_count();
  std::vector<std::vector<std::size_t>> homs(A.object_count() * nb);
  std::vector<std::vector<std::string>> elements(A.object_count() * nb);
  for (std::size_t a = 0; a < A.object_count(); ++a)
    for (std::size_t b = 0; b < nb; ++b) {
      homs[a * nb + b] = B.hom(b, f.on_objects[a]);
      for (auto m : homs[a * nb + b]) elements[a * nb + b].push_back(B.morphisms()[m]);
    }
  auto position = [&](std::size_t a, std::size_t b, std::size_t m) {
    const auto& h = homs[a * nb + b];
    return static_cast<std::size_t>(std::find(h.begin(), h.end(), m) - h.begin());
  };
  return make_profunctor(
      A, B, std::move(elements),
      [&](std::size_t u, std::size_t b, std::size_t x) {
        return position(A.tgt(u), b, B.compose(f.on_morphisms[u], homs[A.src(u) * nb + b][x]));
      },
      [&](std::size_t a, std::size_t x, std::size_t g) {
        return position(a, B.src(g), B.compose(homs[a * nb + B.tgt(g)][x], g));
      });
}

/// F^*(b, a) = ℬ(F a, b), acting by postcomposition on the left and by F on
/// the right.
inline FiniteProfunctor conjoint_prof(const FiniteFunctor& f) {
  const auto& A = f.dom;
  const auto& B = f.cod;
  const std::size_t na = A.object_count();
  std::vector<std::vector<std::size_t>> homs(B.object_count() * na);
  std::vector<std::vector<std::string>> elements(B.object_count() * na);
  for (std::size_t b = 0; b < B.object_count(); ++b)
    for (std::size_t a = 0; a < na; ++a) {
      homs[b * na + a] = B.hom(f.on_objects[a], b);
      for (auto m : homs[b * na + a]) elements[b * na + a].push_back(B.morphisms()[m]);
    }
  auto position = [&](std::size_t b, std::size_t a, std::size_t m) {
    const auto& h = homs[b * na + a];
    return static_cast<std::size_t>(std::find(h.begin(), h.end(), m) - h.begin());
  };
  return make_profunctor(
      B, A, std::move(elements),
      [&](std::size_t g, std::size_t a, std::size_t x) {
        return position(B.tgt(g), a, B.compose(g, homs[B.src(g) * na + a][x]));
      },
      [&](std::size_t b, std::size_t x, std::size_t u) {
        return position(b, A.src(u), B.compose(homs[b * na + A.tgt(u)][x], f.on_morphisms[u]));
      });
}

struct ProfCompanionCells {
  FiniteProfunctor proarrow;
  ProfCell unit, counit;
};

namespace detail {
inline std::vector<IndexMap> identity_components(const FiniteProfunctor& p) { return identity_cell(p).components; }
}  // namespace detail

/// unit: hom_𝒜 ⇒ F_* over (id, F), h ↦ F h; counit: F_* ⇒ hom_ℬ over
/// (F, id), the identity on ℬ(b, F a).
inline ProfCompanionCells companion_prof_cells(const FiniteFunctor& f) {
  auto c = companion_prof(f);
  auto unit_components = identity_cell(f).components;
  ProfCell unit{hom_profunctor(f.dom), c, identity_functor(f.dom), f, unit_components};
  ProfCell counit{c, hom_profunctor(f.cod), f, identity_functor(f.cod), detail::identity_components(c)};
  return {c, unit, counit};
}

/// unit: hom_𝒜 ⇒ F^* over (F, id), h ↦ F h; counit: F^* ⇒ hom_ℬ over
/// (id, F), the identity on ℬ(F a, b).
inline ProfCompanionCells conjoint_prof_cells(const FiniteFunctor& f) {
  auto c = conjoint_prof(f);
  auto unit_components = identity_cell(f).components;
  ProfCell unit{hom_profunctor(f.dom), c, f, identity_functor(f.dom), unit_components};
  ProfCell counit{c, hom_profunctor(f.cod), identity_functor(f.cod), f, detail::identity_components(c)};
  return {c, unit, counit};
}

/// Sandwich identities: the vertical composite of unit and counit is the
/// identity cell of F, and the horizontal composite is the identity of the
/// proarrow once both unitors are applied.
inline bool check_sandwich(const ProfCompanionCells& cells, const FiniteFunctor& f, bool is_companion) {
  if (!is_natural(cells.unit) || !is_natural(cells.counit)) return false;
  auto v = vcompose(cells.unit, cells.counit);
  if (!cells_equal(v, identity_cell(f))) return false;
  auto h = is_companion ? hcompose(cells.unit, cells.counit) : hcompose(cells.counit, cells.unit);
  if (!is_natural(h)) return false;
  const auto& p = cells.proarrow;
  auto lam = left_unitor(p);
  auto rho = right_unitor(p);
  // companion: ρ ∘ h = λ; conjoint: λ ∘ h = ρ.
  const auto& before = is_companion ? lam : rho;
  const auto& after = is_companion ? rho : lam;
  if (!(h.source == before.source) || !(h.target == after.source)) return false;
  for (std::size_t s = 0; s < h.components.size(); ++s)
    for (std::size_t x = 0; x < h.components[s].size(); ++x)
      if (after.components[s][h.components[s][x]] != before.components[s][x]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Free promonads

/// Least reflexive-transitive relation on {0..n-1} containing `edges`,
/// found by iterating R ∪ R;E until the pair count stabilizes.
inline std::vector<std::vector<char>> free_promonad(std::size_t n,
                                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (auto [x, y] : edges) {
    if (x >= n || y >= n) throw InputError("free_promonad: edge outside the carrier");
  }
  std::size_t count = n;
  while (true) {
    auto next = r;
    for (std::size_t i = 0; i < n; ++i)
      for (auto [x, y] : edges)
        if (r[i][x]) next[i][y] = 1;
    std::size_t c = 0;
    for (const auto& row : next)
      for (auto v : row) c += v;
    r = std::move(next);
    if (c == count) return r;
    count = c;
  }
}

/// Coproduct of parallel profunctors; element x of summand i is named <i,x>.
inline FiniteProfunctor profunctor_sum(const std::vector<FiniteProfunctor>& parts) {
  if (parts.empty()) throw InputError("profunctor_sum: no summands");
  const auto& A = parts.front().dom();
  const auto& B = parts.front().cod();
  for (const auto& p : parts)
    if (!(p.dom() == A) || !(p.cod() == B)) throw FrameMismatch("profunctor_sum: summands are not parallel");
  const std::size_t nb = B.object_count();
  std::vector<std::vector<std::string>> elements(A.object_count() * nb);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> origin(A.object_count() * nb);
  std::vector<std::vector<std::size_t>> offsets(A.object_count() * nb);
  for (std::size_t s = 0; s < elements.size(); ++s)
    for (std::size_t i = 0; i < parts.size(); ++i) {
      offsets[s].push_back(elements[s].size());
      for (std::size_t x = 0; x < parts[i].size(s / nb, s % nb); ++x) {
        elements[s].push_back(pair_name(std::to_string(i), parts[i].elements(s / nb, s % nb)[x]));
        origin[s].emplace_back(i, x);
      }
    }
  return make_profunctor(
      A, B, std::move(elements),
      [&](std::size_t f, std::size_t b, std::size_t k) {
        auto [i, x] = origin[A.src(f) * nb + b][k];
        return offsets[A.tgt(f) * nb + b][i] + parts[i].act_left(f, b, x);
      },
      [&](std::size_t a, std::size_t k, std::size_t g) {
        auto [i, x] = origin[a * nb + B.tgt(g)][k];
        return offsets[a * nb + B.src(g)][i] + parts[i].act_right(a, x, g);
      });
}

/// Truncated free promonad hom + P + P;P + … + P^bound on an endo-profunctor.
inline FiniteProfunctor free_promonad(const FiniteProfunctor& p, std::size_t bound) {
  if (!(p.dom() == p.cod())) throw FrameMismatch("free_promonad: profunctor is not an endo-profunctor");
  std::vector<FiniteProfunctor> powers{hom_profunctor(p.dom())};
  for (std::size_t n = 1; n <= bound; ++n) powers.push_back(n == 1 ? p : compose_prof(powers.back(), p));
  return profunctor_sum(powers);
}

}  // namespace tdx
