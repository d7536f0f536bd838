#pragma once

// Finite categories given by explicit composition tables, functors between
// them, and the finite products, coproducts and equalizers.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdx/error.hpp"
#include "tdx/names.hpp"

namespace tdx {

struct ObjectTag {
  static constexpr const char* kind = "object";
};
struct MorphismTag {
  static constexpr const char* kind = "morphism";
};
using ObjectSet = OrderedNames<ObjectTag>;
using MorphismSet = OrderedNames<MorphismTag>;

struct MorphismSpec {
  std::string name, src, tgt;
};

struct CompositionSpec {
  std::string g, f, gf;
};

class FiniteCategory {
 public:
  /// Index-level constructor. table[g * |mor| + f] is g∘f when defined.
  /// Validates units, typing and associativity; throws InputError.
  FiniteCategory(ObjectSet objects, MorphismSet morphisms, IndexMap src, IndexMap tgt, IndexMap identity,
                 std::vector<std::optional<std::size_t>> table)
      : d_(std::make_shared<Data>(Data{std::move(objects), std::move(morphisms), std::move(src), std::move(tgt),
                                       std::move(identity), std::move(table)})) {
    if (auto why = defect()) throw InputError("category: " + *why);
  }

  /// Name-level constructor. Composites with an identity may be omitted.
  FiniteCategory(ObjectSet objects, const std::vector<MorphismSpec>& morphisms,
                 const std::map<std::string, std::string>& identities, const std::vector<CompositionSpec>& compose)
      : FiniteCategory(build(std::move(objects), morphisms, identities, compose)) {}

  static FiniteCategory discrete(const ObjectSet& objects) {
    std::vector<std::string> names;
    IndexMap ends, ids;
    for (std::size_t o = 0; o < objects.size(); ++o) {
      names.push_back("id_" + objects[o]);
      ends.push_back(o);
      ids.push_back(o);
    }
    std::vector<std::optional<std::size_t>> table(objects.size() * objects.size());
    for (std::size_t o = 0; o < objects.size(); ++o) table[o * objects.size() + o] = o;
    return {objects, MorphismSet(std::move(names)), ends, ends, ids, std::move(table)};
  }

  [[nodiscard]] const ObjectSet& objects() const noexcept { return d_->objects; }
  [[nodiscard]] const MorphismSet& morphisms() const noexcept { return d_->morphisms; }
  [[nodiscard]] std::size_t object_count() const noexcept { return d_->objects.size(); }
  [[nodiscard]] std::size_t morphism_count() const noexcept { return d_->morphisms.size(); }
  [[nodiscard]] std::size_t src(std::size_t m) const { return d_->src.at(m); }
  [[nodiscard]] std::size_t tgt(std::size_t m) const { return d_->tgt.at(m); }
  [[nodiscard]] std::size_t identity(std::size_t o) const { return d_->identity.at(o); }
  [[nodiscard]] bool is_identity(std::size_t m) const { return d_->identity[d_->src[m]] == m; }

  [[nodiscard]] std::optional<std::size_t> try_compose(std::size_t g, std::size_t f) const {
    return d_->table.at(g * morphism_count() + f);
  }
  /// g∘f; throws when tgt f ≠ src g.
  [[nodiscard]] std::size_t compose(std::size_t g, std::size_t f) const {
    auto r = try_compose(g, f);
    if (!r) throw InputError("category: morphisms are not composable");
    return *r;
  }

  /// Morphisms a → b in index order.
  [[nodiscard]] std::vector<std::size_t> hom(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < morphism_count(); ++m)
      if (d_->src[m] == a && d_->tgt[m] == b) out.push_back(m);
    return out;
  }

  [[nodiscard]] const std::vector<std::optional<std::size_t>>& table() const noexcept { return d_->table; }

  /// First failed axiom, if any.
  [[nodiscard]] std::optional<std::string> defect() const {
    const auto& d = *d_;
    const std::size_t no = d.objects.size(), nm = d.morphisms.size();
    if (d.src.size() != nm || d.tgt.size() != nm) return "source/target maps are not total";
    if (d.identity.size() != no) return "identity map is not total";
    if (d.table.size() != nm * nm) return "composition table has the wrong size";
    for (std::size_t m = 0; m < nm; ++m)
      if (d.src[m] >= no || d.tgt[m] >= no) return "morphism '" + d.morphisms[m] + "' has an unknown end";
    for (std::size_t o = 0; o < no; ++o) {
      auto i = d.identity[o];
      if (i >= nm || d.src[i] != o || d.tgt[i] != o) return "identity of '" + d.objects[o] + "' is not an endomorphism of it";
    }
    for (std::size_t g = 0; g < nm; ++g)
      for (std::size_t f = 0; f < nm; ++f) {
        const auto& gf = d.table[g * nm + f];
        if (d.tgt[f] != d.src[g]) {
          if (gf) return "composite of non-composable '" + d.morphisms[g] + "' and '" + d.morphisms[f] + "' is defined";
          continue;
        }
        if (!gf) return "composite " + d.morphisms[g] + "∘" + d.morphisms[f] + " is missing";
        if (*gf >= nm || d.src[*gf] != d.src[f] || d.tgt[*gf] != d.tgt[g])
          return "composite " + d.morphisms[g] + "∘" + d.morphisms[f] + " has the wrong type";
      }
    for (std::size_t m = 0; m < nm; ++m) {
      if (*d.table[m * nm + d.identity[d.src[m]]] != m) return "right unit law fails at '" + d.morphisms[m] + "'";
      if (*d.table[d.identity[d.tgt[m]] * nm + m] != m) return "left unit law fails at '" + d.morphisms[m] + "'";
    }
    for (std::size_t h = 0; h < nm; ++h)
      for (std::size_t g = 0; g < nm; ++g) {
        if (d.tgt[g] != d.src[h]) continue;
        auto hg = *d.table[h * nm + g];
        for (std::size_t f = 0; f < nm; ++f) {
          if (d.tgt[f] != d.src[g]) continue;
          if (*d.table[hg * nm + f] != *d.table[h * nm + *d.table[g * nm + f]])
            return "associativity fails at (" + d.morphisms[h] + ", " + d.morphisms[g] + ", " + d.morphisms[f] + ")";
        }
      }
    return std::nullopt;
  }

  friend bool operator==(const FiniteCategory& x, const FiniteCategory& y) {
    if (x.d_ == y.d_) return true;
    const auto &a = *x.d_, &b = *y.d_;
    return a.objects == b.objects && a.morphisms == b.morphisms && a.src == b.src && a.tgt == b.tgt &&
           a.identity == b.identity && a.table == b.table;
  }

 private:
  struct Data {
    ObjectSet objects;
    MorphismSet morphisms;
    IndexMap src, tgt, identity;
    std::vector<std::optional<std::size_t>> table;
  };

  static FiniteCategory build(ObjectSet objects, const std::vector<MorphismSpec>& morphisms,
                              const std::map<std::string, std::string>& identities,
                              const std::vector<CompositionSpec>& compose) {
    std::vector<std::string> names;
    for (const auto& m : morphisms) names.push_back(m.name);
    MorphismSet mor(std::move(names));
    IndexMap src, tgt;
    for (const auto& m : morphisms) {
      src.push_back(objects.index_of(m.src));
      tgt.push_back(objects.index_of(m.tgt));
    }
    IndexMap ids;
    for (const auto& o : objects) {
      auto it = identities.find(o);
      if (it == identities.end()) throw InputError("category: object '" + o + "' has no identity");
      ids.push_back(mor.index_of(it->second));
    }
    const std::size_t nm = mor.size();
    std::vector<std::optional<std::size_t>> table(nm * nm);
    for (const auto& c : compose) {
      auto& slot = table[mor.index_of(c.g) * nm + mor.index_of(c.f)];
      auto gf = mor.index_of(c.gf);
      if (slot && *slot != gf) throw InputError("category: composite " + c.g + "∘" + c.f + " given twice");
      slot = gf;
    }
    for (std::size_t m = 0; m < nm; ++m) {
      auto& right = table[m * nm + ids[src[m]]];
      if (!right) right = m;
      auto& left = table[ids[tgt[m]] * nm + m];
      if (!left) left = m;
    }
    return {std::move(objects), std::move(mor), std::move(src), std::move(tgt), std::move(ids), std::move(table)};
  }

  std::shared_ptr<const Data> d_;
};

/// Monoid on {0..n-1} by multiplication table table[x * n + y] = x·y.
struct FiniteMonoid {
  std::vector<std::string> elements;
  std::size_t unit = 0;
  std::vector<std::size_t> table;

  [[nodiscard]] std::size_t size() const noexcept { return elements.size(); }
  [[nodiscard]] std::size_t mul(std::size_t x, std::size_t y) const { return table.at(x * elements.size() + y); }

  static FiniteMonoid trivial() { return {{"1"}, 0, {0}}; }
};

/// Unit and associativity of a monoid table; nullopt when it is a monoid.
inline std::optional<std::string> monoid_defect(const FiniteMonoid& m) {
  const std::size_t n = m.size();
  if (n == 0) return "monoid has no elements";
  if (m.unit >= n) return "unit is not an element";
  if (m.table.size() != n * n) return "multiplication table has the wrong size";
  for (auto v : m.table)
    if (v >= n) return "multiplication leaves the carrier";
  for (std::size_t x = 0; x < n; ++x)
    if (m.mul(m.unit, x) != x || m.mul(x, m.unit) != x) return "unit law fails at '" + m.elements[x] + "'";
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)))
          return "associativity fails at (" + m.elements[x] + ", " + m.elements[y] + ", " + m.elements[z] + ")";
  return std::nullopt;
}

/// One-object category with the monoid's elements as morphisms.
inline FiniteCategory monoid_category(const FiniteMonoid& m, const std::string& object = "*") {
  if (auto why = monoid_defect(m)) throw InputError("monoid: " + *why);
  const std::size_t n = m.size();
  std::vector<std::optional<std::size_t>> table(n * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) table[g * n + f] = m.mul(g, f);
  return {ObjectSet{object}, MorphismSet(m.elements), IndexMap(n, 0), IndexMap(n, 0), IndexMap{m.unit},
          std::move(table)};
}

/// The walking arrow 0 → 1.
inline FiniteCategory interval_category() {
  return {ObjectSet{"0", "1"}, {{"id0", "0", "0"}, {"id1", "1", "1"}, {"u", "0", "1"}}, {{"0", "id0"}, {"1", "id1"}},
          {}};
}

struct FiniteFunctor {
  FiniteCategory dom, cod;
  IndexMap on_objects, on_morphisms;
};

inline std::optional<std::string> functor_defect(const FiniteFunctor& f) {
  const auto &a = f.dom, &b = f.cod;
  if (f.on_objects.size() != a.object_count() || f.on_morphisms.size() != a.morphism_count())
    return "functor maps are not total";
  for (auto o : f.on_objects)
    if (o >= b.object_count()) return "object map leaves the codomain";
  for (auto m : f.on_morphisms)
    if (m >= b.morphism_count()) return "morphism map leaves the codomain";
  for (std::size_t m = 0; m < a.morphism_count(); ++m) {
    auto fm = f.on_morphisms[m];
    if (b.src(fm) != f.on_objects[a.src(m)] || b.tgt(fm) != f.on_objects[a.tgt(m)])
      return "'" + a.morphisms()[m] + "' is sent to a morphism of the wrong type";
  }
  for (std::size_t o = 0; o < a.object_count(); ++o)
    if (f.on_morphisms[a.identity(o)] != b.identity(f.on_objects[o]))
      return "identity of '" + a.objects()[o] + "' is not preserved";
  for (std::size_t g = 0; g < a.morphism_count(); ++g)
    for (std::size_t h = 0; h < a.morphism_count(); ++h)
      if (auto gh = a.try_compose(g, h))
        if (f.on_morphisms[*gh] != b.compose(f.on_morphisms[g], f.on_morphisms[h]))
          return "composite " + a.morphisms()[g] + "∘" + a.morphisms()[h] + " is not preserved";
  return std::nullopt;
}

inline bool is_functor(const FiniteFunctor& f) { return !functor_defect(f).has_value(); }

inline FiniteFunctor identity_functor(const FiniteCategory& c) {
  IndexMap o(c.object_count()), m(c.morphism_count());
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = i;
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
  return {c, c, o, m};
}

/// G after F.
inline FiniteFunctor compose_functors(const FiniteFunctor& f, const FiniteFunctor& g) {
  if (!(f.cod == g.dom)) throw FrameMismatch("compose_functors: codomain and domain differ");
  FiniteFunctor out{f.dom, g.cod, {}, {}};
  for (auto o : f.on_objects) out.on_objects.push_back(g.on_objects[o]);
  for (auto m : f.on_morphisms) out.on_morphisms.push_back(g.on_morphisms[m]);
  return out;
}

inline bool same_functor(const FiniteFunctor& f, const FiniteFunctor& g) {
  return f.dom == g.dom && f.cod == g.cod && f.on_objects == g.on_objects && f.on_morphisms == g.on_morphisms;
}

/// All functors a → b, in lexicographic order of (object map, morphism map).
inline std::vector<FiniteFunctor> enumerate_functors(const FiniteCategory& a, const FiniteCategory& b) {
  std::vector<FiniteFunctor> out;
  IndexMap objs(a.object_count(), 0);
  std::function<void(std::size_t)> pick_objects = [&](std::size_t i) {
    if (i < objs.size()) {
      for (std::size_t o = 0; o < b.object_count(); ++o) {
        objs[i] = o;
        pick_objects(i + 1);
      }
      return;
    }
    IndexMap mors(a.morphism_count(), 0);
    std::function<void(std::size_t)> pick_morphisms = [&](std::size_t m) {
      if (m == mors.size()) {
        FiniteFunctor f{a, b, objs, mors};
        if (is_functor(f)) out.push_back(std::move(f));
        return;
      }
      if (a.is_identity(m)) {
        mors[m] = b.identity(objs[a.src(m)]);
        pick_morphisms(m + 1);
        return;
      }
      for (auto c : b.hom(objs[a.src(m)], objs[a.tgt(m)])) {
        mors[m] = c;
        // Prune on composites whose factors are already assigned.
        bool ok = true;
        for (std::size_t g = 0; g <= m && ok; ++g)
          for (std::size_t h = 0; h <= m && ok; ++h)
            if (g == m || h == m)
              if (auto gh = a.try_compose(g, h); gh && *gh <= m)
                ok = mors[*gh] == b.compose(mors[g], mors[h]);
        if (ok) pick_morphisms(m + 1);
      }
    };
    pick_morphisms(0);
  };
  pick_objects(0);
  return out;
}

struct ProductCategory {
  FiniteCategory category;
  FiniteFunctor left, right;
};

inline ProductCategory product_category(const FiniteCategory& a, const FiniteCategory& b) {
  const std::size_t nb = b.object_count(), mb = b.morphism_count(), nm = a.morphism_count() * mb;
  IndexMap src, tgt, ids;
  for (std::size_t f = 0; f < a.morphism_count(); ++f)
    for (std::size_t g = 0; g < mb; ++g) {
      src.push_back(a.src(f) * nb + b.src(g));
      tgt.push_back(a.tgt(f) * nb + b.tgt(g));
    }
  for (std::size_t x = 0; x < a.object_count(); ++x)
    for (std::size_t y = 0; y < nb; ++y) ids.push_back(a.identity(x) * mb + b.identity(y));
  std::vector<std::optional<std::size_t>> table(nm * nm);
  for (std::size_t g = 0; g < nm; ++g)
    for (std::size_t f = 0; f < nm; ++f) {
      auto l = a.try_compose(g / mb, f / mb);
      auto r = b.try_compose(g % mb, f % mb);
      if (l && r) table[g * nm + f] = *l * mb + *r;
    }
  FiniteCategory c(product_names(a.objects(), b.objects()), product_names(a.morphisms(), b.morphisms()), src, tgt,
                   ids, std::move(table));
  FiniteFunctor pl{c, a, {}, {}}, pr{c, b, {}, {}};
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    pl.on_objects.push_back(o / nb);
    pr.on_objects.push_back(o % nb);
  }
  for (std::size_t m = 0; m < nm; ++m) {
    pl.on_morphisms.push_back(m / mb);
    pr.on_morphisms.push_back(m % mb);
  }
  return {c, pl, pr};
}

struct CoproductCategory {
  FiniteCategory category;
  FiniteFunctor left, right;
};

inline CoproductCategory coproduct_category(const FiniteCategory& a, const FiniteCategory& b) {
  const std::size_t na = a.object_count(), ma = a.morphism_count();
  const std::size_t nm = ma + b.morphism_count();
  IndexMap src, tgt, ids;
  for (std::size_t f = 0; f < ma; ++f) {
    src.push_back(a.src(f));
    tgt.push_back(a.tgt(f));
  }
  for (std::size_t g = 0; g < b.morphism_count(); ++g) {
    src.push_back(na + b.src(g));
    tgt.push_back(na + b.tgt(g));
  }
  for (std::size_t x = 0; x < na; ++x) ids.push_back(a.identity(x));
  for (std::size_t y = 0; y < b.object_count(); ++y) ids.push_back(ma + b.identity(y));
  std::vector<std::optional<std::size_t>> table(nm * nm);
  for (std::size_t g = 0; g < ma; ++g)
    for (std::size_t f = 0; f < ma; ++f) table[g * nm + f] = a.try_compose(g, f);
  for (std::size_t g = 0; g < b.morphism_count(); ++g)
    for (std::size_t f = 0; f < b.morphism_count(); ++f)
      if (auto r = b.try_compose(g, f)) table[(ma + g) * nm + ma + f] = ma + *r;
  FiniteCategory c(sum_names(a.objects(), b.objects()), sum_names(a.morphisms(), b.morphisms()), src, tgt, ids,
                   std::move(table));
  FiniteFunctor il{a, c, {}, {}}, ir{b, c, {}, {}};
  for (std::size_t o = 0; o < na; ++o) il.on_objects.push_back(o);
  for (std::size_t m = 0; m < ma; ++m) il.on_morphisms.push_back(m);
  for (std::size_t o = 0; o < b.object_count(); ++o) ir.on_objects.push_back(na + o);
  for (std::size_t m = 0; m < b.morphism_count(); ++m) ir.on_morphisms.push_back(ma + m);
  return {c, il, ir};
}

struct EqualizerCategory {
  FiniteCategory category;
  FiniteFunctor inclusion;
};

/// Full subcategory on which two parallel functors agree, objects and
/// morphisms alike.
inline EqualizerCategory equalizer_category(const FiniteFunctor& f, const FiniteFunctor& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw FrameMismatch("equalizer_category: functors are not parallel");
  const auto& a = f.dom;
  IndexMap objs, mors;
  std::vector<std::size_t> obj_pos(a.object_count(), 0), mor_pos(a.morphism_count(), 0);
  for (std::size_t o = 0; o < a.object_count(); ++o)
    if (f.on_objects[o] == g.on_objects[o]) {
      obj_pos[o] = objs.size();
      objs.push_back(o);
    }
  for (std::size_t m = 0; m < a.morphism_count(); ++m)
    if (f.on_morphisms[m] == g.on_morphisms[m]) {
      mor_pos[m] = mors.size();
      mors.push_back(m);
    }
  std::vector<std::string> on, mn;
  for (auto o : objs) on.push_back(a.objects()[o]);
  for (auto m : mors) mn.push_back(a.morphisms()[m]);
  IndexMap src, tgt, ids;
  for (auto m : mors) {
    src.push_back(obj_pos[a.src(m)]);
    tgt.push_back(obj_pos[a.tgt(m)]);
  }
  for (auto o : objs) ids.push_back(mor_pos[a.identity(o)]);
  const std::size_t nm = mors.size();
  std::vector<std::optional<std::size_t>> table(nm * nm);
  for (std::size_t i = 0; i < nm; ++i)
    for (std::size_t j = 0; j < nm; ++j)
      if (auto r = a.try_compose(mors[i], mors[j])) table[i * nm + j] = mor_pos[*r];
  FiniteCategory c(ObjectSet(std::move(on)), MorphismSet(std::move(mn)), src, tgt, ids, std::move(table));
  return {c, FiniteFunctor{c, a, objs, mors}};
}

}  // namespace tdx
