#pragma once

// JSON reading and writing for transducers, Mealy machines, monad
// presentations, finite categories and profunctors. Output is deterministic:
// fields in a fixed order, entries in index order, two-space indentation.

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "tdx/error.hpp"
#include "tdx/fincat.hpp"
#include "tdx/mealy.hpp"
#include "tdx/monad.hpp"
#include "tdx/profunctor.hpp"
#include "tdx/transducer.hpp"

namespace tdx::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("json: expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("json: missing field '") + key + "'");
  return *it;
}

inline std::string text(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw InputError(std::string("json: field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<std::string> names(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) throw InputError(std::string("json: field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw InputError(std::string("json: field '") + key + "' must hold strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline const Json& array(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) throw InputError(std::string("json: field '") + key + "' must be an array");
  return v;
}

inline std::vector<std::size_t> indices(const Json& j) {
  if (!j.is_array()) throw InputError("json: expected an array of indices");
  std::vector<std::size_t> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw InputError("json: expected a non-negative index");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

}  // namespace detail

/// Parses text, turning syntax errors into InputError.
inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("json: ") + e.what());
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

// ---------------------------------------------------------------------------
// Transducers

inline Json to_json(const Transducer& t) {
  Json j;
  j["input"] = t.input().names();
  j["output"] = t.output().names();
  j["states"] = t.states().names();
  Json entries = Json::array();
  const std::size_t n = t.states().size();
  for (std::size_t a = 0; a < t.input().size(); ++a)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const auto& l = t.entry(a, p, q);
        if (l.is_empty()) continue;
        entries.push_back(
            Json{{"letter", t.input()[a]}, {"from", t.states()[p]}, {"to", t.states()[q]}, {"lang", l.to_string()}});
      }
  j["entries"] = std::move(entries);
  return j;
}

inline Transducer transducer_from_json(const Json& j) {
  Transducer t(Alphabet(detail::names(j, "input")), Alphabet(detail::names(j, "output")),
               StateSet(detail::names(j, "states")));
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const auto& e : detail::array(j, "entries")) {
    const auto a = t.input().index_of(detail::text(e, "letter"));
    const auto p = t.states().index_of(detail::text(e, "from"));
    const auto q = t.states().index_of(detail::text(e, "to"));
    if (!seen.emplace(a, p, q).second) throw InputError("json: entry listed twice");
    t.set(a, p, q, RegularLanguage::parse(detail::text(e, "lang"), t.output()));
  }
  return t;
}

inline Transducer read_transducer(const std::string& path) { return transducer_from_json(parse(read_file(path))); }

// ---------------------------------------------------------------------------
// Mealy machines

inline Json to_json(const MealyMachine& m) {
  Json j;
  j["input"] = m.input().names();
  j["output"] = m.output().names();
  j["states"] = m.states().names();
  Json d = Json::array(), s = Json::array();
  for (std::size_t a = 0; a < m.input().size(); ++a)
    for (std::size_t x = 0; x < m.states().size(); ++x) {
      d.push_back(Json{{"letter", m.input()[a]}, {"from", m.states()[x]}, {"to", m.states()[m.d(a, x)]}});
      s.push_back(Json{{"letter", m.input()[a]}, {"from", m.states()[x]}, {"out", m.output()[m.s(a, x)]}});
    }
  j["d"] = std::move(d);
  j["s"] = std::move(s);
  return j;
}

inline MealyMachine mealy_from_json(const Json& j) {
  Alphabet in(detail::names(j, "input")), out(detail::names(j, "output"));
  StateSet st(detail::names(j, "states"));
  const std::size_t n = in.size() * st.size();
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  IndexMap d(n, kUnset), s(n, kUnset);
  for (const auto& e : detail::array(j, "d")) {
    auto slot = in.index_of(detail::text(e, "letter")) * st.size() + st.index_of(detail::text(e, "from"));
    if (d[slot] != kUnset) throw InputError("json: transition listed twice");
    d[slot] = st.index_of(detail::text(e, "to"));
  }
  for (const auto& e : detail::array(j, "s")) {
    auto slot = in.index_of(detail::text(e, "letter")) * st.size() + st.index_of(detail::text(e, "from"));
    if (s[slot] != kUnset) throw InputError("json: output listed twice");
    s[slot] = out.index_of(detail::text(e, "out"));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (d[i] == kUnset || s[i] == kUnset) throw InputError("mealy: transition and output tables must cover A×X");
  return {in, out, st, d, s};
}

// ---------------------------------------------------------------------------
// Monad presentations

inline Json to_json(const MonadPresentation& p) {
  Json j;
  j["transducer"] = to_json(p.t);
  const auto& st = p.t.states();
  j["unit"] = st[p.unit];
  Json mult = Json::array();
  const std::size_t n = st.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) mult.push_back(Json{{"l", st[x]}, {"r", st[y]}, {"lr", st[p.mult[x * n + y]]}});
  j["mult"] = std::move(mult);
  return j;
}

inline MonadPresentation monad_from_json(const Json& j) {
  auto t = transducer_from_json(detail::field(j, "transducer"));
  const auto& st = t.states();
  const std::size_t n = st.size();
  auto unit = st.index_of(detail::text(j, "unit"));
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  IndexMap mult(n * n, kUnset);
  for (const auto& e : detail::array(j, "mult")) {
    auto slot = st.index_of(detail::text(e, "l")) * n + st.index_of(detail::text(e, "r"));
    if (mult[slot] != kUnset) throw InputError("json: product listed twice");
    mult[slot] = st.index_of(detail::text(e, "lr"));
  }
  for (auto v : mult)
    if (v == kUnset) throw InputError("monad: multiplication is not total on Q×Q");
  return {std::move(t), unit, std::move(mult)};
}

// ---------------------------------------------------------------------------
// Finite categories and profunctors

inline Json to_json(const FiniteCategory& c) {
  Json j;
  j["objects"] = c.objects().names();
  Json mors = Json::array();
  for (std::size_t m = 0; m < c.morphism_count(); ++m)
    mors.push_back(Json{{"name", c.morphisms()[m]}, {"src", c.objects()[c.src(m)]}, {"tgt", c.objects()[c.tgt(m)]}});
  j["morphisms"] = std::move(mors);
  Json ids = Json::object();
  for (std::size_t o = 0; o < c.object_count(); ++o) ids[c.objects()[o]] = c.morphisms()[c.identity(o)];
  j["identities"] = std::move(ids);
  Json comp = Json::array();
  for (std::size_t g = 0; g < c.morphism_count(); ++g)
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
      if (c.is_identity(g) || c.is_identity(f)) continue;
      if (auto gf = c.try_compose(g, f))
        comp.push_back(Json{{"g", c.morphisms()[g]}, {"f", c.morphisms()[f]}, {"gf", c.morphisms()[*gf]}});
    }
  j["compose"] = std::move(comp);
  return j;
}

inline FiniteCategory category_from_json(const Json& j) {
  std::vector<MorphismSpec> mors;
  for (const auto& m : detail::array(j, "morphisms"))
    mors.push_back({detail::text(m, "name"), detail::text(m, "src"), detail::text(m, "tgt")});
  const auto& ids_json = detail::field(j, "identities");
  if (!ids_json.is_object()) throw InputError("json: field 'identities' must be an object");
  std::map<std::string, std::string> ids;
  for (const auto& [k, v] : ids_json.items()) {
    if (!v.is_string()) throw InputError("json: identities must name morphisms");
    ids[k] = v.get<std::string>();
  }
  std::vector<CompositionSpec> comp;
  for (const auto& c : detail::array(j, "compose"))
    comp.push_back({detail::text(c, "g"), detail::text(c, "f"), detail::text(c, "gf")});
  return {ObjectSet(detail::names(j, "objects")), mors, ids, comp};
}

/// {"dom", "cod", "values":[{"a","b","elements"}], "left":[{"f","b","map"}],
/// "right":[{"g","a","map"}]}.
inline Json to_json(const FiniteProfunctor& p) {
  const auto& A = p.dom();
  const auto& B = p.cod();
  Json j;
  j["dom"] = to_json(A);
  j["cod"] = to_json(B);
  Json values = Json::array(), left = Json::array(), right = Json::array();
  for (std::size_t a = 0; a < A.object_count(); ++a)
    for (std::size_t b = 0; b < B.object_count(); ++b)
      values.push_back(Json{{"a", A.objects()[a]}, {"b", B.objects()[b]}, {"elements", p.elements(a, b)}});
  for (std::size_t f = 0; f < A.morphism_count(); ++f)
    for (std::size_t b = 0; b < B.object_count(); ++b)
      left.push_back(Json{{"f", A.morphisms()[f]}, {"b", B.objects()[b]}, {"map", p.left_table(f, b)}});
  for (std::size_t g = 0; g < B.morphism_count(); ++g)
    for (std::size_t a = 0; a < A.object_count(); ++a)
      right.push_back(Json{{"g", B.morphisms()[g]}, {"a", A.objects()[a]}, {"map", p.right_table(g, a)}});
  j["values"] = std::move(values);
  j["left"] = std::move(left);
  j["right"] = std::move(right);
  return j;
}

inline FiniteProfunctor profunctor_from_json(const Json& j) {
  auto A = category_from_json(detail::field(j, "dom"));
  auto B = category_from_json(detail::field(j, "cod"));
  const std::size_t nb = B.object_count();
  std::vector<std::vector<std::string>> elements(A.object_count() * nb);
  std::vector<char> given(elements.size(), 0);
  for (const auto& v : detail::array(j, "values")) {
    auto s = A.objects().index_of(detail::text(v, "a")) * nb + B.objects().index_of(detail::text(v, "b"));
    if (given[s]) throw InputError("json: value set listed twice");
    given[s] = 1;
    elements[s] = detail::names(v, "elements");
  }
  FiniteProfunctor p(A, B, std::move(elements));
  for (const auto& e : detail::array(j, "left"))
    p.set_left(A.morphisms().index_of(detail::text(e, "f")), B.objects().index_of(detail::text(e, "b")),
               detail::indices(detail::field(e, "map")));
  for (const auto& e : detail::array(j, "right"))
    p.set_right(B.morphisms().index_of(detail::text(e, "g")), A.objects().index_of(detail::text(e, "a")),
                detail::indices(detail::field(e, "map")));
  p.validate();
  return p;
}

}  // namespace tdx::io
