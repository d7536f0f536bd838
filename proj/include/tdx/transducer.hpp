#pragma once

// 1-transducers A ⇸ B: a state set Q and one Q×Q matrix of languages over B
// per input letter, together with their cells and double-categorical
// constructions.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tdx/error.hpp"
#include "tdx/lang.hpp"
#include "tdx/names.hpp"
#include "tdx/qmat.hpp"
#include "tdx/union_find.hpp"

namespace tdx {

/// Name of the sole state of every one-state construction.
inline const std::string kSingleState = "*";
/// Symbol of the tensor unit alphabet.
inline const std::string kUnitSymbol = "I";

class Transducer {
 public:
  Transducer(Alphabet input, Alphabet output, StateSet states)
      : input_(std::move(input)), output_(std::move(output)), states_(std::move(states)) {
    gen_.reserve(input_.size());
    for (std::size_t a = 0; a < input_.size(); ++a) gen_.push_back(mat_zero(states_, output_));
  }

  [[nodiscard]] const Alphabet& input() const noexcept { return input_; }
  [[nodiscard]] const Alphabet& output() const noexcept { return output_; }
  [[nodiscard]] const StateSet& states() const noexcept { return states_; }
  [[nodiscard]] const std::vector<LangMatrix>& gen() const noexcept { return gen_; }
  [[nodiscard]] const LangMatrix& gen(std::size_t a) const { return gen_.at(a); }
  [[nodiscard]] const LangMatrix& gen(std::string_view a) const { return gen_[input_.index_of(a)]; }
  [[nodiscard]] const RegularLanguage& entry(std::size_t a, std::size_t p, std::size_t q) const {
    return gen_.at(a)(p, q);
  }

  void set(std::size_t a, std::size_t p, std::size_t q, RegularLanguage l) { gen_.at(a).set(p, q, std::move(l)); }
  void set(std::string_view a, std::string_view p, std::string_view q, RegularLanguage l) {
    gen_[input_.index_of(a)].set(p, q, std::move(l));
  }
  void set(std::string_view a, std::string_view p, std::string_view q, std::string_view regex) {
    set(a, p, q, RegularLanguage::parse(regex, output_));
  }
  void set_matrix(std::size_t a, LangMatrix m) {
    if (!(m.row_index() == states_) || !(m.col_index() == states_) || !(m.alphabet() == output_))
      throw FrameMismatch("transducer: matrix frame differs from the transducer's");
    gen_.at(a) = std::move(m);
  }

 private:
  Alphabet input_, output_;
  StateSet states_;
  std::vector<LangMatrix> gen_;
};

inline bool same_frame(const Transducer& s, const Transducer& t) {
  return s.input() == t.input() && s.output() == t.output() && s.states() == t.states();
}

/// Entrywise language equality on identical frames.
inline bool equals(const Transducer& s, const Transducer& t) {
  if (!same_frame(s, t)) return false;
  for (std::size_t a = 0; a < s.input().size(); ++a)
    if (!mat_equals(s.gen(a), t.gen(a))) return false;
  return true;
}

/// Moves state i to position map[i] of `names`; map must be a bijection.
inline Transducer permute_states(const Transducer& t, const IndexMap& map, const StateSet& names) {
  if (map.size() != t.states().size() || names.size() != map.size())
    throw InputError("permute_states: map is not a bijection onto the new state set");
  std::vector<char> hit(names.size(), 0);
  for (auto j : map) {
    if (j >= names.size() || hit[j]) throw InputError("permute_states: map is not a bijection");
    hit[j] = 1;
  }
  Transducer out(t.input(), t.output(), names);
  for (std::size_t a = 0; a < t.input().size(); ++a)
    for (std::size_t p = 0; p < map.size(); ++p)
      for (std::size_t q = 0; q < map.size(); ++q) out.set(a, map[p], map[q], t.entry(a, p, q));
  return out;
}

/// Same transducer with states renamed positionally.
inline Transducer rename_states(const Transducer& t, const StateSet& names) {
  IndexMap id(t.states().size());
  std::iota(id.begin(), id.end(), std::size_t{0});
  return permute_states(t, id, names);
}

/// Same transducer with alphabets renamed positionally.
inline Transducer rename_alphabets(const Transducer& t, const Alphabet& input, const Alphabet& output) {
  if (input.size() != t.input().size() || output.size() != t.output().size())
    throw InputError("rename_alphabets: sizes differ");
  IndexMap id(output.size());
  std::iota(id.begin(), id.end(), std::size_t{0});
  Transducer out(input, output, t.states());
  for (std::size_t a = 0; a < input.size(); ++a)
    for (std::size_t p = 0; p < t.states().size(); ++p)
      for (std::size_t q = 0; q < t.states().size(); ++q)
        out.set(a, p, q, homomorphic_image(t.entry(a, p, q), id, output));
  return out;
}

inline LangMatrix eval_word(const Transducer& t, std::span<const std::size_t> w) {
  auto m = mat_identity(t.states(), t.output());
  for (auto a : w) {
    if (a >= t.input().size()) throw InputError("eval_word: letter outside the input alphabet");
    m = mat_mul(m, t.gen(a));
  }
  return m;
}

inline LangMatrix eval_word(const Transducer& t, std::string_view comma_word) {
  return eval_word(t, parse_word(comma_word, t.input()));
}

/// Composite A ⇸ C of s: A ⇸ B and t: B ⇸ C, on states <p,q>.
inline Transducer compose(const Transducer& s, const Transducer& t) {
  if (!(s.output() == t.input())) throw FrameMismatch("compose: output alphabet of the first differs from input of the second");
  const std::size_t np = s.states().size(), nq = t.states().size();
  Transducer out(s.input(), t.output(), product_names(s.states(), t.states()));
  for (std::size_t a = 0; a < s.input().size(); ++a)
    for (std::size_t p = 0; p < np; ++p)
      for (std::size_t p2 = 0; p2 < np; ++p2) {
        const auto& l = s.entry(a, p, p2);
        if (l.is_empty()) continue;
        auto block = extend(l, t.gen(), t.states(), t.output());
        for (std::size_t q = 0; q < nq; ++q)
          for (std::size_t q2 = 0; q2 < nq; ++q2) out.set(a, p * nq + q, p2 * nq + q2, block(q, q2));
      }
  return out;
}

inline Transducer identity_transducer(const Alphabet& a) {
  Transducer out(a, a, StateSet{kSingleState});
  for (std::size_t x = 0; x < a.size(); ++x) out.set(x, 0, 0, RegularLanguage::letter(a, x));
  return out;
}

inline Alphabet unit_alphabet() { return Alphabet{kUnitSymbol}; }

/// One state, one symbol, entry I*.
inline Transducer tensor_unit() {
  auto i = unit_alphabet();
  Transducer out(i, i, StateSet{kSingleState});
  out.set(0, 0, 0, RegularLanguage::full(i));
  return out;
}

inline Transducer tensor(const Transducer& s, const Transducer& t) {
  auto in = product_names(s.input(), t.input());
  auto out_alpha = product_names(s.output(), t.output());
  Transducer out(in, out_alpha, product_names(s.states(), t.states()));
  for (std::size_t a = 0; a < s.input().size(); ++a)
    for (std::size_t c = 0; c < t.input().size(); ++c)
      out.set_matrix(a * t.input().size() + c, sigma_tensor(s.gen(a), t.gen(c), out_alpha));
  return out;
}

inline void check_map(const IndexMap& f, std::size_t from, std::size_t to, const char* what) {
  if (f.size() != from) throw InputError(std::string(what) + ": map is not total");
  for (auto x : f)
    if (x >= to) throw InputError(std::string(what) + ": map leaves its codomain");
}

/// Transducer C ⇸ D with gen(c) = G(t.gen(F c)), states unchanged.
inline Transducer reindex(const Transducer& t, const Alphabet& c_alpha, const IndexMap& f, const Alphabet& d_alpha,
                          const IndexMap& g) {
  check_map(f, c_alpha.size(), t.input().size(), "reindex");
  check_map(g, t.output().size(), d_alpha.size(), "reindex");
  Transducer out(c_alpha, d_alpha, t.states());
  const std::size_t n = t.states().size();
  for (std::size_t c = 0; c < c_alpha.size(); ++c)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) out.set(c, p, q, homomorphic_image(t.entry(f[c], p, q), g, d_alpha));
  return out;
}

inline Transducer reindex(const Transducer& t, const Alphabet& c_alpha, const std::map<std::string, std::string>& f,
                          const Alphabet& d_alpha, const std::map<std::string, std::string>& g) {
  auto lookup = [](const std::map<std::string, std::string>& m, const Alphabet& from, const Alphabet& to) {
    IndexMap out;
    for (const auto& x : from) {
      auto it = m.find(x);
      if (it == m.end()) throw InputError("reindex: map undefined on '" + x + "'");
      out.push_back(to.index_of(it->second));
    }
    return out;
  };
  return reindex(t, c_alpha, lookup(f, c_alpha, t.input()), d_alpha, lookup(g, t.output(), d_alpha));
}

/// One state; gen(a) is the set of one-letter words b with (a, b) in R.
inline Transducer from_relation(const Alphabet& a, const Alphabet& b,
                                const std::vector<std::pair<std::size_t, std::size_t>>& relation) {
  Transducer out(a, b, StateSet{kSingleState});
  std::vector<RegularLanguage> entry(a.size(), RegularLanguage::empty(b));
  for (auto [x, y] : relation) {
    if (x >= a.size() || y >= b.size()) throw InputError("from_relation: pair outside the alphabets");
    entry[x] = unite(entry[x], RegularLanguage::letter(b, y));
  }
  for (std::size_t x = 0; x < a.size(); ++x) out.set(x, 0, 0, entry[x]);
  return out;
}

/// gen(a) = {f a}.
inline Transducer companion(const Alphabet& a, const IndexMap& f, const Alphabet& b) {
  check_map(f, a.size(), b.size(), "companion");
  std::vector<std::pair<std::size_t, std::size_t>> graph;
  for (std::size_t x = 0; x < a.size(); ++x) graph.emplace_back(x, f[x]);
  return from_relation(a, b, graph);
}

/// gen(b) = {a : f a = b}.
inline Transducer conjoint(const Alphabet& a, const IndexMap& f, const Alphabet& b) {
  check_map(f, a.size(), b.size(), "conjoint");
  std::vector<std::pair<std::size_t, std::size_t>> graph;
  for (std::size_t x = 0; x < a.size(); ++x) graph.emplace_back(f[x], x);
  return from_relation(b, a, graph);
}

inline bool realized_relation(const Transducer& t, const std::vector<std::string>& initial,
                              const std::vector<std::string>& final, std::span<const std::size_t> u,
                              std::span<const std::size_t> v) {
  std::vector<std::size_t> is, fs;
  for (const auto& s : initial) is.push_back(t.states().index_of(s));
  for (const auto& s : final) fs.push_back(t.states().index_of(s));
  for (auto y : v)
    if (y >= t.output().size()) throw InputError("realized_relation: output letter outside the alphabet");
  auto m = eval_word(t, u);
  for (auto i : is)
    for (auto f : fs)
      if (membership(m(i, f), v)) return true;
  return false;
}

namespace detail {
inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

/// Graphviz digraph with one edge p -> q labeled "a/<regex>" per letter whose
/// entry is nonempty.
inline std::string dynamics_graph(const Transducer& t) {
  std::ostringstream os;
  os << "digraph dynamics {\n";
  for (const auto& q : t.states()) os << "  " << detail::dot_quote(q) << ";\n";
  const std::size_t n = t.states().size();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t a = 0; a < t.input().size(); ++a) {
        const auto& l = t.entry(a, p, q);
        if (l.is_empty()) continue;
        os << "  " << detail::dot_quote(t.states()[p]) << " -> " << detail::dot_quote(t.states()[q])
           << " [label=" << detail::dot_quote(t.input()[a] + "/" + l.to_string()) << "];\n";
      }
  os << "}\n";
  return os.str();
}

/// One state, gen(a) the union of all entries of t.gen(a).
inline Transducer collapse_states(const Transducer& t) {
  Transducer out(t.input(), t.output(), StateSet{kSingleState});
  const std::size_t n = t.states().size();
  for (std::size_t a = 0; a < t.input().size(); ++a) {
    auto acc = RegularLanguage::empty(t.output());
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) acc = unite(acc, t.entry(a, p, q));
    out.set(a, 0, 0, acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cells

/// A failed inclusion: letter (or word), source states, and a word of the
/// source entry missing from the target entry.
struct CellViolation {
  Word input;
  std::size_t from = 0, to = 0;
  Word output;
};

/// Globular cell between transducers of one frame: a state map under which
/// every source entry is contained in the corresponding target entry.
struct TwoCell {
  Transducer source, target;
  IndexMap map;
};

/// Cell with tight maps F on inputs, G on outputs and U on states: the
/// G-image of each source entry lies in the target entry at (F a, U p, U q).
struct DoubleCell {
  Transducer source, target;
  IndexMap input_map, output_map, state_map;
};

inline IndexMap identity_map(std::size_t n) {
  IndexMap m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return m;
}

inline IndexMap compose_maps(const IndexMap& first, const IndexMap& second) {
  IndexMap out;
  out.reserve(first.size());
  for (auto x : first) out.push_back(second.at(x));
  return out;
}

inline void check_cell_frame(const DoubleCell& c) {
  check_map(c.input_map, c.source.input().size(), c.target.input().size(), "cell input map");
  check_map(c.output_map, c.source.output().size(), c.target.output().size(), "cell output map");
  check_map(c.state_map, c.source.states().size(), c.target.states().size(), "cell state map");
}

inline std::optional<CellViolation> double_cell_violation(const DoubleCell& c) {
  check_cell_frame(c);
  const std::size_t n = c.source.states().size();
  for (std::size_t a = 0; a < c.source.input().size(); ++a)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const auto& l = c.source.entry(a, p, q);
        if (l.is_empty()) continue;
        auto image = homomorphic_image(l, c.output_map, c.target.output());
        const auto& r = c.target.entry(c.input_map[a], c.state_map[p], c.state_map[q]);
        if (auto w = inclusion_witness(image, r)) return CellViolation{Word{a}, p, q, *w};
      }
  return std::nullopt;
}

inline bool check_double_cell(const DoubleCell& c) { return !double_cell_violation(c).has_value(); }

inline DoubleCell as_double_cell(const TwoCell& c) {
  return {c.source, c.target, identity_map(c.source.input().size()), identity_map(c.source.output().size()), c.map};
}

inline void check_two_cell_frame(const TwoCell& c) {
  if (!(c.source.input() == c.target.input()) || !(c.source.output() == c.target.output()))
    throw FrameMismatch("two-cell: source and target have different alphabets");
  check_map(c.map, c.source.states().size(), c.target.states().size(), "two-cell state map");
}

inline std::optional<CellViolation> two_cell_violation(const TwoCell& c) {
  check_two_cell_frame(c);
  return double_cell_violation(as_double_cell(c));
}

inline bool check_two_cell(const TwoCell& c) { return !two_cell_violation(c).has_value(); }

/// Re-verifies a two-cell on eval_word for every input word up to maxlen.
inline std::optional<CellViolation> audit_two_cell(const TwoCell& c, std::size_t maxlen) {
  check_two_cell_frame(c);
  const std::size_t n = c.source.states().size();
  std::vector<Word> frontier{Word{}};
  for (std::size_t len = 0; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (const auto& u : frontier) {
      auto ms = eval_word(c.source, u);
      auto mt = eval_word(c.target, u);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          if (auto w = inclusion_witness(ms(p, q), mt(c.map[p], c.map[q]))) return CellViolation{u, p, q, *w};
      if (len < maxlen)
        for (std::size_t a = 0; a < c.source.input().size(); ++a) {
          auto v = u;
          v.push_back(a);
          next.push_back(std::move(v));
        }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

/// g ∘ f for f: s ⇒ t and g: t ⇒ u.
inline TwoCell vcompose(const TwoCell& f, const TwoCell& g) {
  if (!equals(f.target, g.source)) throw FrameMismatch("vcompose: cells are not composable");
  return {f.source, g.target, compose_maps(f.map, g.map)};
}

inline DoubleCell vcompose(const DoubleCell& f, const DoubleCell& g) {
  if (!equals(f.target, g.source)) throw FrameMismatch("vcompose: cells are not composable");
  return {f.source, g.target, compose_maps(f.input_map, g.input_map), compose_maps(f.output_map, g.output_map),
          compose_maps(f.state_map, g.state_map)};
}

/// Product of state maps on <p,q> states.
inline IndexMap pair_map(const IndexMap& f, const IndexMap& g, std::size_t g_target) {
  IndexMap out;
  out.reserve(f.size() * g.size());
  for (auto x : f)
    for (auto y : g) out.push_back(x * g_target + y);
  return out;
}

/// Horizontal composite of f: s ⇒ s' and g: t ⇒ t' with f's output map equal
/// to g's input map.
inline DoubleCell hcompose(const DoubleCell& f, const DoubleCell& g) {
  if (!(f.source.output() == g.source.input()) || !(f.target.output() == g.target.input()) ||
      f.output_map != g.input_map)
    throw FrameMismatch("hcompose: cells do not share a tight boundary");
  return {compose(f.source, g.source), compose(f.target, g.target), f.input_map, g.output_map,
          pair_map(f.state_map, g.state_map, g.target.states().size())};
}

inline TwoCell hcompose(const TwoCell& f, const TwoCell& g) {
  auto d = hcompose(as_double_cell(f), as_double_cell(g));
  return {d.source, d.target, d.state_map};
}

/// Identity cell on a loose arrow.
inline DoubleCell identity_cell(const Transducer& t) {
  return {t, t, identity_map(t.input().size()), identity_map(t.output().size()), identity_map(t.states().size())};
}

/// Identity cell on a tight arrow f: A → B, from ι_A to ι_B.
inline DoubleCell identity_cell(const Alphabet& a, const IndexMap& f, const Alphabet& b) {
  check_map(f, a.size(), b.size(), "identity_cell");
  return {identity_transducer(a), identity_transducer(b), f, f, IndexMap{0}};
}

/// Cells agree: same boundary transducers and the same three maps.
inline bool cells_equal(const DoubleCell& x, const DoubleCell& y) {
  return equals(x.source, y.source) && equals(x.target, y.target) && x.input_map == y.input_map &&
         x.output_map == y.output_map && x.state_map == y.state_map;
}

/// Reflection unit t ⇒ collapse_states(t).
inline TwoCell collapse_unit(const Transducer& t) {
  return {t, collapse_states(t), IndexMap(t.states().size(), 0)};
}

struct CompanionCells {
  Transducer proarrow;
  DoubleCell unit, counit;
};

/// Companion f_*: unit ι_A ⇒ f_* over (id, f); counit f_* ⇒ ι_B over (f, id).
inline CompanionCells companion_cells(const Alphabet& a, const IndexMap& f, const Alphabet& b) {
  auto c = companion(a, f, b);
  DoubleCell unit{identity_transducer(a), c, identity_map(a.size()), f, IndexMap{0}};
  DoubleCell counit{c, identity_transducer(b), f, identity_map(b.size()), IndexMap{0}};
  return {c, unit, counit};
}

/// Conjoint f^*: unit ι_A ⇒ f^* over (f, id); counit f^* ⇒ ι_B over (id, f).
inline CompanionCells conjoint_cells(const Alphabet& a, const IndexMap& f, const Alphabet& b) {
  auto c = conjoint(a, f, b);
  DoubleCell unit{identity_transducer(a), c, f, identity_map(a.size()), IndexMap{0}};
  DoubleCell counit{c, identity_transducer(b), identity_map(b.size()), f, IndexMap{0}};
  return {c, unit, counit};
}

/// Transports a cell along positional state renamings of both boundaries
/// (the unitors of compose at one-state identities).
inline DoubleCell rename_boundary_states(const DoubleCell& c, const StateSet& source_states,
                                         const StateSet& target_states) {
  return {rename_states(c.source, source_states), rename_states(c.target, target_states), c.input_map, c.output_map,
          c.state_map};
}

/// Checks the two sandwich identities of a companion or conjoint pair. For
/// the companion the horizontal composite is unit | counit, for the conjoint
/// counit | unit; the vertical composite is unit then counit in both cases.
inline bool check_sandwich(const CompanionCells& cells, const Alphabet& a, const IndexMap& f, const Alphabet& b,
                           bool is_companion) {
  if (!check_double_cell(cells.unit) || !check_double_cell(cells.counit)) return false;
  auto v = vcompose(cells.unit, cells.counit);
  if (!check_double_cell(v) || !cells_equal(v, identity_cell(a, f, b))) return false;
  auto h = is_companion ? hcompose(cells.unit, cells.counit) : hcompose(cells.counit, cells.unit);
  if (!check_double_cell(h)) return false;
  const auto& states = cells.proarrow.states();
  return cells_equal(rename_boundary_states(h, states, states), identity_cell(cells.proarrow));
}

// ---------------------------------------------------------------------------
// Double limits and colimits

struct ProductCone {
  Transducer apex;
  DoubleCell left, right;
};

inline IndexMap first_projection(std::size_t n, std::size_t m) {
  IndexMap out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out.push_back(i);
  return out;
}

inline IndexMap second_projection(std::size_t n, std::size_t m) {
  IndexMap out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out.push_back(j);
  return out;
}

inline IndexMap pairing(const IndexMap& f, const IndexMap& g, std::size_t g_target) {
  if (f.size() != g.size()) throw InputError("pairing: maps have different domains");
  IndexMap out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(f[i] * g_target + g[i]);
  return out;
}

inline ProductCone double_product(const Transducer& s, const Transducer& t) {
  auto apex = tensor(s, t);
  auto pr = [&](bool first) {
    auto proj = first ? first_projection : second_projection;
    const auto& target = first ? s : t;
    return DoubleCell{apex, target, proj(s.input().size(), t.input().size()),
                      proj(s.output().size(), t.output().size()), proj(s.states().size(), t.states().size())};
  };
  return {apex, pr(true), pr(false)};
}

/// The cell into the product apex induced by two cells out of one source.
inline DoubleCell product_mediator(const ProductCone& cone, const DoubleCell& f, const DoubleCell& g) {
  if (!equals(f.source, g.source)) throw FrameMismatch("product_mediator: cells have different sources");
  if (!equals(f.target, cone.left.target) || !equals(g.target, cone.right.target))
    throw FrameMismatch("product_mediator: cells do not land in the product factors");
  const auto& t = cone.right.target;
  return {f.source, cone.apex, pairing(f.input_map, g.input_map, t.input().size()),
          pairing(f.output_map, g.output_map, t.output().size()),
          pairing(f.state_map, g.state_map, t.states().size())};
}

struct CoproductCocone {
  Transducer apex;
  DoubleCell left, right;
};

inline IndexMap left_injection(std::size_t n) { return identity_map(n); }
inline IndexMap right_injection(std::size_t n, std::size_t offset) {
  IndexMap out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = offset + i;
  return out;
}

inline CoproductCocone double_coproduct(const Transducer& s, const Transducer& t) {
  auto in = sum_names(s.input(), t.input());
  auto out_alpha = sum_names(s.output(), t.output());
  auto states = sum_names(s.states(), t.states());
  Transducer apex(in, out_alpha, states);
  const std::size_t na = s.input().size(), nb = s.output().size(), np = s.states().size();
  auto inl_b = left_injection(nb);
  auto inr_b = right_injection(t.output().size(), nb);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t p = 0; p < np; ++p)
      for (std::size_t q = 0; q < np; ++q) apex.set(a, p, q, homomorphic_image(s.entry(a, p, q), inl_b, out_alpha));
  for (std::size_t c = 0; c < t.input().size(); ++c)
    for (std::size_t p = 0; p < t.states().size(); ++p)
      for (std::size_t q = 0; q < t.states().size(); ++q)
        apex.set(na + c, np + p, np + q, homomorphic_image(t.entry(c, p, q), inr_b, out_alpha));
  DoubleCell left{s, apex, left_injection(na), inl_b, left_injection(np)};
  DoubleCell right{t, apex, right_injection(t.input().size(), na), inr_b, right_injection(t.states().size(), np)};
  return {apex, left, right};
}

inline IndexMap copairing(const IndexMap& f, const IndexMap& g) {
  IndexMap out = f;
  out.insert(out.end(), g.begin(), g.end());
  return out;
}

/// The cell out of the coproduct apex induced by two cells into one target.
inline DoubleCell coproduct_mediator(const CoproductCocone& cocone, const DoubleCell& f, const DoubleCell& g) {
  if (!equals(f.target, g.target)) throw FrameMismatch("coproduct_mediator: cells have different targets");
  if (!equals(f.source, cocone.left.source) || !equals(g.source, cocone.right.source))
    throw FrameMismatch("coproduct_mediator: cells do not leave the coproduct summands");
  return {cocone.apex, f.target, copairing(f.input_map, g.input_map), copairing(f.output_map, g.output_map),
          copairing(f.state_map, g.state_map)};
}

inline void require_parallel(const DoubleCell& x, const DoubleCell& y, const char* what) {
  if (!equals(x.source, y.source) || !equals(x.target, y.target))
    throw FrameMismatch(std::string(what) + ": cells are not parallel");
  check_cell_frame(x);
  check_cell_frame(y);
}

struct EqualizerCone {
  Transducer apex;
  DoubleCell inclusion;
};

inline EqualizerCone double_equalizer(const DoubleCell& x, const DoubleCell& y) {
  require_parallel(x, y, "double_equalizer");
  const auto& s = x.source;
  auto agree = [](const IndexMap& f, const IndexMap& g) {
    IndexMap keep;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f[i] == g[i]) keep.push_back(i);
    return keep;
  };
  auto ka = agree(x.input_map, y.input_map);
  auto kb = agree(x.output_map, y.output_map);
  auto kq = agree(x.state_map, y.state_map);
  auto sub = [](const auto& names, const IndexMap& keep) {
    std::vector<std::string> v;
    for (auto i : keep) v.push_back(names[i]);
    return std::remove_cvref_t<decltype(names)>(std::move(v));
  };
  auto a_eq = sub(s.input(), ka);
  auto b_eq = sub(s.output(), kb);
  auto q_eq = sub(s.states(), kq);
  Transducer apex(a_eq, b_eq, q_eq);
  for (std::size_t a = 0; a < ka.size(); ++a)
    for (std::size_t p = 0; p < kq.size(); ++p)
      for (std::size_t q = 0; q < kq.size(); ++q) apex.set(a, p, q, restrict_to(s.entry(ka[a], kq[p], kq[q]), b_eq));
  return {apex, DoubleCell{apex, s, ka, kb, kq}};
}

/// The cell into the equalizer apex induced by a cell equalizing the pair.
inline std::optional<DoubleCell> equalizer_mediator(const EqualizerCone& cone, const DoubleCell& g) {
  const auto& inc = cone.inclusion;
  auto lift = [](const IndexMap& f, const IndexMap& keep) -> std::optional<IndexMap> {
    IndexMap out;
    for (auto x : f) {
      auto it = std::find(keep.begin(), keep.end(), x);
      if (it == keep.end()) return std::nullopt;
      out.push_back(static_cast<std::size_t>(it - keep.begin()));
    }
    return out;
  };
  auto fi = lift(g.input_map, inc.input_map);
  auto fo = lift(g.output_map, inc.output_map);
  auto fs = lift(g.state_map, inc.state_map);
  if (!fi || !fo || !fs) return std::nullopt;
  return DoubleCell{g.source, cone.apex, *fi, *fo, *fs};
}

struct CoequalizerCocone {
  Transducer apex;
  DoubleCell quotient;
};

namespace detail {

template <class Names>
std::pair<Names, IndexMap> quotient_names(const Names& names, const IndexMap& f, const IndexMap& g) {
  DisjointSets uf(names.size());
  for (std::size_t i = 0; i < f.size(); ++i) uf.unite(f[i], g[i]);
  std::size_t count = 0;
  auto cls = uf.classes(&count);
  std::vector<std::string> out(count);
  for (std::size_t i = names.size(); i-- > 0;) out[cls[i]] = "[" + names[i] + "]";
  return {Names(std::move(out)), cls};
}

/// All maps picking, for each element, one of its candidates.
inline void for_each_choice(const std::vector<std::vector<std::size_t>>& candidates,
                            const std::function<bool(const IndexMap&)>& visit) {
  IndexMap cur(candidates.size(), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == candidates.size()) return visit(cur);
    for (auto c : candidates[i]) {
      cur[i] = c;
      if (go(i + 1)) return true;
    }
    return false;
  };
  go(0);
}

inline std::vector<std::vector<std::size_t>> section_candidates(const IndexMap& f, const IndexMap& g, std::size_t n) {
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] == g[i]) out[f[i]].push_back(i);
  return out;
}

}  // namespace detail

/// A valid cell s1 ⇒ s0 that both parallel cells retract, if one exists.
inline std::optional<DoubleCell> common_section(const DoubleCell& x, const DoubleCell& y) {
  require_parallel(x, y, "common_section");
  const auto& s0 = x.source;
  const auto& s1 = x.target;
  auto ca = detail::section_candidates(x.input_map, y.input_map, s1.input().size());
  auto cb = detail::section_candidates(x.output_map, y.output_map, s1.output().size());
  auto cq = detail::section_candidates(x.state_map, y.state_map, s1.states().size());
  std::optional<DoubleCell> found;
  detail::for_each_choice(ca, [&](const IndexMap& i) {
    detail::for_each_choice(cb, [&](const IndexMap& ib) {
      detail::for_each_choice(cq, [&](const IndexMap& iq) {
        DoubleCell c{s1, s0, i, ib, iq};
        if (check_double_cell(c)) found = c;
        return found.has_value();
      });
      return found.has_value();
    });
    return found.has_value();
  });
  return found;
}

inline CoequalizerCocone double_coequalizer(const DoubleCell& x, const DoubleCell& y) {
  require_parallel(x, y, "double_coequalizer");
  if (!common_section(x, y)) throw NoCommonSection("double_coequalizer: the cells have no common section");
  const auto& s1 = x.target;
  auto [qa, ma] = detail::quotient_names(s1.input(), x.input_map, y.input_map);
  auto [qb, mb] = detail::quotient_names(s1.output(), x.output_map, y.output_map);
  auto [qq, mq] = detail::quotient_names(s1.states(), x.state_map, y.state_map);
  Transducer apex(qa, qb, qq);
  const std::size_t n = s1.states().size();
  for (std::size_t a = 0; a < s1.input().size(); ++a)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const auto& l = s1.entry(a, p, q);
        if (l.is_empty()) continue;
        apex.set(ma[a], mq[p], mq[q], unite(apex.entry(ma[a], mq[p], mq[q]), homomorphic_image(l, mb, qb)));
      }
  return {apex, DoubleCell{s1, apex, ma, mb, mq}};
}

/// The cell out of the coequalizer apex induced by a cell coequalizing the
/// pair; nullopt if g does not coequalize it.
inline std::optional<DoubleCell> coequalizer_mediator(const CoequalizerCocone& cocone, const DoubleCell& g) {
  const auto& q = cocone.quotient;
  auto descend = [](const IndexMap& proj, std::size_t classes, const IndexMap& f) -> std::optional<IndexMap> {
    std::vector<std::optional<std::size_t>> out(classes);
    for (std::size_t i = 0; i < proj.size(); ++i) {
      if (out[proj[i]] && *out[proj[i]] != f[i]) return std::nullopt;
      out[proj[i]] = f[i];
    }
    IndexMap m;
    for (auto& v : out) m.push_back(v.value_or(0));
    return m;
  };
  auto fi = descend(q.input_map, cocone.apex.input().size(), g.input_map);
  auto fo = descend(q.output_map, cocone.apex.output().size(), g.output_map);
  auto fs = descend(q.state_map, cocone.apex.states().size(), g.state_map);
  if (!fi || !fo || !fs) return std::nullopt;
  return DoubleCell{cocone.apex, g.target, *fi, *fo, *fs};
}

}  // namespace tdx
