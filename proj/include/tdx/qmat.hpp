#pragma once

// Matrices over the free quantale: the idempotent semiring Mat(Q, P(B*)),
// its Kleene star, structural extension of a regex into the matrix
// quantale, the strength tensor, and block flattening.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tdx/error.hpp"
#include "tdx/lang.hpp"
#include "tdx/names.hpp"

namespace tdx {

/// Dense rows x cols grid of opaque entries.
template <class T>
struct Grid {
  std::size_t rows = 0, cols = 0;
  std::vector<T> cells;

  Grid() = default;
  Grid(std::size_t r, std::size_t c, const T& fill = T{}) : rows(r), cols(c), cells(r * c, fill) {}
  Grid(std::initializer_list<std::initializer_list<T>> init) {
    rows = init.size();
    for (const auto& row : init) {
      if (cols == 0) cols = row.size();
      if (row.size() != cols) throw InputError("ragged grid literal");
      cells.insert(cells.end(), row.begin(), row.end());
    }
  }

  T& operator()(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

template <class T>
using BlockGrid = Grid<Grid<T>>;

/// Flattens a p x p grid of q x q blocks into a pq x pq grid: row r of block
/// (i, j) becomes row i*q + r, column c becomes column j*q + c.
template <class T>
Grid<T> flatten(const BlockGrid<T>& blocks) {
  if (blocks.rows == 0 || blocks.cols == 0) return {};
  const std::size_t q = blocks(0, 0).rows;
  const std::size_t qc = blocks(0, 0).cols;
  for (const auto& b : blocks.cells)
    if (b.rows != q || b.cols != qc) throw InputError("flatten: ragged blocks");
  if (q == 0 || qc == 0) return {};
  Grid<T> out(blocks.rows * q, blocks.cols * qc, blocks(0, 0).cells.front());
  for (std::size_t i = 0; i < blocks.rows; ++i)
    for (std::size_t j = 0; j < blocks.cols; ++j)
      for (std::size_t r = 0; r < q; ++r)
        for (std::size_t c = 0; c < qc; ++c) out(i * q + r, j * qc + c) = blocks(i, j)(r, c);
  return out;
}

/// Inverse of flatten for blocks of size q x q.
template <class T>
BlockGrid<T> reblock(const Grid<T>& flat, std::size_t q) {
  if (q == 0 || flat.rows % q != 0 || flat.cols % q != 0) throw InputError("reblock: size is not a multiple of q");
  if (flat.cells.empty()) return {};
  BlockGrid<T> out(flat.rows / q, flat.cols / q, Grid<T>(q, q, flat.cells.front()));
  for (std::size_t i = 0; i < flat.rows; ++i)
    for (std::size_t j = 0; j < flat.cols; ++j) out(i / q, j / q)(i % q, j % q) = flat(i, j);
  return out;
}

/// Matrix of languages over one shared output alphabet, indexed by ordered
/// state sets.
class LangMatrix {
 public:
  LangMatrix(StateSet rows, StateSet cols, Alphabet alphabet)
      : rows_(std::move(rows)), cols_(std::move(cols)), alphabet_(alphabet),
        entries_(rows_.size() * cols_.size(), RegularLanguage::empty(alphabet)) {}

  [[nodiscard]] const StateSet& row_index() const noexcept { return rows_; }
  [[nodiscard]] const StateSet& col_index() const noexcept { return cols_; }
  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_.size(); }
  [[nodiscard]] bool square() const { return rows_ == cols_; }

  [[nodiscard]] const RegularLanguage& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_.size() + j];
  }
  [[nodiscard]] const RegularLanguage& at(std::string_view row, std::string_view col) const {
    return (*this)(rows_.index_of(row), cols_.index_of(col));
  }

  void set(std::size_t i, std::size_t j, RegularLanguage l) {
    if (!(l.alphabet() == alphabet_)) throw FrameMismatch("matrix entry over a foreign alphabet");
    entries_[i * cols_.size() + j] = std::move(l);
  }
  void set(std::string_view row, std::string_view col, RegularLanguage l) {
    set(rows_.index_of(row), cols_.index_of(col), std::move(l));
  }

  /// Parses a literal like {{"e","0"},{"0","x+xx"}}.
  static LangMatrix parse(const StateSet& index, const Alphabet& alphabet,
                          std::initializer_list<std::initializer_list<const char*>> rows) {
    LangMatrix m(index, index, alphabet);
    if (rows.size() != index.size()) throw InputError("matrix literal has the wrong number of rows");
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != index.size()) throw InputError("matrix literal has the wrong number of columns");
      std::size_t j = 0;
      for (auto text : row) m.set(i, j++, RegularLanguage::parse(text, alphabet));
      ++i;
    }
    return m;
  }

 private:
  StateSet rows_, cols_;
  Alphabet alphabet_;
  std::vector<RegularLanguage> entries_;
};

inline LangMatrix mat_zero(const StateSet& rows, const StateSet& cols, const Alphabet& alphabet) {
  return LangMatrix(rows, cols, alphabet);
}
inline LangMatrix mat_zero(const StateSet& index, const Alphabet& alphabet) {
  return LangMatrix(index, index, alphabet);
}

inline LangMatrix mat_identity(const StateSet& index, const Alphabet& alphabet) {
  LangMatrix m(index, index, alphabet);
  for (std::size_t i = 0; i < index.size(); ++i) m.set(i, i, RegularLanguage::epsilon(alphabet));
  return m;
}

inline LangMatrix mat_union(const LangMatrix& m, const LangMatrix& n) {
  if (!(m.row_index() == n.row_index()) || !(m.col_index() == n.col_index()))
    throw FrameMismatch("mat_union: shape mismatch");
  if (!(m.alphabet() == n.alphabet())) throw FrameMismatch("mat_union: alphabet mismatch");
  LangMatrix out(m.row_index(), m.col_index(), m.alphabet());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, unite(m(i, j), n(i, j)));
  return out;
}

inline LangMatrix mat_mul(const LangMatrix& m, const LangMatrix& n) {
  if (!(m.col_index() == n.row_index())) throw FrameMismatch("mat_mul: inner index mismatch");
  if (!(m.alphabet() == n.alphabet())) throw FrameMismatch("mat_mul: alphabet mismatch");
  LangMatrix out(m.row_index(), n.col_index(), m.alphabet());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < n.cols(); ++k) {
      auto acc = RegularLanguage::empty(m.alphabet());
      for (std::size_t j = 0; j < m.cols(); ++j) acc = unite(acc, concat(m(i, j), n(j, k)));
      out.set(i, k, std::move(acc));
    }
  return out;
}

inline bool mat_equals(const LangMatrix& m, const LangMatrix& n) {
  if (m.rows() != n.rows() || m.cols() != n.cols() || !(m.alphabet() == n.alphabet())) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!equals(m(i, j), n(i, j))) return false;
  return true;
}

/// Entrywise m ⊆ n.
inline bool mat_includes(const LangMatrix& m, const LangMatrix& n) {
  if (m.rows() != n.rows() || m.cols() != n.cols()) throw FrameMismatch("mat_includes: shape mismatch");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!includes(m(i, j), n(i, j))) return false;
  return true;
}

namespace detail {

// Star of a row-major n x n block by the Conway recursion, pivoting on the
// first index:
//   [a b; c d]* = [a* + a* b f* c a*, a* b f*; f* c a*, f*],  f = d + c a* b.
inline std::vector<RegularLanguage> block_star(const std::vector<RegularLanguage>& m, std::size_t n,
                                               const Alphabet& alphabet) {
  if (n == 0) return {};
  if (n == 1) return {star(m[0])};
  auto at = [n](std::size_t i, std::size_t j) { return i * n + j; };
  const std::size_t k = n - 1;
  const auto a_star = star(m[at(0, 0)]);
  // f = d + c a* b
  std::vector<RegularLanguage> f(k * k, RegularLanguage::empty(alphabet));
  std::vector<RegularLanguage> ca(k, RegularLanguage::empty(alphabet));  // c a*
  std::vector<RegularLanguage> ab(k, RegularLanguage::empty(alphabet));  // a* b
  for (std::size_t i = 0; i < k; ++i) {
    ca[i] = concat(m[at(i + 1, 0)], a_star);
    ab[i] = concat(a_star, m[at(0, i + 1)]);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) f[i * k + j] = unite(m[at(i + 1, j + 1)], concat(ca[i], m[at(0, j + 1)]));
  const auto fs = block_star(f, k, alphabet);
  std::vector<RegularLanguage> out(n * n, RegularLanguage::empty(alphabet));
  // top-right: a* b f*, bottom-left: f* c a*
  std::vector<RegularLanguage> top(k, RegularLanguage::empty(alphabet)), left(k, RegularLanguage::empty(alphabet));
  for (std::size_t j = 0; j < k; ++j) {
    auto acc = RegularLanguage::empty(alphabet);
    for (std::size_t l = 0; l < k; ++l) acc = unite(acc, concat(ab[l], fs[l * k + j]));
    top[j] = acc;
  }
  for (std::size_t i = 0; i < k; ++i) {
    auto acc = RegularLanguage::empty(alphabet);
    for (std::size_t l = 0; l < k; ++l) acc = unite(acc, concat(fs[i * k + l], ca[l]));
    left[i] = acc;
  }
  // top-left: a* + a* b f* c a*
  auto tl = a_star;
  for (std::size_t l = 0; l < k; ++l) tl = unite(tl, concat(top[l], ca[l]));
  out[at(0, 0)] = tl;
  for (std::size_t j = 0; j < k; ++j) out[at(0, j + 1)] = top[j];
  for (std::size_t i = 0; i < k; ++i) out[at(i + 1, 0)] = left[i];
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out[at(i + 1, j + 1)] = fs[i * k + j];
  return out;
}

}  // namespace detail

/// Union of all powers of a square matrix.
inline LangMatrix mat_star(const LangMatrix& m) {
  if (!m.square()) throw FrameMismatch("mat_star: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<RegularLanguage> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat.push_back(m(i, j));
  auto s = detail::block_star(flat, n, m.alphabet());
  LangMatrix out(m.row_index(), m.col_index(), m.alphabet());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, std::move(s[i * n + j]));
  return out;
}

namespace detail {

// Extension of an automaton leaf: entry (q, q') collects the words obtained
// by running the automaton while replacing each letter b by a word of
// assign[b](p, p') along a state path from q to q'.
inline LangMatrix extend_automaton(const fa::Nfa& nfa, const std::vector<LangMatrix>& assign, const StateSet& index,
                                   const Alphabet& out_alphabet) {
  const std::size_t nq = index.size();
  fa::Nfa big(out_alphabet.size());
  // Hub state (s, q) = s * nq + q.
  for (std::size_t s = 0; s < nfa.size(); ++s)
    for (std::size_t q = 0; q < nq; ++q) big.add_state();
  auto hub = [nq](std::size_t s, std::size_t q) { return static_cast<fa::State>(s * nq + q); };
  for (std::size_t s = 0; s < nfa.size(); ++s) {
    for (auto e : nfa.out[s]) {
      if (e.letter == fa::kEpsilon) {
        for (std::size_t q = 0; q < nq; ++q) big.add_edge(hub(s, q), fa::kEpsilon, hub(e.to, q));
        continue;
      }
      const auto& m = assign[static_cast<std::size_t>(e.letter)];
      for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t q2 = 0; q2 < nq; ++q2) {
          const auto& entry = m(q, q2);
          if (entry.kind() == RegularLanguage::Kind::Empty) continue;
          const auto& sub = entry.nfa();
          auto base = big.embed(sub);
          for (auto i : sub.initial) big.add_edge(hub(s, q), fa::kEpsilon, base + i);
          for (std::size_t t = 0; t < sub.size(); ++t)
            if (sub.accepting[t]) big.add_edge(base + static_cast<fa::State>(t), fa::kEpsilon, hub(e.to, q2));
        }
    }
  }
  LangMatrix out(index, index, out_alphabet);
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t q2 = 0; q2 < nq; ++q2) {
      fa::Nfa g = big;
      g.initial.clear();
      for (auto i : nfa.initial) g.initial.push_back(hub(i, q));
      for (std::size_t s = 0; s < nfa.size(); ++s)
        if (nfa.accepting[s]) g.accepting[hub(s, q2)] = 1;
      out.set(q, q2, RegularLanguage(out_alphabet, automaton_node(std::move(g))));
    }
  return out;
}

}  // namespace detail

/// Evaluates a regex over B in the matrix quantale, sending each letter b to
/// assign[b] (all square over one index and one output alphabet).
inline LangMatrix extend(const RegularLanguage& r, const std::vector<LangMatrix>& assign, const StateSet& index,
                         const Alphabet& out_alphabet) {
  if (assign.size() != r.alphabet().size()) throw InputError("extend: assignment is not total on the alphabet");
  for (const auto& m : assign) {
    if (!(m.row_index() == index) || !(m.col_index() == index))
      throw FrameMismatch("extend: assigned matrices must share one square index");
    if (!(m.alphabet() == out_alphabet)) throw FrameMismatch("extend: assigned matrices must share one alphabet");
  }
  using K = RegularLanguage::Kind;
  std::map<const RegularLanguage::Node*, LangMatrix> memo;
  std::function<LangMatrix(const RegularLanguage::NodePtr&)> go = [&](const RegularLanguage::NodePtr& n) {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    LangMatrix v = [&] {
      switch (n->kind) {
        case K::Empty: return mat_zero(index, out_alphabet);
        case K::Epsilon: return mat_identity(index, out_alphabet);
        case K::Letter: return assign[n->letter];
        case K::Union: return mat_union(go(n->left), go(n->right));
        case K::Concat: return mat_mul(go(n->left), go(n->right));
        case K::Star: return mat_star(go(n->left));
        case K::Automaton: return detail::extend_automaton(*n->automaton, assign, index, out_alphabet);
      }
      return mat_zero(index, out_alphabet);
    }();
    memo.emplace(n.get(), v);
    return v;
  };
  return go(r.node());
}

inline LangMatrix extend(const RegularLanguage& r, const std::map<std::string, LangMatrix>& assign) {
  if (assign.empty()) throw InputError("extend: empty assignment");
  std::vector<LangMatrix> ordered;
  for (const auto& b : r.alphabet()) {
    auto it = assign.find(b);
    if (it == assign.end()) throw InputError("extend: symbol '" + b + "' is unassigned");
    ordered.push_back(it->second);
  }
  const auto& first = assign.begin()->second;
  return extend(r, ordered, first.row_index(), first.alphabet());
}

/// Entry ((p,q),(p',q')) = sigma(m(p,p'), n(q,q')), indices lexicographic.
inline LangMatrix sigma_tensor(const LangMatrix& m, const LangMatrix& n, const Alphabet& paired) {
  LangMatrix out(product_names(m.row_index(), n.row_index()), product_names(m.col_index(), n.col_index()), paired);
  for (std::size_t p = 0; p < m.rows(); ++p)
    for (std::size_t q = 0; q < n.rows(); ++q)
      for (std::size_t p2 = 0; p2 < m.cols(); ++p2)
        for (std::size_t q2 = 0; q2 < n.cols(); ++q2)
          out.set(p * n.rows() + q, p2 * n.cols() + q2, sigma(m(p, p2), n(q, q2), paired));
  return out;
}

inline LangMatrix sigma_tensor(const LangMatrix& m, const LangMatrix& n) {
  return sigma_tensor(m, n, product_names(m.alphabet(), n.alphabet()));
}

/// Flattening of a grid of language matrices; the index of the result is
/// the lexicographic product of the outer and inner indices.
inline LangMatrix flatten(const BlockGrid<RegularLanguage>& blocks, const StateSet& outer, const StateSet& inner,
                          const Alphabet& alphabet) {
  auto flat = flatten(blocks);
  auto index = product_names(outer, inner);
  if (flat.rows != index.size() || flat.cols != index.size()) throw InputError("flatten: index sizes disagree");
  LangMatrix out(index, index, alphabet);
  for (std::size_t i = 0; i < flat.rows; ++i)
    for (std::size_t j = 0; j < flat.cols; ++j) out.set(i, j, flat(i, j));
  return out;
}

inline Grid<RegularLanguage> to_grid(const LangMatrix& m) {
  Grid<RegularLanguage> g(m.rows(), m.cols(), RegularLanguage::empty(m.alphabet()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g(i, j) = m(i, j);
  return g;
}

/// Product of block matrices, blocks multiplied as matrices.
inline BlockGrid<RegularLanguage> block_mul(const BlockGrid<RegularLanguage>& a, const BlockGrid<RegularLanguage>& b,
                                            const Alphabet& alphabet) {
  if (a.cols != b.rows) throw FrameMismatch("block_mul: outer shape mismatch");
  const std::size_t q = a(0, 0).rows;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < q; ++i) names.push_back(std::to_string(i));
  StateSet inner(names);
  auto as_matrix = [&](const Grid<RegularLanguage>& g) {
    LangMatrix m(inner, inner, alphabet);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) m.set(i, j, g(i, j));
    return m;
  };
  BlockGrid<RegularLanguage> out(a.rows, b.cols, Grid<RegularLanguage>(q, q, RegularLanguage::empty(alphabet)));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < b.cols; ++k) {
      auto acc = mat_zero(inner, alphabet);
      for (std::size_t j = 0; j < a.cols; ++j) acc = mat_union(acc, mat_mul(as_matrix(a(i, j)), as_matrix(b(j, k))));
      out(i, k) = to_grid(acc);
    }
  return out;
}

}  // namespace tdx
