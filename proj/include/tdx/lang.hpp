#pragma once

// Regular languages over a finite alphabet: the free quantale P(B*)
// restricted to its rational part. Values carry a regex syntax tree and
// lazily build automata for decision procedures.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tdx/automaton.hpp"
#include "tdx/error.hpp"
#include "tdx/names.hpp"

namespace tdx {

/// Tree size above which a freshly built expression is replaced by its
/// minimal automaton (or a regex read back from it, when that is small).
inline std::atomic<std::size_t>& compaction_threshold() {
  static std::atomic<std::size_t> threshold{48};
  return threshold;
}

class RegularLanguage {
 public:
  enum class Kind { Empty, Epsilon, Letter, Union, Concat, Star, Automaton };

  struct Node {
    Kind kind = Kind::Empty;
    std::size_t letters = 0;  // alphabet size the node is built over
    std::size_t letter = 0;   // Letter
    std::shared_ptr<const Node> left, right;  // Union, Concat; Star uses left
    std::shared_ptr<const fa::Nfa> automaton;  // Automaton
    std::size_t tree_size = 1;

    mutable std::once_flag nfa_once, dfa_once;
    mutable std::shared_ptr<const fa::Nfa> nfa_cache;
    mutable std::shared_ptr<const fa::Dfa> dfa_cache;
  };
  using NodePtr = std::shared_ptr<const Node>;

  /// The empty language over `alphabet`.
  explicit RegularLanguage(Alphabet alphabet)
      : alphabet_(std::move(alphabet)), node_(leaf(Kind::Empty, alphabet_.size())) {}

  RegularLanguage(Alphabet alphabet, NodePtr node) : alphabet_(std::move(alphabet)), node_(std::move(node)) {}

  static RegularLanguage empty(const Alphabet& a) { return RegularLanguage(a); }
  static RegularLanguage epsilon(const Alphabet& a) {
    return {a, leaf(Kind::Epsilon, a.size())};
  }
  static RegularLanguage letter(const Alphabet& a, std::size_t index) {
    if (index >= a.size()) throw InputError("letter index out of range");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Letter;
    n->letters = a.size();
    n->letter = index;
    return {a, n};
  }
  static RegularLanguage letter(const Alphabet& a, std::string_view name) {
    return letter(a, a.index_of(name));
  }
  static RegularLanguage word(const Alphabet& a, std::span<const std::size_t> w) {
    auto out = epsilon(a);
    for (auto x : w) out = concat(out, letter(a, x));
    return out;
  }
  /// B* for the whole alphabet.
  static RegularLanguage full(const Alphabet& a) {
    auto any = empty(a);
    for (std::size_t i = 0; i < a.size(); ++i) any = unite(any, letter(a, i));
    return star(any);
  }

  /// Regex text per the grammar expr := term {'+' term}; term := factor
  /// {factor}; factor := atom {'*'}; atom := '0' | 'e' | SYMBOL | '(' expr ')'.
  static RegularLanguage parse(std::string_view text, const Alphabet& alphabet);

  static RegularLanguage unite(const RegularLanguage& l, const RegularLanguage& r);
  static RegularLanguage concat(const RegularLanguage& l, const RegularLanguage& r);
  static RegularLanguage star(const RegularLanguage& l);

  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] const NodePtr& node() const noexcept { return node_; }
  [[nodiscard]] Kind kind() const noexcept { return node_->kind; }

  /// Epsilon-NFA accepting exactly the expression's language.
  [[nodiscard]] const fa::Nfa& nfa() const;
  /// Canonical minimal complete DFA.
  [[nodiscard]] const fa::Dfa& dfa() const;

  [[nodiscard]] bool is_empty() const { return fa::is_empty(dfa()); }
  [[nodiscard]] bool contains_epsilon() const { return dfa().accepting[dfa().start] != 0; }

  /// Regex text; symbols are quoted when they are not bare identifiers.
  [[nodiscard]] std::string to_string() const;

 private:
  static NodePtr leaf(Kind k, std::size_t letters) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->letters = letters;
    return n;
  }

  Alphabet alphabet_;
  NodePtr node_;
};

namespace detail {

using Kind = RegularLanguage::Kind;
using Node = RegularLanguage::Node;
using NodePtr = RegularLanguage::NodePtr;

inline bool same_tree(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->tree_size != b->tree_size) return false;
  switch (a->kind) {
    case Kind::Empty:
    case Kind::Epsilon:
      return true;
    case Kind::Letter:
      return a->letter == b->letter;
    case Kind::Union:
    case Kind::Concat:
      return same_tree(a->left, b->left) && same_tree(a->right, b->right);
    case Kind::Star:
      return same_tree(a->left, b->left);
    case Kind::Automaton:
      return a->automaton == b->automaton;
  }
  return false;
}

inline NodePtr make_binary(Kind k, NodePtr l, NodePtr r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->letters = l->letters;
  n->tree_size = 1 + l->tree_size + r->tree_size;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

inline NodePtr make_star(NodePtr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Star;
  n->letters = e->letters;
  n->tree_size = 1 + e->tree_size;
  n->left = std::move(e);
  return n;
}

inline NodePtr make_leaf(Kind k, std::size_t letters) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->letters = letters;
  return n;
}

inline NodePtr make_letter(std::size_t letters, std::size_t x) {
  auto n = make_leaf(Kind::Letter, letters);
  const_cast<Node&>(*n).letter = x;
  return n;
}

// Simplifying constructors. These never compact and are used both by the
// public operations and by the automaton-to-regex read back.
inline NodePtr s_union(NodePtr l, NodePtr r) {
  if (l->kind == Kind::Empty) return r;
  if (r->kind == Kind::Empty) return l;
  if (same_tree(l, r)) return l;
  if (l->kind == Kind::Epsilon && r->kind == Kind::Star) return r;
  if (r->kind == Kind::Epsilon && l->kind == Kind::Star) return l;
  return make_binary(Kind::Union, std::move(l), std::move(r));
}

inline NodePtr s_concat(NodePtr l, NodePtr r) {
  if (l->kind == Kind::Empty) return l;
  if (r->kind == Kind::Empty) return r;
  if (l->kind == Kind::Epsilon) return r;
  if (r->kind == Kind::Epsilon) return l;
  return make_binary(Kind::Concat, std::move(l), std::move(r));
}

inline NodePtr s_star(NodePtr e) {
  if (e->kind == Kind::Empty || e->kind == Kind::Epsilon) return make_leaf(Kind::Epsilon, e->letters);
  if (e->kind == Kind::Star) return e;
  if (e->kind == Kind::Union && e->left->kind == Kind::Epsilon) return s_star(e->right);
  if (e->kind == Kind::Union && e->right->kind == Kind::Epsilon) return s_star(e->left);
  return make_star(std::move(e));
}

struct Fragment {
  fa::State in, out;
};

inline Fragment build_nfa(const NodePtr& n, fa::Nfa& nfa) {
  Fragment f{nfa.add_state(), 0};
  switch (n->kind) {
    case Kind::Empty:
      f.out = nfa.add_state();
      break;
    case Kind::Epsilon:
      f.out = nfa.add_state();
      nfa.add_edge(f.in, fa::kEpsilon, f.out);
      break;
    case Kind::Letter:
      f.out = nfa.add_state();
      nfa.add_edge(f.in, static_cast<int>(n->letter), f.out);
      break;
    case Kind::Union: {
      auto l = build_nfa(n->left, nfa);
      auto r = build_nfa(n->right, nfa);
      f.out = nfa.add_state();
      nfa.add_edge(f.in, fa::kEpsilon, l.in);
      nfa.add_edge(f.in, fa::kEpsilon, r.in);
      nfa.add_edge(l.out, fa::kEpsilon, f.out);
      nfa.add_edge(r.out, fa::kEpsilon, f.out);
      break;
    }
    case Kind::Concat: {
      auto l = build_nfa(n->left, nfa);
      auto r = build_nfa(n->right, nfa);
      nfa.add_edge(f.in, fa::kEpsilon, l.in);
      nfa.add_edge(l.out, fa::kEpsilon, r.in);
      f.out = nfa.add_state();
      nfa.add_edge(r.out, fa::kEpsilon, f.out);
      break;
    }
    case Kind::Star: {
      auto e = build_nfa(n->left, nfa);
      f.out = nfa.add_state();
      nfa.add_edge(f.in, fa::kEpsilon, e.in);
      nfa.add_edge(f.in, fa::kEpsilon, f.out);
      nfa.add_edge(e.out, fa::kEpsilon, e.in);
      nfa.add_edge(e.out, fa::kEpsilon, f.out);
      break;
    }
    case Kind::Automaton: {
      const auto& sub = *n->automaton;
      auto base = nfa.embed(sub);
      f.out = nfa.add_state();
      for (auto s : sub.initial) nfa.add_edge(f.in, fa::kEpsilon, base + s);
      for (std::size_t s = 0; s < sub.size(); ++s)
        if (sub.accepting[s]) nfa.add_edge(base + static_cast<fa::State>(s), fa::kEpsilon, f.out);
      break;
    }
  }
  return f;
}

/// Regex for a DFA's language by state elimination.
inline NodePtr dfa_to_regex(const fa::Dfa& dfa) {
  const std::size_t k = dfa.letters;
  const std::size_t n = dfa.states;
  // Live = reachable (all are) and co-reachable.
  std::vector<char> live(n, 0);
  for (std::size_t s = 0; s < n; ++s) live[s] = dfa.accepting[s];
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (live[s]) continue;
      for (std::size_t a = 0; a < k; ++a)
        if (live[dfa.next(static_cast<fa::State>(s), a)]) {
          live[s] = 1;
          changed = true;
          break;
        }
    }
  }
  if (!live[dfa.start]) return make_leaf(Kind::Empty, k);
  // Generalized automaton over live states plus fresh start (n) and final (n+1).
  const std::size_t m = n + 2;
  std::vector<NodePtr> edge(m * m, make_leaf(Kind::Empty, k));
  auto at = [&](std::size_t i, std::size_t j) -> NodePtr& { return edge[i * m + j]; };
  for (std::size_t s = 0; s < n; ++s) {
    if (!live[s]) continue;
    for (std::size_t a = 0; a < k; ++a) {
      auto t = dfa.next(static_cast<fa::State>(s), a);
      if (live[t]) at(s, t) = s_union(at(s, t), make_letter(k, a));
    }
    if (dfa.accepting[s]) at(s, n + 1) = make_leaf(Kind::Epsilon, k);
  }
  at(n, dfa.start) = make_leaf(Kind::Epsilon, k);
  std::vector<char> alive(m, 0);
  for (std::size_t s = 0; s < n; ++s) alive[s] = live[s];
  alive[n] = alive[n + 1] = 1;
  for (std::size_t round = 0; round < n; ++round) {
    // Eliminate the live state with the fewest in*out connections.
    std::size_t best = m, best_cost = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (!alive[s] || s == n || s == n + 1) continue;
      std::size_t ins = 0, outs = 0;
      for (std::size_t t = 0; t < m; ++t) {
        if (!alive[t] || t == s) continue;
        if (at(t, s)->kind != Kind::Empty) ++ins;
        if (at(s, t)->kind != Kind::Empty) ++outs;
      }
      if (best == m || ins * outs < best_cost) {
        best = s;
        best_cost = ins * outs;
      }
    }
    if (best == m) break;
    const std::size_t s = best;
    NodePtr loop = s_star(at(s, s));
    for (std::size_t i = 0; i < m; ++i) {
      if (!alive[i] || i == s || at(i, s)->kind == Kind::Empty) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (!alive[j] || j == s || at(s, j)->kind == Kind::Empty) continue;
        at(i, j) = s_union(at(i, j), s_concat(s_concat(at(i, s), loop), at(s, j)));
      }
    }
    alive[s] = 0;
  }
  return at(n, n + 1);
}

inline NodePtr compact(const NodePtr& n);

inline NodePtr maybe_compact(NodePtr n) {
  if (n->tree_size <= compaction_threshold().load()) return n;
  return compact(n);
}

inline std::shared_ptr<const fa::Dfa> minimal_dfa_of(const NodePtr& n);

inline NodePtr compact(const NodePtr& n) {
  auto dfa = minimal_dfa_of(n);
  auto regex = dfa_to_regex(*dfa);
  if (regex->tree_size <= compaction_threshold().load()) return regex;
  auto leafnode = std::make_shared<Node>();
  leafnode->kind = Kind::Automaton;
  leafnode->letters = n->letters;
  leafnode->automaton = std::make_shared<const fa::Nfa>(fa::to_nfa(*dfa));
  std::call_once(leafnode->dfa_once, [&] { leafnode->dfa_cache = dfa; });
  return leafnode;
}

inline std::shared_ptr<const fa::Nfa> nfa_of(const NodePtr& n) {
  std::call_once(n->nfa_once, [&] {
    auto nfa = std::make_shared<fa::Nfa>(n->letters);
    auto f = build_nfa(n, *nfa);
    nfa->initial = {f.in};
    nfa->accepting[f.out] = 1;
    n->nfa_cache = std::move(nfa);
  });
  return n->nfa_cache;
}

inline std::shared_ptr<const fa::Dfa> minimal_dfa_of(const NodePtr& n) {
  std::call_once(n->dfa_once, [&] {
    n->dfa_cache = std::make_shared<const fa::Dfa>(fa::minimize(fa::determinize(*nfa_of(n))));
  });
  return n->dfa_cache;
}

inline void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* op) {
  if (!(a == b)) throw FrameMismatch(std::string(op) + ": alphabet mismatch");
}

inline bool is_bare_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline std::string quote_symbol(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

inline std::string format_symbol(std::string_view s) {
  if (is_bare_identifier(s) && s != "e") return std::string(s);
  if (auto p = split_pair_name(s)) return "<" + format_symbol(p->first) + "," + format_symbol(p->second) + ">";
  return quote_symbol(s);
}

/// Concatenation can be written by juxtaposition exactly when every symbol
/// is a one-character bare identifier.
inline bool compact_alphabet(const Alphabet& a) {
  return std::all_of(a.begin(), a.end(), [](const std::string& s) {
    return s.size() == 1 && is_bare_identifier(s) && s != "e";
  });
}

inline void print(const NodePtr& n, const Alphabet& a, bool tight, int required, std::string& out) {
  auto prec = [](Kind k) {
    switch (k) {
      case Kind::Union: return 0;
      case Kind::Concat: return 1;
      case Kind::Star: return 2;
      default: return 3;
    }
  };
  if (n->kind == Kind::Automaton) {
    print(dfa_to_regex(*minimal_dfa_of(n)), a, tight, required, out);
    return;
  }
  const bool parens = prec(n->kind) < required;
  if (parens) out += '(';
  switch (n->kind) {
    case Kind::Empty: out += '0'; break;
    case Kind::Epsilon: out += 'e'; break;
    case Kind::Letter: out += format_symbol(a[n->letter]); break;
    case Kind::Union:
      print(n->left, a, tight, 0, out);
      out += '+';
      print(n->right, a, tight, 1, out);
      break;
    case Kind::Concat:
      print(n->left, a, tight, 1, out);
      if (!tight) out += ' ';
      print(n->right, a, tight, 2, out);
      break;
    case Kind::Star:
      print(n->left, a, tight, 3, out);
      out += '*';
      break;
    case Kind::Automaton: break;
  }
  if (parens) out += ')';
}

class Parser {
 public:
  Parser(std::string_view text, const Alphabet& a) : text_(text), a_(a) {}

  NodePtr run() {
    tokenize();
    auto e = expr();
    if (pos_ != tokens_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  enum class Tok { Plus, Star, Open, Close, Zero, Eps, Sym };
  struct Token {
    Tok kind;
    std::size_t letter = 0;
  };

  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("regex '" + std::string(text_) + "': " + why);
  }

  std::string read_symbol(std::size_t& i) {
    if (i >= text_.size()) fail("symbol expected");
    char c = text_[i];
    if (c == '\'') {
      std::string s;
      ++i;
      while (i < text_.size() && text_[i] != '\'') {
        if (text_[i] == '\\' && i + 1 < text_.size()) ++i;
        s += text_[i++];
      }
      if (i >= text_.size()) fail("unterminated quoted symbol");
      ++i;
      return s;
    }
    if (c == '<') {
      ++i;
      auto l = read_symbol(i);
      skip_ws(i);
      if (i >= text_.size() || text_[i] != ',') fail("',' expected in pair symbol");
      ++i;
      skip_ws(i);
      auto r = read_symbol(i);
      skip_ws(i);
      if (i >= text_.size() || text_[i] != '>') fail("'>' expected in pair symbol");
      ++i;
      return pair_name(l, r);
    }
    std::size_t j = i;
    while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
    if (j == i) fail(std::string("unexpected character '") + c + "'");
    auto s = std::string(text_.substr(i, j - i));
    i = j;
    return s;
  }

  void skip_ws(std::size_t& i) const {
    while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
  }

  void push_symbol(const std::string& s) {
    auto idx = a_.find(s);
    if (!idx) fail("symbol '" + s + "' not in alphabet");
    tokens_.push_back({Tok::Sym, *idx});
  }

  // A bare identifier run is split greedily into alphabet symbols.
  void push_run(const std::string& run) {
    if (run == "e") {
      tokens_.push_back({Tok::Eps});
      return;
    }
    if (a_.contains(run)) {
      push_symbol(run);
      return;
    }
    std::size_t i = 0;
    while (i < run.size()) {
      std::size_t best = 0;
      for (std::size_t len = run.size() - i; len > 0; --len) {
        if (a_.contains(std::string_view(run).substr(i, len))) {
          best = len;
          break;
        }
      }
      if (best == 0) {
        if (run[i] == 'e') {
          tokens_.push_back({Tok::Eps});
          ++i;
          continue;
        }
        fail("cannot split '" + run + "' into alphabet symbols");
      }
      push_symbol(run.substr(i, best));
      i += best;
    }
  }

  void tokenize() {
    std::size_t i = 0;
    while (true) {
      skip_ws(i);
      if (i >= text_.size()) break;
      char c = text_[i];
      switch (c) {
        case '+': tokens_.push_back({Tok::Plus}); ++i; break;
        case '*': tokens_.push_back({Tok::Star}); ++i; break;
        case '(': tokens_.push_back({Tok::Open}); ++i; break;
        case ')': tokens_.push_back({Tok::Close}); ++i; break;
        case '0': tokens_.push_back({Tok::Zero}); ++i; break;
        case '\'':
        case '<': push_symbol(read_symbol(i)); break;
        default:
          if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            push_run(read_symbol(i));
          } else {
            fail(std::string("unexpected character '") + c + "'");
          }
      }
    }
  }

  bool at(Tok k) const { return pos_ < tokens_.size() && tokens_[pos_].kind == k; }
  bool at_atom() const { return at(Tok::Zero) || at(Tok::Eps) || at(Tok::Sym) || at(Tok::Open); }

  NodePtr expr() {
    auto e = term();
    while (at(Tok::Plus)) {
      ++pos_;
      e = s_union(e, term());
    }
    return e;
  }
  NodePtr term() {
    if (!at_atom()) fail("expression expected");
    auto e = factor();
    while (at_atom()) e = s_concat(e, factor());
    return e;
  }
  NodePtr factor() {
    auto e = atom();
    while (at(Tok::Star)) {
      ++pos_;
      e = s_star(e);
    }
    return e;
  }
  NodePtr atom() {
    const auto k = a_.size();
    auto t = tokens_[pos_++];
    switch (t.kind) {
      case Tok::Zero: return make_leaf(Kind::Empty, k);
      case Tok::Eps: return make_leaf(Kind::Epsilon, k);
      case Tok::Sym: return make_letter(k, t.letter);
      case Tok::Open: {
        auto e = expr();
        if (!at(Tok::Close)) fail("')' expected");
        ++pos_;
        return e;
      }
      default: fail("atom expected");
    }
  }

  std::string_view text_;
  const Alphabet& a_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// End positions reachable from `start` by a factorization matching `n`.
// Direct structural matcher, independent of the automata.
inline std::vector<char> match_ends(const NodePtr& n, std::span<const std::size_t> w, std::size_t start,
                                    std::map<std::pair<const Node*, std::size_t>, std::vector<char>>& memo) {
  auto key = std::pair{n.get(), start};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<char> ends(w.size() + 1, 0);
  switch (n->kind) {
    case Kind::Empty: break;
    case Kind::Epsilon: ends[start] = 1; break;
    case Kind::Letter:
      if (start < w.size() && w[start] == n->letter) ends[start + 1] = 1;
      break;
    case Kind::Union: {
      auto l = match_ends(n->left, w, start, memo);
      auto r = match_ends(n->right, w, start, memo);
      for (std::size_t i = 0; i <= w.size(); ++i) ends[i] = l[i] || r[i];
      break;
    }
    case Kind::Concat: {
      auto mid = match_ends(n->left, w, start, memo);
      for (std::size_t m = start; m <= w.size(); ++m) {
        if (!mid[m]) continue;
        auto r = match_ends(n->right, w, m, memo);
        for (std::size_t i = 0; i <= w.size(); ++i) ends[i] = ends[i] || r[i];
      }
      break;
    }
    case Kind::Star: {
      ends[start] = 1;
      std::vector<std::size_t> frontier{start};
      while (!frontier.empty()) {
        auto m = frontier.back();
        frontier.pop_back();
        auto r = match_ends(n->left, w, m, memo);
        for (std::size_t i = m + 1; i <= w.size(); ++i) {
          if (r[i] && !ends[i]) {
            ends[i] = 1;
            frontier.push_back(i);
          }
        }
      }
      break;
    }
    case Kind::Automaton: {
      for (std::size_t i = start; i <= w.size(); ++i)
        ends[i] = fa::accepts(*n->automaton, w.subspan(start, i - start)) ? 1 : 0;
      break;
    }
  }
  memo.emplace(key, ends);
  return ends;
}

inline NodePtr relabel(const NodePtr& n, std::span<const std::size_t> map, std::size_t letters) {
  switch (n->kind) {
    case Kind::Empty:
    case Kind::Epsilon: return make_leaf(n->kind, letters);
    case Kind::Letter: return make_letter(letters, map[n->letter]);
    case Kind::Union: return s_union(relabel(n->left, map, letters), relabel(n->right, map, letters));
    case Kind::Concat: return s_concat(relabel(n->left, map, letters), relabel(n->right, map, letters));
    case Kind::Star: return s_star(relabel(n->left, map, letters));
    case Kind::Automaton: {
      auto out = std::make_shared<Node>();
      out->kind = Kind::Automaton;
      out->letters = letters;
      out->automaton = std::make_shared<const fa::Nfa>(fa::relabel(*n->automaton, map, letters));
      return out;
    }
  }
  return n;
}

inline NodePtr restrict_node(const NodePtr& n, std::span<const char> keep, std::span<const std::size_t> renumber,
                             std::size_t letters) {
  switch (n->kind) {
    case Kind::Empty:
    case Kind::Epsilon: return make_leaf(n->kind, letters);
    case Kind::Letter:
      return keep[n->letter] ? make_letter(letters, renumber[n->letter]) : make_leaf(Kind::Empty, letters);
    case Kind::Union:
      return s_union(restrict_node(n->left, keep, renumber, letters),
                     restrict_node(n->right, keep, renumber, letters));
    case Kind::Concat:
      return s_concat(restrict_node(n->left, keep, renumber, letters),
                      restrict_node(n->right, keep, renumber, letters));
    case Kind::Star: return s_star(restrict_node(n->left, keep, renumber, letters));
    case Kind::Automaton: {
      auto out = std::make_shared<Node>();
      out->kind = Kind::Automaton;
      out->letters = letters;
      out->automaton =
          std::make_shared<const fa::Nfa>(fa::restrict_letters(*n->automaton, keep, renumber, letters));
      return out;
    }
  }
  return n;
}

inline NodePtr automaton_node(fa::Nfa nfa) {
  auto out = std::make_shared<Node>();
  out->kind = Kind::Automaton;
  out->letters = nfa.letters;
  out->automaton = std::make_shared<const fa::Nfa>(std::move(nfa));
  return compact(out);
}

}  // namespace detail

inline RegularLanguage RegularLanguage::parse(std::string_view text, const Alphabet& alphabet) {
  return {alphabet, detail::maybe_compact(detail::Parser(text, alphabet).run())};
}

inline RegularLanguage RegularLanguage::unite(const RegularLanguage& l, const RegularLanguage& r) {
  detail::require_same_alphabet(l.alphabet_, r.alphabet_, "union");
  return {l.alphabet_, detail::maybe_compact(detail::s_union(l.node_, r.node_))};
}

inline RegularLanguage RegularLanguage::concat(const RegularLanguage& l, const RegularLanguage& r) {
  detail::require_same_alphabet(l.alphabet_, r.alphabet_, "concat");
  return {l.alphabet_, detail::maybe_compact(detail::s_concat(l.node_, r.node_))};
}

inline RegularLanguage RegularLanguage::star(const RegularLanguage& l) {
  return {l.alphabet_, detail::maybe_compact(detail::s_star(l.node_))};
}

inline const fa::Nfa& RegularLanguage::nfa() const { return *detail::nfa_of(node_); }
inline const fa::Dfa& RegularLanguage::dfa() const { return *detail::minimal_dfa_of(node_); }

inline std::string RegularLanguage::to_string() const {
  std::string out;
  detail::print(node_, alphabet_, detail::compact_alphabet(alphabet_), 0, out);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const RegularLanguage& l) { return os << l.to_string(); }

// ---------------------------------------------------------------------------
// Quantale operations

inline RegularLanguage unite(const RegularLanguage& l, const RegularLanguage& r) {
  return RegularLanguage::unite(l, r);
}
inline RegularLanguage concat(const RegularLanguage& l, const RegularLanguage& r) {
  return RegularLanguage::concat(l, r);
}
inline RegularLanguage star(const RegularLanguage& l) { return RegularLanguage::star(l); }

/// Star on reduced languages only; the Boolean star is total, this mirrors
/// the domain of the series star.
inline RegularLanguage restricted_star(const RegularLanguage& l) {
  if (l.contains_epsilon()) throw NotReduced("restricted_star: language contains the empty word");
  return star(l);
}

inline bool membership(const RegularLanguage& l, std::span<const std::size_t> w) {
  for (auto x : w)
    if (x >= l.alphabet().size()) throw InputError("membership: foreign symbol in word");
  return fa::accepts(l.dfa(), w);
}

inline bool membership(const RegularLanguage& l, std::string_view comma_word) {
  return membership(l, parse_word(comma_word, l.alphabet()));
}

/// Membership decided by structural recursion on the expression.
inline bool membership_by_matcher(const RegularLanguage& l, std::span<const std::size_t> w) {
  for (auto x : w)
    if (x >= l.alphabet().size()) throw InputError("membership: foreign symbol in word");
  std::map<std::pair<const detail::Node*, std::size_t>, std::vector<char>> memo;
  return detail::match_ends(l.node(), w, 0, memo)[w.size()] != 0;
}

inline bool equals(const RegularLanguage& l, const RegularLanguage& r) {
  detail::require_same_alphabet(l.alphabet(), r.alphabet(), "equals");
  return l.node() == r.node() || l.dfa() == r.dfa();
}

/// Some word in `l` but not in `r`, shortest first; nullopt iff l ⊆ r.
inline std::optional<Word> inclusion_witness(const RegularLanguage& l, const RegularLanguage& r) {
  detail::require_same_alphabet(l.alphabet(), r.alphabet(), "includes");
  if (l.node() == r.node()) return std::nullopt;
  return fa::difference_witness(l.dfa(), r.dfa());
}

/// True iff every word of `l` is in `r` (l ⊆ r).
inline bool includes(const RegularLanguage& l, const RegularLanguage& r) {
  return !inclusion_witness(l, r).has_value();
}

inline std::vector<Word> enumerate(const RegularLanguage& l, std::size_t maxlen) {
  return fa::enumerate(l.dfa(), maxlen);
}

/// Image under the letterwise extension of a total symbol map, given as
/// target indices.
inline RegularLanguage homomorphic_image(const RegularLanguage& l, std::span<const std::size_t> map,
                                         const Alphabet& target) {
  if (map.size() != l.alphabet().size()) throw InputError("homomorphic_image: map is not total");
  for (auto x : map)
    if (x >= target.size()) throw InputError("homomorphic_image: image symbol outside target alphabet");
  return {target, detail::maybe_compact(detail::relabel(l.node(), map, target.size()))};
}

inline RegularLanguage homomorphic_image(const RegularLanguage& l, const std::map<std::string, std::string>& h,
                                         const Alphabet& target) {
  std::vector<std::size_t> map;
  for (const auto& s : l.alphabet()) {
    auto it = h.find(s);
    if (it == h.end()) throw InputError("homomorphic_image: map undefined on '" + s + "'");
    map.push_back(target.index_of(it->second));
  }
  return homomorphic_image(l, map, target);
}

/// Words over the pair alphabet whose two projections lie in `l` and `r`.
inline RegularLanguage sigma(const RegularLanguage& l, const RegularLanguage& r, const Alphabet& paired) {
  if (paired.size() != l.alphabet().size() * r.alphabet().size())
    throw FrameMismatch("sigma: paired alphabet has the wrong size");
  return {paired, detail::automaton_node(fa::synchronous_product(l.nfa(), r.nfa()))};
}

inline RegularLanguage sigma(const RegularLanguage& l, const RegularLanguage& r) {
  return sigma(l, r, product_names(l.alphabet(), r.alphabet()));
}

/// l ∩ sub*, re-expressed over the sub-alphabet `sub` (a subset of l's
/// alphabet, in any order).
inline RegularLanguage restrict_to(const RegularLanguage& l, const Alphabet& sub) {
  std::vector<char> keep(l.alphabet().size(), 0);
  std::vector<std::size_t> renumber(l.alphabet().size(), 0);
  for (std::size_t i = 0; i < sub.size(); ++i) {
    auto j = l.alphabet().index_of(sub[i]);
    keep[j] = 1;
    renumber[j] = i;
  }
  return {sub, detail::maybe_compact(detail::restrict_node(l.node(), keep, renumber, sub.size()))};
}

}  // namespace tdx
