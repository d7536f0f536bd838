#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdx/error.hpp"
#include "tdx/names.hpp"

namespace tdx::fa {

using State = std::uint32_t;
inline constexpr int kEpsilon = -1;

/// Upper bound on the number of subset states a determinization may create.
inline std::atomic<std::size_t>& subset_state_cap() {
  static std::atomic<std::size_t> cap{1'000'000};
  return cap;
}

/// Nondeterministic automaton with epsilon moves over letters 0..letters-1.
struct Nfa {
  struct Edge {
    int letter;  // kEpsilon or a letter index
    State to;
  };

  std::size_t letters = 0;
  std::vector<std::vector<Edge>> out;
  std::vector<State> initial;
  std::vector<char> accepting;

  explicit Nfa(std::size_t letter_count = 0) : letters(letter_count) {}

  [[nodiscard]] std::size_t size() const noexcept { return out.size(); }

  State add_state(bool accept = false) {
    out.emplace_back();
    accepting.push_back(accept ? 1 : 0);
    return static_cast<State>(out.size() - 1);
  }

  void add_edge(State from, int letter, State to) { out[from].push_back({letter, to}); }

  /// Copies `other` in, returning the offset of its state 0.
  State embed(const Nfa& other) {
    auto base = static_cast<State>(out.size());
    for (std::size_t s = 0; s < other.size(); ++s) {
      add_state(false);
      for (auto e : other.out[s]) out.back().push_back({e.letter, e.to + base});
    }
    return base;
  }
};

/// Complete deterministic automaton; state 0 is initial once canonicalized.
struct Dfa {
  std::size_t letters = 0;
  std::size_t states = 0;
  State start = 0;
  std::vector<State> delta;  // states * letters
  std::vector<char> accepting;

  [[nodiscard]] State next(State s, std::size_t letter) const { return delta[s * letters + letter]; }

  friend bool operator==(const Dfa&, const Dfa&) = default;
};

inline void epsilon_close(const Nfa& nfa, std::vector<State>& set) {
  std::vector<char> seen(nfa.size(), 0);
  for (auto s : set) seen[s] = 1;
  std::vector<State> stack(set.begin(), set.end());
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (auto e : nfa.out[s]) {
      if (e.letter == kEpsilon && !seen[e.to]) {
        seen[e.to] = 1;
        set.push_back(e.to);
        stack.push_back(e.to);
      }
    }
  }
  std::sort(set.begin(), set.end());
}

/// Subset construction. Produces a complete DFA whose states are the
/// reachable epsilon-closed subsets; throws StateCapExceeded past the cap.
inline Dfa determinize(const Nfa& nfa) {
  const std::size_t cap = subset_state_cap().load();
  Dfa dfa;
  dfa.letters = nfa.letters;
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;

  auto intern = [&](std::vector<State> set) -> State {
    auto [it, inserted] = ids.emplace(std::move(set), static_cast<State>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= cap) {
        throw StateCapExceeded("subset construction exceeded " + std::to_string(cap) + " states");
      }
      subsets.push_back(it->first);
    }
    return it->second;
  };

  std::vector<State> init(nfa.initial.begin(), nfa.initial.end());
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  epsilon_close(nfa, init);
  intern(std::move(init));

  std::vector<char> mark(nfa.size(), 0);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    bool acc = false;
    for (auto s : subsets[i]) acc = acc || nfa.accepting[s];
    dfa.accepting.push_back(acc ? 1 : 0);
    for (std::size_t a = 0; a < nfa.letters; ++a) {
      std::vector<State> next;
      for (auto s : subsets[i]) {
        for (auto e : nfa.out[s]) {
          if (e.letter == static_cast<int>(a) && !mark[e.to]) {
            mark[e.to] = 1;
            next.push_back(e.to);
          }
        }
      }
      for (auto s : next) mark[s] = 0;
      epsilon_close(nfa, next);
      State id = intern(std::move(next));
      dfa.delta.push_back(id);
    }
  }
  dfa.states = subsets.size();
  dfa.start = 0;
  return dfa;
}

/// Moore partition refinement followed by breadth-first renumbering from the
/// start state in letter order. Two DFAs accept the same language iff their
/// minimized forms compare equal.
inline Dfa minimize(const Dfa& in) {
  const std::size_t k = in.letters;
  // Reachable part only.
  std::vector<int> reach(in.states, -1);
  std::vector<State> order{in.start};
  reach[in.start] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      State t = in.next(order[i], a);
      if (reach[t] < 0) {
        reach[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  const std::size_t n = order.size();
  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = in.accepting[order[i]] ? 1 : 0;
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig_ids;
    std::vector<std::size_t> next_cls(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[i]);
      for (std::size_t a = 0; a < k; ++a) sig.push_back(cls[reach[in.next(order[i], a)]]);
      next_cls[i] = sig_ids.emplace(std::move(sig), sig_ids.size()).first->second;
    }
    bool stable = sig_ids.size() == classes;
    classes = sig_ids.size();
    cls = std::move(next_cls);
    if (stable) break;
  }
  // Canonical renumbering.
  std::vector<int> canon(classes, -1);
  std::vector<std::size_t> rep(classes);
  for (std::size_t i = 0; i < n; ++i) rep[cls[i]] = i;
  std::vector<std::size_t> queue{cls[0]};
  canon[cls[0]] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      auto c = cls[reach[in.next(order[rep[queue[i]]], a)]];
      if (canon[c] < 0) {
        canon[c] = static_cast<int>(queue.size());
        queue.push_back(c);
      }
    }
  }
  Dfa out;
  out.letters = k;
  out.states = classes;
  out.start = 0;
  out.delta.resize(classes * k);
  out.accepting.resize(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    std::size_t i = rep[queue[c]];
    out.accepting[c] = in.accepting[order[i]];
    for (std::size_t a = 0; a < k; ++a) {
      out.delta[c * k + a] = static_cast<State>(canon[cls[reach[in.next(order[i], a)]]]);
    }
  }
  return out;
}

inline bool is_empty(const Dfa& dfa) {
  return std::none_of(dfa.accepting.begin(), dfa.accepting.end(), [](char c) { return c != 0; });
}

/// Shortest, then letter-order-least, word accepted by `a` but not by `b`.
inline std::optional<Word> difference_witness(const Dfa& a, const Dfa& b) {
  const std::size_t k = a.letters;
  std::map<std::pair<State, State>, std::pair<std::pair<State, State>, std::size_t>> parent;
  std::deque<std::pair<State, State>> queue;
  std::pair<State, State> root{a.start, b.start};
  parent.emplace(root, std::pair{root, std::size_t{0}});
  queue.push_back(root);
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (a.accepting[cur.first] && !b.accepting[cur.second]) {
      Word w;
      for (auto p = cur; p != root;) {
        auto& [prev, letter] = parent.at(p);
        w.push_back(letter);
        p = prev;
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (std::size_t x = 0; x < k; ++x) {
      std::pair<State, State> nxt{a.next(cur.first, x), b.next(cur.second, x)};
      if (parent.emplace(nxt, std::pair{cur, x}).second) queue.push_back(nxt);
    }
  }
  return std::nullopt;
}

inline bool accepts(const Dfa& dfa, std::span<const std::size_t> w) {
  State s = dfa.start;
  for (auto x : w) s = dfa.next(s, x);
  return dfa.accepting[s] != 0;
}

inline bool accepts(const Nfa& nfa, std::span<const std::size_t> w) {
  std::vector<State> cur(nfa.initial.begin(), nfa.initial.end());
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  epsilon_close(nfa, cur);
  for (auto x : w) {
    std::vector<State> next;
    for (auto s : cur)
      for (auto e : nfa.out[s])
        if (e.letter == static_cast<int>(x)) next.push_back(e.to);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    epsilon_close(nfa, next);
    cur = std::move(next);
  }
  return std::any_of(cur.begin(), cur.end(), [&](State s) { return nfa.accepting[s] != 0; });
}

/// All accepted words of length <= maxlen, by length and then letter order.
inline std::vector<Word> enumerate(const Dfa& dfa, std::size_t maxlen) {
  const std::size_t k = dfa.letters;
  // live[r][s]: some word of length exactly r leads from s to acceptance.
  std::vector<std::vector<char>> live(maxlen + 1, std::vector<char>(dfa.states, 0));
  for (std::size_t s = 0; s < dfa.states; ++s) live[0][s] = dfa.accepting[s];
  for (std::size_t r = 1; r <= maxlen; ++r)
    for (std::size_t s = 0; s < dfa.states; ++s)
      for (std::size_t a = 0; a < k && !live[r][s]; ++a)
        if (live[r - 1][dfa.next(static_cast<State>(s), a)]) live[r][s] = 1;

  std::vector<Word> out;
  Word w;
  auto walk = [&](auto&& self, State s, std::size_t remaining) -> void {
    if (remaining == 0) {
      out.push_back(w);
      return;
    }
    for (std::size_t a = 0; a < k; ++a) {
      State t = dfa.next(s, a);
      if (!live[remaining - 1][t]) continue;
      w.push_back(a);
      self(self, t, remaining - 1);
      w.pop_back();
    }
  };
  for (std::size_t len = 0; len <= maxlen; ++len)
    if (live[len][dfa.start]) walk(walk, dfa.start, len);
  return out;
}

inline Nfa to_nfa(const Dfa& dfa) {
  Nfa nfa(dfa.letters);
  for (std::size_t s = 0; s < dfa.states; ++s) nfa.add_state(dfa.accepting[s] != 0);
  for (std::size_t s = 0; s < dfa.states; ++s)
    for (std::size_t a = 0; a < dfa.letters; ++a)
      nfa.add_edge(static_cast<State>(s), static_cast<int>(a), dfa.next(static_cast<State>(s), a));
  nfa.initial = {dfa.start};
  return nfa;
}

/// Letterwise image: letter a becomes map[a] over `letters` output letters.
inline Nfa relabel(const Nfa& in, std::span<const std::size_t> map, std::size_t letters) {
  Nfa out = in;
  out.letters = letters;
  for (auto& edges : out.out)
    for (auto& e : edges)
      if (e.letter != kEpsilon) e.letter = static_cast<int>(map[static_cast<std::size_t>(e.letter)]);
  return out;
}

/// Keeps only moves on letters with keep[a] set, renumbering them by
/// `renumber[a]` over `letters` output letters.
inline Nfa restrict_letters(const Nfa& in, std::span<const char> keep,
                            std::span<const std::size_t> renumber, std::size_t letters) {
  Nfa out = in;
  out.letters = letters;
  for (auto& edges : out.out) {
    std::vector<Nfa::Edge> kept;
    for (auto e : edges) {
      if (e.letter == kEpsilon) {
        kept.push_back(e);
      } else if (keep[static_cast<std::size_t>(e.letter)]) {
        kept.push_back({static_cast<int>(renumber[static_cast<std::size_t>(e.letter)]), e.to});
      }
    }
    edges = std::move(kept);
  }
  return out;
}

/// Synchronous product reading paired letters (a,b) encoded as a*right+b.
inline Nfa synchronous_product(const Nfa& left, const Nfa& right) {
  const std::size_t rl = right.letters;
  Nfa out(left.letters * rl);
  const std::size_t n2 = right.size();
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < n2; ++j) out.add_state(left.accepting[i] && right.accepting[j]);
  auto id = [&](std::size_t i, std::size_t j) { return static_cast<State>(i * n2 + j); };
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      for (auto e : left.out[i]) {
        if (e.letter == kEpsilon) {
          out.add_edge(id(i, j), kEpsilon, id(e.to, j));
          continue;
        }
        for (auto f : right.out[j]) {
          if (f.letter == kEpsilon) continue;
          out.add_edge(id(i, j), static_cast<int>(static_cast<std::size_t>(e.letter) * rl +
                                                  static_cast<std::size_t>(f.letter)),
                       id(e.to, f.to));
        }
      }
      for (auto f : right.out[j])
        if (f.letter == kEpsilon) out.add_edge(id(i, j), kEpsilon, id(i, f.to));
    }
  }
  for (auto i : left.initial)
    for (auto j : right.initial) out.initial.push_back(id(i, j));
  return out;
}

}  // namespace tdx::fa
