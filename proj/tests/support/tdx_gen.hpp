#pragma once

#include <functional>
#include <vector>

#include "support/random.hpp"
#include "tdx/transducer.hpp"

namespace tdx::testing {

/// The running example: t(a) = [[e,0],[0,x+xx]], t(b) = [[e,x],[x,x]].
inline Transducer running_example() {
  Transducer t(alphabet_of({"a", "b"}), alphabet_of({"x"}), StateSet{"1", "2"});
  t.set("a", "1", "1", "e");
  t.set("a", "2", "2", "x+xx");
  t.set("b", "1", "1", "e");
  t.set("b", "1", "2", "x");
  t.set("b", "2", "1", "x");
  t.set("b", "2", "2", "x");
  return t;
}

inline Transducer random_transducer(Rng& rng, const Alphabet& in, const Alphabet& out, const StateSet& states,
                                    std::size_t depth = 2) {
  Transducer t(in, out, states);
  for (std::size_t a = 0; a < in.size(); ++a)
    for (std::size_t p = 0; p < states.size(); ++p)
      for (std::size_t q = 0; q < states.size(); ++q)
        if (pick(rng, 0, 2) != 0) t.set(a, p, q, random_lang(rng, out, depth));
  return t;
}

/// Random transducer with sizes drawn from [1, max_states] and alphabets
/// of size [1, max_letters].
inline Transducer random_transducer(Rng& rng, std::size_t max_states, const Alphabet& in, const Alphabet& out,
                                    std::size_t depth = 2) {
  return random_transducer(rng, in, out, states(pick(rng, 1, max_states)), depth);
}

inline IndexMap random_map(Rng& rng, std::size_t from, std::size_t to) {
  IndexMap m(from);
  for (auto& x : m) x = pick(rng, 0, to - 1);
  return m;
}

/// The least transducer over (in, out, st) receiving a valid cell from r
/// along (f, g, u), optionally enlarged by random extra entries.
inline Transducer pushforward(const Transducer& r, const Alphabet& in, const IndexMap& f, const Alphabet& out,
                              const IndexMap& g, const StateSet& st, const IndexMap& u, Rng* extra = nullptr) {
  Transducer t(in, out, st);
  const std::size_t n = r.states().size();
  for (std::size_t a = 0; a < r.input().size(); ++a)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        t.set(f[a], u[p], u[q], unite(t.entry(f[a], u[p], u[q]), homomorphic_image(r.entry(a, p, q), g, out)));
  if (extra)
    for (std::size_t a = 0; a < in.size(); ++a)
      for (std::size_t p = 0; p < st.size(); ++p)
        for (std::size_t q = 0; q < st.size(); ++q)
          if (pick(*extra, 0, 3) == 0) t.set(a, p, q, unite(t.entry(a, p, q), random_lang(*extra, out, 2)));
  return t;
}

/// Calls visit on every function {0..from-1} → {0..to-1}.
inline void for_each_map(std::size_t from, std::size_t to, const std::function<void(const IndexMap&)>& visit) {
  IndexMap m(from, 0);
  if (from > 0 && to == 0) return;
  while (true) {
    visit(m);
    std::size_t i = 0;
    while (i < from && ++m[i] == to) m[i++] = 0;
    if (i == from) return;
  }
}

}  // namespace tdx::testing
