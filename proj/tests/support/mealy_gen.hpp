#pragma once

#include <functional>

#include "support/random.hpp"
#include "tdx/mealy.hpp"

namespace tdx::testing {

inline MealyMachine random_mealy(Rng& rng, const Alphabet& in, const Alphabet& out, std::size_t nstates,
                                 const std::string& prefix = "x") {
  IndexMap d, s;
  for (std::size_t i = 0; i < in.size() * nstates; ++i) {
    d.push_back(pick(rng, 0, nstates - 1));
    s.push_back(pick(rng, 0, out.size() - 1));
  }
  return {in, out, states(nstates, prefix), d, s};
}

/// Calls visit on every word over k letters of length at most maxlen.
inline void for_each_word(std::size_t k, std::size_t maxlen, const std::function<void(const Word&)>& visit) {
  std::vector<Word> frontier{Word{}};
  for (std::size_t len = 0; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      visit(w);
      if (len < maxlen)
        for (std::size_t a = 0; a < k; ++a) {
          auto u = w;
          u.push_back(a);
          next.push_back(std::move(u));
        }
    }
    frontier = std::move(next);
  }
}

}  // namespace tdx::testing
