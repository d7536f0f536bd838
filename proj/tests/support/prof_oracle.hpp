#pragma once

#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "tdx/profunctor.hpp"

namespace tdx::oracle {

/// Components of a raw pair relation, by breadth-first search.
inline std::size_t zigzag_classes(const FiniteProfunctor& p, const FiniteProfunctor& q, std::size_t a, std::size_t c) {
  using Raw = std::tuple<std::size_t, std::size_t, std::size_t>;
  const auto& B = p.cod();
  std::map<Raw, std::vector<Raw>> adj;
  for (std::size_t b = 0; b < B.object_count(); ++b)
    for (std::size_t x = 0; x < p.size(a, b); ++x)
      for (std::size_t y = 0; y < q.size(b, c); ++y) adj[{b, x, y}];
  for (std::size_t f = 0; f < B.morphism_count(); ++f)
    for (std::size_t x = 0; x < p.size(a, B.tgt(f)); ++x)
      for (std::size_t y = 0; y < q.size(B.src(f), c); ++y) {
        Raw l{B.src(f), p.act_right(a, x, f), y}, r{B.tgt(f), x, q.act_left(f, c, y)};
        adj[l].push_back(r);
        adj[r].push_back(l);
      }
  std::set<Raw> seen;
  std::size_t classes = 0;
  for (const auto& [start, _] : adj) {
    if (seen.count(start)) continue;
    ++classes;
    std::queue<Raw> todo;
    todo.push(start);
    seen.insert(start);
    while (!todo.empty()) {
      auto u = todo.front();
      todo.pop();
      for (const auto& v : adj[u])
        if (seen.insert(v).second) todo.push(v);
    }
  }
  return classes;
}

}  // namespace tdx::oracle
