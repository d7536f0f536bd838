#pragma once

#include <functional>

#include "support/tdx_gen.hpp"
#include "tdx/transducer.hpp"

namespace tdx::testing {

/// Entrywise union of two transducers of one frame.
inline Transducer union_of(const Transducer& s, const Transducer& t) {
  Transducer out = s;
  for (std::size_t a = 0; a < s.input().size(); ++a)
    for (std::size_t p = 0; p < s.states().size(); ++p)
      for (std::size_t q = 0; q < s.states().size(); ++q) out.set(a, p, q, unite(s.entry(a, p, q), t.entry(a, p, q)));
  return out;
}

inline bool same_maps(const DoubleCell& x, const DoubleCell& y) {
  return x.input_map == y.input_map && x.output_map == y.output_map && x.state_map == y.state_map;
}

/// Number of valid cells source → target whose maps satisfy `accept`.
inline std::size_t count_cells(const Transducer& source, const Transducer& target,
                        const std::function<bool(const DoubleCell&)>& accept) {
  std::size_t count = 0;
  for_each_map(source.input().size(), target.input().size(), [&](const IndexMap& f) {
    for_each_map(source.output().size(), target.output().size(), [&](const IndexMap& g) {
      for_each_map(source.states().size(), target.states().size(), [&](const IndexMap& u) {
        DoubleCell c{source, target, f, g, u};
        if (accept(c) && check_double_cell(c)) ++count;
      });
    });
  });
  return count;
}

/// State bijection from compose(tensor(t1,t2), tensor(s1,s2)) to
/// tensor(compose(t1,s1), compose(t2,s2)).
inline IndexMap interchange_map(std::size_t p1, std::size_t p2, std::size_t q1, std::size_t q2) {
  IndexMap m;
  for (std::size_t a = 0; a < p1; ++a)
    for (std::size_t b = 0; b < p2; ++b)
      for (std::size_t c = 0; c < q1; ++c)
        for (std::size_t d = 0; d < q2; ++d) m.push_back(((a * q1 + c) * p2 + b) * q2 + d);
  return m;
}

struct Interchange {
  Transducer lhs, rhs;
};

inline Interchange interchange(const Transducer& t1, const Transducer& t2, const Transducer& s1, const Transducer& s2) {
  auto rhs = tensor(compose(t1, s1), compose(t2, s2));
  auto lhs = compose(tensor(t1, t2), tensor(s1, s2));
  auto map = interchange_map(t1.states().size(), t2.states().size(), s1.states().size(), s2.states().size());
  return {permute_states(lhs, map, rhs.states()), rhs};
}

}  // namespace tdx::testing
