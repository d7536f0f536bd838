#pragma once

// Deterministic Mealy machines X ← A×X → B and their image in transducers.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tdx/error.hpp"
#include "tdx/transducer.hpp"

namespace tdx {

class MealyMachine {
 public:
  /// d and s are indexed by a * |X| + x.
  MealyMachine(Alphabet input, Alphabet output, StateSet states, IndexMap d, IndexMap s)
      : input_(std::move(input)), output_(std::move(output)), states_(std::move(states)), d_(std::move(d)),
        s_(std::move(s)) {
    const std::size_t n = input_.size() * states_.size();
    if (d_.size() != n || s_.size() != n) throw InputError("mealy: transition and output tables must cover A×X");
    for (auto x : d_)
      if (x >= states_.size()) throw InputError("mealy: transition leaves the state set");
    for (auto b : s_)
      if (b >= output_.size()) throw InputError("mealy: output leaves the output alphabet");
  }

  [[nodiscard]] const Alphabet& input() const noexcept { return input_; }
  [[nodiscard]] const Alphabet& output() const noexcept { return output_; }
  [[nodiscard]] const StateSet& states() const noexcept { return states_; }
  [[nodiscard]] std::size_t d(std::size_t a, std::size_t x) const { return d_.at(a * states_.size() + x); }
  [[nodiscard]] std::size_t s(std::size_t a, std::size_t x) const { return s_.at(a * states_.size() + x); }
  [[nodiscard]] const IndexMap& d_table() const noexcept { return d_; }
  [[nodiscard]] const IndexMap& s_table() const noexcept { return s_; }

  friend bool operator==(const MealyMachine& m, const MealyMachine& n) {
    return m.input_ == n.input_ && m.output_ == n.output_ && m.states_ == n.states_ && m.d_ == n.d_ && m.s_ == n.s_;
  }

 private:
  Alphabet input_, output_;
  StateSet states_;
  IndexMap d_, s_;
};

namespace detail {
inline void check_word(const MealyMachine& m, std::span<const std::size_t> w) {
  for (auto a : w)
    if (a >= m.input().size()) throw InputError("mealy: letter outside the input alphabet");
}
}  // namespace detail

/// s^♭(x, w): the output word read along w from x.
inline Word cascade(const MealyMachine& m, std::size_t x, std::span<const std::size_t> w) {
  detail::check_word(m, w);
  Word out;
  for (auto a : w) {
    out.push_back(m.s(a, x));
    x = m.d(a, x);
  }
  return out;
}

/// d*(x, w): the state reached along w from x.
inline std::size_t run(const MealyMachine& m, std::size_t x, std::span<const std::size_t> w) {
  detail::check_word(m, w);
  for (auto a : w) x = m.d(a, x);
  return x;
}

/// One state, s the identity.
inline MealyMachine identity_mealy(const Alphabet& a) {
  IndexMap id(a.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  return {a, a, StateSet{kSingleState}, IndexMap(a.size(), 0), id};
}

/// m then n, on states <x,y>.
inline MealyMachine compose_mealy(const MealyMachine& m, const MealyMachine& n) {
  if (!(m.output() == n.input())) throw FrameMismatch("compose_mealy: output alphabet of the first differs from input of the second");
  const std::size_t nx = m.states().size(), ny = n.states().size();
  IndexMap d, s;
  for (std::size_t a = 0; a < m.input().size(); ++a)
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        const auto b = m.s(a, x);
        d.push_back(m.d(a, x) * ny + n.d(b, y));
        s.push_back(n.s(b, y));
      }
  return {m.input(), n.output(), product_names(m.states(), n.states()), std::move(d), std::move(s)};
}

/// Whether f : X → Y commutes with transitions and outputs.
inline bool check_modification(const IndexMap& f, const MealyMachine& m, const MealyMachine& n) {
  if (!(m.input() == n.input()) || !(m.output() == n.output()))
    throw FrameMismatch("check_modification: machines have different alphabets");
  check_map(f, m.states().size(), n.states().size(), "modification");
  for (std::size_t a = 0; a < m.input().size(); ++a)
    for (std::size_t x = 0; x < m.states().size(); ++x)
      if (f[m.d(a, x)] != n.d(a, f[x]) || m.s(a, x) != n.s(a, f[x])) return false;
  return true;
}

/// gen(a)_{x, d(a,x)} = {s(a,x)}, every other entry empty.
inline Transducer to_transducer(const MealyMachine& m) {
  Transducer t(m.input(), m.output(), m.states());
  for (std::size_t a = 0; a < m.input().size(); ++a)
    for (std::size_t x = 0; x < m.states().size(); ++x)
      t.set(a, x, m.d(a, x), RegularLanguage::letter(m.output(), m.s(a, x)));
  return t;
}

}  // namespace tdx
