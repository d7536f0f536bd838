#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tdx/error.hpp"

namespace tdx {

/// An ordered finite set of distinct names. Order is significant: it fixes
/// letter indices in automata, row order in matrices and the
/// length-then-lexicographic order used by enumeration.
///
/// Copies share storage; equality compares contents.
template <class Tag>
class OrderedNames {
 public:
  OrderedNames() : impl_(empty_impl()) {}

  explicit OrderedNames(std::vector<std::string> names) {
    auto impl = std::make_shared<Impl>();
    impl->index.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!impl->index.emplace(names[i], i).second) {
        throw InputError(std::string(Tag::kind) + ": duplicate name '" + names[i] + "'");
      }
    }
    impl->names = std::move(names);
    impl_ = std::move(impl);
  }

  OrderedNames(std::initializer_list<std::string> names)
      : OrderedNames(std::vector<std::string>(names)) {}

  [[nodiscard]] std::size_t size() const noexcept { return impl_->names.size(); }
  [[nodiscard]] bool empty() const noexcept { return impl_->names.empty(); }
  [[nodiscard]] const std::string& operator[](std::size_t i) const { return impl_->names[i]; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return impl_->names; }
  [[nodiscard]] auto begin() const noexcept { return impl_->names.begin(); }
  [[nodiscard]] auto end() const noexcept { return impl_->names.end(); }

  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const {
    auto it = impl_->index.find(std::string(name));
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] bool contains(std::string_view name) const { return find(name).has_value(); }

  /// Index of `name`, or InputError naming the set kind.
  [[nodiscard]] std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw InputError(std::string("unknown ") + Tag::kind + " '" + std::string(name) + "'");
  }

  friend bool operator==(const OrderedNames& a, const OrderedNames& b) {
    return a.impl_ == b.impl_ || a.impl_->names == b.impl_->names;
  }

 private:
  struct Impl {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index;
  };

  static std::shared_ptr<const Impl> empty_impl() {
    static const auto impl = std::make_shared<const Impl>();
    return impl;
  }

  std::shared_ptr<const Impl> impl_;
};

struct AlphabetTag {
  static constexpr const char* kind = "symbol";
};
struct StateTag {
  static constexpr const char* kind = "state";
};

using Alphabet = OrderedNames<AlphabetTag>;
using StateSet = OrderedNames<StateTag>;

/// A word is a sequence of letter indices into some Alphabet.
using Word = std::vector<std::size_t>;

/// A total function between finite sets, by index.
using IndexMap = std::vector<std::size_t>;

/// Name of the ordered pair of two names, `<x,y>`.
inline std::string pair_name(std::string_view left, std::string_view right) {
  std::string out;
  out.reserve(left.size() + right.size() + 3);
  out += '<';
  out += left;
  out += ',';
  out += right;
  out += '>';
  return out;
}

/// Splits `<x,y>` at its top-level comma. Returns nullopt for anything that
/// is not a well-formed pair name.
inline std::optional<std::pair<std::string, std::string>> split_pair_name(std::string_view s) {
  if (s.size() < 5 || s.front() != '<' || s.back() != '>') return std::nullopt;
  int depth = 0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c == '<') {
      ++depth;
    } else if (c == '>') {
      if (--depth < 0) return std::nullopt;
    } else if (c == ',' && depth == 0) {
      auto l = s.substr(1, i - 1);
      auto r = s.substr(i + 1, s.size() - i - 2);
      if (l.empty() || r.empty()) return std::nullopt;
      return std::pair{std::string(l), std::string(r)};
    }
  }
  return std::nullopt;
}

/// Lexicographic product, left factor outer.
template <class Tag>
OrderedNames<Tag> product_names(const OrderedNames<Tag>& left, const OrderedNames<Tag>& right) {
  std::vector<std::string> out;
  out.reserve(left.size() * right.size());
  for (const auto& l : left)
    for (const auto& r : right) out.push_back(pair_name(l, r));
  return OrderedNames<Tag>(std::move(out));
}

/// Tagged disjoint union: left names become `<l,x>`, right names `<r,y>`.
template <class Tag>
OrderedNames<Tag> sum_names(const OrderedNames<Tag>& left, const OrderedNames<Tag>& right) {
  std::vector<std::string> out;
  out.reserve(left.size() + right.size());
  for (const auto& l : left) out.push_back(pair_name("l", l));
  for (const auto& r : right) out.push_back(pair_name("r", r));
  return OrderedNames<Tag>(std::move(out));
}

/// Parses a comma separated word; the empty string is the empty word.
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word w;
  if (text.empty()) return w;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size()) {
      if (text[i] == '<') ++depth;
      if (text[i] == '>') --depth;
      if (text[i] != ',' || depth != 0) continue;
    }
    w.push_back(alphabet.index_of(text.substr(start, i - start)));
    start = i + 1;
  }
  return w;
}

inline std::string format_word(std::span<const std::size_t> w, const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += alphabet[w[i]];
  }
  return out;
}

}  // namespace tdx
