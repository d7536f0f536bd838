#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace tdx::detail {

/// Union-find whose class representative is always the least member.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  /// Class number of each element, classes ordered by least member.
  std::vector<std::size_t> classes(std::size_t* count = nullptr) {
    std::vector<std::size_t> id(parent_.size(), 0), out(parent_.size(), 0);
    std::size_t next = 0;
    for (std::size_t x = 0; x < parent_.size(); ++x) {
      auto r = find(x);
      if (r == x) id[x] = next++;
      out[x] = id[r];
    }
    if (count) *count = next;
    return out;
  }

  [[nodiscard]] std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace tdx::detail
