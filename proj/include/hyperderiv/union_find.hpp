#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace hyperderiv {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Merges keeping the smaller root as representative.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  bool same(std::size_t a, std::size_t b) const { return find(a) == find(b); }

 private:
  mutable std::vector<std::size_t> parent_;
};

}  // namespace hyperderiv
