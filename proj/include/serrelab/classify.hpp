#pragma once

#include <functional>
#include <vector>

#include "serrelab/errors.hpp"
#include "serrelab/lattice.hpp"

namespace serrelab {

inline constexpr std::size_t kMaxClassifySize = 500;

struct Classification {
  bool distributive = false;
  bool join_semidistributive = false;
  bool meet_semidistributive = false;
  bool semidistributive = false;
  bool divisor = false;  // isomorphic to a product of chains
  bool boolean = false;
  std::vector<int> chain_factors;  // chain sizes, descending, when divisor
};

inline bool is_distributive(const Lattice& l) {
  const int n = static_cast<int>(l.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))) return false;
      }
    }
  }
  return true;
}

/// a ^ b = a ^ c implies a ^ (b v c) = a ^ b.
inline bool is_meet_semidistributive(const Lattice& l) {
  const int n = static_cast<int>(l.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        const int m = l.meet(a, b);
        if (m == l.meet(a, c) && l.meet(a, l.join(b, c)) != m) return false;
      }
    }
  }
  return true;
}

/// a v b = a v c implies a v (b ^ c) = a v b.
inline bool is_join_semidistributive(const Lattice& l) {
  const int n = static_cast<int>(l.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        const int j = l.join(a, b);
        if (j == l.join(a, c) && l.join(a, l.meet(b, c)) != j) return false;
      }
    }
  }
  return true;
}

inline Lattice chain_product(const std::vector<int>& sizes) {
  Lattice acc = chain_lattice(1);
  bool first = true;
  for (int s : sizes) {
    acc = first ? chain_lattice(s) : product(acc, chain_lattice(s));
    first = false;
  }
  return acc;
}

/// Chain sizes of a product-of-chains decomposition found by searching
/// candidate factorizations and testing each for isomorphism.
inline std::optional<std::vector<int>> chain_product_factors(const Lattice& l) {
  const int n = static_cast<int>(l.size());
  if (n == 1) return std::vector<int>{};
  const int k = static_cast<int>(l.atoms().size());
  const int height = l.height();
  std::vector<int> current;
  std::optional<std::vector<int>> found;
  // Non-increasing factor sizes >= 2 with product n, k factors, sum(size-1) = height.
  std::function<void(int, int, int)> rec = [&](int remaining, int max_factor, int height_left) {
    if (found) return;
    const int used = static_cast<int>(current.size());
    if (remaining == 1) {
      if (used == k && height_left == 0 && find_isomorphism(chain_product(current), l)) found = current;
      return;
    }
    if (used == k) return;
    for (int s = std::min(max_factor, remaining); s >= 2; --s) {
      if (remaining % s != 0 || s - 1 > height_left) continue;
      current.push_back(s);
      rec(remaining / s, s, height_left - (s - 1));
      current.pop_back();
    }
  };
  rec(n, n, height);
  return found;
}

inline Classification classify(const Lattice& l) {
  if (l.size() > kMaxClassifySize) {
    throw guardrail_exceeded("classification is limited to lattices with at most 500 elements");
  }
  Classification c;
  c.distributive = is_distributive(l);
  c.meet_semidistributive = c.distributive || is_meet_semidistributive(l);
  c.join_semidistributive = c.distributive || is_join_semidistributive(l);
  c.semidistributive = c.meet_semidistributive && c.join_semidistributive;
  if (c.distributive) {
    if (auto f = chain_product_factors(l)) {
      c.divisor = true;
      c.chain_factors = *f;
      c.boolean = std::all_of(f->begin(), f->end(), [](int s) { return s == 2; });
    }
  }
  return c;
}

}  // namespace serrelab
