#pragma once

// Antichains over/under a base element and the boolean embedding test.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "serrelab/errors.hpp"
#include "serrelab/lattice.hpp"

namespace serrelab {

enum class AntichainMode { over, under };

/// An antichain C with every member strictly above (over) or strictly below
/// (under) the base element. Members are kept sorted by index.
struct Antichain {
  std::vector<int> members;
  int base = 0;
  AntichainMode mode = AntichainMode::over;
  friend bool operator==(const Antichain&, const Antichain&) = default;
};

inline constexpr std::size_t kMaxBooleanRank = 12;

inline Antichain make_antichain(const Poset& p, std::vector<int> members, int base, AntichainMode mode) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw invalid_input("antichain has a repeated member");
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    const int c = members[i];
    const bool ok = mode == AntichainMode::over ? p.lt(base, c) : p.lt(c, base);
    if (!ok) throw invalid_input("antichain member " + p.label(c) + " is not strictly on the right side of " + p.label(base));
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (p.comparable(c, members[j])) {
        throw invalid_input("antichain members " + p.label(c) + " and " + p.label(members[j]) + " are comparable");
      }
    }
  }
  return {std::move(members), base, mode};
}

inline Antichain antichain_over(const Poset& p, std::vector<int> members, int alpha) {
  return make_antichain(p, std::move(members), alpha, AntichainMode::over);
}
inline Antichain antichain_under(const Poset& p, std::vector<int> members, int beta) {
  return make_antichain(p, std::move(members), beta, AntichainMode::under);
}

namespace detail {

/// gamma(S) for every subset S of the members: joins over alpha, or meets
/// under beta.
inline std::vector<int> subset_images(const Lattice& l, const Antichain& a) {
  const std::size_t k = a.members.size();
  if (k > kMaxBooleanRank) throw guardrail_exceeded("antichain too large for the boolean test");
  std::vector<int> g(std::size_t{1} << k);
  g[0] = a.base;
  for (std::size_t s = 1; s < g.size(); ++s) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(s));
    const int c = a.members[low];
    const int rest = g[s & (s - 1)];
    g[s] = a.mode == AntichainMode::over ? l.join(rest, c) : l.meet(rest, c);
  }
  return g;
}

inline bool images_form_embedding(const Lattice& l, const std::vector<int>& g, bool dual) {
  const std::size_t m = g.size();
  std::vector<int> sorted = g;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = s + 1; t < m; ++t) {
      // Under the dual map, union goes to meet and intersection to join.
      const int meet_img = dual ? g[s | t] : g[s & t];
      const int join_img = dual ? g[s & t] : g[s | t];
      if (l.meet(g[s], g[t]) != meet_img || l.join(g[s], g[t]) != join_img) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Whether S -> alpha v (join of S) embeds the boolean lattice on C into L.
inline bool is_boolean_antichain(const Lattice& l, const Antichain& c) {
  if (c.mode != AntichainMode::over) throw invalid_input("expected an antichain over its base");
  return detail::images_form_embedding(l, detail::subset_images(l, c), false);
}

/// Whether S -> beta ^ (meet of S) embeds the dual boolean lattice on D into L.
inline bool is_dual_boolean_antichain(const Lattice& l, const Antichain& d) {
  if (d.mode != AntichainMode::under) throw invalid_input("expected an antichain under its base");
  return detail::images_form_embedding(l, detail::subset_images(l, d), true);
}

/// For a boolean C over alpha: beta = join of C and D = joins of the subsets
/// of size |C|-1.
inline Antichain boolean_partner(const Lattice& l, const Antichain& c) {
  if (c.mode != AntichainMode::over) throw invalid_input("expected an antichain over its base");
  const int beta = l.join_all(c.members, c.base);
  std::vector<int> d;
  for (std::size_t skip = 0; skip < c.members.size(); ++skip) {
    int j = c.base;
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      if (i != skip) j = l.join(j, c.members[i]);
    }
    d.push_back(j);
  }
  return antichain_under(l, std::move(d), beta);
}

/// For a dual boolean D under beta: alpha = meet of D and C = meets of the
/// subsets of size |D|-1.
inline Antichain dual_boolean_partner(const Lattice& l, const Antichain& d) {
  if (d.mode != AntichainMode::under) throw invalid_input("expected an antichain under its base");
  const int alpha = l.meet_all(d.members, d.base);
  std::vector<int> c;
  for (std::size_t skip = 0; skip < d.members.size(); ++skip) {
    int m = d.base;
    for (std::size_t i = 0; i < d.members.size(); ++i) {
      if (i != skip) m = l.meet(m, d.members[i]);
    }
    c.push_back(m);
  }
  return antichain_over(l, std::move(c), alpha);
}

/// Minimal elements of up(lo) outside the interval [lo, hi].
inline Antichain min_complement_antichain(const Lattice& l, int lo, int hi) {
  if (!l.leq(lo, hi)) throw invalid_input("not an interval");
  const Bitset rest = l.up(lo) - l.interval_set(lo, hi);
  std::vector<int> mins;
  for (int x : l.elements_of(rest)) {
    bool minimal = true;
    for (int c : l.lower_covers(x)) {
      if (rest.test(static_cast<std::size_t>(l.covers()[c].lo))) {
        minimal = false;
        break;
      }
    }
    if (minimal) mins.push_back(x);
  }
  return antichain_over(l, std::move(mins), lo);
}

/// Calls f on every antichain strictly above (or below) base, in a fixed order.
inline void for_each_antichain(const Lattice& l, int base, AntichainMode mode,
                               const std::function<void(const Antichain&)>& f, std::size_t max_size = kMaxBooleanRank) {
  std::vector<int> pool;
  for (int x = 0; x < static_cast<int>(l.size()); ++x) {
    if (mode == AntichainMode::over ? l.lt(base, x) : l.lt(x, base)) pool.push_back(x);
  }
  std::vector<int> current;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    f(Antichain{current, base, mode});
    if (current.size() == max_size) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      const int x = pool[i];
      bool ok = true;
      for (int y : current) {
        if (l.comparable(x, y)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      current.push_back(x);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
}

}  // namespace serrelab
