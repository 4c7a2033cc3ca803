#pragma once

// Finite posets given by their cover relations, and finite lattices with
// precomputed meet and join tables.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "serrelab/errors.hpp"

namespace serrelab {

using Bitset = boost::dynamic_bitset<>;

inline constexpr std::size_t kMaxLatticeSize = 10000;

struct Cover {
  int lo;
  int hi;
  friend bool operator==(const Cover&, const Cover&) = default;
};

/// A finite poset. Element indices follow input order; a fixed linear
/// extension (Kahn's algorithm, ties broken by input order) is kept as well.
class Poset {
 public:
  static Poset from_covers(std::vector<std::string> labels, std::vector<Cover> covers) {
    Poset p;
    p.init(std::move(labels), std::move(covers));
    return p;
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(int x) const { return labels_.at(static_cast<std::size_t>(x)); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<int> find(std::string_view l) const {
    auto it = index_.find(std::string(l));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int index_of(std::string_view l) const {
    auto i = find(l);
    if (!i) throw invalid_input("unknown element label: " + std::string(l));
    return *i;
  }

  bool leq(int a, int b) const { return up_[static_cast<std::size_t>(a)].test(static_cast<std::size_t>(b)); }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

  const Bitset& up(int a) const { return up_[static_cast<std::size_t>(a)]; }
  const Bitset& down(int a) const { return down_[static_cast<std::size_t>(a)]; }

  const std::vector<Cover>& covers() const { return covers_; }
  std::optional<int> cover_index(int lo, int hi) const {
    auto it = cover_index_.find({lo, hi});
    if (it == cover_index_.end()) return std::nullopt;
    return it->second;
  }
  bool is_cover(int lo, int hi) const { return cover_index(lo, hi).has_value(); }
  /// Indices into covers() of the covers below / above x.
  const std::vector<int>& lower_covers(int x) const { return lower_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& upper_covers(int x) const { return upper_[static_cast<std::size_t>(x)]; }

  const std::vector<int>& linear_extension() const { return linext_; }
  /// Position of each element in linear_extension().
  int rank_in_extension(int x) const { return linpos_[static_cast<std::size_t>(x)]; }

  Bitset interval_set(int lo, int hi) const { return up(lo) & down(hi); }
  std::vector<int> elements_of(const Bitset& s) const {
    std::vector<int> out;
    for (auto i = s.find_first(); i != Bitset::npos; i = s.find_next(i)) out.push_back(static_cast<int>(i));
    return out;
  }

  /// Length of the longest chain, counted in covers.
  int height() const {
    std::vector<int> h(size(), 0);
    int best = 0;
    for (int x : linext_) {
      for (int c : lower_covers(x)) h[x] = std::max(h[x], h[covers_[c].lo] + 1);
      best = std::max(best, h[x]);
    }
    return best;
  }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int x = 0; x < static_cast<int>(size()); ++x) {
      if (lower_covers(x).empty()) out.push_back(x);
    }
    return out;
  }

 protected:
  Poset() = default;

  void init(std::vector<std::string> labels, std::vector<Cover> covers) {
    const std::size_t n = labels.size();
    if (n == 0) throw invalid_input("a poset needs at least one element");
    if (n > kMaxLatticeSize) {
      throw guardrail_exceeded("poset has " + std::to_string(n) + " elements; the limit is " +
                               std::to_string(kMaxLatticeSize));
    }
    labels_ = std::move(labels);
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.emplace(labels_[i], static_cast<int>(i)).second) {
        throw invalid_input("duplicate element label: " + labels_[i]);
      }
    }
    covers_ = std::move(covers);
    lower_.assign(n, {});
    upper_.assign(n, {});
    for (std::size_t c = 0; c < covers_.size(); ++c) {
      const Cover cv = covers_[c];
      if (cv.lo < 0 || cv.hi < 0 || static_cast<std::size_t>(cv.lo) >= n || static_cast<std::size_t>(cv.hi) >= n) {
        throw invalid_input("cover refers to an unknown element");
      }
      if (cv.lo == cv.hi) throw cycle_detected(labels_[cv.lo]);
      if (!cover_index_.emplace(std::make_pair(cv.lo, cv.hi), static_cast<int>(c)).second) {
        throw redundant_cover(labels_[cv.lo], labels_[cv.hi]);
      }
      upper_[cv.lo].push_back(static_cast<int>(c));
      lower_[cv.hi].push_back(static_cast<int>(c));
    }

    std::vector<int> indeg(n, 0);
    for (const Cover& cv : covers_) ++indeg[cv.hi];
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i) {
      if (indeg[i] == 0) ready.push(static_cast<int>(i));
    }
    while (!ready.empty()) {
      const int x = ready.top();
      ready.pop();
      linext_.push_back(x);
      for (int c : upper_[x]) {
        if (--indeg[covers_[c].hi] == 0) ready.push(covers_[c].hi);
      }
    }
    if (linext_.size() != n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (indeg[i] > 0) throw cycle_detected(labels_[i]);
      }
    }
    linpos_.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) linpos_[linext_[k]] = static_cast<int>(k);

    up_.assign(n, Bitset(n));
    for (auto it = linext_.rbegin(); it != linext_.rend(); ++it) {
      const int x = *it;
      up_[x].set(x);
      for (int c : upper_[x]) up_[x] |= up_[covers_[c].hi];
    }
    for (const Cover& cv : covers_) {
      for (int c : upper_[cv.lo]) {
        const int other = covers_[c].hi;
        if (other != cv.hi && up_[other].test(cv.hi)) {
          throw redundant_cover(labels_[cv.lo], labels_[cv.hi]);
        }
      }
    }
    down_.assign(n, Bitset(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (auto b = up_[a].find_first(); b != Bitset::npos; b = up_[a].find_next(b)) down_[b].set(a);
    }
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<Cover> covers_;
  std::map<std::pair<int, int>, int> cover_index_;
  std::vector<std::vector<int>> lower_, upper_;
  std::vector<int> linext_, linpos_;
  std::vector<Bitset> up_, down_;
};

class Lattice : public Poset {
 public:
  static Lattice from_covers(std::vector<std::string> labels, std::vector<Cover> covers) {
    Lattice l;
    l.init(std::move(labels), std::move(covers));
    l.init_tables();
    return l;
  }

  int meet(int a, int b) const { return meet_[idx(a, b)]; }
  int join(int a, int b) const { return join_[idx(a, b)]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  int join_all(const std::vector<int>& xs, int base) const {
    int j = base;
    for (int x : xs) j = join(j, x);
    return j;
  }
  int meet_all(const std::vector<int>& xs, int base) const {
    int m = base;
    for (int x : xs) m = meet(m, x);
    return m;
  }

  std::vector<int> atoms() const {
    std::vector<int> out;
    for (int c : upper_covers(bottom_)) out.push_back(covers()[c].hi);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The order dual, with the same labels and index order.
  Lattice dual() const {
    std::vector<Cover> rev;
    rev.reserve(covers().size());
    for (const Cover& c : covers()) rev.push_back({c.hi, c.lo});
    return from_covers(labels(), std::move(rev));
  }

 private:
  Lattice() = default;

  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * size() + static_cast<std::size_t>(b); }

  void init_tables() {
    const std::size_t n = size();
    std::vector<std::size_t> down_count(n), up_count(n);
    for (std::size_t i = 0; i < n; ++i) {
      down_count[i] = down_[i].count();
      up_count[i] = up_[i].count();
    }
    meet_.assign(n * n, -1);
    join_.assign(n * n, -1);
    auto best = [](const Bitset& s, const std::vector<std::size_t>& count) -> int {
      int arg = -1;
      std::size_t most = 0;
      for (auto i = s.find_first(); i != Bitset::npos; i = s.find_next(i)) {
        if (arg < 0 || count[i] > most) {
          arg = static_cast<int>(i);
          most = count[i];
        }
      }
      return arg;
    };
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        const Bitset lower = down_[a] & down_[b];
        const int m = best(lower, down_count);
        if (m < 0 || down_[m] != lower) throw not_a_lattice(labels_[a], labels_[b], "meet");
        const Bitset upper = up_[a] & up_[b];
        const int j = best(upper, up_count);
        if (j < 0 || up_[j] != upper) throw not_a_lattice(labels_[a], labels_[b], "join");
        meet_[a * n + b] = meet_[b * n + a] = m;
        join_[a * n + b] = join_[b * n + a] = j;
      }
    }
    bottom_ = 0;
    top_ = 0;
    for (std::size_t a = 0; a < n; ++a) {
      bottom_ = meet(bottom_, static_cast<int>(a));
      top_ = join(top_, static_cast<int>(a));
    }
  }

  std::vector<int> meet_, join_;
  int bottom_ = 0, top_ = 0;
};

using LatticePtr = std::shared_ptr<const Lattice>;

/// Builds a lattice from labelled elements and labelled cover pairs.
inline Lattice build_lattice(const std::vector<std::string>& elements,
                             const std::vector<std::pair<std::string, std::string>>& covers) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<int>(i));
  std::vector<Cover> cv;
  cv.reserve(covers.size());
  for (const auto& [lo, hi] : covers) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end()) throw invalid_input("cover refers to unknown element: " + lo);
    if (b == index.end()) throw invalid_input("cover refers to unknown element: " + hi);
    cv.push_back({a->second, b->second});
  }
  return Lattice::from_covers(elements, std::move(cv));
}

inline Poset build_poset(const std::vector<std::string>& elements,
                         const std::vector<std::pair<std::string, std::string>>& covers) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<int>(i));
  std::vector<Cover> cv;
  for (const auto& [lo, hi] : covers) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end() || b == index.end()) throw invalid_input("cover refers to an unknown element");
    cv.push_back({a->second, b->second});
  }
  return Poset::from_covers(elements, std::move(cv));
}

/// The chain 0 < 1 < ... < k-1.
inline Lattice chain_lattice(int k) {
  if (k < 1) throw invalid_input("a chain needs at least one element");
  std::vector<std::string> labels;
  std::vector<Cover> covers;
  for (int i = 0; i < k; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 0) covers.push_back({i - 1, i});
  }
  return Lattice::from_covers(std::move(labels), std::move(covers));
}

/// Componentwise order on L1 x L2; element (i, j) gets index i*|L2| + j.
inline Lattice product(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.size() * b.size();
  if (n > kMaxLatticeSize) throw guardrail_exceeded("product exceeds the lattice size limit");
  const int nb = static_cast<int>(b.size());
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& x : a.labels()) {
    for (const auto& y : b.labels()) labels.push_back("(" + x + "," + y + ")");
  }
  std::vector<Cover> covers;
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    for (int j = 0; j < nb; ++j) {
      for (int c : a.upper_covers(i)) covers.push_back({i * nb + j, a.covers()[c].hi * nb + j});
      for (int c : b.upper_covers(j)) covers.push_back({i * nb + j, i * nb + b.covers()[c].hi});
    }
  }
  return Lattice::from_covers(std::move(labels), std::move(covers));
}

/// An order isomorphism a -> b as an index map, if one exists.
inline std::optional<std::vector<int>> find_isomorphism(const Poset& a, const Poset& b) {
  const std::size_t n = a.size();
  if (b.size() != n || a.covers().size() != b.covers().size()) return std::nullopt;
  using Sig = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  auto sig = [](const Poset& p, int x) {
    return Sig{p.lower_covers(x).size(), p.upper_covers(x).size(), p.down(x).count(), p.up(x).count()};
  };
  std::vector<Sig> sa(n), sb(n);
  for (std::size_t x = 0; x < n; ++x) {
    sa[x] = sig(a, static_cast<int>(x));
    sb[x] = sig(b, static_cast<int>(x));
  }
  {
    auto ca = sa, cb = sb;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return std::nullopt;
  }
  const std::vector<int>& order = a.linear_extension();
  std::vector<int> phi(n, -1);
  std::vector<bool> used(n, false);
  const std::vector<int> b_minimal = b.minimal_elements();

  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == n) return true;
    const int x = order[k];
    const auto& lows = a.lower_covers(x);
    auto fits = [&](int y) {
      if (used[y] || sb[y] != sa[x]) return false;
      for (int c : lows) {
        if (!b.is_cover(phi[a.covers()[c].lo], y)) return false;
      }
      return true;
    };
    auto attempt = [&](int y) {
      phi[x] = y;
      used[y] = true;
      if (assign(k + 1)) return true;
      used[y] = false;
      phi[x] = -1;
      return false;
    };
    if (lows.empty()) {
      for (int y : b_minimal) {
        if (fits(y) && attempt(y)) return true;
      }
      return false;
    }
    const int anchor = phi[a.covers()[lows.front()].lo];
    for (int c : b.upper_covers(anchor)) {
      const int y = b.covers()[c].hi;
      if (fits(y) && attempt(y)) return true;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return phi;
}

inline bool is_isomorphic(const Poset& a, const Poset& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace serrelab
