#pragma once

// Noncrossing trees on a p-gon, quadrangulations of the 2p-gon with p = n+2,
// planar duality, rotation and the Stokes bijection.
//
// Polygon vertices are numbered clockwise from 0. In the 2p-gon the even
// vertices are the bullets; bullet 2i corresponds to vertex i of the p-gon.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "serrelab/errors.hpp"

namespace serrelab::geom {

using Edge = std::pair<int, int>;  // first < second

inline constexpr int kMaxRank = 8;

inline Edge edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Open chords cross iff their endpoints interleave; shared endpoints never cross.
inline bool crosses(Edge x, Edge y) {
  const auto [a, b] = x;
  const auto [c, d] = y;
  if (a == c || a == d || b == c || b == d) return false;
  const bool c_in = a < c && c < b;
  const bool d_in = a < d && d < b;
  return c_in != d_in;
}

struct NoncrossingTree {
  int p = 3;
  std::vector<Edge> edges;  // sorted
  friend bool operator==(const NoncrossingTree&, const NoncrossingTree&) = default;
  friend auto operator<=>(const NoncrossingTree&, const NoncrossingTree&) = default;
};

struct Quadrangulation {
  int vertices = 6;             // 2p
  std::vector<Edge> diagonals;  // sorted
  friend bool operator==(const Quadrangulation&, const Quadrangulation&) = default;
  friend auto operator<=>(const Quadrangulation&, const Quadrangulation&) = default;
};

inline std::string to_string(const std::vector<Edge>& es) {
  std::string s = "{";
  for (std::size_t k = 0; k < es.size(); ++k) {
    if (k) s += ", ";
    s += "(" + std::to_string(es[k].first) + "," + std::to_string(es[k].second) + ")";
  }
  return s + "}";
}

inline void check_rank(int n) {
  if (n < 1) throw invalid_input("geometric model needs n >= 1");
  if (n > kMaxRank) throw guardrail_exceeded("geometric model is limited to n <= " + std::to_string(kMaxRank));
}

inline NoncrossingTree make_tree(int p, std::vector<Edge> edges) {
  if (p < 2) throw invalid_input("tree polygon needs at least 2 vertices");
  for (auto& e : edges) {
    if (e.first == e.second || e.first < 0 || e.second < 0 || e.first >= p || e.second >= p) {
      throw invalid_input("bad tree edge " + to_string({e}));
    }
    e = edge(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw invalid_input("repeated tree edge");
  if (static_cast<int>(edges.size()) != p - 1) throw invalid_input("a tree on " + std::to_string(p) + " vertices has " + std::to_string(p - 1) + " edges");
  std::vector<int> parent(static_cast<std::size_t>(p));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (crosses(edges[i], edges[j])) throw invalid_input("tree edges cross: " + to_string({edges[i], edges[j]}));
    }
    const int a = find(edges[i].first), b = find(edges[i].second);
    if (a == b) throw invalid_input("tree edges contain a cycle");
    parent[a] = b;
  }
  return NoncrossingTree{p, std::move(edges)};
}

inline Quadrangulation make_quad(int vertices, std::vector<Edge> diagonals) {
  if (vertices < 4 || vertices % 2) throw invalid_input("quadrangulated polygon needs an even number >= 4 of vertices");
  for (auto& d : diagonals) {
    d = edge(d.first, d.second);
    const int gap = d.second - d.first;
    if (d.first < 0 || d.second >= vertices || gap % 2 == 0) throw invalid_input("diagonal " + to_string({d}) + " must join vertices of opposite parity");
    if (gap == 1 || gap == vertices - 1) throw invalid_input("diagonal " + to_string({d}) + " is a boundary edge");
  }
  std::sort(diagonals.begin(), diagonals.end());
  if (std::adjacent_find(diagonals.begin(), diagonals.end()) != diagonals.end()) throw invalid_input("repeated diagonal");
  if (static_cast<int>(diagonals.size()) != vertices / 2 - 2) throw invalid_input("a quadrangulation of a " + std::to_string(vertices) + "-gon has " + std::to_string(vertices / 2 - 2) + " diagonals");
  for (std::size_t i = 0; i < diagonals.size(); ++i) {
    for (std::size_t j = i + 1; j < diagonals.size(); ++j) {
      if (crosses(diagonals[i], diagonals[j])) throw invalid_input("diagonals cross: " + to_string({diagonals[i], diagonals[j]}));
    }
  }
  return Quadrangulation{vertices, std::move(diagonals)};
}

/// 1/(2k-1) binom(3k-3, k-1) with k = n+2.
inline long long fuss_catalan(int n) {
  const int k = n + 2;
  long long b = 1;
  for (int i = 1; i <= k - 1; ++i) b = b * (3 * k - 3 - k + 1 + i) / i;
  return b / (2 * k - 1);
}

inline std::vector<NoncrossingTree> enumerate_trees(int n) {
  check_rank(n);
  const int p = n + 2;
  std::vector<Edge> all;
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) all.emplace_back(a, b);
  }
  std::vector<NoncrossingTree> out;
  std::vector<Edge> chosen;
  std::vector<int> parent(static_cast<std::size_t>(p));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(chosen.size()) == p - 1) {
      out.push_back(NoncrossingTree{p, chosen});
      return;
    }
    const std::size_t missing = static_cast<std::size_t>(p - 1) - chosen.size();
    for (std::size_t k = from; k + missing <= all.size(); ++k) {
      const Edge e = all[k];
      if (std::any_of(chosen.begin(), chosen.end(), [&](Edge c) { return crosses(c, e); })) continue;
      const int ra = find(e.first), rb = find(e.second);
      if (ra == rb) continue;
      parent[ra] = rb;
      chosen.push_back(e);
      self(self, k + 1);
      chosen.pop_back();
      parent[ra] = ra;
    }
  };
  rec(rec, 0);
  return out;
}

namespace detail {

/// Quadrangulations of the convex polygon on the consecutive vertices lo..hi,
/// excluding the side (lo, hi).
inline std::vector<std::vector<Edge>> quads_between(int lo, int hi, std::map<Edge, std::vector<std::vector<Edge>>>& memo) {
  if (hi - lo == 1) return {{}};
  if (auto it = memo.find({lo, hi}); it != memo.end()) return it->second;
  std::vector<std::vector<Edge>> out;
  // The quadrilateral on the side (lo, hi) is lo < a < b < hi.
  for (int a = lo + 1; a < hi; a += 2) {
    for (int b = a + 1; b < hi; b += 2) {
      if ((hi - b) % 2 == 0) continue;
      for (const auto& x : quads_between(lo, a, memo)) {
        for (const auto& y : quads_between(a, b, memo)) {
          for (const auto& z : quads_between(b, hi, memo)) {
            std::vector<Edge> ds = x;
            ds.insert(ds.end(), y.begin(), y.end());
            ds.insert(ds.end(), z.begin(), z.end());
            if (a - lo > 1) ds.emplace_back(lo, a);
            if (b - a > 1) ds.emplace_back(a, b);
            if (hi - b > 1) ds.emplace_back(b, hi);
            out.push_back(std::move(ds));
          }
        }
      }
    }
  }
  memo.emplace(Edge{lo, hi}, out);
  return out;
}

}  // namespace detail

inline std::vector<Quadrangulation> enumerate_quads(int n) {
  check_rank(n);
  const int v = 2 * (n + 2);
  std::map<Edge, std::vector<std::vector<Edge>>> memo;
  std::vector<Quadrangulation> out;
  for (auto ds : detail::quads_between(0, v - 1, memo)) {
    std::sort(ds.begin(), ds.end());
    out.push_back(Quadrangulation{v, std::move(ds)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline NoncrossingTree rotate_tree(const NoncrossingTree& t, int steps = 1) {
  std::vector<Edge> es;
  for (auto [a, b] : t.edges) es.push_back(edge(((a + steps) % t.p + t.p) % t.p, ((b + steps) % t.p + t.p) % t.p));
  std::sort(es.begin(), es.end());
  return NoncrossingTree{t.p, std::move(es)};
}

inline Quadrangulation rotate_quad(const Quadrangulation& q, int steps = 1) {
  const int v = q.vertices;
  std::vector<Edge> ds;
  for (auto [a, b] : q.diagonals) ds.push_back(edge(((a + steps) % v + v) % v, ((b + steps) % v + v) % v));
  std::sort(ds.begin(), ds.end());
  return Quadrangulation{v, std::move(ds)};
}

/// Boundary segment k runs from vertex k to vertex k+1. For each tree edge the
/// two regions it separates each contain one segment; the dual edge joins
/// those segments, and the half-step rotation sends segment k to vertex k+1.
inline NoncrossingTree planar_dual(const NoncrossingTree& t) {
  const int p = t.p;
  // The unique segment on the clockwise side from u to v not cut off by another edge.
  auto region_segment = [&](Edge self, int u, int v) {
    const int len = ((v - u) % p + p) % p;
    auto pos = [&](int x) { return ((x - u) % p + p) % p; };
    std::vector<bool> covered(static_cast<std::size_t>(len), false);
    for (const Edge& f : t.edges) {
      if (f == self) continue;
      int a = pos(f.first), b = pos(f.second);
      if (a > len || b > len) continue;
      if (a > b) std::swap(a, b);
      for (int k = a; k < b; ++k) covered[k] = true;
    }
    int found = -1;
    for (int k = 0; k < len; ++k) {
      if (covered[k]) continue;
      if (found >= 0) throw verification_failure("region of tree edge " + to_string({self}) + " meets two boundary segments");
      found = (u + k) % p;
    }
    if (found < 0) throw verification_failure("region of tree edge " + to_string({self}) + " meets no boundary segment");
    return found;
  };
  std::vector<Edge> es;
  for (const Edge& e : t.edges) {
    const int s1 = region_segment(e, e.first, e.second);
    const int s2 = region_segment(e, e.second, e.first);
    es.push_back(edge((s1 + 1) % p, (s2 + 1) % p));
  }
  std::sort(es.begin(), es.end());
  return NoncrossingTree{p, std::move(es)};
}

/// Faces of the quadrangulation, each as its four vertices in increasing order.
inline std::vector<std::array<int, 4>> quadrilaterals(const Quadrangulation& q) {
  std::vector<std::array<int, 4>> out;
  std::vector<std::vector<int>> todo;
  todo.emplace_back(static_cast<std::size_t>(q.vertices));
  std::iota(todo.back().begin(), todo.back().end(), 0);
  while (!todo.empty()) {
    std::vector<int> poly = std::move(todo.back());
    todo.pop_back();
    if (poly.size() == 4) {
      out.push_back({poly[0], poly[1], poly[2], poly[3]});
      continue;
    }
    bool split = false;
    for (const Edge& d : q.diagonals) {
      const auto ia = std::find(poly.begin(), poly.end(), d.first);
      const auto ib = std::find(poly.begin(), poly.end(), d.second);
      if (ia == poly.end() || ib == poly.end()) continue;
      const auto gap = ib - ia;
      if (gap == 1 || gap == static_cast<std::ptrdiff_t>(poly.size()) - 1) continue;
      todo.emplace_back(ia, ib + 1);
      std::vector<int> rest(poly.begin(), ia + 1);
      rest.insert(rest.end(), ib, poly.end());
      todo.push_back(std::move(rest));
      split = true;
      break;
    }
    if (!split) throw verification_failure("face with " + std::to_string(poly.size()) + " vertices is not a quadrilateral");
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The bullet-bullet chord of every quadrilateral, read on the p-gon of bullets.
inline NoncrossingTree stokes(const Quadrangulation& q) {
  const int p = q.vertices / 2;
  std::vector<Edge> es;
  for (const auto& f : quadrilaterals(q)) {
    std::vector<int> bullets;
    for (int x : f) {
      if (x % 2 == 0) bullets.push_back(x / 2);
    }
    if (bullets.size() != 2) throw verification_failure("quadrilateral without exactly one bullet chord");
    es.push_back(edge(bullets[0], bullets[1]));
  }
  std::sort(es.begin(), es.end());
  return make_tree(p, std::move(es));
}

/// Sorted cycle lengths of rotation acting on the quadrangulations.
inline std::vector<int> rotation_cycle_type(const std::vector<Quadrangulation>& quads) {
  std::set<Quadrangulation> seen;
  std::vector<int> out;
  for (const auto& q : quads) {
    if (seen.count(q)) continue;
    int len = 0;
    Quadrangulation cur = q;
    do {
      seen.insert(cur);
      cur = rotate_quad(cur);
      ++len;
    } while (cur != q);
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// 2(n+2), except for the hexagon where the only diagonals are diameters.
inline int expected_rotation_order(int n) { return n == 1 ? 3 : 2 * (n + 2); }

struct GeomReport {
  int n = 0;
  long long expected = 0;  // Fuss-Catalan count
  std::size_t trees = 0;
  std::size_t quads = 0;
  bool stokes_bijective = false;
  bool equivariant = false;        // stokes(rotate q) = planar_dual(stokes q)
  bool dual_squared_rotates = false;  // planar_dual twice = rotate_tree once
  int rotation_order = 0;          // smallest k with rotate^k = id on all quads
  std::vector<int> rotation_cycles;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline GeomReport geom_check(int n) {
  GeomReport r;
  r.n = n;
  r.expected = fuss_catalan(n);
  const auto trees = enumerate_trees(n);
  const auto quads = enumerate_quads(n);
  r.trees = trees.size();
  r.quads = quads.size();
  if (static_cast<long long>(r.trees) != r.expected) r.failures.push_back("tree count " + std::to_string(r.trees));
  if (static_cast<long long>(r.quads) != r.expected) r.failures.push_back("quadrangulation count " + std::to_string(r.quads));
  std::set<NoncrossingTree> images;
  r.equivariant = true;
  for (const auto& q : quads) {
    const auto t = stokes(q);
    images.insert(t);
    if (stokes(rotate_quad(q)) != planar_dual(t)) {
      r.equivariant = false;
      r.failures.push_back("equivariance fails at " + to_string(q.diagonals));
    }
  }
  r.stokes_bijective = images.size() == quads.size() && std::set<NoncrossingTree>(trees.begin(), trees.end()) == images;
  if (!r.stokes_bijective) r.failures.push_back("stokes is not a bijection");
  r.dual_squared_rotates = std::all_of(trees.begin(), trees.end(), [](const NoncrossingTree& t) { return planar_dual(planar_dual(t)) == rotate_tree(t); });
  if (!r.dual_squared_rotates) r.failures.push_back("planar_dual twice is not a rotation");
  r.rotation_cycles = rotation_cycle_type(quads);
  r.rotation_order = std::accumulate(r.rotation_cycles.begin(), r.rotation_cycles.end(), 1, [](int a, int b) { return std::lcm(a, b); });
  if (r.rotation_order != expected_rotation_order(n)) r.failures.push_back("rotation order " + std::to_string(r.rotation_order));
  return r;
}

}  // namespace serrelab::geom
