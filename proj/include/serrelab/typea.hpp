#pragma once

// Representations of an oriented A_n quiver, torsion classes, wide
// subcategories, mutable intervals and the Serre permutation acting on them,
// interval mutations and 2-cluster tilting triples.
//
// Indecomposables are the interval modules [lo, hi] on the vertices 1..n,
// ordered lexicographically; sets of indecomposables are bitmasks over that
// order. Everything is precomputed once per quiver from explicit linear
// algebra over the rationals.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "serrelab/derived.hpp"
#include "serrelab/errors.hpp"
#include "serrelab/field.hpp"
#include "serrelab/lattice.hpp"
#include "serrelab/matrix.hpp"
#include "serrelab/rep.hpp"

namespace serrelab::typea {

using Mask = std::uint32_t;
inline constexpr int kMaxRank = 5;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask bit(int i) { return Mask{1} << i; }

/// orientation[e] describes the edge between vertices e+1 and e+2:
/// 'R' is the arrow e+1 -> e+2, 'L' the arrow e+2 -> e+1.
struct QuiverA {
  int n = 1;
  std::string orientation;

  static QuiverA make(int n, std::string orientation) {
    if (n < 1) throw invalid_input("quiver needs at least one vertex");
    if (static_cast<int>(orientation.size()) != n - 1) {
      throw invalid_input("orientation must have n-1 letters, got '" + orientation + "'");
    }
    for (char c : orientation) {
      if (c != 'L' && c != 'R') throw invalid_input("orientation letters are L or R, got '" + orientation + "'");
    }
    return QuiverA{n, std::move(orientation)};
  }
  static QuiverA linear(int n) { return make(n, std::string(static_cast<std::size_t>(std::max(n - 1, 0)), 'L')); }

  int source(int e) const { return orientation[e] == 'R' ? e : e + 1; }  // 0-based vertices
  int target(int e) const { return orientation[e] == 'R' ? e + 1 : e; }
};

inline std::vector<std::string> all_orientations(int n) {
  std::vector<std::string> out;
  const int edges = n - 1;
  for (int m = 0; m < (1 << edges); ++m) {
    std::string s;
    for (int e = edges - 1; e >= 0; --e) s += ((m >> e) & 1) ? 'R' : 'L';
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct IndecA {
  int lo = 1;
  int hi = 1;
  friend auto operator<=>(const IndecA&, const IndecA&) = default;
};

inline std::string name(IndecA m) { return "[" + std::to_string(m.lo) + "," + std::to_string(m.hi) + "]"; }

using Q = Rational;

/// maps[e] has shape dims[target(e)] x dims[source(e)].
struct QuiverRep {
  std::vector<int> dims;
  std::vector<Matrix<Q>> maps;
};

inline QuiverRep indec_rep(const QuiverA& q, IndecA m) {
  QuiverRep r;
  r.dims.assign(q.n, 0);
  for (int v = m.lo; v <= m.hi; ++v) r.dims[v - 1] = 1;
  for (int e = 0; e + 1 < q.n; ++e) {
    const int s = q.source(e), t = q.target(e);
    Matrix<Q> a(r.dims[t], r.dims[s]);
    if (r.dims[s] == 1 && r.dims[t] == 1) a(0, 0) = Q(1);
    r.maps.push_back(a);
  }
  return r;
}

namespace detail {

/// Linear map from the vertex components f_v : M_v -> N_v to the arrow
/// defects N_e f_s - f_t M_e. Its kernel is Hom(M, N) and its cokernel is
/// Ext^1(M, N).
struct Ringel {
  Matrix<Q> matrix;
  std::vector<std::size_t> col_offset;  // per vertex
  std::vector<std::size_t> row_offset;  // per arrow
};

inline Ringel ringel(const QuiverA& q, const QuiverRep& m, const QuiverRep& n) {
  Ringel r;
  std::size_t cols = 0, rows = 0;
  for (int v = 0; v < q.n; ++v) {
    r.col_offset.push_back(cols);
    cols += static_cast<std::size_t>(n.dims[v] * m.dims[v]);
  }
  for (int e = 0; e + 1 < q.n; ++e) {
    r.row_offset.push_back(rows);
    rows += static_cast<std::size_t>(n.dims[q.target(e)] * m.dims[q.source(e)]);
  }
  r.matrix = Matrix<Q>(rows, cols);
  for (int e = 0; e + 1 < q.n; ++e) {
    const int s = q.source(e), t = q.target(e);
    const int ms = m.dims[s], mt = m.dims[t], nt = n.dims[t], ns = n.dims[s];
    for (int row = 0; row < nt; ++row) {
      for (int c = 0; c < ms; ++c) {
        const std::size_t eq = r.row_offset[e] + static_cast<std::size_t>(row * ms + c);
        for (int k = 0; k < ns; ++k) {
          r.matrix(eq, r.col_offset[s] + static_cast<std::size_t>(k * ms + c)) += n.maps[e](row, k);
        }
        for (int k = 0; k < mt; ++k) {
          r.matrix(eq, r.col_offset[t] + static_cast<std::size_t>(row * mt + k)) -= m.maps[e](k, c);
        }
      }
    }
  }
  return r;
}

inline std::vector<Matrix<Q>> components(const QuiverA& q, const QuiverRep& m, const QuiverRep& n, const Ringel& r,
                                         const Matrix<Q>& basis, std::size_t col) {
  std::vector<Matrix<Q>> f;
  for (int v = 0; v < q.n; ++v) {
    Matrix<Q> fv(n.dims[v], m.dims[v]);
    for (int i = 0; i < n.dims[v]; ++i) {
      for (int j = 0; j < m.dims[v]; ++j) fv(i, j) = basis(r.col_offset[v] + static_cast<std::size_t>(i * m.dims[v] + j), col);
    }
    f.push_back(fv);
  }
  return f;
}

}  // namespace detail

inline int hom_dim_q(const QuiverA& q, const QuiverRep& m, const QuiverRep& n) {
  const auto r = detail::ringel(q, m, n);
  return static_cast<int>(r.matrix.cols() - rank(r.matrix));
}

inline int ext1_dim_q(const QuiverA& q, const QuiverRep& m, const QuiverRep& n) {
  const auto r = detail::ringel(q, m, n);
  return static_cast<int>(r.matrix.rows() - rank(r.matrix));
}

inline std::vector<std::vector<Matrix<Q>>> hom_basis_q(const QuiverA& q, const QuiverRep& m, const QuiverRep& n) {
  const auto r = detail::ringel(q, m, n);
  const Matrix<Q> ns = nullspace(r.matrix);
  std::vector<std::vector<Matrix<Q>>> out;
  for (std::size_t c = 0; c < ns.cols(); ++c) out.push_back(detail::components(q, m, n, r, ns, c));
  return out;
}

/// Middle term of a non-split extension 0 -> N -> E -> M -> 0, if one exists.
inline std::optional<QuiverRep> nonsplit_middle(const QuiverA& q, const QuiverRep& m, const QuiverRep& n) {
  const auto r = detail::ringel(q, m, n);
  const std::size_t rk = rank(r.matrix);
  if (rk == r.matrix.rows()) return std::nullopt;
  std::vector<Q> eta(r.matrix.rows(), Q(0));
  for (std::size_t j = 0; j < r.matrix.rows(); ++j) {
    Matrix<Q> unit(r.matrix.rows(), 1);
    unit(j, 0) = Q(1);
    if (rank(r.matrix.hstack(unit)) > rk) {
      eta[j] = Q(1);
      break;
    }
  }
  QuiverRep e;
  for (int v = 0; v < q.n; ++v) e.dims.push_back(n.dims[v] + m.dims[v]);
  for (int a = 0; a + 1 < q.n; ++a) {
    const int s = q.source(a), t = q.target(a);
    Matrix<Q> ea(e.dims[t], e.dims[s]);
    for (int i = 0; i < n.dims[t]; ++i) {
      for (int j = 0; j < n.dims[s]; ++j) ea(i, j) = n.maps[a](i, j);
      for (int j = 0; j < m.dims[s]; ++j) ea(i, n.dims[s] + j) = eta[r.row_offset[a] + static_cast<std::size_t>(i * m.dims[s] + j)];
    }
    for (int i = 0; i < m.dims[t]; ++i) {
      for (int j = 0; j < m.dims[s]; ++j) ea(n.dims[t] + i, n.dims[s] + j) = m.maps[a](i, j);
    }
    e.maps.push_back(ea);
  }
  return e;
}

inline QuiverRep kernel_rep(const QuiverA& q, const QuiverRep& m, const std::vector<Matrix<Q>>& f) {
  QuiverRep k;
  std::vector<Matrix<Q>> basis;
  for (int v = 0; v < q.n; ++v) {
    basis.push_back(nullspace(f[v]));
    k.dims.push_back(static_cast<int>(basis.back().cols()));
  }
  for (int e = 0; e + 1 < q.n; ++e) {
    const int s = q.source(e), t = q.target(e);
    auto x = solve(basis[t], m.maps[e] * basis[s]);
    if (!x) throw verification_failure("kernel is not a subrepresentation");
    k.maps.push_back(*x);
  }
  return k;
}

inline QuiverRep cokernel_rep(const QuiverA& q, const QuiverRep& n, const std::vector<Matrix<Q>>& f) {
  QuiverRep c;
  std::vector<Quotient<Q>> quo;
  for (int v = 0; v < q.n; ++v) {
    quo.push_back(quotient_by(f[v], static_cast<std::size_t>(n.dims[v])));
    c.dims.push_back(static_cast<int>(quo.back().projection.rows()));
  }
  for (int e = 0; e + 1 < q.n; ++e) {
    const int s = q.source(e), t = q.target(e);
    c.maps.push_back(quo[t].projection * n.maps[e] * quo[s].section);
  }
  return c;
}

inline QuiverRep direct_sum(const QuiverA& q, const std::vector<const QuiverRep*>& parts) {
  QuiverRep out;
  out.dims.assign(q.n, 0);
  for (const auto* p : parts) {
    for (int v = 0; v < q.n; ++v) out.dims[v] += p->dims[v];
  }
  for (int e = 0; e + 1 < q.n; ++e) {
    const int s = q.source(e), t = q.target(e);
    Matrix<Q> a(out.dims[t], out.dims[s]);
    int r0 = 0, c0 = 0;
    for (const auto* p : parts) {
      for (int i = 0; i < p->dims[t]; ++i) {
        for (int j = 0; j < p->dims[s]; ++j) a(r0 + i, c0 + j) = p->maps[e](i, j);
      }
      r0 += p->dims[t];
      c0 += p->dims[s];
    }
    out.maps.push_back(a);
  }
  return out;
}

/// Interval [lo, hi] in the lattice of torsion classes.
struct TorsInterval {
  Mask lo = 0;
  Mask hi = 0;
  friend auto operator<=>(const TorsInterval&, const TorsInterval&) = default;
};

struct IntervalData {
  Mask t_free = 0, t_tors = 0, t_supp = 0;
  Mask w_free = 0, w_tors = 0;
  int k = 0;                   // rank of w_free
  Mask w1 = 0, w2 = 0, w3 = 0;  // delta sequence
};

/// 2-cluster tilting data T_free + T_tors[1] + T_supp[2] as module sets.
struct ClusterTriple {
  Mask free = 0, tors = 0, supp = 0;
  friend auto operator<=>(const ClusterTriple&, const ClusterTriple&) = default;
};

enum class Slot { free, tors, supp };

struct Summand {
  Slot slot;
  int indec;
  friend auto operator<=>(const Summand&, const Summand&) = default;
};

struct IntervalMutation {
  TorsInterval b, i, a;
  int x = -1;  // simple of the middle delta term, -1 when not from an augmented interval
};

class TypeA {
 public:
  explicit TypeA(QuiverA q) : q_(std::move(q)) {
    if (q_.n > kMaxRank) throw guardrail_exceeded("type A engine is limited to n <= " + std::to_string(kMaxRank));
    QuiverA::make(q_.n, q_.orientation);
    for (int lo = 1; lo <= q_.n; ++lo) {
      for (int hi = lo; hi <= q_.n; ++hi) indecs_.push_back({lo, hi});
    }
    const int count = size();
    for (auto m : indecs_) reps_.push_back(indec_rep(q_, m));
    hom_.assign(count, std::vector<int>(count, 0));
    ext_.assign(count, std::vector<int>(count, 0));
    quot_.assign(count, 0);
    sub_.assign(count, 0);
    ext_mid_.assign(count, std::vector<Mask>(count, 0));
    ker_.assign(count, std::vector<Mask>(count, 0));
    coker_.assign(count, std::vector<Mask>(count, 0));
    basis_.assign(count, std::vector<std::vector<Matrix<Q>>>(count));
    auto& basis = basis_;
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < count; ++j) {
        auto b = hom_basis_q(q_, reps_[i], reps_[j]);
        hom_[i][j] = static_cast<int>(b.size());
        ext_[i][j] = ext1_dim_q(q_, reps_[i], reps_[j]);
        if (hom_[i][j] > 1 || ext_[i][j] > 1) throw verification_failure("type A hom or ext space of dimension > 1");
        if (!b.empty()) basis[i][j] = b[0];
      }
    }
    hom_matrix_ = Matrix<Q>(count, count);
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < count; ++j) hom_matrix_(i, j) = Q(hom_[i][j]);
    }
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < count; ++j) {
        if (hom_[i][j] == 1) {
          const auto& f = basis[i][j];
          const Mask k = summands(kernel_rep(q_, reps_[i], f));
          const Mask c = summands(cokernel_rep(q_, reps_[j], f));
          ker_[i][j] = k;
          coker_[i][j] = c;
          if (c == 0) quot_[i] |= bit(j);
          if (k == 0) sub_[j] |= bit(i);
        }
        if (ext_[i][j] == 1) ext_mid_[i][j] = summands(*nonsplit_middle(q_, reps_[i], reps_[j]));
      }
    }
    find_projectives();
    collect_sum_maps();
    enumerate_classes();
  }

  const QuiverA& quiver() const { return q_; }
  int n() const { return q_.n; }
  int size() const { return static_cast<int>(indecs_.size()); }
  Mask all() const { return size() == 32 ? ~Mask{0} : (bit(size()) - 1); }
  const std::vector<IndecA>& indecs() const { return indecs_; }
  const IndecA& indec(int i) const { return indecs_[i]; }
  int index_of(IndecA m) const {
    auto it = std::find(indecs_.begin(), indecs_.end(), m);
    if (it == indecs_.end()) throw invalid_input("no indecomposable " + name(m));
    return static_cast<int>(it - indecs_.begin());
  }
  const QuiverRep& rep(int i) const { return reps_[i]; }
  int hom(int i, int j) const { return hom_[i][j]; }
  int ext(int i, int j) const { return ext_[i][j]; }
  Mask quotients_of(int i) const { return quot_[i]; }
  Mask subs_of(int i) const { return sub_[i]; }
  /// Summands of the middle term of the non-split 0 -> N -> E -> M -> 0.
  Mask ext_middle(int m, int n) const { return ext_mid_[m][n]; }
  Mask kernel_of(int i, int j) const { return ker_[i][j]; }
  Mask cokernel_of(int i, int j) const { return coker_[i][j]; }
  int projective_at(int v) const { return projective_at_[v - 1]; }  // 1-based vertex
  int injective_at(int v) const { return injective_at_[v - 1]; }
  Mask projectives() const { return projectives_; }
  Mask injectives() const { return injectives_; }

  std::string set_name(Mask s) const {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < size(); ++i) {
      if (!(s & bit(i))) continue;
      if (!first) out += ",";
      out += name(indecs_[i]);
      first = false;
    }
    return out + "}";
  }
  std::string mask_string(Mask s) const {
    std::string out;
    for (int i = 0; i < size(); ++i) out += (s & bit(i)) ? '1' : '0';
    return out;
  }

  /// Multiplicities of the indecomposable summands of a representation.
  std::vector<int> decompose(const QuiverRep& x) const {
    Matrix<Q> h(size(), 1);
    for (int y = 0; y < size(); ++y) h(y, 0) = Q(hom_dim_q(q_, reps_[y], x));
    auto m = solve(hom_matrix_, h);
    if (!m) throw verification_failure("representation does not decompose over the indecomposables");
    std::vector<int> out(size(), 0);
    for (int y = 0; y < size(); ++y) {
      const Q& v = (*m)(y, 0);
      const std::string s = v.str();
      if (s.find('/') != std::string::npos || s.front() == '-') throw verification_failure("non-integral multiplicity");
      out[y] = std::stoi(s);
    }
    return out;
  }
  Mask summands(const QuiverRep& x) const {
    Mask s = 0;
    const auto m = decompose(x);
    for (int y = 0; y < size(); ++y) {
      if (m[y] > 0) s |= bit(y);
    }
    return s;
  }

  // Closure conditions and closures.

  bool ext_closed(Mask s) const {
    for (int i = 0; i < size(); ++i) {
      if (!(s & bit(i))) continue;
      for (int j = 0; j < size(); ++j) {
        if ((s & bit(j)) && !subset(ext_mid_[i][j], s)) return false;
      }
    }
    return true;
  }
  bool is_torsion(Mask s) const {
    for (int i = 0; i < size(); ++i) {
      if ((s & bit(i)) && !subset(quot_[i], s)) return false;
    }
    return ext_closed(s);
  }
  bool is_torsion_free(Mask s) const {
    for (int i = 0; i < size(); ++i) {
      if ((s & bit(i)) && !subset(sub_[i], s)) return false;
    }
    return ext_closed(s);
  }
  /// Extension closed with a_of(s) = s. The basis-map test runs first as a
  /// cheap necessary condition.
  bool is_wide(Mask s) const {
    if (!ext_closed(s)) return false;
    if (!basis_maps_close(s)) return false;
    return a_of_uncached(s) == s;
  }
  bool basis_maps_close(Mask s) const {
    for (int i = 0; i < size(); ++i) {
      if (!(s & bit(i))) continue;
      for (int j = 0; j < size(); ++j) {
        if (!(s & bit(j)) || hom_[i][j] == 0) continue;
        if (!subset(ker_[i][j], s) || !subset(coker_[i][j], s)) return false;
      }
    }
    return true;
  }

  Mask ext_closure(Mask s) const {
    for (;;) {
      Mask next = s;
      for (int i = 0; i < size(); ++i) {
        if (!(s & bit(i))) continue;
        for (int j = 0; j < size(); ++j) {
          if (s & bit(j)) next |= ext_mid_[i][j];
        }
      }
      if (next == s) return s;
      s = next;
    }
  }
  /// Smallest torsion class containing s (Gen of s, closed under extensions).
  Mask torsion_closure(Mask s) const {
    for (;;) {
      Mask next = s;
      for (int i = 0; i < size(); ++i) {
        if (s & bit(i)) next |= quot_[i];
      }
      next = ext_closure(next);
      if (next == s) return s;
      s = next;
    }
  }
  Mask torsion_free_closure(Mask s) const {
    for (;;) {
      Mask next = s;
      for (int i = 0; i < size(); ++i) {
        if (s & bit(i)) next |= sub_[i];
      }
      next = ext_closure(next);
      if (next == s) return s;
      s = next;
    }
  }
  Mask gen(Mask s) const { return torsion_closure(s); }
  Mask cogen(Mask s) const { return torsion_free_closure(s); }

  /// s^perp0: objects receiving no morphism from s.
  Mask right_perp(Mask s) const {
    Mask out = 0;
    for (int y = 0; y < size(); ++y) {
      bool ok = true;
      for (int x = 0; x < size() && ok; ++x) {
        if ((s & bit(x)) && hom_[x][y] != 0) ok = false;
      }
      if (ok) out |= bit(y);
    }
    return out;
  }
  /// perp0 s: objects with no morphism to s.
  Mask left_perp(Mask s) const {
    Mask out = 0;
    for (int x = 0; x < size(); ++x) {
      bool ok = true;
      for (int y = 0; y < size() && ok; ++y) {
        if ((s & bit(y)) && hom_[x][y] != 0) ok = false;
      }
      if (ok) out |= bit(x);
    }
    return out;
  }

  /// Objects X of the extension closed set e such that morphisms inside e
  /// starting at X have cokernels in e and those ending at X have kernels in e.
  /// Hom spaces are at most one-dimensional, so up to automorphisms of the
  /// other end every such morphism is a sum of basis maps over a subset of
  /// indecomposables of e; all subsets are tested.
  Mask a_of(Mask e) const {
    if (auto it = a_cache_.find(e); it != a_cache_.end()) return it->second;
    return a_of_uncached(e);
  }

  /// Objects of w without a proper subobject in w.
  Mask simples_of(Mask w) const {
    Mask out = 0;
    for (int x = 0; x < size(); ++x) {
      if ((w & bit(x)) && (sub_[x] & w & ~bit(x)) == 0) out |= bit(x);
    }
    return out;
  }
  int rank(Mask w) const { return popcount(simples_of(w)); }

  /// Smallest wide subcategory containing s.
  Mask wide_closure(Mask s) const {
    Mask out = all();
    for (Mask w : wide_) {
      if (subset(s, w)) out &= w;
    }
    return out;
  }

  Mask ext_projectives(Mask e) const {
    Mask out = 0;
    for (int x = 0; x < size(); ++x) {
      if (!(e & bit(x))) continue;
      bool ok = true;
      for (int y = 0; y < size() && ok; ++y) {
        if ((e & bit(y)) && ext_[x][y]) ok = false;
      }
      if (ok) out |= bit(x);
    }
    return out;
  }
  Mask ext_injectives(Mask e) const {
    Mask out = 0;
    for (int x = 0; x < size(); ++x) {
      if (!(e & bit(x))) continue;
      bool ok = true;
      for (int y = 0; y < size() && ok; ++y) {
        if ((e & bit(y)) && ext_[y][x]) ok = false;
      }
      if (ok) out |= bit(x);
    }
    return out;
  }

  // Torsion classes and wide subcategories.

  /// Sorted by size, then by mask.
  const std::vector<Mask>& torsion_classes() const { return tors_; }
  const std::vector<Mask>& wide_subcats() const { return wide_; }
  int tors_index(Mask t) const {
    auto it = tors_index_.find(t);
    if (it == tors_index_.end()) throw invalid_input("not a torsion class: " + set_name(t));
    return it->second;
  }
  Mask torsion_free_of(Mask t) const { return right_perp(t); }
  Mask tors_join(Mask a, Mask b) const { return torsion_closure(a | b); }
  Mask tors_meet(Mask a, Mask b) const { return a & b; }

  LatticePtr tors_lattice() const { return lattice_; }

  /// The unique indecomposable in T^perp0 intersected with T' for a cover T < T'.
  int cover_label(Mask t, Mask t_up) const {
    const Mask m = right_perp(t) & t_up;
    if (popcount(m) != 1) throw verification_failure("cover is not labelled by a single brick");
    return std::countr_zero(m);
  }

  // Intervals.

  bool is_mutable(TorsInterval i) const { return subset(i.lo, i.hi) && subset(a_of(i.lo), a_of(i.hi)); }

  /// Mutable intervals ordered by the positions of their bounds.
  const std::vector<TorsInterval>& mutable_intervals() const { return mutable_; }
  int mutable_index(TorsInterval i) const {
    auto it = std::lower_bound(mutable_.begin(), mutable_.end(), i, [&](const TorsInterval& a, const TorsInterval& b) {
      return key(a) < key(b);
    });
    if (it == mutable_.end() || *it != i) throw invalid_input("not a mutable interval");
    return static_cast<int>(it - mutable_.begin());
  }

  IntervalData describe(TorsInterval i) const {
    IntervalData d;
    const Mask f = right_perp(i.lo), f_up = right_perp(i.hi);
    const Mask a_f = a_of(f), a_t_up = a_of(i.hi);
    d.t_free = ext_injectives(f_up & a_f);
    d.t_tors = ext_projectives(i.lo & a_t_up);
    const Mask avoid = i.lo | f_up;
    for (int v = 1; v <= n(); ++v) {
      bool ok = true;
      for (int x = 0; x < size() && ok; ++x) {
        if ((avoid & bit(x)) && hom_[projective_at(v)][x]) ok = false;
      }
      if (ok) d.t_supp |= bit(projective_at(v));
    }
    d.w_free = wide_closure(d.t_free);
    d.w_tors = wide_closure(d.t_tors);
    d.k = rank(d.w_free);
    d.w1 = a_of(i.lo);
    d.w2 = a_f & a_t_up;
    d.w3 = a_of(f_up);
    return d;
  }

  TorsInterval serre_perm(TorsInterval i) const {
    const IntervalData d = describe(i);
    return {torsion_closure(d.t_free), tors_join(i.lo, d.w_free)};
  }
  TorsInterval serre_perm_inverse(TorsInterval i) const {
    const IntervalData d = describe(i);
    return {i.hi & left_perp(d.w_tors), left_perp(d.t_tors)};
  }

  /// Torsion classes in [lo, hi], as a bitset over tors_lattice().
  Bitset members(TorsInterval i) const {
    Bitset b(tors_.size());
    for (std::size_t k = 0; k < tors_.size(); ++k) {
      if (subset(i.lo, tors_[k]) && subset(tors_[k], i.hi)) b.set(k);
    }
    return b;
  }

  bool is_interval_mutation(TorsInterval b, TorsInterval i, TorsInterval a) const {
    if (!is_mutable(b) || !is_mutable(i) || !is_mutable(a)) return false;
    if (b.hi != i.hi || a.lo != i.lo) return false;
    const Bitset mb = members(b), mi = members(i), ma = members(a);
    return (ma & mb).none() && (ma | mb) == mi;
  }

  /// One interval mutation per augmented interval (I, X).
  std::vector<IntervalMutation> interval_mutations() const {
    std::vector<IntervalMutation> out;
    for (const auto& i : mutable_) {
      if (i.lo == i.hi) continue;
      const IntervalData d = describe(i);
      const Mask simples = simples_of(d.w2);
      for (int x = 0; x < size(); ++x) {
        if (!(simples & bit(x))) continue;
        const TorsInterval a{i.lo, tors_meet(i.hi, left_perp(bit(x)))};
        const TorsInterval b{tors_join(i.lo, gen(bit(x))), i.hi};
        out.push_back({b, i, a, x});
      }
    }
    return out;
  }

  // 2-cluster tilting triples.

  std::vector<Summand> summands_list() const {
    std::vector<Summand> out;
    for (int x = 0; x < size(); ++x) out.push_back({Slot::free, x});
    for (int x = 0; x < size(); ++x) out.push_back({Slot::tors, x});
    for (int v = 1; v <= n(); ++v) out.push_back({Slot::supp, projective_at(v)});
    return out;
  }

  /// Pairwise vanishing conditions for T_free + T_tors[1] + T_supp[2].
  bool compatible(const Summand& u, const Summand& v) const {
    if (u.slot > v.slot) return compatible(v, u);
    const int x = u.indec, y = v.indec;
    if (u.slot == v.slot) {
      if (u.slot == Slot::supp) return true;
      return ext_[x][y] == 0 && ext_[y][x] == 0;
    }
    if (u.slot == Slot::free && v.slot == Slot::tors) return hom_[y][x] == 0 && ext_[y][x] == 0;
    if (u.slot == Slot::free && v.slot == Slot::supp) return hom_[y][x] == 0;
    return hom_[y][x] == 0;  // tors, supp
  }

  static ClusterTriple to_triple(const std::vector<Summand>& s) {
    ClusterTriple t;
    for (const auto& x : s) {
      Mask& m = x.slot == Slot::free ? t.free : (x.slot == Slot::tors ? t.tors : t.supp);
      m |= bit(x.indec);
    }
    return t;
  }

  /// All compatible families of the given size, in lexicographic order.
  std::vector<std::vector<Summand>> compatible_families(int k) const {
    const auto all_summands = summands_list();
    std::vector<std::vector<Summand>> out;
    std::vector<Summand> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = from; i < all_summands.size(); ++i) {
        const auto& s = all_summands[i];
        if (!compatible(s, s)) continue;
        if (std::all_of(cur.begin(), cur.end(), [&](const Summand& c) { return compatible(c, s); })) {
          cur.push_back(s);
          self(self, i + 1);
          cur.pop_back();
        }
      }
    };
    rec(rec, 0);
    return out;
  }

  std::vector<ClusterTriple> cluster_triples() const {
    std::vector<ClusterTriple> out;
    for (const auto& f : compatible_families(n())) out.push_back(to_triple(f));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Summands completing an almost complete family.
  std::vector<Summand> completions(const std::vector<Summand>& almost) const {
    std::vector<Summand> out;
    for (const auto& s : summands_list()) {
      if (std::find(almost.begin(), almost.end(), s) != almost.end()) continue;
      if (!compatible(s, s)) continue;
      if (std::all_of(almost.begin(), almost.end(), [&](const Summand& c) { return compatible(c, s); })) out.push_back(s);
    }
    return out;
  }

  TorsInterval interval_of(const ClusterTriple& t) const { return {gen(t.tors), left_perp(t.free)}; }
  ClusterTriple triple_of(TorsInterval i) const {
    const IntervalData d = describe(i);
    return {d.t_free, d.t_tors, d.t_supp};
  }

 private:
  std::pair<int, int> key(const TorsInterval& i) const { return {tors_index(i.lo), tors_index(i.hi)}; }

  void find_projectives() {
    const int count = size();
    projective_at_.assign(q_.n, -1);
    injective_at_.assign(q_.n, -1);
    for (int v = 0; v < q_.n; ++v) {
      // Vertices reachable from v along arrows, and those reaching v.
      int lo = v, hi = v;
      while (lo > 0 && q_.source(lo - 1) == lo) --lo;
      while (hi + 1 < q_.n && q_.source(hi) == hi) ++hi;
      projective_at_[v] = index_of({lo + 1, hi + 1});
      lo = v;
      hi = v;
      while (lo > 0 && q_.target(lo - 1) == lo) --lo;
      while (hi + 1 < q_.n && q_.target(hi) == hi) ++hi;
      injective_at_[v] = index_of({lo + 1, hi + 1});
      projectives_ |= bit(projective_at_[v]);
      injectives_ |= bit(injective_at_[v]);
      for (int x = 0; x < count; ++x) {
        if (hom_[projective_at_[v]][x] != reps_[x].dims[v] || hom_[x][injective_at_[v]] != reps_[x].dims[v]) {
          throw verification_failure("projective or injective at vertex " + std::to_string(v + 1) + " misidentified");
        }
      }
    }
  }

  struct SumMap {
    Mask others;  // the indecomposables on the other end
    Mask result;  // summands of the kernel (into X) or cokernel (out of X)
  };

  void collect_sum_maps() {
    const int count = size();
    into_.assign(count, {});
    out_of_.assign(count, {});
    for (int x = 0; x < count; ++x) {
      std::vector<int> preds, succs;
      for (int y = 0; y < count; ++y) {
        if (y == x) continue;
        if (hom_[y][x]) preds.push_back(y);
        if (hom_[x][y]) succs.push_back(y);
      }
      for (Mask sub = 1; sub < (Mask{1} << preds.size()); ++sub) {
        std::vector<const QuiverRep*> parts;
        std::vector<Matrix<Q>> f(q_.n);
        Mask others = 0;
        bool first = true;
        for (std::size_t k = 0; k < preds.size(); ++k) {
          if (!(sub & bit(static_cast<int>(k)))) continue;
          const int y = preds[k];
          others |= bit(y);
          parts.push_back(&reps_[y]);
          for (int v = 0; v < q_.n; ++v) f[v] = first ? basis_[y][x][v] : f[v].hstack(basis_[y][x][v]);
          first = false;
        }
        into_[x].push_back({others, summands(kernel_rep(q_, direct_sum(q_, parts), f))});
      }
      for (Mask sub = 1; sub < (Mask{1} << succs.size()); ++sub) {
        std::vector<const QuiverRep*> parts;
        std::vector<Matrix<Q>> f(q_.n);
        Mask others = 0;
        bool first = true;
        for (std::size_t k = 0; k < succs.size(); ++k) {
          if (!(sub & bit(static_cast<int>(k)))) continue;
          const int y = succs[k];
          others |= bit(y);
          parts.push_back(&reps_[y]);
          for (int v = 0; v < q_.n; ++v) f[v] = first ? basis_[x][y][v] : f[v].vstack(basis_[x][y][v]);
          first = false;
        }
        out_of_[x].push_back({others, summands(cokernel_rep(q_, direct_sum(q_, parts), f))});
      }
    }
  }

  Mask a_of_uncached(Mask e) const {
    Mask out = 0;
    for (int x = 0; x < size(); ++x) {
      if (!(e & bit(x))) continue;
      auto fails = [&](const std::vector<SumMap>& maps) {
        return std::any_of(maps.begin(), maps.end(),
                           [&](const SumMap& m) { return subset(m.others, e) && !subset(m.result, e); });
      };
      if (!fails(into_[x]) && !fails(out_of_[x])) out |= bit(x);
    }
    return out;
  }

  void enumerate_classes() {
    const Mask full = all();
    for (Mask s = 0;; ++s) {
      if (is_torsion(s)) tors_.push_back(s);
      if (is_wide(s)) wide_.push_back(s);
      if (s == full) break;
    }
    auto by_size = [](Mask a, Mask b) { return std::pair(popcount(a), a) < std::pair(popcount(b), b); };
    std::sort(tors_.begin(), tors_.end(), by_size);
    std::sort(wide_.begin(), wide_.end(), by_size);
    for (std::size_t k = 0; k < tors_.size(); ++k) tors_index_.emplace(tors_[k], static_cast<int>(k));
    for (Mask t : tors_) {
      a_cache_.emplace(t, a_of_uncached(t));
      const Mask f = right_perp(t);
      a_cache_.emplace(f, a_of_uncached(f));
    }

    std::vector<std::string> labels;
    for (Mask t : tors_) labels.push_back(set_name(t));
    std::vector<Cover> covers;
    for (std::size_t a = 0; a < tors_.size(); ++a) {
      for (std::size_t b = 0; b < tors_.size(); ++b) {
        if (a == b || !subset(tors_[a], tors_[b])) continue;
        bool cover = true;
        for (std::size_t c = 0; c < tors_.size() && cover; ++c) {
          if (c != a && c != b && subset(tors_[a], tors_[c]) && subset(tors_[c], tors_[b])) cover = false;
        }
        if (cover) covers.push_back({static_cast<int>(a), static_cast<int>(b)});
      }
    }
    lattice_ = std::make_shared<const Lattice>(Lattice::from_covers(labels, covers));

    for (Mask lo : tors_) {
      for (Mask hi : tors_) {
        if (is_mutable({lo, hi})) mutable_.push_back({lo, hi});
      }
    }
    std::sort(mutable_.begin(), mutable_.end(),
              [&](const TorsInterval& a, const TorsInterval& b) { return key(a) < key(b); });
  }

  QuiverA q_;
  std::vector<IndecA> indecs_;
  std::vector<QuiverRep> reps_;
  std::vector<std::vector<int>> hom_, ext_;
  Matrix<Q> hom_matrix_;
  std::vector<Mask> quot_, sub_;
  std::vector<std::vector<Mask>> ext_mid_, ker_, coker_;
  std::vector<std::vector<std::vector<Matrix<Q>>>> basis_;
  std::vector<std::vector<SumMap>> into_, out_of_;
  std::map<Mask, Mask> a_cache_;
  std::vector<int> projective_at_, injective_at_;
  Mask projectives_ = 0, injectives_ = 0;
  std::vector<Mask> tors_, wide_;
  std::map<Mask, int> tors_index_;
  LatticePtr lattice_;
  std::vector<TorsInterval> mutable_;
};

// Whole-category checks.

/// 2 + 2h with h = n + 1 the Coxeter number of A_n.
inline int serre_period(int n) { return 2 * (n + 1) + 2; }
inline int num_indecs(int n) { return n * (n + 1) / 2; }

struct OrbitStats {
  int period = 0;               // expected period 2h+2
  int rank_sum = 0;             // expected sum 2N
  std::vector<int> cycle_type;  // cycle lengths of the Serre permutation on mutable intervals
  std::vector<std::string> violations;
  bool a1_short_period = false;  // A_1 only: period h+1 with sum N
};

inline std::vector<int> serre_permutation(const TypeA& t) {
  std::vector<int> perm;
  for (const auto& i : t.mutable_intervals()) perm.push_back(t.mutable_index(t.serre_perm(i)));
  return perm;
}

inline OrbitStats serre_orbit_stats(const TypeA& t) {
  OrbitStats st;
  st.period = serre_period(t.n());
  st.rank_sum = 2 * num_indecs(t.n());
  auto walk = [&](TorsInterval start, int steps, int* sum) {
    TorsInterval cur = start;
    *sum = 0;
    for (int s = 0; s < steps; ++s) {
      if (!t.is_mutable(cur)) throw verification_failure("Serre image is not mutable");
      *sum += t.describe(cur).k;
      cur = t.serre_perm(cur);
    }
    return cur;
  };
  for (const auto& i : t.mutable_intervals()) {
    int sum = 0;
    const TorsInterval back = walk(i, st.period, &sum);
    if (back != i) st.violations.push_back("no return after " + std::to_string(st.period) + " steps from [" + t.set_name(i.lo) + ", " + t.set_name(i.hi) + "]");
    if (sum != st.rank_sum) st.violations.push_back("rank sum " + std::to_string(sum) + " from [" + t.set_name(i.lo) + ", " + t.set_name(i.hi) + "]");
    if (t.serre_perm_inverse(t.serre_perm(i)) != i || t.serre_perm(t.serre_perm_inverse(i)) != i) {
      st.violations.push_back("inverse fails at [" + t.set_name(i.lo) + ", " + t.set_name(i.hi) + "]");
    }
  }
  if (t.n() == 1) {
    st.a1_short_period = true;
    for (const auto& i : t.mutable_intervals()) {
      int sum = 0;
      if (walk(i, 3, &sum) != i || sum != 1) st.a1_short_period = false;
    }
  }
  std::vector<int> perm = serre_permutation(t);
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t a = 0; a < perm.size(); ++a) {
    if (seen[a]) continue;
    int len = 0;
    for (std::size_t x = a; !seen[x]; x = static_cast<std::size_t>(perm[x])) {
      seen[x] = true;
      ++len;
    }
    st.cycle_type.push_back(len);
  }
  std::sort(st.cycle_type.begin(), st.cycle_type.end());
  return st;
}

struct RotationRecord {
  int case_one = 0;  // W_free^I = W_free^A
  int case_two = 0;  // W_free^B = W_free^I
  std::vector<std::string> violations;
};

inline RotationRecord rotation_check(const TypeA& t) {
  RotationRecord rec;
  for (const auto& m : t.interval_mutations()) {
    const Mask wb = t.describe(m.b).w_free, wi = t.describe(m.i).w_free, wa = t.describe(m.a).w_free;
    const std::string where = "[" + t.set_name(m.i.lo) + ", " + t.set_name(m.i.hi) + "] with " + name(t.indec(m.x));
    if (!subset(wb, wi) || !subset(wi, wa)) {
      rec.violations.push_back("W_free chain fails at " + where);
      continue;
    }
    if (t.rank(wb) + 1 != t.rank(wa)) {
      rec.violations.push_back("rank gap is not 1 at " + where);
      continue;
    }
    const bool one = wi == wa, two = wb == wi;
    if (one == two) {
      rec.violations.push_back("rotation cases not exclusive at " + where);
      continue;
    }
    const TorsInterval sb = t.serre_perm(m.b), si = t.serre_perm(m.i), sa = t.serre_perm(m.a);
    if (one) {
      ++rec.case_one;
      if (!t.is_interval_mutation(si, sa, sb)) rec.violations.push_back("rotated triple (SI, SA, SB) fails at " + where);
    } else {
      ++rec.case_two;
      if (!t.is_interval_mutation(sa, sb, si)) rec.violations.push_back("rotated triple (SA, SB, SI) fails at " + where);
    }
  }
  return rec;
}

/// On the lattice of torsion classes the Serre functor sends the interval
/// module of a mutable interval I to that of the Serre permutation of I,
/// shifted by the rank of W_free^I. Returns the failing intervals.
template <Field F>
std::vector<std::string> categorical_serre_failures(const TypeA& t) {
  const LatticePtr l = t.tors_lattice();
  std::vector<std::string> failures;
  for (const auto& i : t.mutable_intervals()) {
    const IntervalRef iv{t.tors_index(i.lo), t.tors_index(i.hi)};
    const TorsInterval si = t.serre_perm(i);
    const IntervalRef expected{t.tors_index(si.lo), t.tors_index(si.hi)};
    const int k = t.describe(i).k;
    auto r = serre(interval_module<F>(l, iv));
    const auto* stalk = std::get_if<StalkResult<F>>(&r);
    const std::string where = "[" + t.set_name(i.lo) + ", " + t.set_name(i.hi) + "]";
    if (stalk == nullptr) {
      failures.push_back(where + ": not a stalk complex");
    } else if (stalk->shift != k) {
      failures.push_back(where + ": shift " + std::to_string(stalk->shift) + " but rank " + std::to_string(k));
    } else if (stalk->interval != expected) {
      failures.push_back(where + ": Serre image is not the interval module of the Serre permutation");
    }
  }
  return failures;
}

inline long long binomial(int n, int k) {
  long long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}
inline long long catalan_number(int n) { return binomial(2 * n, n) / (n + 1); }
/// Number of mutable intervals in type A_n.
inline long long two_catalan_number(int n) { return binomial(3 * (n + 1), n) / (n + 1); }

struct SuiteReport {
  int n = 0;
  std::string orientation;
  std::size_t torsion_classes = 0;
  std::size_t wide_subcategories = 0;
  std::size_t mutable_intervals = 0;
  std::size_t cluster_triples = 0;
  std::size_t interval_mutations = 0;
  bool triples_biject = false;
  OrbitStats orbit;
  RotationRecord rotation;
  bool categorical_run = false;
  std::vector<std::string> categorical_failures;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Counts, bijections, Serre periodicity, rotation and optionally the
/// derived Serre functor on every mutable interval.
template <Field F>
SuiteReport run_suite(const TypeA& t, bool categorical) {
  SuiteReport r;
  r.n = t.n();
  r.orientation = t.quiver().orientation;
  r.torsion_classes = t.torsion_classes().size();
  r.wide_subcategories = t.wide_subcats().size();
  r.mutable_intervals = t.mutable_intervals().size();
  const auto fail = [&](std::string what) { r.failures.push_back(std::move(what)); };
  const long long cat = catalan_number(t.n() + 1), two = two_catalan_number(t.n());
  if (static_cast<long long>(r.torsion_classes) != cat) fail("torsion class count " + std::to_string(r.torsion_classes));
  if (static_cast<long long>(r.wide_subcategories) != cat) fail("wide subcategory count " + std::to_string(r.wide_subcategories));
  if (static_cast<long long>(r.mutable_intervals) != two) fail("mutable interval count " + std::to_string(r.mutable_intervals));
  for (Mask tc : t.torsion_classes()) {
    if (t.torsion_closure(t.a_of(tc)) != tc) fail("Gen of a(T) differs from T = " + t.set_name(tc));
  }
  const auto triples = t.cluster_triples();
  r.cluster_triples = triples.size();
  std::set<TorsInterval> images;
  r.triples_biject = true;
  for (const auto& c : triples) {
    const TorsInterval i = t.interval_of(c);
    if (!t.is_mutable(i) || t.triple_of(i) != c) r.triples_biject = false;
    images.insert(i);
  }
  if (images.size() != r.mutable_intervals || static_cast<long long>(r.cluster_triples) != two) r.triples_biject = false;
  if (!r.triples_biject) fail("cluster triples do not biject with mutable intervals");
  const auto muts = t.interval_mutations();
  r.interval_mutations = muts.size();
  if (3 * static_cast<long long>(muts.size()) != t.n() * two) fail("interval mutation count " + std::to_string(muts.size()));
  for (const auto& m : muts) {
    if (!t.is_interval_mutation(m.b, m.i, m.a)) fail("augmented interval does not give an interval mutation");
  }
  r.orbit = serre_orbit_stats(t);
  for (const auto& v : r.orbit.violations) fail(v);
  if (t.n() == 1 && !r.orbit.a1_short_period) fail("A_1 short period fails");
  r.rotation = rotation_check(t);
  for (const auto& v : r.rotation.violations) fail(v);
  if (categorical) {
    r.categorical_run = true;
    r.categorical_failures = categorical_serre_failures<F>(t);
    for (const auto& v : r.categorical_failures) fail(v);
  }
  return r;
}

}  // namespace serrelab::typea
