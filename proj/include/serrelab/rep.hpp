#pragma once

// Representations of the incidence algebra of a finite lattice: a vector
// space at every element and a linear map along every cover, with all
// square paths commuting. Maps act on column vectors.

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"
#include "serrelab/antichain.hpp"
#include "serrelab/errors.hpp"
#include "serrelab/lattice.hpp"
#include "serrelab/matrix.hpp"

namespace serrelab {

struct IntervalRef {
  int lo;
  int hi;
  friend bool operator==(const IntervalRef&, const IntervalRef&) = default;
};

enum class Validation { check, trusted };

template <Field F>
class LatticeRep {
 public:
  using Mat = Matrix<F>;

  LatticeRep(LatticePtr lattice, std::vector<int> dims, std::vector<Mat> cover_maps,
             Validation v = Validation::check)
      : lattice_(std::move(lattice)), dims_(std::move(dims)), maps_(std::move(cover_maps)) {
    if (!lattice_) throw std::invalid_argument("representation without a lattice");
    if (dims_.size() != lattice_->size()) throw invalid_input("dimension vector has the wrong length");
    if (maps_.size() != lattice_->covers().size()) throw invalid_input("one map per cover is required");
    for (std::size_t c = 0; c < maps_.size(); ++c) {
      const Cover cv = lattice_->covers()[c];
      if (maps_[c].rows() != static_cast<std::size_t>(dims_[cv.hi]) ||
          maps_[c].cols() != static_cast<std::size_t>(dims_[cv.lo])) {
        throw invalid_input("cover map has the wrong shape");
      }
    }
    if (v == Validation::check) check_commutativity();
  }

  static LatticeRep zero(LatticePtr lattice) {
    std::vector<Mat> maps(lattice->covers().size());
    const std::size_t n = lattice->size();
    return LatticeRep(std::move(lattice), std::vector<int>(n, 0), std::move(maps), Validation::trusted);
  }

  const Lattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  int dim(int x) const { return dims_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const {
    int t = 0;
    for (int d : dims_) t += d;
    return t;
  }
  bool is_zero() const { return total_dim() == 0; }
  const Mat& cover_map(int cover) const { return maps_[static_cast<std::size_t>(cover)]; }
  const std::vector<Mat>& cover_maps() const { return maps_; }

  /// The maps M_{a<=x} for every x >= a (unset for x not above a).
  std::vector<std::optional<Mat>> transport_from(int a) const {
    const Lattice& l = *lattice_;
    std::vector<std::optional<Mat>> t(l.size());
    t[a] = Mat::identity(static_cast<std::size_t>(dim(a)));
    for (int x : l.linear_extension()) {
      if (x == a || !l.leq(a, x)) continue;
      for (int c : l.lower_covers(x)) {
        const int y = l.covers()[c].lo;
        if (t[y]) {
          t[x] = maps_[c] * *t[y];
          break;
        }
      }
    }
    return t;
  }

  void check_commutativity() const {
    const Lattice& l = *lattice_;
    for (int a = 0; a < static_cast<int>(l.size()); ++a) {
      if (dim(a) == 0) continue;
      std::vector<std::optional<Mat>> t(l.size());
      t[a] = Mat::identity(static_cast<std::size_t>(dim(a)));
      for (int x : l.linear_extension()) {
        if (x == a || !l.leq(a, x)) continue;
        for (int c : l.lower_covers(x)) {
          const int y = l.covers()[c].lo;
          if (!t[y]) continue;
          Mat via = maps_[c] * *t[y];
          if (!t[x]) {
            t[x] = std::move(via);
          } else if (!(*t[x] == via)) {
            throw invalid_input("representation does not commute above " + l.label(a));
          }
        }
      }
    }
  }

 private:
  LatticePtr lattice_;
  std::vector<int> dims_;
  std::vector<Mat> maps_;
};

template <Field F>
struct RepMorphism {
  LatticeRep<F> source;
  LatticeRep<F> target;
  std::vector<Matrix<F>> components;  // one per element, target_dim x source_dim
};

/// Dimension 1 on the support with identity maps inside it. Only a valid
/// representation when the support is convex.
template <Field F>
LatticeRep<F> thin_module(const LatticePtr& l, const Bitset& support, Validation v = Validation::trusted) {
  std::vector<int> dims(l->size(), 0);
  for (std::size_t i = 0; i < l->size(); ++i) dims[i] = support.test(i) ? 1 : 0;
  std::vector<Matrix<F>> maps;
  maps.reserve(l->covers().size());
  for (const Cover& c : l->covers()) {
    Matrix<F> m(static_cast<std::size_t>(dims[c.hi]), static_cast<std::size_t>(dims[c.lo]));
    if (dims[c.hi] == 1 && dims[c.lo] == 1) m(0, 0) = F(1);
    maps.push_back(std::move(m));
  }
  return LatticeRep<F>(l, std::move(dims), std::move(maps), v);
}

template <Field F>
LatticeRep<F> interval_module(const LatticePtr& l, IntervalRef i) {
  if (!l->leq(i.lo, i.hi)) throw invalid_input("interval with lo not below hi");
  return thin_module<F>(l, l->interval_set(i.lo, i.hi));
}

template <Field F>
LatticeRep<F> projective(const LatticePtr& l, int a) {
  return interval_module<F>(l, {a, l->top()});
}
template <Field F>
LatticeRep<F> injective(const LatticePtr& l, int a) {
  return interval_module<F>(l, {l->bottom(), a});
}
template <Field F>
LatticeRep<F> simple(const LatticePtr& l, int a) {
  return interval_module<F>(l, {a, a});
}

/// Support {y >= alpha : c not <= y for every c in C}.
inline Bitset antichain_support(const Lattice& l, const Antichain& c) {
  if (c.mode != AntichainMode::over) throw invalid_input("expected an antichain over its base");
  Bitset s = l.up(c.base);
  for (int m : c.members) s -= l.up(m);
  return s;
}

/// Support {y <= beta : y not <= d for every d in D}.
inline Bitset dual_antichain_support(const Lattice& l, const Antichain& d) {
  if (d.mode != AntichainMode::under) throw invalid_input("expected an antichain under its base");
  Bitset s = l.down(d.base);
  for (int m : d.members) s -= l.down(m);
  return s;
}

template <Field F>
LatticeRep<F> antichain_module(const LatticePtr& l, const Antichain& c) {
  return thin_module<F>(l, antichain_support(*l, c));
}
template <Field F>
LatticeRep<F> dual_antichain_module(const LatticePtr& l, const Antichain& d) {
  return thin_module<F>(l, dual_antichain_support(*l, d));
}

template <Field F>
LatticeRep<F> direct_sum(const LatticeRep<F>& a, const LatticeRep<F>& b) {
  if (a.lattice_ptr() != b.lattice_ptr()) throw lattice_mismatch("direct sum over different lattices");
  const Lattice& l = a.lattice();
  std::vector<int> dims(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) dims[i] = a.dims()[i] + b.dims()[i];
  std::vector<Matrix<F>> maps;
  for (std::size_t c = 0; c < l.covers().size(); ++c) {
    const Matrix<F>& ma = a.cover_map(static_cast<int>(c));
    const Matrix<F>& mb = b.cover_map(static_cast<int>(c));
    Matrix<F> m(ma.rows() + mb.rows(), ma.cols() + mb.cols());
    for (std::size_t i = 0; i < ma.rows(); ++i) {
      for (std::size_t j = 0; j < ma.cols(); ++j) m(i, j) = ma(i, j);
    }
    for (std::size_t i = 0; i < mb.rows(); ++i) {
      for (std::size_t j = 0; j < mb.cols(); ++j) m(ma.rows() + i, ma.cols() + j) = mb(i, j);
    }
    maps.push_back(std::move(m));
  }
  return LatticeRep<F>(a.lattice_ptr(), std::move(dims), std::move(maps), Validation::trusted);
}

/// Components of a basis of Hom(M, N), in echelon order.
template <Field F>
std::vector<std::vector<Matrix<F>>> hom_basis_components(const LatticeRep<F>& m, const LatticeRep<F>& n) {
  if (m.lattice_ptr() != n.lattice_ptr() && !(m.lattice().labels() == n.lattice().labels())) {
    throw lattice_mismatch("Hom between representations of different lattices");
  }
  const Lattice& l = m.lattice();
  const std::size_t size = l.size();
  std::vector<std::size_t> offset(size + 1, 0);
  for (std::size_t x = 0; x < size; ++x) {
    offset[x + 1] = offset[x] + static_cast<std::size_t>(m.dims()[x]) * static_cast<std::size_t>(n.dims()[x]);
  }
  const std::size_t unknowns = offset[size];
  std::vector<std::vector<Matrix<F>>> basis;
  if (unknowns == 0) return basis;

  std::size_t eq_count = 0;
  for (const Cover& c : l.covers()) {
    eq_count += static_cast<std::size_t>(n.dims()[c.hi]) * static_cast<std::size_t>(m.dims()[c.lo]);
  }
  Matrix<F> sys(eq_count, unknowns);
  std::size_t row = 0;
  for (std::size_t ci = 0; ci < l.covers().size(); ++ci) {
    const Cover c = l.covers()[ci];
    const auto a = static_cast<std::size_t>(c.lo), b = static_cast<std::size_t>(c.hi);
    const std::size_t ma = static_cast<std::size_t>(m.dims()[a]), mb = static_cast<std::size_t>(m.dims()[b]);
    const std::size_t na = static_cast<std::size_t>(n.dims()[a]), nb = static_cast<std::size_t>(n.dims()[b]);
    const Matrix<F>& mm = m.cover_map(static_cast<int>(ci));  // mb x ma
    const Matrix<F>& nm = n.cover_map(static_cast<int>(ci));  // nb x na
    // (f_b * M_ab - N_ab * f_a)(i, j) = 0 for i < nb, j < ma.
    for (std::size_t i = 0; i < nb; ++i) {
      for (std::size_t j = 0; j < ma; ++j, ++row) {
        for (std::size_t k = 0; k < mb; ++k) {
          if (!mm(k, j).is_zero()) sys(row, offset[b] + i * mb + k) += mm(k, j);
        }
        for (std::size_t k = 0; k < na; ++k) {
          if (!nm(i, k).is_zero()) sys(row, offset[a] + k * ma + j) -= nm(i, k);
        }
      }
    }
  }
  const Matrix<F> null = nullspace(sys);
  for (std::size_t v = 0; v < null.cols(); ++v) {
    std::vector<Matrix<F>> comps;
    comps.reserve(size);
    for (std::size_t x = 0; x < size; ++x) {
      const std::size_t r = static_cast<std::size_t>(n.dims()[x]), cc = static_cast<std::size_t>(m.dims()[x]);
      Matrix<F> f(r, cc);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < cc; ++j) f(i, j) = null(offset[x] + i * cc + j, v);
      }
      comps.push_back(std::move(f));
    }
    basis.push_back(std::move(comps));
  }
  return basis;
}

template <Field F>
std::vector<RepMorphism<F>> hom_basis(const LatticeRep<F>& m, const LatticeRep<F>& n) {
  std::vector<RepMorphism<F>> out;
  for (auto& comps : hom_basis_components(m, n)) out.push_back({m, n, std::move(comps)});
  return out;
}

template <Field F>
int hom_dim(const LatticeRep<F>& m, const LatticeRep<F>& n) {
  return static_cast<int>(hom_basis_components(m, n).size());
}

template <Field F>
bool is_morphism(const RepMorphism<F>& f) {
  const Lattice& l = f.source.lattice();
  for (std::size_t ci = 0; ci < l.covers().size(); ++ci) {
    const Cover c = l.covers()[ci];
    if (!(f.components[c.hi] * f.source.cover_map(static_cast<int>(ci)) ==
          f.target.cover_map(static_cast<int>(ci)) * f.components[c.lo])) {
      return false;
    }
  }
  return true;
}

/// A subrepresentation handed around with its embedding: column basis at
/// every element, in ambient coordinates.
template <Field F>
struct Subrep {
  LatticeRep<F> rep;
  std::vector<Matrix<F>> basis;
};

/// Restricts the ambient cover maps to the given pointwise subspaces, which
/// must be compatible.
template <Field F>
LatticeRep<F> restrict_to(const LatticeRep<F>& ambient, const std::vector<Matrix<F>>& basis) {
  const Lattice& l = ambient.lattice();
  std::vector<int> dims(l.size());
  for (std::size_t x = 0; x < l.size(); ++x) dims[x] = static_cast<int>(basis[x].cols());
  std::vector<Matrix<F>> maps;
  maps.reserve(l.covers().size());
  for (std::size_t ci = 0; ci < l.covers().size(); ++ci) {
    const Cover c = l.covers()[ci];
    const Matrix<F> image = ambient.cover_map(static_cast<int>(ci)) * basis[c.lo];
    auto coords = solve(basis[c.hi], image);
    if (!coords) throw verification_failure("subspaces are not stable under the cover maps");
    maps.push_back(std::move(*coords));
  }
  return LatticeRep<F>(ambient.lattice_ptr(), std::move(dims), std::move(maps), Validation::trusted);
}

template <Field F>
Subrep<F> kernel_subrep(const RepMorphism<F>& f) {
  const Lattice& l = f.source.lattice();
  std::vector<Matrix<F>> basis;
  for (std::size_t x = 0; x < l.size(); ++x) basis.push_back(nullspace(f.components[x]));
  return {restrict_to(f.source, basis), basis};
}

template <Field F>
Subrep<F> image_subrep(const RepMorphism<F>& f) {
  const Lattice& l = f.source.lattice();
  std::vector<Matrix<F>> basis;
  for (std::size_t x = 0; x < l.size(); ++x) basis.push_back(column_basis(f.components[x]));
  return {restrict_to(f.target, basis), basis};
}

/// Quotient of a representation by pointwise subspaces stable under the maps.
template <Field F>
LatticeRep<F> quotient_rep(const LatticeRep<F>& ambient, const std::vector<Matrix<F>>& sub) {
  const Lattice& l = ambient.lattice();
  std::vector<Quotient<F>> q;
  std::vector<int> dims(l.size());
  for (std::size_t x = 0; x < l.size(); ++x) {
    q.push_back(quotient_by(sub[x], static_cast<std::size_t>(ambient.dims()[x])));
    dims[x] = static_cast<int>(q.back().projection.rows());
  }
  std::vector<Matrix<F>> maps;
  for (std::size_t ci = 0; ci < l.covers().size(); ++ci) {
    const Cover c = l.covers()[ci];
    maps.push_back(q[c.hi].projection * ambient.cover_map(static_cast<int>(ci)) * q[c.lo].section);
  }
  return LatticeRep<F>(ambient.lattice_ptr(), std::move(dims), std::move(maps), Validation::trusted);
}

template <Field F>
LatticeRep<F> kernel(const RepMorphism<F>& f) {
  return kernel_subrep(f).rep;
}
template <Field F>
LatticeRep<F> image(const RepMorphism<F>& f) {
  return image_subrep(f).rep;
}
template <Field F>
LatticeRep<F> cokernel(const RepMorphism<F>& f) {
  return quotient_rep(f.target, image_subrep(f).basis);
}

/// The support of M when M has dimension 0 or 1 everywhere.
template <Field F>
std::optional<Bitset> thin_support(const LatticeRep<F>& m) {
  Bitset s(m.lattice().size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (m.dims()[x] > 1) return std::nullopt;
    if (m.dims()[x] == 1) s.set(x);
  }
  return s;
}

namespace detail {

template <Field F>
bool invertible_everywhere(const std::vector<Matrix<F>>& comps) {
  for (const auto& c : comps) {
    if (c.rows() != c.cols()) return false;
    if (c.rows() > 0 && !inverse(c)) return false;
  }
  return true;
}

}  // namespace detail

/// [lo, hi] with M isomorphic to M_[lo, hi], if any.
template <Field F>
std::optional<IntervalRef> find_interval_iso(const LatticeRep<F>& m) {
  const Lattice& l = m.lattice();
  auto support = thin_support(m);
  if (!support || support->none()) return std::nullopt;
  int lo = -1, hi = -1;
  for (int x : l.elements_of(*support)) {
    if ((*support - l.up(x)).none()) lo = x;
    if ((*support - l.down(x)).none()) hi = x;
  }
  if (lo < 0 || hi < 0 || l.interval_set(lo, hi) != *support) return std::nullopt;
  const LatticeRep<F> target = interval_module<F>(m.lattice_ptr(), {lo, hi});
  const auto basis = hom_basis_components(target, m);
  if (basis.size() != 1 || !detail::invertible_everywhere(basis.front())) return std::nullopt;
  return IntervalRef{lo, hi};
}

/// Isomorphism test by searching Hom(M, N) for an invertible element: each
/// basis element first, then a fixed sequence of pseudo-random combinations
/// (seeded, so reproducible). Exact whenever Hom(M, N) has dimension at most
/// one; otherwise a false negative needs every tried combination to hit the
/// determinant's zero set.
template <Field F>
bool is_isomorphic(const LatticeRep<F>& m, const LatticeRep<F>& n) {
  if (m.dims() != n.dims()) return false;
  if (m.is_zero()) return true;
  const auto basis = hom_basis_components(m, n);
  for (const auto& b : basis) {
    if (detail::invertible_everywhere(b)) return true;
  }
  if (basis.size() < 2) return false;
  std::mt19937 rng(20231);
  std::uniform_int_distribution<long> coeff(-997, 997);
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<Matrix<F>> comb = basis.front();
    for (std::size_t i = 1; i < basis.size(); ++i) {
      const F c(coeff(rng));
      for (std::size_t x = 0; x < comb.size(); ++x) comb[x] = comb[x] + basis[i][x].scaled(c);
    }
    if (detail::invertible_everywhere(comb)) return true;
  }
  return false;
}

template <Field F>
nlohmann::ordered_json matrix_to_json(const Matrix<F>& m) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

template <Field F>
nlohmann::ordered_json rep_to_json(const LatticeRep<F>& m) {
  const Lattice& l = m.lattice();
  nlohmann::ordered_json j;
  j["field"] = F::name();
  auto dims = nlohmann::ordered_json::object();
  for (std::size_t x = 0; x < l.size(); ++x) dims[l.label(static_cast<int>(x))] = m.dims()[x];
  j["dims"] = dims;
  auto maps = nlohmann::ordered_json::array();
  for (std::size_t ci = 0; ci < l.covers().size(); ++ci) {
    const Cover c = l.covers()[ci];
    if (m.dims()[c.lo] == 0 || m.dims()[c.hi] == 0) continue;
    nlohmann::ordered_json e;
    e["lo"] = l.label(c.lo);
    e["hi"] = l.label(c.hi);
    e["matrix"] = matrix_to_json(m.cover_map(static_cast<int>(ci)));
    maps.push_back(e);
  }
  j["maps"] = maps;
  return j;
}

}  // namespace serrelab
