#pragma once

// Bounded complexes of indecomposable projectives or injectives, minimal
// projective resolutions, the Nakayama functor, cohomology, and the Serre
// functor on stalk complexes.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "serrelab/antichain.hpp"
#include "serrelab/errors.hpp"
#include "serrelab/lattice.hpp"
#include "serrelab/matrix.hpp"
#include "serrelab/rep.hpp"

namespace serrelab {

enum class TermKind { projective, injective };

/// Term i sits in degree lowest_degree + i and is the direct sum of P_a (or
/// I_a) over its labels. differentials[i] maps term i to term i+1; entry
/// (r, s) is the scalar on the canonical map from label s to label r, which
/// exists only when label r <= label s in both cases.
template <Field F>
struct IndecComplex {
  TermKind kind = TermKind::projective;
  int lowest_degree = 0;
  std::vector<std::vector<int>> terms;
  std::vector<Matrix<F>> differentials;

  int highest_degree() const { return lowest_degree + static_cast<int>(terms.size()) - 1; }
  const std::vector<int>& term(int degree) const {
    static const std::vector<int> empty;
    const int i = degree - lowest_degree;
    if (i < 0 || i >= static_cast<int>(terms.size())) return empty;
    return terms[static_cast<std::size_t>(i)];
  }
};

template <Field F>
void validate_complex(const Lattice& l, const IndecComplex<F>& c) {
  if (c.differentials.size() + 1 != c.terms.size() && !(c.terms.empty() && c.differentials.empty())) {
    throw not_a_complex("need one differential between consecutive terms");
  }
  for (std::size_t i = 0; i < c.differentials.size(); ++i) {
    const Matrix<F>& d = c.differentials[i];
    const auto& src = c.terms[i];
    const auto& dst = c.terms[i + 1];
    if (d.rows() != dst.size() || d.cols() != src.size()) throw not_a_complex("differential has the wrong shape");
    for (std::size_t r = 0; r < d.rows(); ++r) {
      for (std::size_t s = 0; s < d.cols(); ++s) {
        if (!d(r, s).is_zero() && !l.leq(dst[r], src[s])) {
          throw not_a_complex("nonzero block between " + l.label(src[s]) + " and " + l.label(dst[r]) +
                              " where no morphism exists");
        }
      }
    }
    if (i + 1 < c.differentials.size() && !(c.differentials[i + 1] * d).is_zero()) {
      throw not_a_complex("d o d != 0 at degree " + std::to_string(c.lowest_degree + static_cast<int>(i)));
    }
  }
}

/// No invertible block between equal labels, i.e. the differentials land in
/// the radical.
template <Field F>
bool is_minimal(const IndecComplex<F>& c) {
  for (std::size_t i = 0; i < c.differentials.size(); ++i) {
    const Matrix<F>& d = c.differentials[i];
    for (std::size_t r = 0; r < d.rows(); ++r) {
      for (std::size_t s = 0; s < d.cols(); ++s) {
        if (!d(r, s).is_zero() && c.terms[i + 1][r] == c.terms[i][s]) return false;
      }
    }
  }
  return true;
}

namespace detail {

/// Lifts of a basis of top(R)_x = R_x / (images from lower covers).
template <Field F>
std::vector<std::pair<int, Matrix<F>>> top_generators(const LatticeRep<F>& r) {
  const Lattice& l = r.lattice();
  std::vector<std::pair<int, Matrix<F>>> gens;
  for (int x = 0; x < static_cast<int>(l.size()); ++x) {
    const std::size_t d = static_cast<std::size_t>(r.dim(x));
    if (d == 0) continue;
    Matrix<F> span(d, 0);
    for (int c : l.lower_covers(x)) span = span.hstack(r.cover_map(c));
    const Quotient<F> q = quotient_by(span, d);
    for (std::size_t k = 0; k < q.section.cols(); ++k) gens.emplace_back(x, q.section.column_at(k));
  }
  return gens;
}

}  // namespace detail

/// Minimal projective resolution, P^0 in degree 0 and P^k in degree -k.
template <Field F>
IndecComplex<F> projective_resolution(const LatticeRep<F>& m) {
  const Lattice& l = m.lattice();
  const std::size_t n = l.size();
  IndecComplex<F> out;
  out.kind = TermKind::projective;
  std::vector<std::vector<int>> terms;
  std::vector<Matrix<F>> diffs;  // diffs[k]: term k+1 -> term k (homological order)

  LatticeRep<F> current = m;
  std::vector<Matrix<F>> embedding;  // current_x -> previous ambient_x, empty at the first step
  std::vector<int> prev_labels;
  std::vector<std::vector<std::size_t>> prev_coords;  // ambient coordinate index per (x, generator)

  for (std::size_t step = 0; !current.is_zero(); ++step) {
    if (step > n + 1) throw verification_failure("projective resolution did not terminate");
    const auto gens = detail::top_generators(current);
    std::vector<int> labels;
    for (const auto& g : gens) labels.push_back(g.first);

    if (step > 0) {
      Matrix<F> d(prev_labels.size(), labels.size());
      for (std::size_t h = 0; h < gens.size(); ++h) {
        const int b = gens[h].first;
        const Matrix<F> amb = embedding[b] * gens[h].second;
        for (std::size_t g = 0; g < prev_labels.size(); ++g) {
          const std::size_t pos = prev_coords[b][g];
          if (pos != static_cast<std::size_t>(-1)) d(g, h) = amb(pos, 0);
        }
      }
      diffs.push_back(std::move(d));
    }
    terms.push_back(labels);

    // The cover map pi: sum of P_{label_g} -> current, and its kernel.
    std::vector<std::vector<std::size_t>> coords(n, std::vector<std::size_t>(gens.size(), static_cast<std::size_t>(-1)));
    std::vector<std::vector<std::optional<Matrix<F>>>> transports;
    for (const auto& g : gens) transports.push_back(current.transport_from(g.first));
    std::vector<Matrix<F>> pi(n);
    for (std::size_t x = 0; x < n; ++x) {
      Matrix<F> cols(static_cast<std::size_t>(current.dim(static_cast<int>(x))), 0);
      std::size_t count = 0;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (!l.leq(gens[g].first, static_cast<int>(x))) continue;
        coords[x][g] = count++;
        cols = cols.hstack(*transports[g][x] * gens[g].second);
      }
      if (rank(cols) != static_cast<std::size_t>(current.dim(static_cast<int>(x)))) {
        throw verification_failure("top generators do not generate");
      }
      pi[x] = std::move(cols);
    }
    std::vector<int> amb_dims(n);
    for (std::size_t x = 0; x < n; ++x) amb_dims[x] = static_cast<int>(pi[x].cols());
    std::vector<Matrix<F>> amb_maps;
    for (const Cover& c : l.covers()) {
      Matrix<F> inc(static_cast<std::size_t>(amb_dims[c.hi]), static_cast<std::size_t>(amb_dims[c.lo]));
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (coords[c.lo][g] != static_cast<std::size_t>(-1)) inc(coords[c.hi][g], coords[c.lo][g]) = F(1);
      }
      amb_maps.push_back(std::move(inc));
    }
    LatticeRep<F> ambient(m.lattice_ptr(), amb_dims, std::move(amb_maps), Validation::trusted);
    RepMorphism<F> p{ambient, current, std::move(pi)};
    Subrep<F> k = kernel_subrep(p);

    current = std::move(k.rep);
    embedding = std::move(k.basis);
    prev_labels = std::move(labels);
    prev_coords = std::move(coords);
  }

  // Reverse into cohomological order: degree -len ... 0.
  const int len = static_cast<int>(terms.size()) - 1;
  out.lowest_degree = terms.empty() ? 0 : -len;
  for (int k = len; k >= 0; --k) out.terms.push_back(terms[static_cast<std::size_t>(k)]);
  for (int k = len - 1; k >= 0; --k) out.differentials.push_back(diffs[static_cast<std::size_t>(k)]);
  return out;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Koszul-signed complex on subsets of the members, with labels given by
/// label_of(subset). Returns terms ordered by subset size, and the
/// differentials dropping (shrink) or adding (grow) one member.
template <Field F>
IndecComplex<F> koszul_complex(const std::vector<int>& members,
                               const std::function<int(const std::vector<std::size_t>&)>& label_of, bool shrink) {
  const std::size_t k = members.size();
  std::vector<std::vector<std::vector<std::size_t>>> levels;
  for (std::size_t s = 0; s <= k; ++s) levels.push_back(subsets_of_size(k, s));
  auto position = [&](const std::vector<std::size_t>& subset) {
    const auto& lv = levels[subset.size()];
    return static_cast<std::size_t>(std::find(lv.begin(), lv.end(), subset) - lv.begin());
  };
  IndecComplex<F> c;
  // Level order in the complex: shrink runs from size k down to 0, grow from 0 up to k.
  std::vector<std::size_t> sizes;
  for (std::size_t s = 0; s <= k; ++s) sizes.push_back(shrink ? k - s : s);
  for (std::size_t s : sizes) {
    std::vector<int> labels;
    for (const auto& sub : levels[s]) labels.push_back(label_of(sub));
    c.terms.push_back(std::move(labels));
  }
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    const auto& src = levels[sizes[i]];
    const auto& dst = levels[sizes[i + 1]];
    Matrix<F> d(dst.size(), src.size());
    if (shrink) {
      for (std::size_t s = 0; s < src.size(); ++s) {
        for (std::size_t j = 0; j < src[s].size(); ++j) {
          std::vector<std::size_t> smaller = src[s];
          smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(j));
          d(position(smaller), s) = (j % 2 == 0) ? F(1) : F(-1);
        }
      }
    } else {
      for (std::size_t s = 0; s < src.size(); ++s) {
        for (std::size_t e = 0; e < k; ++e) {
          if (std::find(src[s].begin(), src[s].end(), e) != src[s].end()) continue;
          std::vector<std::size_t> bigger = src[s];
          bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), e), e);
          const std::size_t j = static_cast<std::size_t>(std::find(bigger.begin(), bigger.end(), e) - bigger.begin());
          d(position(bigger), s) = (j % 2 == 0) ? F(1) : F(-1);
        }
      }
    }
    c.differentials.push_back(std::move(d));
  }
  return c;
}

}  // namespace detail

/// P^{-i} = sum over |C'| = i of P_{join C'}, with the empty join equal to alpha.
template <Field F>
IndecComplex<F> antichain_resolution(const Lattice& l, const Antichain& c) {
  if (c.mode != AntichainMode::over) throw invalid_input("expected an antichain over its base");
  auto label_of = [&](const std::vector<std::size_t>& sub) {
    int j = c.base;
    for (std::size_t i : sub) j = l.join(j, c.members[i]);
    return j;
  };
  IndecComplex<F> out = detail::koszul_complex<F>(c.members, label_of, true);
  out.kind = TermKind::projective;
  out.lowest_degree = -static_cast<int>(c.members.size());
  validate_complex(l, out);
  return out;
}

/// I^i = sum over |D'| = i of I_{meet D'}, with the empty meet equal to beta.
template <Field F>
IndecComplex<F> antichain_coresolution(const Lattice& l, const Antichain& d) {
  if (d.mode != AntichainMode::under) throw invalid_input("expected an antichain under its base");
  auto label_of = [&](const std::vector<std::size_t>& sub) {
    int m = d.base;
    for (std::size_t i : sub) m = l.meet(m, d.members[i]);
    return m;
  };
  IndecComplex<F> out = detail::koszul_complex<F>(d.members, label_of, false);
  out.kind = TermKind::injective;
  out.lowest_degree = 0;
  validate_complex(l, out);
  return out;
}

/// P_a goes to I_a, and the canonical map P_b -> P_a to the canonical
/// projection I_b -> I_a, so the scalar data is unchanged.
template <Field F>
IndecComplex<F> nakayama(const IndecComplex<F>& c) {
  if (c.kind != TermKind::projective) throw invalid_input("the Nakayama functor expects a complex of projectives");
  IndecComplex<F> out = c;
  out.kind = TermKind::injective;
  return out;
}

/// A complex of representations; differentials[i] has one component per element.
template <Field F>
struct RepComplex {
  int lowest_degree = 0;
  std::vector<LatticeRep<F>> terms;
  std::vector<std::vector<Matrix<F>>> differentials;
};

/// Evaluates a complex of projectives or injectives as representations.
template <Field F>
RepComplex<F> realize(const LatticePtr& l, const IndecComplex<F>& c) {
  const std::size_t n = l->size();
  const bool proj = c.kind == TermKind::projective;
  auto supported = [&](int label, int x) { return proj ? l->leq(label, x) : l->leq(x, label); };
  // coords[term][x]: indices of summands alive at x.
  std::vector<std::vector<std::vector<std::size_t>>> coords(c.terms.size(), std::vector<std::vector<std::size_t>>(n));
  RepComplex<F> out;
  out.lowest_degree = c.lowest_degree;
  for (std::size_t t = 0; t < c.terms.size(); ++t) {
    std::vector<int> dims(n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t g = 0; g < c.terms[t].size(); ++g) {
        if (supported(c.terms[t][g], static_cast<int>(x))) coords[t][x].push_back(g);
      }
      dims[x] = static_cast<int>(coords[t][x].size());
    }
    std::vector<Matrix<F>> maps;
    for (const Cover& cv : l->covers()) {
      const auto& src = coords[t][cv.lo];
      const auto& dst = coords[t][cv.hi];
      Matrix<F> m(dst.size(), src.size());
      for (std::size_t i = 0; i < dst.size(); ++i) {
        for (std::size_t j = 0; j < src.size(); ++j) {
          if (dst[i] == src[j]) m(i, j) = F(1);
        }
      }
      maps.push_back(std::move(m));
    }
    out.terms.emplace_back(l, std::move(dims), std::move(maps), Validation::trusted);
  }
  for (std::size_t t = 0; t + 1 < c.terms.size(); ++t) {
    std::vector<Matrix<F>> comps;
    for (std::size_t x = 0; x < n; ++x) {
      comps.push_back(c.differentials[t].select_rows(coords[t + 1][x]).select_columns(coords[t][x]));
    }
    out.differentials.push_back(std::move(comps));
  }
  return out;
}

/// H^d for every degree of the complex (zero representations included).
template <Field F>
std::map<int, LatticeRep<F>> cohomology(const RepComplex<F>& c) {
  std::map<int, LatticeRep<F>> out;
  if (c.terms.empty()) return out;
  const LatticePtr& lp = c.terms.front().lattice_ptr();
  const Lattice& l = *lp;
  const std::size_t n = l.size();
  for (std::size_t i = 0; i + 1 < c.differentials.size(); ++i) {
    for (std::size_t x = 0; x < n; ++x) {
      if (!(c.differentials[i + 1][x] * c.differentials[i][x]).is_zero()) {
        throw not_a_complex("d o d != 0 at degree " + std::to_string(c.lowest_degree + static_cast<int>(i)));
      }
    }
  }
  for (std::size_t t = 0; t < c.terms.size(); ++t) {
    const LatticeRep<F>& term = c.terms[t];
    std::vector<Matrix<F>> z(n), q_proj(n), q_sect(n);
    std::vector<int> dims(n);
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t d = static_cast<std::size_t>(term.dims()[x]);
      z[x] = t < c.differentials.size() ? nullspace(c.differentials[t][x]) : Matrix<F>::identity(d);
      Matrix<F> b_coords(z[x].cols(), 0);
      if (t > 0) {
        const Matrix<F>& prev = c.differentials[t - 1][x];
        auto y = solve(z[x], prev);
        if (!y) throw not_a_complex("image not contained in kernel");
        b_coords = *y;
      }
      Quotient<F> q = quotient_by(b_coords, z[x].cols());
      dims[x] = static_cast<int>(q.projection.rows());
      q_proj[x] = std::move(q.projection);
      q_sect[x] = std::move(q.section);
    }
    std::vector<Matrix<F>> maps;
    for (std::size_t ci = 0; ci < l.covers().size(); ++ci) {
      const Cover cv = l.covers()[ci];
      const Matrix<F> pushed = term.cover_map(static_cast<int>(ci)) * z[cv.lo] * q_sect[cv.lo];
      auto coords = solve(z[cv.hi], pushed);
      if (!coords) throw not_a_complex("cover map does not preserve cycles");
      maps.push_back(q_proj[cv.hi] * *coords);
    }
    out.emplace(c.lowest_degree + static_cast<int>(t), LatticeRep<F>(lp, std::move(dims), std::move(maps), Validation::trusted));
  }
  return out;
}

/// The Serre image is a shifted module: cohomology only in degree -shift.
template <Field F>
struct StalkResult {
  int shift;
  LatticeRep<F> module;
  std::optional<IntervalRef> interval;  // set when the module is an interval module
};

template <Field F>
struct GeneralComplexResult {
  std::map<int, LatticeRep<F>> cohomology;
};

template <Field F>
using SerreResult = std::variant<StalkResult<F>, GeneralComplexResult<F>>;

template <Field F>
std::map<int, LatticeRep<F>> serre_cohomology(const LatticeRep<F>& m) {
  const IndecComplex<F> res = projective_resolution(m);
  const IndecComplex<F> inj = nakayama(res);
  return cohomology(realize(m.lattice_ptr(), inj));
}

template <Field F>
SerreResult<F> serre(const LatticeRep<F>& m) {
  auto h = serre_cohomology(m);
  std::optional<int> degree;
  bool several = false;
  for (const auto& [d, rep] : h) {
    if (rep.is_zero()) continue;
    if (degree) several = true;
    degree = d;
  }
  if (!degree || several) {
    std::map<int, LatticeRep<F>> nonzero;
    for (auto& [d, rep] : h) {
      if (!rep.is_zero()) nonzero.emplace(d, std::move(rep));
    }
    return GeneralComplexResult<F>{std::move(nonzero)};
  }
  LatticeRep<F> mod = h.at(*degree);
  auto iv = find_interval_iso(mod);
  return StalkResult<F>{-*degree, std::move(mod), iv};
}

/// Sum over degrees of (-1)^d times the dimension vector of H^d.
template <Field F>
std::vector<long long> euler_characteristic(const std::map<int, LatticeRep<F>>& h, std::size_t n) {
  std::vector<long long> v(n, 0);
  for (const auto& [d, rep] : h) {
    const long long sign = (d % 2 == 0) ? 1 : -1;
    for (std::size_t x = 0; x < n; ++x) v[x] += sign * rep.dims()[x];
  }
  return v;
}

template <Field F>
struct OrbitStep {
  int shift;                            // shift of this single application
  std::vector<int> dims;                // dimension vector of the stalk module
  std::optional<IntervalRef> interval;  // set for interval modules
  LatticeRep<F> module;
};

template <Field F>
struct SerreOrbit {
  int start = 0;  // element a of the starting injective I_a
  std::vector<OrbitStep<F>> steps;
  std::optional<int> period;       // first return to I_a, in steps
  int total_shift = 0;             // summed over the steps taken
  std::optional<int> first_projective;  // b with I_a ~> P_b first (step count in projective_step)
  std::optional<int> projective_step;
  bool stalk_throughout = true;    // false when a non-stalk complex appeared
  std::map<int, LatticeRep<F>> non_stalk;  // cohomology of that complex, if any
};

inline int default_max_steps(const Lattice& l) { return 4 * (static_cast<int>(l.size()) + 10); }

/// Iterates the Serre functor starting from I_a until I_a recurs, a
/// non-stalk complex appears, or max_steps applications have been made.
template <Field F>
SerreOrbit<F> serre_orbit(const LatticePtr& l, int a, int max_steps) {
  SerreOrbit<F> orbit;
  orbit.start = a;
  const IntervalRef start{l->bottom(), a};
  auto check_projective = [&](const std::optional<IntervalRef>& iv, int step) {
    if (!orbit.first_projective && iv && iv->hi == l->top()) {
      orbit.first_projective = iv->lo;
      orbit.projective_step = step;
    }
  };
  LatticeRep<F> current = injective<F>(l, a);
  check_projective(start, 0);
  for (int step = 1; step <= max_steps; ++step) {
    SerreResult<F> r = serre(current);
    if (auto* g = std::get_if<GeneralComplexResult<F>>(&r)) {
      orbit.stalk_throughout = false;
      orbit.non_stalk = std::move(g->cohomology);
      return orbit;
    }
    auto& s = std::get<StalkResult<F>>(r);
    orbit.total_shift += s.shift;
    orbit.steps.push_back({s.shift, s.module.dims(), s.interval, s.module});
    check_projective(s.interval, step);
    if (s.interval && *s.interval == start) {
      orbit.period = step;
      return orbit;
    }
    current = std::move(s.module);
  }
  return orbit;
}

/// Serre orbits of every injective. When all of them return, the common
/// period is the lcm of the individual ones and each orbit is scaled up to
/// it; the pair (shift, period) is reported if the scaled shifts agree.
template <Field F>
struct FcySummary {
  std::vector<SerreOrbit<F>> orbits;
  bool all_periodic = true;
  int period = 0;
  std::optional<int> shift;
  std::vector<int> failing;  // injectives that did not return
};

template <Field F>
FcySummary<F> fcy_summary(const LatticePtr& l, int max_steps) {
  FcySummary<F> out;
  long long lcm = 1;
  for (int a = 0; a < static_cast<int>(l->size()); ++a) {
    out.orbits.push_back(serre_orbit<F>(l, a, max_steps));
    const auto& o = out.orbits.back();
    if (!o.period) {
      out.all_periodic = false;
      out.failing.push_back(a);
    } else {
      lcm = std::lcm(lcm, static_cast<long long>(*o.period));
    }
  }
  if (!out.all_periodic) return out;
  out.period = static_cast<int>(lcm);
  std::optional<long long> common;
  bool uniform = true;
  for (const auto& o : out.orbits) {
    const long long s = static_cast<long long>(o.total_shift) * (lcm / *o.period);
    if (common && *common != s) uniform = false;
    common = s;
  }
  if (uniform && common) out.shift = static_cast<int>(*common);
  return out;
}

}  // namespace serrelab
