#pragma once

// Cartan and Coxeter matrices of a finite poset, the sign-tracking Coxeter
// iteration from injective dimension vectors, and its comparison with the
// derived Serre orbits.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "serrelab/derived.hpp"
#include "serrelab/errors.hpp"
#include "serrelab/lattice.hpp"

namespace serrelab {

using IntVector = std::vector<long long>;

namespace detail {

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}
inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

}  // namespace detail

/// Square integer matrix with overflow-checked products.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}

  std::size_t size() const { return n_; }
  long long& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  long long operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }
  IntMatrix negated() const {
    IntMatrix t = *this;
    for (auto& x : t.a_) x = -x;
    return t;
  }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      for (std::size_t k = 0; k < a.n_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) {
          if (b(k, j) != 0) c(i, j) = detail::checked_add(c(i, j), detail::checked_mul(a(i, k), b(k, j)));
        }
      }
    }
    return c;
  }
  IntVector apply(const IntVector& v) const {
    IntVector out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if ((*this)(i, j) != 0 && v[j] != 0) out[i] = detail::checked_add(out[i], detail::checked_mul((*this)(i, j), v[j]));
      }
    }
    return out;
  }
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::vector<std::vector<long long>> rows() const {
    std::vector<std::vector<long long>> r(n_, std::vector<long long>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
    }
    return r;
  }

 private:
  std::size_t n_ = 0;
  std::vector<long long> a_;
};

inline IntVector projective_class(const Poset& p, int a) {
  IntVector v(p.size(), 0);
  for (std::size_t x = 0; x < p.size(); ++x) v[x] = p.leq(a, static_cast<int>(x)) ? 1 : 0;
  return v;
}
inline IntVector injective_class(const Poset& p, int a) {
  IntVector v(p.size(), 0);
  for (std::size_t x = 0; x < p.size(); ++x) v[x] = p.leq(static_cast<int>(x), a) ? 1 : 0;
  return v;
}

/// Zeta matrix of the order, Z(i, j) = 1 iff i <= j.
inline IntMatrix zeta_matrix(const Poset& p) {
  IntMatrix z(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) z(i, j) = p.leq(static_cast<int>(i), static_cast<int>(j)) ? 1 : 0;
  }
  return z;
}

/// Inverse of the zeta matrix by back-substitution along the linear
/// extension: mu(i, i) = 1 and mu(i, j) = -sum over i <= k < j of mu(i, k).
inline IntMatrix mobius_matrix(const Poset& p) {
  const std::size_t n = p.size();
  IntMatrix mu(n);
  const auto& order = p.linear_extension();
  for (int i : order) {
    mu(i, i) = 1;
    for (int j : order) {
      if (j == i || !p.lt(i, j)) continue;
      long long s = 0;
      for (int k : order) {
        if (k == j) break;
        if (p.leq(i, k) && p.lt(k, j)) s = detail::checked_add(s, mu(i, k));
      }
      mu(i, j) = -s;
    }
  }
  return mu;
}

struct CartanData {
  IntMatrix omega;
  IntMatrix omega_inverse;
  bool omega_is_zeta_transpose = false;  // omega(i, j) = 1 iff j <= i
};

inline IntMatrix coxeter_from(const CartanData& c) { return (c.omega.transpose() * c.omega_inverse).negated(); }

inline bool sends_projectives_to_minus_injectives(const Poset& p, const IntMatrix& cox) {
  for (int a = 0; a < static_cast<int>(p.size()); ++a) {
    IntVector w = cox.apply(projective_class(p, a));
    for (auto& x : w) x = -x;
    if (w != injective_class(p, a)) return false;
  }
  return true;
}

/// Chooses the orientation of the Cartan matrix for which the Coxeter
/// matrix -omega^T omega^{-1} sends [P_a] to -[I_a] for every a.
inline CartanData cartan_data(const Poset& p) {
  const IntMatrix z = zeta_matrix(p);
  const IntMatrix mu = mobius_matrix(p);
  if (!(z * mu == IntMatrix::identity(p.size()))) throw verification_failure("Mobius matrix is not the inverse");
  const CartanData plain{z, mu, false};
  const CartanData flipped{z.transpose(), mu.transpose(), true};
  const bool ok_plain = sends_projectives_to_minus_injectives(p, coxeter_from(plain));
  const bool ok_flipped = sends_projectives_to_minus_injectives(p, coxeter_from(flipped));
  if (z == z.transpose()) {
    if (!ok_plain) throw verification_failure("Coxeter matrix fails on projectives");
    return plain;
  }
  if (ok_plain == ok_flipped) {
    throw verification_failure(ok_plain ? "both Cartan orientations pass the projective test"
                                        : "neither Cartan orientation passes the projective test");
  }
  return ok_plain ? plain : flipped;
}

inline IntMatrix cartan_matrix(const Poset& p) { return cartan_data(p).omega; }
inline IntMatrix coxeter_matrix(const Poset& p) { return coxeter_from(cartan_data(p)); }

/// Sorted cycle lengths of a permutation, fixed points included.
inline std::vector<int> cycle_type(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<int> lengths;
  for (std::size_t a = 0; a < perm.size(); ++a) {
    if (seen[a]) continue;
    int len = 0;
    for (std::size_t x = a; !seen[x]; x = static_cast<std::size_t>(perm[x])) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

enum class TrajectoryStatus { reached_projective, sign_violation, max_steps_exceeded, overflow };

inline const char* to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::reached_projective: return "reached_projective";
    case TrajectoryStatus::sign_violation: return "sign_violation";
    case TrajectoryStatus::max_steps_exceeded: return "max_steps_exceeded";
    case TrajectoryStatus::overflow: return "overflow";
  }
  return "unknown";
}

/// Iterates v <- C v from [I_a] until v = +-[P_b].
struct Trajectory {
  int start = 0;
  std::vector<IntVector> vectors;  // vectors[k] = C^k [I_start]
  TrajectoryStatus status = TrajectoryStatus::max_steps_exceeded;
  int steps = -1;      // n_a, when a projective was reached
  int sign = 0;        // +1 or -1 on the projective class
  int target = -1;     // pi(a)
  int failed_at = -1;  // step of the offending vector
};

struct CombinatorialReport {
  bool serre_formal = false;
  bool permutation_is_bijection = false;
  std::vector<int> permutation;  // pi(a), -1 when undefined
  std::vector<Trajectory> trajectories;
  std::vector<int> cycle_lengths;  // sorted, fixed points included
  long long period = 0;            // lcm of the cycle lengths
  /// True when some pi(a) is only reached with sign -1, so requiring +[P]
  /// instead of +-[P] would change the verdict.
  bool strict_reading_differs = false;
  std::string failure;
};

inline int weak_sign(const IntVector& v) {
  bool pos = false, neg = false;
  for (long long x : v) {
    if (x > 0) pos = true;
    if (x < 0) neg = true;
  }
  if (pos && neg) return 0;
  return neg ? -1 : 1;
}

inline CombinatorialReport combinatorial_serre_check(const Poset& p, int max_steps) {
  const std::size_t n = p.size();
  const IntMatrix cox = coxeter_matrix(p);
  std::map<IntVector, int> projectives;
  for (int b = 0; b < static_cast<int>(n); ++b) projectives.emplace(projective_class(p, b), b);

  CombinatorialReport rep;
  rep.permutation.assign(n, -1);
  bool all_reached = true;
  for (int a = 0; a < static_cast<int>(n); ++a) {
    Trajectory t;
    t.start = a;
    IntVector v = injective_class(p, a);
    for (int k = 0;; ++k) {
      if (std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; })) {
        throw verification_failure("Coxeter trajectory vanished");
      }
      t.vectors.push_back(v);
      const int s = weak_sign(v);
      if (s == 0) {
        t.status = TrajectoryStatus::sign_violation;
        t.failed_at = k;
        break;
      }
      IntVector abs = v;
      if (s < 0) {
        for (auto& x : abs) x = -x;
      }
      if (auto it = projectives.find(abs); it != projectives.end()) {
        t.status = TrajectoryStatus::reached_projective;
        t.steps = k;
        t.sign = s;
        t.target = it->second;
        break;
      }
      if (k == max_steps) {
        t.status = TrajectoryStatus::max_steps_exceeded;
        t.failed_at = k;
        break;
      }
      try {
        v = cox.apply(v);
      } catch (const std::overflow_error&) {
        t.status = TrajectoryStatus::overflow;
        t.failed_at = k + 1;
        break;
      }
    }
    if (t.status == TrajectoryStatus::reached_projective) {
      rep.permutation[a] = t.target;
      if (t.sign < 0) rep.strict_reading_differs = true;
    } else {
      all_reached = false;
      if (rep.failure.empty()) {
        rep.failure = std::string(to_string(t.status)) + " from I(" + p.label(a) + ") at step " + std::to_string(t.failed_at);
      }
    }
    rep.trajectories.push_back(std::move(t));
  }
  if (all_reached) {
    std::vector<int> sorted = rep.permutation;
    std::sort(sorted.begin(), sorted.end());
    rep.permutation_is_bijection = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    if (!rep.permutation_is_bijection) rep.failure = "pi is not a bijection";
  }
  rep.serre_formal = all_reached && rep.permutation_is_bijection;
  if (!rep.serre_formal) rep.strict_reading_differs = false;
  if (rep.serre_formal) {
    rep.cycle_lengths = cycle_type(rep.permutation);
    rep.period = 1;
    for (int c : rep.cycle_lengths) rep.period = std::lcm(rep.period, static_cast<long long>(c));
  }
  return rep;
}

/// Cycle notation with labels, fixed points omitted; "()" for the identity.
inline std::string cycle_notation(const Poset& p, const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::string out;
  for (std::size_t a = 0; a < perm.size(); ++a) {
    if (seen[a] || perm[a] < 0 || perm[a] == static_cast<int>(a)) {
      seen[a] = true;
      continue;
    }
    std::string cyc = "(";
    int x = static_cast<int>(a);
    bool first = true;
    while (x >= 0 && !seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      if (!first) cyc += " ";
      cyc += p.label(x);
      first = false;
      x = perm[static_cast<std::size_t>(x)];
    }
    out += cyc + ")";
  }
  return out.empty() ? "()" : out;
}

struct Disagreement {
  int element;
  int step;
  std::string what;
};

struct CrossCheckReport {
  bool agree = false;
  CombinatorialReport combinatorial;
  std::vector<int> derived_permutation;  // -1 where the derived orbit met no projective
  std::vector<Disagreement> disagreements;
};

/// Compares pi and the trajectory vectors against the derived orbits:
/// C^k [I_a] must equal +- the dimension vector of the k-th stalk.
template <Field F>
CrossCheckReport cross_check(const LatticePtr& l, int max_steps) {
  CrossCheckReport rep;
  rep.combinatorial = combinatorial_serre_check(*l, max_steps);
  const std::size_t n = l->size();
  rep.derived_permutation.assign(n, -1);
  for (int a = 0; a < static_cast<int>(n); ++a) {
    const SerreOrbit<F> orbit = serre_orbit<F>(l, a, max_steps);
    if (orbit.first_projective) rep.derived_permutation[a] = *orbit.first_projective;
    const Trajectory& t = rep.combinatorial.trajectories[a];
    const std::size_t upto = std::min(t.vectors.size(), orbit.steps.size() + 1);
    for (std::size_t k = 0; k < upto; ++k) {
      const std::vector<int> dims = k == 0 ? injective<F>(l, a).dims() : orbit.steps[k - 1].dims;
      IntVector d(dims.begin(), dims.end());
      IntVector neg = d;
      for (auto& x : neg) x = -x;
      if (t.vectors[k] != d && t.vectors[k] != neg) {
        rep.disagreements.push_back({a, static_cast<int>(k), "trajectory vector differs from the stalk dimension vector"});
        break;
      }
    }
    if (t.status == TrajectoryStatus::reached_projective &&
        (rep.derived_permutation[a] != t.target || orbit.projective_step != t.steps)) {
      rep.disagreements.push_back({a, t.steps, "permutation differs"});
    }
    if (t.status != TrajectoryStatus::reached_projective && orbit.first_projective) {
      rep.disagreements.push_back({a, t.failed_at, "derived orbit reaches a projective but the Coxeter iteration does not"});
    }
  }
  rep.agree = rep.disagreements.empty();
  return rep;
}

}  // namespace serrelab
