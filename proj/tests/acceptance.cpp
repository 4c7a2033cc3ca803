// Acceptance suite: one PASS or FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "serrelab/antichain.hpp"
#include "serrelab/classify.hpp"
#include "serrelab/coxeter.hpp"
#include "serrelab/derived.hpp"
#include "serrelab/generators.hpp"
#include "serrelab/geom.hpp"
#include "serrelab/lattice_io.hpp"
#include "serrelab/typea.hpp"

using namespace serrelab;

namespace {

using Clock = std::chrono::steady_clock;

LatticePtr fixture(const std::string& name) {
  return std::make_shared<const Lattice>(load_lattice(std::string(SERRELAB_FIXTURE_DIR) + "/" + name));
}

LatticePtr share(Lattice l) { return std::make_shared<const Lattice>(std::move(l)); }

/// Empty when fine, otherwise the first reason for failure.
using Check = std::function<std::string()>;

int failures = 0;

void criterion(int id, const std::string& what, double limit_seconds, const Check& check) {
  const auto t0 = Clock::now();
  std::string why;
  try {
    why = check();
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (why.empty() && limit_seconds > 0 && secs > limit_seconds) {
    why = "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_seconds) + " s";
  }
  if (!why.empty()) ++failures;
  std::printf("%s criterion %d: %s (%.2f s)%s%s\n", why.empty() ? "PASS" : "FAIL", id, what.c_str(), secs,
              why.empty() ? "" : " -- ", why.c_str());
  std::fflush(stdout);
}

/// S^steps I_a, one application at a time, must be I_a shifted by shift.
template <Field F>
std::string power_check(const LatticePtr& l, int a, int steps, int shift) {
  LatticeRep<F> cur = injective<F>(l, a);
  int total = 0;
  for (int s = 0; s < steps; ++s) {
    auto r = serre(cur);
    auto* st = std::get_if<StalkResult<F>>(&r);
    if (st == nullptr) return "S^" + std::to_string(s + 1) + " I(" + l->label(a) + ") is not a stalk";
    total += st->shift;
    cur = std::move(st->module);
  }
  if (!is_isomorphic(cur, injective<F>(l, a))) return "S^" + std::to_string(steps) + " I(" + l->label(a) + ") is not I(" + l->label(a) + ")";
  if (total != shift) return "I(" + l->label(a) + ") shifted by " + std::to_string(total) + ", expected " + std::to_string(shift);
  return "";
}

template <Field F>
std::string power_check_all(const LatticePtr& l, int steps, int shift) {
  for (int a = 0; a < static_cast<int>(l->size()); ++a) {
    if (auto why = power_check<F>(l, a, steps, shift); !why.empty()) return why;
  }
  return "";
}

int label(const Lattice& l, const char* s) {
  const int x = l.index_of(s);
  if (x < 0) throw invalid_input(std::string("missing label ") + s);
  return x;
}

/// Least upper bound of the set by scanning all elements.
int scan_join(const Lattice& l, const std::vector<int>& xs, int base) {
  int best = -1;
  for (int y = 0; y < static_cast<int>(l.size()); ++y) {
    bool above = l.leq(base, y);
    for (int x : xs) above = above && l.leq(x, y);
    if (above && (best < 0 || l.leq(y, best))) best = y;
  }
  return best;
}

}  // namespace

int main() {
  criterion(1, "nine-element lattice: pi = (1 9)(5 7) and the derived orbit of I(1)", 1.0, [] {
    const auto l = fixture("appendix9.json");
    const auto rep = combinatorial_serre_check(*l, default_max_steps(*l));
    if (!rep.serre_formal) return "not combinatorially Serre formal: " + rep.failure;
    const std::vector<std::pair<const char*, const char*>> table{{"1", "9"}, {"2", "2"}, {"3", "3"}, {"4", "4"}, {"5", "7"},
                                                                 {"6", "6"}, {"7", "5"}, {"8", "8"}, {"9", "1"}};
    for (auto [a, b] : table) {
      if (rep.permutation[label(*l, a)] != label(*l, b)) return std::string("pi(") + a + ") is not " + b;
    }
    if (cycle_notation(*l, rep.permutation) != "(1 9)(5 7)") return "cycle notation " + cycle_notation(*l, rep.permutation);
    const auto orbit = serre_orbit<Rational>(l, label(*l, "1"), 3);
    if (orbit.steps.size() < 3) return std::string("orbit stopped early");
    std::vector<int> dims(9, 0);
    for (const char* x : {"4", "5", "7"}) dims[label(*l, x)] = 1;
    if (orbit.steps[0].dims != dims || orbit.steps[0].shift != 2) return std::string("first step is not the expected stalk in degree -2");
    const IntervalRef p9{label(*l, "9"), l->top()}, i9{l->bottom(), label(*l, "9")};
    if (orbit.steps[1].interval != p9 || orbit.steps[1].shift != 2) return std::string("second step is not P(9)[2]");
    if (orbit.steps[2].interval != i9 || orbit.steps[2].shift != 0) return std::string("third step is not I(9)");
    return std::string();
  });

  criterion(2, "every orientation of A2 and A3: S^(2h+2) I = I[2N] on all injectives", 120.0, [] {
    for (int n : {2, 3}) {
      for (const auto& o : typea::all_orientations(n)) {
        const typea::TypeA t(typea::QuiverA::make(n, o));
        const int h = n + 1, big_n = t.size();
        if (auto why = power_check_all<Rational>(t.tors_lattice(), 2 * h + 2, 2 * big_n); !why.empty()) return "A" + std::to_string(n) + " " + o + ": " + why;
      }
    }
    return std::string();
  });

  criterion(3, "A1: S^3 I = I[1] on the 2-chain", 1.0, [] {
    const typea::TypeA t(typea::QuiverA::linear(1));
    if (!is_isomorphic(*t.tors_lattice(), chain_lattice(2))) return std::string("tors(A1) is not the 2-chain");
    return power_check_all<Rational>(share(chain_lattice(2)), 3, 1);
  });

  criterion(4, "type I: I(4) is (4, 5) and I(3) is (6, 8)", 0, [] {
    if (auto why = power_check_all<Rational>(gen_type_i(4), 5, 4); !why.empty()) return "I(4): " + why;
    if (!is_isomorphic(*gen_type_i(3), *fixture("pentagon.json"))) return std::string("I(3) is not the pentagon");
    if (auto why = power_check_all<Rational>(gen_type_i(3), 8, 6); !why.empty()) return "I(3): " + why;
    return std::string();
  });

  criterion(5, "mutable intervals, cluster triples, trees and quadrangulations: 12 at n=2, 55 at n=3", 0, [] {
    for (auto [n, expected] : {std::pair{2, 12}, std::pair{3, 55}}) {
      const typea::TypeA t(typea::QuiverA::linear(n));
      const std::vector<std::size_t> counts{t.mutable_intervals().size(), t.cluster_triples().size(),
                                            geom::enumerate_trees(n).size(), geom::enumerate_quads(n).size()};
      for (std::size_t c : counts) {
        if (static_cast<int>(c) != expected) return "n=" + std::to_string(n) + ": count " + std::to_string(c) + ", expected " + std::to_string(expected);
      }
    }
    return std::string();
  });

  criterion(6, "the Serre functor on all 55 interval modules of each A3 orientation", 300.0, [] {
    for (const auto& o : typea::all_orientations(3)) {
      const typea::TypeA t(typea::QuiverA::make(3, o));
      if (t.mutable_intervals().size() != 55) return o + ": not 55 mutable intervals";
      const auto f = typea::categorical_serre_failures<Rational>(t);
      if (!f.empty()) return o + ": " + f.front();
    }
    return std::string();
  });

  criterion(7, "augmented intervals give interval mutations and rotate under S", 0, [] {
    for (int n : {2, 3}) {
      for (const auto& o : typea::all_orientations(n)) {
        const typea::TypeA t(typea::QuiverA::make(n, o));
        const auto muts = t.interval_mutations();
        const std::size_t m = t.mutable_intervals().size();
        if (3 * muts.size() != static_cast<std::size_t>(n) * m) return o + ": " + std::to_string(muts.size()) + " augmented intervals";
        for (const auto& x : muts) {
          if (!t.is_mutable(x.a) || !t.is_mutable(x.b) || !t.is_mutable(x.i)) return o + ": an interval of a mutation is not mutable";
          const auto db = t.members(x.b), da = t.members(x.a), di = t.members(x.i);
          if ((db & da).any() || (db | da) != di) return o + ": I is not the disjoint union of A and B";
          if (x.b.hi != x.i.hi || x.a.lo != x.i.lo) return o + ": max B or min A differ from I";
        }
        const auto rec = typea::rotation_check(t);
        if (!rec.violations.empty()) return o + ": " + rec.violations.front();
        if (static_cast<std::size_t>(rec.case_one + rec.case_two) != muts.size()) return o + ": unclassified rotation cases";
      }
    }
    return std::string();
  });

  criterion(8, "Serre image of every boolean antichain module on the fixtures", 0, [] {
    int checked = 0;
    for (const char* name : {"appendix9.json", "pentagon.json", "b2.json", "distributive5.json", "a3_linear_tors.json",
                             "type_i_4.json", "type_i_5.json", "type_i_6.json"}) {
      const auto l = fixture(name);
      if (l->size() > 20) continue;
      std::string why;
      for (int alpha = 0; alpha < static_cast<int>(l->size()) && why.empty(); ++alpha) {
        for_each_antichain(*l, alpha, AntichainMode::over, [&](const Antichain& c) {
          if (!why.empty() || !is_boolean_antichain(*l, c)) return;
          const int beta = scan_join(*l, c.members, alpha);
          std::vector<int> d;
          for (std::size_t skip = 0; skip < c.members.size(); ++skip) {
            std::vector<int> rest;
            for (std::size_t i = 0; i < c.members.size(); ++i) {
              if (i != skip) rest.push_back(c.members[i]);
            }
            d.push_back(scan_join(*l, rest, alpha));
          }
          std::vector<int> dims(l->size(), 0);
          for (int y = 0; y < static_cast<int>(l->size()); ++y) {
            bool in = l->leq(y, beta);
            for (int x : d) in = in && !l->leq(y, x);
            dims[y] = in ? 1 : 0;
          }
          auto r = serre(antichain_module<Rational>(l, c));
          auto* st = std::get_if<StalkResult<Rational>>(&r);
          const std::string where = std::string(name) + " over " + l->label(alpha);
          if (st == nullptr) {
            why = where + ": not a stalk";
          } else if (st->shift != static_cast<int>(c.members.size())) {
            why = where + ": shift " + std::to_string(st->shift);
          } else if (st->module.dims() != dims) {
            why = where + ": wrong support";
          } else if (!is_isomorphic(st->module, dual_antichain_module<Rational>(l, antichain_under(*l, d, beta)))) {
            why = where + ": not the dual antichain module";
          }
          ++checked;
        });
      }
      if (!why.empty()) return why;
    }
    return checked > 0 ? std::string() : std::string("no boolean antichains found");
  });

  criterion(9, "chain products C_a x C_b pass, the 5-element distributive non-divisor fails", 0, [] {
    for (int a = 1; a <= 4; ++a) {
      for (int b = 1; b <= 4; ++b) {
        const auto l = gen_chain_product(a, b);
        const auto rep = combinatorial_serre_check(*l, default_max_steps(*l));
        if (!rep.serre_formal) return "C" + std::to_string(a) + " x C" + std::to_string(b) + " fails: " + rep.failure;
      }
    }
    const auto d5 = fixture("distributive5.json");
    const auto c = classify(*d5);
    if (!c.distributive || c.divisor) return std::string("distributive5 is not a distributive non-divisor lattice");
    if (combinatorial_serre_check(*d5, default_max_steps(*d5)).serre_formal) return std::string("distributive5 passes");
    return std::string();
  });

  criterion(10, "Coxeter trajectories agree with derived orbits", 0, [] {
    std::vector<std::pair<std::string, LatticePtr>> ls;
    for (const char* name : {"appendix9.json", "pentagon.json", "b2.json", "distributive5.json", "a3_linear_tors.json",
                             "type_i_4.json", "type_i_5.json", "type_i_6.json"}) {
      ls.emplace_back(name, fixture(name));
    }
    for (int k = 0; k <= 4; ++k) ls.emplace_back("boolean " + std::to_string(k), gen_boolean(k));
    for (int a = 1; a <= 4; ++a) {
      for (int b = a; b <= 4; ++b) ls.emplace_back("chainprod " + std::to_string(a) + " " + std::to_string(b), gen_chain_product(a, b));
    }
    for (const auto& o : typea::all_orientations(3)) ls.emplace_back("tors A3 " + o, typea::TypeA(typea::QuiverA::make(3, o)).tors_lattice());
    int compared = 0;
    for (const auto& [name, l] : ls) {
      const auto r = cross_check<Rational>(l, default_max_steps(*l));
      if (!r.agree) {
        return name + ": " + (r.disagreements.empty() ? std::string("disagree") : "element " + l->label(r.disagreements[0].element) + ", " + r.disagreements[0].what);
      }
      if (r.combinatorial.serre_formal) ++compared;
    }
    return compared > 0 ? std::string() : std::string("no lattice where both checks complete");
  });

  criterion(11, "stokes o rotate = planar_dual o stokes for n <= 4; rotation cycles match S-orbits for n <= 3", 0, [] {
    for (int n = 1; n <= 4; ++n) {
      const auto r = geom::geom_check(n);
      if (!r.equivariant || !r.stokes_bijective) return "n=" + std::to_string(n) + ": " + (r.failures.empty() ? std::string("failed") : r.failures.front());
    }
    for (int n = 1; n <= 3; ++n) {
      const auto stats = typea::serre_orbit_stats(typea::TypeA(typea::QuiverA::linear(n)));
      if (geom::rotation_cycle_type(geom::enumerate_quads(n)) != stats.cycle_type) return "n=" + std::to_string(n) + ": cycle multisets differ";
    }
    return std::string();
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
