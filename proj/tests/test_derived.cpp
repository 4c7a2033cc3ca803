#include <gtest/gtest.h>

#include <random>

#include "serrelab/antichain.hpp"
#include "serrelab/derived.hpp"
#include "serrelab/generators.hpp"
#include "support.hpp"

using namespace serrelab;
using testsupport::load;
using testsupport::share;

namespace {

template <class F>
void expect_resolves(const LatticeRep<F>& m) {
  const IndecComplex<F> res = projective_resolution(m);
  ASSERT_NO_THROW(validate_complex(m.lattice(), res));
  EXPECT_TRUE(is_minimal(res));
  EXPECT_EQ(res.highest_degree(), 0);
  const auto h = cohomology(realize(m.lattice_ptr(), res));
  for (const auto& [d, rep] : h) {
    if (d == 0) {
      EXPECT_TRUE(is_isomorphic(rep, m));
    } else {
      EXPECT_TRUE(rep.is_zero()) << "degree " << d;
    }
  }
}

int label(const Lattice& l, const char* s) { return l.index_of(s); }

}  // namespace

TEST(Derived, ProjectivesResolveThemselves) {
  auto l = load("appendix9.json");
  for (int a = 0; a < 9; ++a) {
    const auto res = projective_resolution(projective<Rational>(l, a));
    ASSERT_EQ(res.terms.size(), 1u);
    EXPECT_EQ(res.terms[0], std::vector<int>{a});
  }
}

TEST(Derived, SimpleInTwoChain) {
  auto l = share(chain_lattice(2));
  const auto res = projective_resolution(simple<Rational>(l, 0));
  ASSERT_EQ(res.terms.size(), 2u);
  EXPECT_EQ(res.lowest_degree, -1);
  EXPECT_EQ(res.terms[0], std::vector<int>{1});
  EXPECT_EQ(res.terms[1], std::vector<int>{0});
  EXPECT_FALSE(res.differentials[0].is_zero());
}

TEST(Derived, ResolutionsAreExactAndMinimal) {
  for (const char* name : {"appendix9.json", "pentagon.json", "b2.json", "distributive5.json"}) {
    auto l = load(name);
    for (int a = 0; a < static_cast<int>(l->size()); ++a) {
      for (int b = 0; b < static_cast<int>(l->size()); ++b) {
        if (l->leq(a, b)) expect_resolves(interval_module<Rational>(l, {a, b}));
      }
      for_each_antichain(*l, a, AntichainMode::over, [&](const Antichain& c) {
        expect_resolves(antichain_module<Rational>(l, c));
      });
    }
  }
}

TEST(Derived, ResolutionOfDecomposable) {
  auto l = load("appendix9.json");
  const auto m = direct_sum(simple<Rational>(l, label(*l, "5")), injective<Rational>(l, label(*l, "7")));
  expect_resolves(m);
}

TEST(Derived, AntichainResolutionResolvesTheAntichainModule) {
  for (const char* name : {"appendix9.json", "pentagon.json", "b2.json"}) {
    auto l = load(name);
    for (int alpha = 0; alpha < static_cast<int>(l->size()); ++alpha) {
      for_each_antichain(*l, alpha, AntichainMode::over, [&](const Antichain& c) {
        const auto res = antichain_resolution<Rational>(*l, c);
        EXPECT_EQ(res.lowest_degree, -static_cast<int>(c.members.size()));
        const auto h = cohomology(realize(l, res));
        for (const auto& [d, rep] : h) {
          if (d == 0) {
            EXPECT_TRUE(is_isomorphic(rep, antichain_module<Rational>(l, c)));
          } else {
            EXPECT_TRUE(rep.is_zero());
          }
        }
      });
    }
  }
}

TEST(Derived, AntichainCoresolutionCoresolvesTheDualModule) {
  for (const char* name : {"appendix9.json", "pentagon.json"}) {
    auto l = load(name);
    for (int beta = 0; beta < static_cast<int>(l->size()); ++beta) {
      for_each_antichain(*l, beta, AntichainMode::under, [&](const Antichain& d) {
        const auto co = antichain_coresolution<Rational>(*l, d);
        const auto h = cohomology(realize(l, co));
        for (const auto& [deg, rep] : h) {
          if (deg == 0) {
            EXPECT_TRUE(is_isomorphic(rep, dual_antichain_module<Rational>(l, d)));
          } else {
            EXPECT_TRUE(rep.is_zero());
          }
        }
      });
    }
  }
}

TEST(Derived, BrokenComplexRejected) {
  auto l = share(chain_lattice(3));
  IndecComplex<Rational> c;
  c.lowest_degree = -1;
  c.terms = {{0}, {2}};
  c.differentials = {Matrix<Rational>(1, 1)};
  c.differentials[0](0, 0) = Rational(1);
  EXPECT_THROW(validate_complex(*l, c), not_a_complex);  // no map P_0 -> P_2
  c.terms = {{2}, {1}, {0}};
  c.differentials = {Matrix<Rational>(1, 1), Matrix<Rational>(1, 1)};
  c.differentials[0](0, 0) = Rational(1);
  c.differentials[1](0, 0) = Rational(1);
  EXPECT_THROW(validate_complex(*l, c), not_a_complex);  // d o d != 0
}

TEST(Derived, SerreOfProjectiveIsInjective) {
  for (const char* name : {"appendix9.json", "pentagon.json", "b2.json", "distributive5.json"}) {
    auto l = load(name);
    for (int a = 0; a < static_cast<int>(l->size()); ++a) {
      auto r = serre(projective<Rational>(l, a));
      auto* s = std::get_if<StalkResult<Rational>>(&r);
      ASSERT_NE(s, nullptr);
      EXPECT_EQ(s->shift, 0);
      EXPECT_EQ(s->interval, (IntervalRef{l->bottom(), a}));
    }
  }
}

TEST(Derived, TwoChainOrbit) {
  auto l = share(chain_lattice(2));
  for (int a = 0; a < 2; ++a) {
    const auto orbit = serre_orbit<Rational>(l, a, 10);
    ASSERT_TRUE(orbit.period.has_value());
    EXPECT_EQ(*orbit.period, 3);
    EXPECT_EQ(orbit.total_shift, 1);
  }
}

TEST(Derived, NineElementOrbitOfFirstInjective) {
  auto l = load("appendix9.json");
  const auto orbit = serre_orbit<Rational>(l, label(*l, "1"), default_max_steps(*l));
  ASSERT_GE(orbit.steps.size(), 3u);
  EXPECT_EQ(orbit.steps[0].dims, (std::vector<int>{0, 0, 0, 1, 1, 0, 1, 0, 0}));
  EXPECT_EQ(orbit.steps[0].shift, 2);
  EXPECT_FALSE(orbit.steps[0].interval.has_value());
  EXPECT_EQ(orbit.steps[1].shift, 2);
  EXPECT_EQ(orbit.steps[1].interval, (IntervalRef{label(*l, "9"), label(*l, "9")}));
  EXPECT_EQ(orbit.steps[2].shift, 0);
  EXPECT_EQ(orbit.steps[2].interval, (IntervalRef{l->bottom(), label(*l, "9")}));
  EXPECT_EQ(orbit.first_projective, label(*l, "9"));
  EXPECT_EQ(orbit.projective_step, 2);
  ASSERT_TRUE(orbit.period.has_value());
  EXPECT_EQ(*orbit.period, 4);
  EXPECT_EQ(orbit.total_shift, 4);
}

TEST(Derived, NineElementPermutation) {
  auto l = load("appendix9.json");
  const std::vector<std::string> expected{"9", "2", "3", "4", "7", "6", "5", "8", "1"};
  for (int a = 0; a < 9; ++a) {
    const auto orbit = serre_orbit<Rational>(l, a, default_max_steps(*l));
    ASSERT_TRUE(orbit.stalk_throughout);
    ASSERT_TRUE(orbit.first_projective.has_value()) << l->label(a);
    EXPECT_EQ(l->label(*orbit.first_projective), expected[a]);
    ASSERT_TRUE(orbit.period.has_value());
    EXPECT_EQ(orbit.total_shift, *orbit.period) << l->label(a);
  }
}

TEST(Derived, PrimeFieldAgreesOnNineElementLattice) {
  auto l = load("appendix9.json");
  for (int a = 0; a < 9; ++a) {
    const auto q = serre_orbit<Rational>(l, a, 50);
    const auto p = serre_orbit<Fp>(l, a, 50);
    ASSERT_EQ(q.steps.size(), p.steps.size());
    for (std::size_t i = 0; i < q.steps.size(); ++i) {
      EXPECT_EQ(q.steps[i].dims, p.steps[i].dims);
      EXPECT_EQ(q.steps[i].shift, p.steps[i].shift);
    }
  }
}

TEST(Derived, SerreOfBooleanAntichainModule) {
  for (const char* name : {"appendix9.json", "pentagon.json", "b2.json", "distributive5.json"}) {
    auto l = load(name);
    for (int alpha = 0; alpha < static_cast<int>(l->size()); ++alpha) {
      for_each_antichain(*l, alpha, AntichainMode::over, [&](const Antichain& c) {
        if (!is_boolean_antichain(*l, c)) return;
        auto r = serre(antichain_module<Rational>(l, c));
        auto* s = std::get_if<StalkResult<Rational>>(&r);
        ASSERT_NE(s, nullptr);
        EXPECT_EQ(s->shift, static_cast<int>(c.members.size()));
        EXPECT_TRUE(is_isomorphic(s->module, dual_antichain_module<Rational>(l, boolean_partner(*l, c))));
      });
    }
  }
}

TEST(Derived, SerreDualityOnIntervals) {
  // dim Hom(X, Y) = dim Hom(Y, SX) whenever SX is a module in degree 0.
  auto l = load("pentagon.json");
  std::vector<IntervalRef> ivs;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      if (l->leq(a, b)) ivs.push_back({a, b});
    }
  }
  int checked = 0;
  for (auto x : ivs) {
    const auto mx = interval_module<Rational>(l, x);
    auto r = serre(mx);
    auto* s = std::get_if<StalkResult<Rational>>(&r);
    if (s == nullptr || s->shift != 0) continue;
    for (auto y : ivs) {
      const auto my = interval_module<Rational>(l, y);
      EXPECT_EQ(hom_dim(mx, my), hom_dim(my, s->module));
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

// (2N, 2h+2) with N indecomposables and h = n+1 for A_n; (N, h+1) for I(m), m even.
TEST(Derived, FractionalCalabiYauPairs) {
  auto expect_pair = [](const LatticePtr& l, int shift, int period) {
    const auto s = fcy_summary<Rational>(l, default_max_steps(*l));
    ASSERT_TRUE(s.all_periodic);
    ASSERT_TRUE(s.shift.has_value());
    EXPECT_EQ(*s.shift, shift);
    EXPECT_EQ(s.period, period);
  };
  expect_pair(share(chain_lattice(2)), 1, 3);
  expect_pair(load("pentagon.json"), 6, 8);
  expect_pair(load("b2.json"), 2, 3);
  expect_pair(gen_type_i(4), 4, 5);
  expect_pair(load("a3_linear_tors.json"), 12, 10);
}
