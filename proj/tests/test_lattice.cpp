#include <gtest/gtest.h>

#include <random>

#include "serrelab/antichain.hpp"
#include "serrelab/classify.hpp"
#include "serrelab/lattice.hpp"
#include "serrelab/lattice_io.hpp"
#include "support.hpp"

using namespace serrelab;
using testsupport::load;

namespace {

std::vector<int> idx(const Lattice& l, std::initializer_list<const char*> labels) {
  std::vector<int> out;
  for (const char* s : labels) out.push_back(l.index_of(s));
  return out;
}

Lattice m3() {
  return build_lattice({"0", "x", "y", "z", "1"},
                       {{"0", "x"}, {"0", "y"}, {"0", "z"}, {"x", "1"}, {"y", "1"}, {"z", "1"}});
}

void expect_tables_match_oracle(const Lattice& l) {
  const auto le = testsupport::naive_order(l);
  const int n = static_cast<int>(l.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      ASSERT_EQ(l.leq(a, b), le[a][b]);
      ASSERT_EQ(l.meet(a, b), testsupport::naive_meet(le, a, b));
      ASSERT_EQ(l.join(a, b), testsupport::naive_join(le, a, b));
    }
  }
}

}  // namespace

TEST(Lattice, NineElementTablesMatchBruteForce) {
  auto l = load("appendix9.json");
  EXPECT_EQ(l->size(), 9u);
  EXPECT_EQ(l->label(l->bottom()), "1");
  EXPECT_EQ(l->label(l->top()), "9");
  expect_tables_match_oracle(*l);
  EXPECT_EQ(l->label(l->join(l->index_of("2"), l->index_of("3"))), "9");
  EXPECT_EQ(l->label(l->meet(l->index_of("7"), l->index_of("5"))), "4");
}

TEST(Lattice, LinearExtensionRespectsOrder) {
  auto l = load("appendix9.json");
  for (const Cover& c : l->covers()) EXPECT_LT(l->rank_in_extension(c.lo), l->rank_in_extension(c.hi));
  const std::vector<int> expected{0, 1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(l->linear_extension(), expected);
}

TEST(Lattice, RejectsCycles) {
  EXPECT_THROW(build_lattice({"a", "b"}, {{"a", "b"}, {"b", "a"}}), cycle_detected);
  EXPECT_THROW(build_lattice({"a"}, {{"a", "a"}}), cycle_detected);
}

TEST(Lattice, RejectsRedundantCovers) {
  try {
    build_lattice({"0", "a", "1"}, {{"0", "a"}, {"a", "1"}, {"0", "1"}});
    FAIL() << "expected a redundant cover error";
  } catch (const redundant_cover& e) {
    EXPECT_EQ(e.lo(), "0");
    EXPECT_EQ(e.hi(), "1");
  }
  EXPECT_THROW(build_lattice({"0", "1"}, {{"0", "1"}, {"0", "1"}}), redundant_cover);
}

TEST(Lattice, RejectsNonLattices) {
  try {
    build_lattice({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
    FAIL() << "expected a non-lattice error";
  } catch (const not_a_lattice& e) {
    EXPECT_EQ(e.a(), "b");
    EXPECT_EQ(e.b(), "c");
  }
  // Two elements with two incomparable minimal upper bounds.
  EXPECT_THROW(build_lattice({"0", "a", "b", "c", "d", "1"},
                             {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "1"}, {"d", "1"}}),
               not_a_lattice);
}

TEST(Lattice, RejectsMalformedJson) {
  EXPECT_THROW(lattice_from_string("{\"elements\": [\"a\"]}"), invalid_input);
  EXPECT_THROW(lattice_from_string("{not json"), invalid_input);
  EXPECT_THROW(lattice_from_string("{\"elements\": [\"a\", \"a\"], \"covers\": []}"), invalid_input);
  EXPECT_THROW(lattice_from_string("{\"elements\": [\"a\"], \"covers\": [[\"a\", \"q\"]]}"), invalid_input);
}

TEST(Lattice, GuardrailOnSize) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i <= kMaxLatticeSize; ++i) labels.push_back(std::to_string(i));
  EXPECT_THROW(Lattice::from_covers(labels, {}), guardrail_exceeded);
}

TEST(Lattice, JsonRoundTrip) {
  auto l = load("appendix9.json");
  const Lattice back = lattice_from_json(nlohmann::json::parse(lattice_to_json(*l).dump()));
  EXPECT_EQ(back.labels(), l->labels());
  EXPECT_EQ(back.covers(), l->covers());
  EXPECT_EQ(fingerprint(back), fingerprint(*l));
}

TEST(Lattice, ChainProductShape) {
  const Lattice p = product(chain_lattice(3), chain_lattice(2));
  EXPECT_EQ(p.size(), 6u);
  EXPECT_EQ(p.covers().size(), 7u);
  expect_tables_match_oracle(p);
}

TEST(Lattice, ProductUnitAndAssociativity) {
  auto pent = load("pentagon.json");
  EXPECT_TRUE(is_isomorphic(product(chain_lattice(1), *pent), *pent));
  const Lattice a = chain_lattice(2), b = chain_lattice(3);
  EXPECT_TRUE(is_isomorphic(product(product(a, b), *pent), product(a, product(b, *pent))));
  EXPECT_TRUE(is_isomorphic(product(a, b), product(b, a)));
  EXPECT_FALSE(is_isomorphic(product(a, b), *pent));
}

TEST(Lattice, DualSwapsMeetAndJoin) {
  auto l = load("appendix9.json");
  const Lattice d = l->dual();
  for (int a = 0; a < 9; ++a) {
    for (int b = 0; b < 9; ++b) EXPECT_EQ(d.meet(a, b), l->join(a, b));
  }
}

TEST(Antichain, BooleanExamples) {
  auto b2 = load("b2.json");
  EXPECT_TRUE(is_boolean_antichain(*b2, antichain_over(*b2, idx(*b2, {"x", "y"}), b2->index_of("0"))));

  // In the pentagon {a, b} spans the boolean sublattice {0, a, b, 1}.
  auto pent = load("pentagon.json");
  EXPECT_TRUE(is_boolean_antichain(*pent, antichain_over(*pent, idx(*pent, {"a", "b"}), pent->index_of("0"))));
  EXPECT_TRUE(is_boolean_antichain(*pent, antichain_over(*pent, idx(*pent, {"c", "b"}), pent->index_of("0"))));

  // Three atoms of M3 have the same pairwise joins.
  const Lattice m = m3();
  EXPECT_FALSE(is_boolean_antichain(m, antichain_over(m, idx(m, {"x", "y", "z"}), m.index_of("0"))));
  EXPECT_TRUE(is_boolean_antichain(m, antichain_over(m, idx(m, {"x", "y"}), m.index_of("0"))));

  // x ^ y = z > 0, so the empty set and {x} ^ {y} disagree.
  const Lattice w = build_lattice({"0", "z", "x", "y", "1"}, {{"0", "z"}, {"z", "x"}, {"z", "y"}, {"x", "1"}, {"y", "1"}});
  EXPECT_FALSE(is_boolean_antichain(w, antichain_over(w, idx(w, {"x", "y"}), w.index_of("0"))));
  EXPECT_TRUE(is_boolean_antichain(w, antichain_over(w, idx(w, {"x", "y"}), w.index_of("z"))));
}

TEST(Antichain, ConstructionValidates) {
  auto pent = load("pentagon.json");
  EXPECT_THROW(antichain_over(*pent, idx(*pent, {"a", "c"}), pent->index_of("0")), invalid_input);
  EXPECT_THROW(antichain_over(*pent, idx(*pent, {"0"}), pent->index_of("0")), invalid_input);
}

TEST(Antichain, MinComplement) {
  auto pent = load("pentagon.json");
  const Antichain c = min_complement_antichain(*pent, pent->index_of("0"), pent->index_of("a"));
  EXPECT_EQ(c.members, (std::vector<int>{pent->index_of("b"), pent->index_of("c")}));
  EXPECT_EQ(c.base, pent->index_of("0"));
  const Antichain whole = min_complement_antichain(*pent, pent->bottom(), pent->top());
  EXPECT_TRUE(whole.members.empty());
}

TEST(Antichain, BooleanPartnerIsDualBoolean) {
  std::mt19937 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Lattice l = testsupport::random_lattice(rng, 4, 3 + trial % 5);
    for (int alpha = 0; alpha < static_cast<int>(l.size()); ++alpha) {
      for_each_antichain(l, alpha, AntichainMode::over, [&](const Antichain& c) {
        if (!is_boolean_antichain(l, c)) return;
        const Antichain d = boolean_partner(l, c);
        ASSERT_TRUE(is_dual_boolean_antichain(l, d));
        ASSERT_EQ(dual_boolean_partner(l, d), c);
        ++checked;
      });
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Antichain, DualBooleanMatchesBooleanOnDual) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Lattice l = testsupport::random_lattice(rng, 4, 4);
    const Lattice d = l.dual();
    for (int beta = 0; beta < static_cast<int>(l.size()); ++beta) {
      for_each_antichain(l, beta, AntichainMode::under, [&](const Antichain& a) {
        const Antichain flipped{a.members, a.base, AntichainMode::over};
        ASSERT_EQ(is_dual_boolean_antichain(l, a), is_boolean_antichain(d, flipped));
      });
    }
  }
}

TEST(Lattice, RandomTablesMatchBruteForce) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) expect_tables_match_oracle(testsupport::random_lattice(rng, 5, 2 + trial % 7));
}

TEST(Classify, KnownLattices) {
  const Classification d5 = classify(*load("distributive5.json"));
  EXPECT_TRUE(d5.distributive);
  EXPECT_FALSE(d5.divisor);
  EXPECT_FALSE(d5.boolean);

  const Classification grid = classify(product(chain_lattice(3), chain_lattice(2)));
  EXPECT_TRUE(grid.divisor);
  EXPECT_EQ(grid.chain_factors, (std::vector<int>{3, 2}));
  EXPECT_FALSE(grid.boolean);

  EXPECT_TRUE(classify(testsupport::boolean_lattice(3)).boolean);
  EXPECT_TRUE(classify(chain_lattice(1)).boolean);
  EXPECT_TRUE(classify(chain_lattice(5)).divisor);

  const Classification pent = classify(*load("pentagon.json"));
  EXPECT_FALSE(pent.distributive);
  EXPECT_TRUE(pent.semidistributive);

  const Classification m = classify(m3());
  EXPECT_FALSE(m.distributive);
  EXPECT_FALSE(m.semidistributive);

  EXPECT_FALSE(classify(*load("appendix9.json")).semidistributive);
}

TEST(Classify, DivisorLatticesOfIntegers) {
  // Divisors of 12 and 30 under divisibility, built directly.
  for (int n : {12, 30, 36, 16}) {
    std::vector<int> divs;
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) divs.push_back(d);
    }
    std::vector<std::string> labels;
    for (int d : divs) labels.push_back(std::to_string(d));
    std::vector<std::pair<std::string, std::string>> covers;
    for (int a : divs) {
      for (int b : divs) {
        if (b % a == 0 && b != a) {
          const int q = b / a;
          bool prime = q > 1;
          for (int p = 2; p * p <= q; ++p) {
            if (q % p == 0) prime = false;
          }
          if (prime) covers.emplace_back(std::to_string(a), std::to_string(b));
        }
      }
    }
    const Classification c = classify(build_lattice(labels, covers));
    EXPECT_TRUE(c.divisor) << n;
    EXPECT_EQ(c.boolean, n == 30) << n;
  }
}
