#include <gtest/gtest.h>

#include <random>

#include "serrelab/field.hpp"
#include "serrelab/matrix.hpp"

using namespace serrelab;

namespace {

template <class F>
Matrix<F> random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int sparsity) {
  std::uniform_int_distribution<int> v(-3, 3), z(0, sparsity);
  Matrix<F> m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = z(rng) == 0 ? F(v(rng)) : F(0);
  }
  return m;
}

template <class F>
void linear_algebra_properties() {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    const Matrix<F> a = random_matrix<F>(rng, r, c, trial % 3);
    const Matrix<F> null = nullspace(a);
    EXPECT_TRUE((a * null).is_zero());
    EXPECT_EQ(rank(a) + null.cols(), c);

    const Matrix<F> x = random_matrix<F>(rng, c, 2, 1);
    const Matrix<F> b = a * x;
    auto sol = solve(a, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(a * *sol, b);

    const Quotient<F> q = quotient_by(a, r);
    EXPECT_TRUE((q.projection * a).is_zero());
    EXPECT_EQ(q.projection * q.section, Matrix<F>::identity(q.section.cols()));
    EXPECT_EQ(q.projection.rows() + rank(a), r);

    if (r == c) {
      auto inv = inverse(a);
      EXPECT_EQ(inv.has_value(), rank(a) == r);
      if (inv) {
        EXPECT_EQ(a * *inv, Matrix<F>::identity(r));
      }
    }
  }
}

}  // namespace

TEST(Rational, ArithmeticIsExact) {
  const Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ((Rational(2, 4)).str(), "1/2");
  EXPECT_EQ(Rational::parse("-6/4"), Rational(-3, 2));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Fp, InversesAndModulus) {
  EXPECT_EQ(Fp::modulus(), Fp::kDefaultModulus);
  for (long v = 1; v < 200; ++v) EXPECT_EQ(Fp(v) * Fp(v).inverse(), Fp(1));
  EXPECT_EQ(Fp(-1) + Fp(1), Fp(0));
  EXPECT_THROW(Fp::set_modulus(32004), std::invalid_argument);
}

TEST(Matrix, RationalProperties) { linear_algebra_properties<Rational>(); }
TEST(Matrix, PrimeFieldProperties) { linear_algebra_properties<Fp>(); }

TEST(Matrix, SolveDetectsInconsistency) {
  Matrix<Rational> a(2, 1);
  a(0, 0) = 1;
  Matrix<Rational> b(2, 1);
  b(1, 0) = 1;
  EXPECT_FALSE(solve(a, b).has_value());
}
