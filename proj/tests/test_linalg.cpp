#include <gtest/gtest.h>

#include "support.hpp"

namespace gamedecomp {
namespace {

using testing::Rng;

TEST(Rational, StaysCanonical) {
  const Rational r(6, -8);
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 4);
  EXPECT_EQ(r.str(), "-3/4");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, ParsesSupportedForms) {
  EXPECT_EQ(Rational::parse("-9/8"), Rational(-9, 8));
  EXPECT_EQ(Rational::parse("\xE2\x88\x92" "9/8"), Rational(-9, 8));
  EXPECT_EQ(Rational::parse("17"), Rational(17));
  EXPECT_EQ(Rational::parse("-1.25"), Rational(-5, 4));
  EXPECT_EQ(Rational::parse("0.5"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("+3/6"), Rational(1, 2));
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "1/", "/2", "1e5", "0x10"})
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
}

TEST(Rational, ArithmeticIsExact) {
  Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational(1, 6) - Rational(1, 3), Rational(-1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_LT(Rational(-1, 2), Rational(1, 3));
}

TEST(Rational, DecimalRendering) {
  EXPECT_EQ(Rational(1, 3).to_decimal(4), "0.3333");
  EXPECT_EQ(Rational(2, 3).to_decimal(3), "0.667");
  EXPECT_EQ(Rational(-5, 4).to_decimal(1), "-1.3");
  EXPECT_EQ(Rational(7).to_decimal(2), "7.00");
  EXPECT_EQ(Rational(5).to_decimal(0), "5");
}

TEST(Matrix, ConstructionChecksLength) {
  EXPECT_THROW(Matrix(2, 2, std::vector<Rational>(3)), DimensionError);
  const Matrix m(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(m(1, 0), Rational(4));
  EXPECT_EQ(m.transpose()(0, 1), Rational(4));
  EXPECT_THROW(m * m, DimensionError);
  EXPECT_THROW(m + m.transpose(), DimensionError);
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(Matrix::identity(2), Matrix::identity(3)), Matrix::identity(6));
  EXPECT_EQ(kron(Matrix::ones(2, 1), Matrix::identity(2)), (Matrix{{1, 0}, {0, 1}, {1, 0}, {0, 1}}));
  EXPECT_EQ(kron(Matrix{{2}}, Matrix{{1, 1}}), (Matrix{{2, 2}}));
}

TEST(Kron, MixedProductProperty) {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = rng.matrix(2, 3), b = rng.matrix(3, 2), c = rng.matrix(2, 2), d = rng.matrix(2, 3);
    EXPECT_EQ(kron(a, c) * kron(b, d), kron(a * b, c * d));
  }
}

TEST(Stp, ReducesToProductWhenDimensionsMatch) {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = rng.matrix(3, 4), b = rng.matrix(4, 2);
    EXPECT_EQ(stp(a, b), a * b);
  }
}

TEST(Stp, BasisVectors) { EXPECT_EQ(stp(Matrix::basis(2, 1), Matrix::basis(2, 2)), Matrix::basis(4, 2)); }

TEST(Stp, ColumnVectorTimesMatrix) {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const Matrix x = rng.matrix(3, 1), a = rng.matrix(2, 4);
    EXPECT_EQ(stp(x, a), stp(kron(Matrix::identity(3), a), x));
  }
}

TEST(Stp, Associative) {
  Rng rng(14);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = rng.matrix(2, 4), b = rng.matrix(2, 3), c = rng.matrix(6, 2);
    EXPECT_EQ(stp(stp(a, b), c), stp(a, stp(b, c)));
    const Matrix x = rng.matrix(1, 6), y = rng.matrix(3, 1), z = rng.matrix(2, 2);
    EXPECT_EQ(stp(stp(x, y), z), stp(x, stp(y, z)));
  }
}

TEST(SolveLinear, Examples) {
  const Matrix b{{1}, {-2}, {3}};
  EXPECT_EQ(*solve_linear(Matrix::identity(3), b), b);
  EXPECT_FALSE(solve_linear(Matrix{{1}, {1}}, Matrix{{1}, {2}}).has_value());
  EXPECT_THROW(solve_linear(Matrix::identity(2), b), DimensionError);
}

TEST(SolveLinear, ConsistentPotentialSystem) {
  Rng rng(15);
  const GameSpace space({2, 2});
  const Matrix bp = build_B_P(space);
  for (int t = 0; t < 10; ++t) {
    const Matrix u = bp * rng.matrix(bp.cols(), 1);
    const auto w = solve_linear(bp, u);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(bp * *w, u);
  }
}

TEST(SolveLinear, FreeVariablesAreZero) {
  const Matrix a{{1, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(*solve_linear(a, Matrix{{2}, {3}}), (Matrix{{2}, {0}, {3}}));
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Matrix::identity(5)), 5u);
  EXPECT_EQ(rank(Matrix::zeros(3, 4)), 0u);
  EXPECT_EQ(rank(build_B_N(GameSpace({2, 2}))), 4u);
  EXPECT_EQ(rank(build_B_P(GameSpace({2, 2}))), 7u);
}

TEST(Rank, GramMatricesPreserveRank) {
  Rng rng(16);
  for (int t = 0; t < 30; ++t) {
    Matrix a = rng.matrix(5, 4);
    if (t % 3 == 0) a = a * Matrix{{1, 0, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}};
    const std::size_t r = rank(a);
    EXPECT_EQ(rank(a.transpose() * a), r);
    EXPECT_EQ(rank(a * a.transpose()), r);
  }
}

void expect_penrose(const Matrix& a, const Matrix& x) {
  EXPECT_EQ(a * x * a, a);
  EXPECT_EQ(x * a * x, x);
  EXPECT_TRUE((a * x).is_symmetric());
  EXPECT_TRUE((x * a).is_symmetric());
}

TEST(MpInverse, Examples) {
  EXPECT_EQ(mp_inverse(Matrix::identity(4)), Matrix::identity(4));
  EXPECT_EQ(mp_inverse(Matrix::zeros(2, 3)), Matrix::zeros(3, 2));
  const GameSpace space({2, 3, 2});
  for (std::size_t i = 1; i <= 3; ++i)
    EXPECT_EQ(mp_inverse(build_E(space, i)),
              build_E(space, i).transpose() * Rational(1, static_cast<long>(space.strategies(i))));
}

TEST(MpInverse, PenroseAxiomsOnRandomMatrices) {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    Matrix a = rng.matrix(6, 4);
    if (t % 2 == 1) a = a * rng.matrix(4, 2) * rng.matrix(2, 4);
    expect_penrose(a, mp_inverse(a));
    const Matrix b = a.transpose();
    expect_penrose(b, mp_inverse(b));
  }
}

TEST(MpInverse, ColumnSpaceInclusionIdentity) {
  const GameSpace space({2, 3});
  const Matrix bp = build_B_P(space), bn = build_B_N(space);
  const Matrix pa = bp * mp_inverse(bp), pb = bn * mp_inverse(bn);
  EXPECT_EQ(pa * pb, pb);
  EXPECT_EQ(pb * pa, pb);
}

TEST(GroupInverse, Examples) {
  EXPECT_EQ(*group_inverse_via_solve(Matrix::identity(3)), Matrix::identity(3));
  const Matrix p = projectors_for(GameSpace({2, 2}))->potential;
  EXPECT_EQ(*group_inverse_via_solve(p), p);
  EXPECT_FALSE(group_inverse_via_solve(Matrix{{0, 1}, {0, 0}}).has_value());
  EXPECT_THROW(group_inverse_via_solve(Matrix(2, 3)), DimensionError);
}

TEST(GroupInverse, TwoPlayerGramMatchesClosedForm) {
  const GameSpace space({2, 2});
  const Matrix e1 = build_e(space, 1) * Rational(1, 2), e2 = build_e(space, 2) * Rational(1, 2);
  const Matrix expected = Matrix::identity(4) * Rational(1, 2) + e1 * Rational(1, 2) + e2 * Rational(1, 2) -
                          e1 * e2 * Rational(3, 2);
  EXPECT_EQ(*group_inverse_via_solve(pure_potential_gram(space)), expected);
}

TEST(GroupInverse, AxiomsAndSymmetricAgreement) {
  Rng rng(18);
  for (int t = 0; t < 20; ++t) {
    const Matrix b = rng.matrix(4, 2 + t % 3);
    const Matrix a = b * b.transpose();
    const auto x = group_inverse_via_solve(a);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(a * *x * a, a);
    EXPECT_EQ(*x * a * *x, *x);
    EXPECT_EQ(a * *x, *x * a);
    EXPECT_EQ(*x, mp_inverse(a));
  }
}

TEST(GroupInverse, AxiomsOnNonsymmetricIndexOne) {
  Rng rng(19);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const Matrix a = rng.matrix(4, 2) * rng.matrix(2, 4);
    const auto x = group_inverse_via_solve(a);
    if (!x) continue;
    ++checked;
    EXPECT_EQ(a * *x * a, a);
    EXPECT_EQ(*x * a * *x, *x);
    EXPECT_EQ(a * *x, *x * a);
  }
  EXPECT_GT(checked, 20);
}

TEST(Inverse, RoundTrip) {
  Rng rng(20);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = rng.matrix(4, 4);
    if (rank(a) < 4) continue;
    EXPECT_EQ(a * inverse(a), Matrix::identity(4));
  }
  EXPECT_THROW(inverse(Matrix{{1, 2}, {2, 4}}), std::domain_error);
}

}  // namespace
}  // namespace gamedecomp
