#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "varchenko/poly.hpp"

using namespace varchenko;
using varchenko::testing::P;

TEST(PolyAdd, CancellationLeavesConstant) { EXPECT_EQ(P("1 - x1^2") + P("x1^2"), P("1")); }

TEST(PolyAdd, ZeroIsIdentity) {
  auto p = P("3*x1*x2 - 7 + x3^4");
  EXPECT_EQ(p + Polynomial(), p);
}

TEST(PolyAdd, SumOfTwoFactors) { EXPECT_EQ(to_string(P("1 - x1^2") + P("1 - x2^2")), "2 - x1^2 - x2^2"); }

TEST(PolyMul, OneIsIdentity) {
  auto p = P("3*x1*x2 - 7 + x3^4");
  EXPECT_EQ(p * Polynomial(1), p);
}

TEST(PolyMul, DifferenceOfSquares) { EXPECT_EQ(P("(1 - x1)*(1 + x1)"), P("1 - x1^2")); }

TEST(PolyMul, ThreeLineLeftoverDeterminantExpansion) {
  Polynomial lhs = P("(1-x1^2)*(1-x2^2*x3^2)*(1-x1^2*x2^2)*(1-x3^2) - x2^2*(1-x1^2)^2*(1-x3^2)^2");
  Polynomial rhs = P("(1-x1^2)*(1-x2^2)*(1-x3^2)*(1-x1^2*x2^2*x3^2)");
  EXPECT_EQ(lhs, rhs);
}

TEST(PolyPhi, CapsHighExponents) { EXPECT_EQ(phi(P("x1^3*x2")), P("x1^2*x2")); }

TEST(PolyPhi, LeavesLowExponentsAlone) { EXPECT_EQ(phi(P("1 + x1 + x1^2")), P("1 + x1 + x1^2")); }

TEST(PolyPhi, CombinesTermsThatCollide) { EXPECT_EQ(phi(P("x1^3 - x1^4 + x1^2")), P("x1^2")); }

TEST(PolyDiv, ExactFactor) {
  auto q = try_exact_div(P("(1-x1^2)*(1-x2^2)"), P("1-x1^2"));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, P("1-x2^2"));
}

TEST(PolyDiv, NonFactorFails) { EXPECT_FALSE(try_exact_div(P("1-x1^2"), P("1-x2^2"))); }

TEST(PolyDiv, CoefficientMustDivide) { EXPECT_FALSE(try_exact_div(P("3*x1"), P("2"))); }

TEST(PolyDiv, LeftoverDeterminantByTotalFactor) {
  Polynomial det = P("(1-x1^2)*(1-x2^2)*(1-x3^2)*(1-x1^2*x2^2*x3^2)");
  auto q = try_exact_div(det, P("1-x1^2*x2^2*x3^2"));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, P("(1-x1^2)*(1-x2^2)*(1-x3^2)"));
}

TEST(PolyDiv, ZeroDivisorThrows) { EXPECT_THROW(try_exact_div(P("x1"), Polynomial()), std::domain_error); }

TEST(PolyEvaluate, RootOfFactor) { EXPECT_EQ(evaluate(P("1-x1^2"), {{VariableId{1}, Rational(1)}}), 0); }

TEST(PolyEvaluate, Half) { EXPECT_EQ(evaluate(P("1-x1^2"), {{VariableId{1}, Rational(1, 2)}}), Rational(3, 4)); }

TEST(PolyEvaluate, ThreeLineLeftoverDeterminantAtHalf) {
  Assignment at{{VariableId{1}, Rational(1, 2)}, {VariableId{2}, Rational(1, 2)}, {VariableId{3}, Rational(1, 2)}};
  Polynomial det = P("(1-x1^2)*(1-x2^2)*(1-x3^2)*(1-x1^2*x2^2*x3^2)");
  EXPECT_EQ(evaluate(det, at), Rational(27, 64) * Rational(63, 64));
}

TEST(PolyEvaluate, MissingVariableThrows) {
  EXPECT_THROW(evaluate(P("x1*x2"), {{VariableId{1}, Rational(2)}}), MissingVariable);
}

TEST(PolyRender, CanonicalOrderIsGradedThenHighestVariable) {
  EXPECT_EQ(to_string(P("x2^2*x1^2 - 1")), "-1 + x1^2*x2^2");
  EXPECT_EQ(to_string(P("(1-x1^2)*(1-x2^2*x3^2)")), "1 - x1^2 - x2^2*x3^2 + x1^2*x2^2*x3^2");
  EXPECT_EQ(to_string(P("x2 - 3*x1 + 2*x1*x2")), "-3*x1 + x2 + 2*x1*x2");
  EXPECT_EQ(to_string(Polynomial()), "0");
}

TEST(PolyRender, ParseRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto p = varchenko::testing::random_polynomial(rng);
    EXPECT_EQ(parse_polynomial(to_string(p)), p) << to_string(p);
  }
}

TEST(PolyParse, RejectsGarbage) {
  EXPECT_THROW(parse_polynomial("1 + "), PolynomialParseError);
  EXPECT_THROW(parse_polynomial("x0"), PolynomialParseError);
  EXPECT_THROW(parse_polynomial("(x1"), PolynomialParseError);
  EXPECT_THROW(parse_polynomial("y1"), PolynomialParseError);
}

TEST(PolyMonomial, ExponentOverflowIsReported) {
  auto big = Monomial::variable(VariableId{1}, 200);
  EXPECT_THROW(big * big, std::overflow_error);
}

class PolyProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
  Polynomial random() { return varchenko::testing::random_polynomial(rng); }
};

TEST_F(PolyProperties, RingLaws) {
  for (int i = 0; i < 150; ++i) {
    auto a = random(), b = random(), c = random();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Polynomial());
  }
}

TEST_F(PolyProperties, PhiIsIdempotentAndRespectsProducts) {
  for (int i = 0; i < 150; ++i) {
    auto p = random(), q = random();
    EXPECT_EQ(phi(phi(p)), phi(p));
    EXPECT_EQ(phi(p * q), phi(phi(p) * phi(q)));
  }
}

TEST_F(PolyProperties, IncrementalPhiOfProductMatchesFullExpansion) {
  for (int i = 0; i < 60; ++i) {
    std::vector<Polynomial> fs{random(), random(), random()};
    EXPECT_EQ(phi_of_product(fs), phi(fs[0] * fs[1] * fs[2]));
  }
}

TEST_F(PolyProperties, ExactDivisionUndoesMultiplication) {
  for (int i = 0; i < 150; ++i) {
    auto p = random(), q = random();
    if (q.is_zero()) continue;
    auto r = try_exact_div(p * q, q);
    ASSERT_TRUE(r) << to_string(p) << " / " << to_string(q);
    EXPECT_EQ(*r, p);
  }
}

TEST_F(PolyProperties, EvaluationIsARingMorphism) {
  std::uniform_int_distribution<int> d(2, 97);
  for (int i = 0; i < 100; ++i) {
    auto p = random(), q = random();
    Assignment at;
    for (std::uint32_t v = 1; v <= 4; ++v) at[VariableId{v}] = Rational(d(rng), d(rng));
    EXPECT_EQ(evaluate(p + q, at), evaluate(p, at) + evaluate(q, at));
    EXPECT_EQ(evaluate(p * q, at), evaluate(p, at) * evaluate(q, at));
  }
}

// phi((1 - P^2) prod (1 - X_i^2 P^2)) = 1 - P^2 for disjoint squarefree P, X_i.
TEST_F(PolyProperties, PhiCollapsesSquaredProductFamily) {
  for (int i = 0; i < 60; ++i) {
    auto family = varchenko::testing::random_disjoint_products(rng, 6, 3);
    EXPECT_EQ(phi(family.expanded()), family.expected()) << family.describe();
  }
}
