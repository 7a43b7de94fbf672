#include <gtest/gtest.h>

#include <random>

#include "qu21/qarith.hpp"

using namespace qu21;

namespace {

// [n] straight from (q^n - q^-n)/(q - q^-1), without the recurrence.
Rational closed_qnum(const Rational& q, int n) {
  Rational qn = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    qn *= q;
    qi /= q;
  }
  Rational r = (qn - qi) / (q - 1 / q);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(QNumber, FrozenValuesAtTwo) {
  const auto ctx = exact_context("2");
  EXPECT_EQ(qnum(3, ctx), Rational(21, 4));
  EXPECT_EQ(qfact(2, ctx), Rational(5, 2));
  EXPECT_EQ(qnum(0, ctx), Rational(0));
  EXPECT_EQ(qnum(1, ctx), Rational(1));
}

TEST(QNumber, MatchesClosedForm) {
  for (const char* qs : {"1/2", "9/10", "13/10", "2", "7/3"}) {
    const auto ctx = exact_context(qs);
    for (int n = 0; n <= 30; ++n) EXPECT_EQ(qnum(n, ctx), closed_qnum(ctx.q(), n)) << qs << " n=" << n;
  }
}

TEST(QNumber, ClassicalLimit) {
  const auto ctx = exact_context("1");
  EXPECT_TRUE(ctx.classical());
  for (int n = 0; n < 120; ++n) EXPECT_EQ(qnum(n, ctx), Rational(n));
  EXPECT_EQ(qfact(5, ctx), Rational(120));
}

TEST(QNumber, OddAndInvariantUnderInversion) {
  std::mt19937 rng(20241019);
  std::uniform_int_distribution<int> num(1, 40), den(1, 40), nn(0, 60);
  for (int trial = 0; trial < 50; ++trial) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    const ExactContext a(q), b(Rational(1) / q);
    const int n = nn(rng);
    EXPECT_EQ(qnum(n, a), qnum(n, b));
    EXPECT_EQ(qnum(-n, a), -qnum(n, a));
  }
}

TEST(QNumber, BeyondTheCachedTable) {
  const auto ctx = exact_context("3/2");
  EXPECT_EQ(qnum(150, ctx), closed_qnum(ctx.q(), 150));
  EXPECT_EQ(qfact(101, ctx), qfact(100, ctx) * qnum(101, ctx));
}

TEST(QFactorial, NegativeArguments) {
  const auto ctx = exact_context("13/10");
  EXPECT_EQ(qfact_inv(-1, ctx), Rational(0));
  EXPECT_EQ(qfact_inv(3, ctx) * qfact(3, ctx), Rational(1));
  try {
    qfact(-1, ctx);
    FAIL() << "expected NegativeFactorial";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeFactorial);
  }
}

TEST(QFactorial, RatioConventions) {
  const auto ctx = exact_context("2");
  EXPECT_EQ((FactorialRatio<Rational>{{3}, {2}}.eval(ctx)), qnum(3, ctx));
  EXPECT_EQ((FactorialRatio<Rational>{{3}, {-1}}.eval(ctx)), Rational(0));
  EXPECT_THROW((FactorialRatio<Rational>{{-1}, {}}.eval(ctx)), Error);
  EXPECT_THROW((FactorialRatio<Rational>{{3}, {-1}}.eval_strict(ctx)), Error);
}

TEST(QNumber, HalfIntegerSquares) {
  for (const char* qs : {"1/2", "13/10", "2"}) {
    const auto ex = exact_context(qs);
    const auto fl = float_context(qs);
    for (int twice = 1; twice <= 15; twice += 2) {
      // [h] from real powers of q.
      const Real q = fl.q();
      const Real h = make_real(twice, 50) / 2;
      const Real v = (pow(q, h) - pow(q, Real(-h))) / (q - 1 / q);
      const Real expect = v * v;
      const Real got = make_real(qnum_squared(HalfInt::from_twice(twice), ex), 50);
      EXPECT_LT(abs(Real(got - expect)) / expect, 1e-45) << qs << " 2h=" << twice;
    }
  }
  const auto one = exact_context("1");
  EXPECT_EQ(qnum_squared(HalfInt::from_twice(3), one), Rational(9, 4));
}

TEST(QNumber, FloatAgreesWithExact) {
  const auto ex = exact_context("9/10");
  const auto fl = float_context("0.9");
  for (int n = 0; n <= 40; ++n) {
    const Real a = make_real(qnum(n, ex), 50);
    EXPECT_LT(abs(Real(a - qnum(n, fl))), 1e-45 * (1 + abs(a)));
  }
}

TEST(EvalContext, RejectsNonPositiveQ) {
  EXPECT_THROW(exact_context("0"), std::invalid_argument);
  EXPECT_THROW(exact_context("-1/2"), std::invalid_argument);
  EXPECT_THROW(float_context("-0.5"), std::invalid_argument);
}

TEST(SignedRadical, Arithmetic) {
  const auto ctx = exact_context("2");
  SignedRadical<Rational> a(1, 1, Rational(9, 4));   // 2 * 3/2 = 3
  SignedRadical<Rational> b(-1, 0, Rational(4));     // -2
  EXPECT_NEAR(to_float(a, ctx).convert_to<double>(), 3.0, 1e-15);
  EXPECT_NEAR(to_float(a * b, ctx).convert_to<double>(), -6.0, 1e-15);
  EXPECT_NEAR(to_float(a / b, ctx).convert_to<double>(), -1.5, 1e-15);
  EXPECT_TRUE(same_value(a, SignedRadical<Rational>(1, 0, Rational(9)), ctx));
  EXPECT_FALSE(same_value(a, -a, ctx));
  EXPECT_TRUE(SignedRadical<Rational>(1, 3, Rational(0)).is_zero());
  EXPECT_THROW(SignedRadical<Rational>(1, 0, Rational(-1)), Error);
  EXPECT_THROW(a / SignedRadical<Rational>(), std::domain_error);
}

TEST(Rendering, RoundHalfEven) {
  EXPECT_EQ(real_string(make_real(Rational(1, 8), 50), 2), "1.2e-01");
  EXPECT_EQ(real_string(make_real(Rational(3, 8), 50), 2), "3.8e-01");
  EXPECT_EQ(real_string(make_real(Rational(-5, 2), 50), 1), "-2e+00");
  EXPECT_EQ(rational_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(rational_string(Rational(-2)), "-2/1");
}
