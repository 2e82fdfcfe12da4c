#include "phipi/q5.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace phipi;
using phipi::testing::random_q5;

namespace {

const Q5 kPhi = phi();
const Q5 kSqrt5(Rational(0), Rational(1));

TEST(Q5Add, IdentityAndCoordinates) {
    Q5 x(Rational(3, 7), Rational(-2, 5));
    EXPECT_EQ(Q5(0) + x, x);
    EXPECT_EQ(kPhi + Q5(1), Q5(Rational(3, 2), Rational(1, 2)));
}

TEST(Q5Add, PhiPlusItsInverseIsSqrt5) {
    // phi^-1 = phi - 1, so phi + phi^-1 = 2 phi - 1 = sqrt5
    EXPECT_EQ(kPhi + inverse(kPhi), kSqrt5);
}

TEST(Q5Mul, PhiSquaredIsPhiPlusOne) {
    EXPECT_EQ(kPhi * kPhi, Q5(Rational(3, 2), Rational(1, 2)));
    EXPECT_EQ(kPhi * kPhi, kPhi + Q5(1));
}

TEST(Q5Mul, IdentityAndConjugates) {
    Q5 x(Rational(-4, 9), Rational(11, 3));
    EXPECT_EQ(x * Q5(1), x);
    Q5 a(Rational(1), Rational(1));  // 1 + sqrt5
    Q5 b(Rational(1), Rational(-1)); // 1 - sqrt5
    EXPECT_EQ(a * b, Q5(-4));
}

TEST(Q5Inverse, GoldenRatio) {
    Q5 inv = inverse(kPhi);
    EXPECT_EQ(inv, Q5(Rational(-1, 2), Rational(1, 2))); // phi - 1
    EXPECT_EQ(kPhi * inv, Q5(1));
}

TEST(Q5Inverse, SimpleCases) {
    EXPECT_EQ(inverse(Q5(1)), Q5(1));
    EXPECT_EQ(inverse(kSqrt5), Q5(Rational(0), Rational(1, 5)));
    EXPECT_THROW(inverse(Q5(0)), std::domain_error);
}

TEST(RatioR, ExactValue) {
    EXPECT_EQ(ratio_r(), Q5(Rational(5), Rational(-2)));
    Q5 by_definition = (Q5(3) - kPhi) * inverse(kPhi * kPhi);
    EXPECT_EQ(ratio_r(), by_definition);
}

TEST(RatioR, NumericValue) {
    BigReal v = to_bigreal(ratio_r(), 64);
    std::string s = to_decimal(v, 9).text;
    EXPECT_EQ(s, "0.527864045");
}

TEST(Q5ToBigReal, ExactForDyadicRationals) {
    BigReal one = to_bigreal(Q5(1), 64);
    EXPECT_TRUE(one.is_exact());
    EXPECT_EQ(one.man, 1);
    EXPECT_EQ(one.exp, 0);
}

TEST(Q5ToBigReal, PhiAndRatio) {
    BigReal p = to_bigreal(kPhi, 64);
    EXPECT_EQ(to_decimal(p, 16).text, "1.6180339887498948");
    BigReal r = to_bigreal(ratio_r(), 64);
    EXPECT_EQ(to_decimal(r, 16).text, "0.5278640450004206");
}

TEST(Q5ToBigReal, RelativeErrorBound) {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        Q5 x = random_q5(rng);
        if (x.is_zero()) continue;
        long prec = 64;
        BigReal v = to_bigreal(x, prec);
        // err <= 2^(1-prec) |x|; |x| >= |center| - err
        Dyadic mag_lo = dy_sub(dy_abs(v.center()), v.err);
        ASSERT_GT(mag_lo.sign(), 0);
        Dyadic budget{mag_lo.m, mag_lo.e + 1 - prec};
        EXPECT_LE(dy_cmp(v.err, budget), 0);
    }
}

TEST(Q5ToBigReal, RejectsTinyPrecision) {
    EXPECT_THROW(to_bigreal(kPhi, 4), std::invalid_argument);
}

TEST(Q5ToBigReal, SurvivesCoordinateCancellation) {
    // r^50 has coordinates of ~10^49 scale while the value is ~10^-14; the
    // conversion must widen its working precision until the relative
    // contract holds
    Q5 tiny = q5_pow(ratio_r(), 50);
    BigReal direct = to_bigreal(tiny, 128);
    BigReal powered = pow(to_bigreal(ratio_r(), 256), 50, 256);
    EXPECT_EQ(compare(direct, powered), Order::overlapping);
    Dyadic mag_lo = dy_sub(dy_abs(direct.center()), direct.err);
    ASSERT_GT(mag_lo.sign(), 0);
    EXPECT_LE(dy_cmp(direct.err, Dyadic{mag_lo.m, mag_lo.e + 1 - 128}), 0);
    EXPECT_NEAR(dy_log10_abs(direct.center()), 50.0 * std::log10(0.5278640450004206), 1e-9);
}

TEST(Q5Sign, SpecCases) {
    EXPECT_EQ(sign(Q5(0)), 0);
    EXPECT_EQ(sign(Q5(Rational(5), Rational(-2))), 1);  // 25 > 20
    EXPECT_EQ(sign(Q5(Rational(2), Rational(-1))), -1); // 4 < 5
}

TEST(Q5Sign, AgreesWithBallSignAt128Bits) {
    std::mt19937 rng(11);
    int checked = 0;
    while (checked < 1000) {
        Q5 x = random_q5(rng);
        if (x.is_zero()) continue;
        BigReal v = to_bigreal(x, 128);
        if (contains_zero(v)) continue; // bound excludes zero crossing by construction
        int ball_sign = v.lower().sign() > 0 ? 1 : -1;
        ASSERT_EQ(sign(x), ball_sign) << to_string(x);
        ++checked;
    }
}

TEST(Q5FieldAxioms, RandomSamples) {
    std::mt19937 rng(13);
    for (int i = 0; i < 300; ++i) {
        Q5 a = random_q5(rng), b = random_q5(rng), c = random_q5(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
    }
}

TEST(Q5FieldAxioms, MultiplicativeInverse) {
    std::mt19937 rng(17);
    for (int i = 0; i < 300; ++i) {
        Q5 x = random_q5(rng);
        if (x.is_zero()) continue;
        EXPECT_EQ(x * inverse(x), Q5(1));
    }
}

TEST(Q5Text, RoundTrip) {
    std::mt19937 rng(19);
    for (int i = 0; i < 300; ++i) {
        Q5 x = random_q5(rng);
        EXPECT_EQ(q5_from_string(to_string(x)), x) << to_string(x);
    }
    EXPECT_EQ(to_string(ratio_r()), "5/1 - 2/1*sqrt5");
    EXPECT_EQ(q5_from_string("1/2 + 1/2*sqrt5"), phi());
    EXPECT_EQ(q5_from_string("-1/2 + 1/2*sqrt5"), inverse(phi()));
    EXPECT_THROW(q5_from_string("1/2"), std::invalid_argument);
    EXPECT_THROW(q5_from_string("1/2 + nonsense"), std::invalid_argument);
}

TEST(Q5Pow, SmallPowers) {
    EXPECT_EQ(q5_pow(kPhi, 0), Q5(1));
    EXPECT_EQ(q5_pow(kPhi, 2), kPhi * kPhi);
    EXPECT_EQ(q5_pow(kPhi, 6), kPhi * kPhi * kPhi * kPhi * kPhi * kPhi);
}

TEST(RationalBasics, ReducedAndOrdered) {
    Rational r(6, -8);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 4);
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
    EXPECT_EQ(Rational::from_string("-14/21"), Rational(-2, 3));
}

} // namespace
