#include "phipi/bigreal.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace phipi;
using phipi::testing::ball_contains_mpq;
using phipi::testing::dy_to_mpq;

namespace {

TEST(BigRealAdd, ExactIntegers) {
    BigReal r = add(BigReal::exact(1), BigReal::exact(2), 64);
    EXPECT_TRUE(r.is_exact());
    EXPECT_EQ(dy_to_mpq(r.center()), mpq_class(3));
}

TEST(BigRealMul, Annihilator) {
    BigReal x = BigReal::exact(7);
    x.add_error(Dyadic{1, -10});
    BigReal r = mul(x, BigReal::exact(0), 64);
    EXPECT_TRUE(r.is_exact());
    EXPECT_EQ(r.man, 0);
}

TEST(BigRealDiv, OneThirdContainsExactValue) {
    BigReal r = div(BigReal::exact(1), BigReal::exact(3), 64);
    EXPECT_TRUE(ball_contains_mpq(r, mpq_class(1, 3)));
    // the bound is at the 2^-64 scale
    EXPECT_LE(dy_cmp(r.err, Dyadic{1, -60}), 0);
    EXPECT_EQ(to_decimal(r, 15).text, "0.333333333333333");
}

TEST(BigRealDiv, RejectsIntervalContainingZero) {
    BigReal denom = BigReal::exact(0);
    EXPECT_THROW(div(BigReal::exact(1), denom, 64), std::domain_error);
    BigReal near_zero = BigReal::exact_dyadic(1, -40);
    near_zero.add_error(Dyadic{1, -20});
    EXPECT_THROW(div(BigReal::exact(1), near_zero, 64), std::domain_error);
}

TEST(BigRealSqrt, PerfectSquare) {
    BigReal r = sqrt(BigReal::exact(4), 128);
    EXPECT_TRUE(ball_contains_mpq(r, mpq_class(2)));
    EXPECT_EQ(to_decimal(r, 6).text, "2.000000");
}

TEST(BigRealSqrt, SqrtFive) {
    BigReal r = sqrt(BigReal::exact(5), 128);
    // 2.2360679774997896964... rounds up at 16 digits
    EXPECT_EQ(to_decimal(r, 16).text, "2.2360679774997897");
    EXPECT_EQ(to_decimal(r, 15).text, "2.236067977499790");
}

TEST(BigRealSqrt, ThreeMinusPhi) {
    // 3 - phi = (5 - sqrt5)/2; its square root is 2 sin(pi/5)
    BigReal five_minus_sqrt5 = sub(BigReal::exact(5), sqrt(BigReal::exact(5), 128), 128);
    BigReal three_minus_phi = div(five_minus_sqrt5, BigReal::exact(2), 128);
    BigReal r = sqrt(three_minus_phi, 128);
    EXPECT_EQ(to_decimal(r, 10).text, "1.1755705046");
    EXPECT_EQ(to_decimal(r, 9).text, "1.175570505");
}

TEST(BigRealSqrt, RejectsNegativeIntervals) {
    EXPECT_THROW(sqrt(BigReal::exact(-1), 64), std::domain_error);
    BigReal around_zero = BigReal::exact(0);
    around_zero.add_error(Dyadic{1, -8});
    EXPECT_THROW(sqrt(around_zero, 64), std::domain_error);
}

TEST(BigRealSqrt, SquaringCertificate) {
    // for exact inputs: (value - err)^2 <= x <= (value + err)^2
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> dist(1, 1'000'000);
    for (int i = 0; i < 50; ++i) {
        mpq_class x(dist(rng), dist(rng));
        BigReal in = BigReal::from_rational(Rational(mpz_class(x.get_num()), mpz_class(x.get_den())), 256);
        if (!in.is_exact()) continue; // certificate is stated for exact inputs
        BigReal s = sqrt(in, 128);
        mpq_class lo = dy_to_mpq(s.lower());
        mpq_class hi = dy_to_mpq(s.upper());
        if (lo < 0) lo = 0;
        EXPECT_LE(lo * lo, x);
        EXPECT_GE(hi * hi, x);
    }
    BigReal s5 = sqrt(BigReal::exact(5), 128);
    EXPECT_LE(dy_to_mpq(s5.lower()) * dy_to_mpq(s5.lower()), mpq_class(5));
    EXPECT_GE(dy_to_mpq(s5.upper()) * dy_to_mpq(s5.upper()), mpq_class(5));
}

TEST(BigRealPow, Basics) {
    BigReal x = BigReal::exact(3);
    x.add_error(Dyadic{1, -20});
    BigReal one = pow(x, 0, 64);
    EXPECT_TRUE(one.is_exact());
    EXPECT_EQ(one.man, 1);
    BigReal same = pow(x, 1, 64);
    EXPECT_EQ(same.man, x.man);
    EXPECT_EQ(dy_cmp(same.err, x.err), 0);
    BigReal k = pow(BigReal::exact(2), 10, 64);
    EXPECT_TRUE(k.is_exact());
    EXPECT_EQ(dy_to_mpq(k.center()), mpq_class(1024));
}

TEST(BigRealCompare, Basics) {
    EXPECT_EQ(compare(BigReal::exact(1), BigReal::exact(2)), Order::less);
    EXPECT_EQ(compare(BigReal::exact(2), BigReal::exact(1)), Order::greater);
    BigReal a = BigReal::exact(1);
    a.add_error(Dyadic{1, -1}); // 1 +/- 0.5
    BigReal b = BigReal::exact_dyadic(5, -2); // 1.25
    b.add_error(Dyadic{1, -1});
    EXPECT_EQ(compare(a, b), Order::overlapping);
}

// Random operation DAGs over exact rationals: the exact result, computed
// independently with mpq, must lie inside the reported interval.
struct DagNode {
    BigReal ball;
    mpq_class exact;
};

void run_dag(std::mt19937& rng, long prec, std::vector<DagNode>& nodes, int ops) {
    std::uniform_int_distribution<int> op_dist(0, 3);
    std::uniform_int_distribution<size_t> pick(0, nodes.size() - 1);
    for (int i = 0; i < ops; ++i) {
        const DagNode& a = nodes[pick(rng)];
        const DagNode& b = nodes[pick(rng)];
        int op = op_dist(rng);
        DagNode out;
        switch (op) {
            case 0:
                out.ball = add(a.ball, b.ball, prec);
                out.exact = a.exact + b.exact;
                break;
            case 1:
                out.ball = sub(a.ball, b.ball, prec);
                out.exact = a.exact - b.exact;
                break;
            case 2:
                out.ball = mul(a.ball, b.ball, prec);
                out.exact = a.exact * b.exact;
                break;
            default:
                if (b.exact == 0 || contains_zero(b.ball)) continue;
                out.ball = div(a.ball, b.ball, prec);
                out.exact = a.exact / b.exact;
                break;
        }
        nodes.push_back(std::move(out));
    }
}

TEST(BigRealProperty, ContainmentSoundness) {
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> num(-999, 999), den(1, 999);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<DagNode> nodes;
        for (int i = 0; i < 6; ++i) {
            mpq_class q(num(rng), den(rng));
            q.canonicalize();
            DagNode n;
            n.exact = q;
            n.ball = BigReal::from_rational(Rational(mpz_class(q.get_num()), mpz_class(q.get_den())), 192);
            ASSERT_TRUE(ball_contains_mpq(n.ball, n.exact));
            nodes.push_back(std::move(n));
        }
        run_dag(rng, 192, nodes, 12);
        for (const DagNode& n : nodes)
            ASSERT_TRUE(ball_contains_mpq(n.ball, n.exact));
    }
}

TEST(BigRealProperty, PrecisionDoublingShrinksError) {
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> num(-999, 999), den(1, 999);
    for (int trial = 0; trial < 60; ++trial) {
        auto seed = rng();
        std::vector<DagNode> lo_nodes, hi_nodes;
        for (long prec : {96L, 192L}) {
            std::mt19937 gen(seed);
            std::uniform_int_distribution<long> n2(-999, 999), d2(1, 999);
            std::vector<DagNode>& nodes = prec == 96 ? lo_nodes : hi_nodes;
            for (int i = 0; i < 6; ++i) {
                mpq_class q(n2(gen), d2(gen));
                q.canonicalize();
                DagNode node;
                node.exact = q;
                node.ball = BigReal::from_rational(Rational(mpz_class(q.get_num()), mpz_class(q.get_den())), prec);
                nodes.push_back(std::move(node));
            }
            run_dag(gen, prec, nodes, 12);
        }
        ASSERT_EQ(lo_nodes.size(), hi_nodes.size());
        for (size_t i = 0; i < lo_nodes.size(); ++i) {
            EXPECT_LE(dy_cmp(hi_nodes[i].ball.err, lo_nodes[i].ball.err), 0);
            EXPECT_EQ(compare(hi_nodes[i].ball, lo_nodes[i].ball), Order::overlapping);
        }
    }
}

TEST(BigRealDecimal, CertifiedPrinting) {
    BigReal exact_q = BigReal::exact_dyadic(1, -2); // 0.25
    Decimal d = to_decimal(exact_q, 3);
    EXPECT_EQ(d.text, "0.250");
    EXPECT_TRUE(d.certified_at_request);

    BigReal loose = BigReal::exact(1);
    loose.add_error(Dyadic{3, -3}); // 1 +/- 0.375
    Decimal l = to_decimal(loose, 5);
    EXPECT_FALSE(l.certified_at_request);
    EXPECT_EQ(l.fractional_digits, 0);
    EXPECT_EQ(l.text, "1");

    BigReal neg = BigReal::from_rational(Rational(-1, 3), 128);
    Decimal n = to_decimal(neg, 6);
    EXPECT_EQ(n.text, "-0.333333");
    EXPECT_TRUE(n.certified_at_request);
}

TEST(BigRealFromRational, PowerOfTwoDenominatorsExact) {
    BigReal r = BigReal::from_rational(Rational(7, 16), 64);
    EXPECT_TRUE(r.is_exact());
    EXPECT_EQ(dy_to_mpq(r.center()), mpq_class(7, 16));
    BigReal q = BigReal::from_rational(Rational(1, 3), 64);
    EXPECT_FALSE(q.is_exact());
    EXPECT_TRUE(ball_contains_mpq(q, mpq_class(1, 3)));
}

TEST(DyadicRendering, SciAndLog10) {
    EXPECT_EQ(dy_to_sci(Dyadic{1, -4}), "6.2500e-2"); // 2^-4
    EXPECT_EQ(dy_to_sci(Dyadic{3, 1}), "6.0000e+0");
    EXPECT_EQ(dy_to_sci(Dyadic{0, 0}), "0");
    EXPECT_NEAR(dy_log10_abs(Dyadic{1, -4}), std::log10(0.0625), 1e-12);
    EXPECT_NEAR(dy_log10_abs(Dyadic{1000, 0}), 3.0, 1e-12);
}

TEST(NewtonIsqrt, MatchesCertificate) {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 200; ++i) {
        mpz_class n = mpz_class(static_cast<unsigned long>(rng())) *
                      mpz_class(static_cast<unsigned long>(rng() % 1000 + 1));
        mpz_class s = newton_isqrt(n);
        EXPECT_LE(s * s, n);
        EXPECT_GT((s + 1) * (s + 1), n);
    }
    EXPECT_EQ(newton_isqrt(mpz_class(0)), 0);
    EXPECT_EQ(newton_isqrt(mpz_class(1)), 1);
    EXPECT_EQ(newton_isqrt(mpz_class(99)), 9);
    EXPECT_EQ(newton_isqrt(mpz_class(100)), 10);
}

} // namespace
