#include <qd/arith.hpp>
#include <qd/ball.hpp>
#include <qd/gaussian.hpp>

#include <gtest/gtest.h>

using namespace qd;

TEST(Isqrt, Examples)
{
    EXPECT_EQ(isqrt(0), 0);
    EXPECT_EQ(isqrt(10), 3);
    EXPECT_EQ(isqrt(Integer("9463554011521")), 3076289);
    EXPECT_THROW(isqrt(-1), std::domain_error);
}

TEST(Isqrt, RandomFloorProperty)
{
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(20261019);
    for (int i = 0; i < 500; ++i) {
        Integer n = rng.get_z_bits(512);
        Integer s = isqrt(n);
        EXPECT_LE(s * s, n);
        EXPECT_GT((s + 1) * (s + 1), n);
    }
}

TEST(PerfectSquare, Examples)
{
    Integer k;
    EXPECT_TRUE(is_perfect_square(10609, &k));
    EXPECT_EQ(k, 103);
    EXPECT_FALSE(is_perfect_square(-4));
    EXPECT_FALSE(is_perfect_square(616226));
    EXPECT_EQ(624 * 16 + 625, 10609);
}

TEST(PerfectSquare, NeighboursOfSquares)
{
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(7);
    for (int i = 0; i < 2000; ++i) {
        Integer k = rng.get_z_bits(1 + i % 200) + 2;
        Integer r;
        ASSERT_TRUE(is_perfect_square(k * k, &r));
        EXPECT_EQ(r, k);
        EXPECT_FALSE(is_perfect_square(k * k + 1));
        EXPECT_FALSE(is_perfect_square(k * k - 1));
    }
    for (std::uint64_t k = 2; k < 200000; k += 37) {
        u128 n = static_cast<u128>(k) * k;
        std::uint64_t r = 0;
        EXPECT_TRUE(is_perfect_square_u128(n, &r));
        EXPECT_EQ(r, k);
        EXPECT_FALSE(is_perfect_square_u128(n + 1));
        EXPECT_FALSE(is_perfect_square_u128(n - 1));
    }
    // large u128 near 2^126
    u128 big = static_cast<u128>(0x7fffffffffffffffULL) * 0x7fffffffffffffffULL;
    EXPECT_TRUE(is_perfect_square_u128(big));
    EXPECT_FALSE(is_perfect_square_u128(big + 1));
}

TEST(Padic, Examples)
{
    EXPECT_EQ(padic_val(2, Rational(16)), 4);
    EXPECT_EQ(padic_val(2, Rational(5, 3)), 0);
    EXPECT_EQ(padic_val(3, Rational(5, 3)), -1);
    EXPECT_THROW(padic_val(2, Rational(0)), std::domain_error);
    EXPECT_THROW(padic_val(6, Rational(12)), std::domain_error);
}

TEST(Rat, DecimalLiterals)
{
    EXPECT_EQ(rat("7.98"), Rational(399, 50));
    EXPECT_EQ(rat("0.9984"), Rational(624, 625));
    EXPECT_EQ(rat("181700"), Rational(181700));
}

TEST(PrimePower, Shapes)
{
    Integer p;
    unsigned long m = 0;
    EXPECT_TRUE(is_prime_power(1, nullptr, &m));
    EXPECT_EQ(m, 0u);
    EXPECT_TRUE(is_prime_power(343, &p, &m));
    EXPECT_EQ(p, 7);
    EXPECT_EQ(m, 3u);
    EXPECT_FALSE(is_prime_power(15));
    EXPECT_TRUE(is_prime_power(2));
}

TEST(Gaussian, NormMultiplicative)
{
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(11);
    for (int i = 0; i < 300; ++i) {
        GaussianInteger z{rng.get_z_bits(100) - rng.get_z_bits(100), rng.get_z_bits(100) - rng.get_z_bits(100)};
        GaussianInteger w{rng.get_z_bits(80) - rng.get_z_bits(80), rng.get_z_bits(80)};
        EXPECT_EQ((z * w).norm(), z.norm() * w.norm());
        EXPECT_EQ(z * w, w * z);
        EXPECT_GE(z.norm(), 0);
    }
    EXPECT_EQ(GaussianInteger().norm(), 0);
}

TEST(Gaussian, WitnessIdentity)
{
    // (1+3i)(1-2i)^4 = -79+3i
    GaussianInteger z = GaussianInteger{1, 3} * pow(GaussianInteger{1, -2}, 4);
    EXPECT_EQ(z, (GaussianInteger{-79, 3}));
    EXPECT_EQ(pow(GaussianInteger{1, -2}, 4), (GaussianInteger{-7, 24}));
}

TEST(Gaussian, ExactDivision)
{
    bool ok = false;
    auto q = exact_div(GaussianInteger{2, 0}, GaussianInteger{1, 1}, &ok);
    EXPECT_TRUE(ok);
    EXPECT_EQ(q, (GaussianInteger{1, -1}));
    exact_div(GaussianInteger{1, 0}, GaussianInteger{1, 1}, &ok);
    EXPECT_FALSE(ok);
}

TEST(Ball, EnclosesPi)
{
    Real pi = Real::pi(256);
    // 355/113 is larger than pi by ~2.7e-7
    EXPECT_EQ(pi.less(Real(Rational(355, 113), 256)), true);
    EXPECT_EQ(Real(Rational(333, 106), 256).less(pi), true);
}

TEST(Ball, PrecisionDoublingShrinksRadius)
{
    auto pipeline = [](mpfr_prec_t p) {
        Real x(Rational(1, 3), p);
        Real y = exp(sqrt(x) * Real(Rational(168, 100), p)) / (x + Real(7L, p));
        Complex z(y, sin(x));
        Complex w = pow(z, 9) / Complex(cos(x), Real(1L, p));
        return w;
    };
    Complex lo = pipeline(256), hi = pipeline(512);
    EXPECT_LT(hi.err(), lo.err());
    // the 2P midpoint lies inside the P ball
    Real dre = (hi.re - lo.re).abs();
    EXPECT_TRUE(dre.less(Real(lo.re.rad_d() + hi.re.rad_d() + 1e-300, 512)).value_or(false) ||
                dre.mid_d() <= lo.re.rad_d());
    EXPECT_LE(std::abs(hi.im.mid_d() - lo.im.mid_d()), lo.im.rad_d());
}

TEST(Ball, ExpAndAtan)
{
    Real e = exp(Real(1L, 200));
    EXPECT_NEAR(e.mid_d(), 2.718281828459045, 1e-15);
    EXPECT_LT(e.rad_d(), 1e-55);
    Real a = atan2(Real(1L, 200), Real(1L, 200));
    EXPECT_NEAR(a.mid_d() * 4, 3.141592653589793, 1e-15);
}

TEST(Ball, DivisionByZeroBallRejected)
{
    EXPECT_THROW(Real(1L, 64) / Real(0L, 64), std::domain_error);
}
