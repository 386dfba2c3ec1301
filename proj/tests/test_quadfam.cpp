#include <qd/quadfam.hpp>

#include <gtest/gtest.h>

#include <numeric>

#include <random>

using namespace qd;
using namespace qd::quadfam;

TEST(Instance, Validation)
{
    EXPECT_THROW(make_instance(2, 4), std::invalid_argument);
    EXPECT_THROW(make_instance(3, 4), std::invalid_argument); // 25 is a square
    EXPECT_EQ(make_instance(31, 5).D, 986);
}

TEST(Families, Examples)
{
    auto r11 = enumerate_families(make_instance(1, 1));
    EXPECT_TRUE(r11.single_family);
    EXPECT_EQ(r11.representatives.size(), 1u);
    EXPECT_TRUE(same_orbit(2, -1, {1, 1}, r11.representatives[0]));

    EXPECT_TRUE(enumerate_families(make_instance(31, 5)).single_family);
    EXPECT_TRUE(enumerate_families(make_instance(1, 7)).single_family);
}

TEST(Families, MissingT1U1Rejected)
{
    EXPECT_FALSE(pell::solve_pell(146).t1u1);
    EXPECT_THROW(enumerate_families(make_instance(5, 11)), std::invalid_argument);
}

TEST(Lemma31, Applies)
{
    EXPECT_TRUE(lemma31_applies(make_instance(31, 5)));
    EXPECT_TRUE(lemma31_applies(make_instance(1, 1)));
    EXPECT_FALSE(lemma31_applies(make_instance(2, 15)));
    EXPECT_FALSE(lemma31_applies(make_instance(5, 11))); // negative Pell unsolvable for 146
}

TEST(Families, RepresentativesSatisfyNormAndClosure)
{
    for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 3}, {19, 9}, {86, 77}, {2, 15}, {29, 17}, {4, 15}}) {
        auto inst = make_instance(a, b);
        auto pd = pell::solve_pell(inst.D);
        if (!pd.neg_pell()) continue;
        auto rep = classify(inst, pd);
        const Integer N = -inst.b * inst.b;
        for (auto& r : rep.representatives) {
            EXPECT_EQ(r.x * r.x - inst.D * r.y * r.y, N);
            EXPECT_EQ(gcd(r.x, r.y), 1);
            // alpha^2 or, when that is half-integral on r, alpha^6
            Integer x2, y2;
            for (unsigned long j : {2UL, 6UL}) {
                auto u = pell::alpha_power(pd, j);
                x2 = u.T * r.x + inst.D * u.U * r.y;
                y2 = u.T * r.y + u.U * r.x;
                if (mpz_even_p(x2.get_mpz_t()) && mpz_even_p(y2.get_mpz_t())) break;
            }
            ASSERT_TRUE(mpz_even_p(x2.get_mpz_t()) && mpz_even_p(y2.get_mpz_t()));
            Pair moved{x2 / 2, y2 / 2};
            int hits = 0;
            for (auto& q : rep.representatives) hits += same_orbit(inst.D, N, q, moved);
            EXPECT_EQ(hits, 1);
        }
    }
}

TEST(Families, TwoFamiliesDetected)
{
    // b = 15 with two prime factors: several classes
    auto inst = make_instance(2, 15);
    auto pd = pell::solve_pell(inst.D);
    ASSERT_TRUE(pd.neg_pell());
    auto rep = classify(inst, pd);
    EXPECT_GE(rep.classes.size(), 2u);
    EXPECT_FALSE(rep.lemma31_applicable);
}

// LMM classes against the Nagell-bound brute force
TEST(Families, NagellOracle)
{
    int compared = 0;
    for (long b = 1; b <= 30; ++b)
        for (long a = 1; a <= 60; ++a) {
            if (std::gcd(a, b) != 1 || is_perfect_square(Integer(a * a + b * b))) continue;
            auto inst = make_instance(a, b);
            auto pd = pell::solve_pell(inst.D);
            const Integer N = -inst.b * inst.b;
            auto brute = nagell_bruteforce(pd, N, 200000);
            if (!brute) continue;
            ++compared;
            auto classes = primitive_classes(pd, N);
            for (auto& c : classes) ASSERT_EQ(c.x * c.x - inst.D * c.y * c.y, N);
            // every brute-force solution lies in exactly one LMM class, and every class is hit
            std::vector<int> hit(classes.size(), 0);
            for (auto& s : *brute) {
                int n = 0;
                for (std::size_t i = 0; i < classes.size(); ++i)
                    if (same_class(inst.D, N, classes[i], s)) { ++n; hit[i] = 1; }
                ASSERT_EQ(n, 1) << a << "," << b;
            }
            for (int h : hit) ASSERT_EQ(h, 1) << a << "," << b;
        }
    EXPECT_GT(compared, 500);
}

TEST(Lemma31, RandomPrimePowerInstances)
{
    std::mt19937_64 rng(31);
    const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    int checked = 0;
    while (checked < 50) {
        long p = primes[rng() % 20];
        long b = p;
        while (b * p < 900 && rng() % 3 == 0) b *= p;
        if (rng() % 4 == 0 && 2 * b < 1000) b *= 2;
        long a = 1 + static_cast<long>(rng() % 990);
        long D = a * a + b * b;
        if (D >= 1000000 || std::gcd(a, b) != 1 || is_perfect_square(Integer(D))) continue;
        auto inst = make_instance(a, b);
        auto pd = pell::solve_pell(inst.D);
        if (!lemma31_applies(inst, pd)) continue;
        auto rep = classify(inst, pd); // throws TheoremViolation on a counterexample
        EXPECT_TRUE(rep.single_family) << a << "," << b;
        ++checked;
    }
}
