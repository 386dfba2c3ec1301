#include <qd/case_engine.hpp>

#include <gtest/gtest.h>

#include <numeric>

using namespace qd;
using namespace qd::hyperg;

namespace {

std::vector<std::string> strs(const std::vector<Rational>& v)
{
    std::vector<std::string> out;
    for (auto& q : v) out.push_back(str(q));
    return out;
}

// (x)_k directly
Rational poch(const Rational& x, unsigned long k)
{
    Rational p(1);
    for (unsigned long i = 0; i < k; ++i) p *= x + Rational(long(i));
    return p;
}

Rational factorial(unsigned long k) { return Rational(poch(Rational(1), k)); }

struct Sol {
    long a, b;
    Integer X, Y;
};

// Coprime solutions with Y >= 5 over a small box, by direct search.
std::vector<Sol> small_contexts(long amax, long bmax, long ymax)
{
    std::vector<Sol> out;
    for (long a = 1; a <= amax; ++a)
        for (long b = 1; b <= bmax; ++b) {
            if (std::gcd(a, b) != 1 || is_perfect_square(Integer(a * a + b * b))) continue;
            auto inst = make_instance(a, b);
            for (auto& s : quartic::direct_scan(inst, 5, ymax, true)) out.push_back({a, b, s.X, s.Y});
        }
    return out;
}

} // namespace

TEST(XPolynomial, Examples)
{
    EXPECT_EQ(strs(x_polynomial(1, 4, 1).coeffs), (std::vector<std::string>{"1", "5/3"}));
    EXPECT_EQ(strs(x_polynomial(3, 4, 1).coeffs), (std::vector<std::string>{"1", "7"}));
    EXPECT_EQ(strs(x_polynomial(1, 4, 0).coeffs), (std::vector<std::string>{"1"}));
    EXPECT_THROW(x_polynomial(0, 4, 1), std::invalid_argument);
    EXPECT_THROW(x_polynomial(2, 4, 1), std::invalid_argument);
    EXPECT_THROW(x_polynomial(4, 4, 1), std::invalid_argument);
}

TEST(XPolynomial, MatchesPochhammerForm)
{
    for (unsigned long n : {3ul, 4ul, 5ul, 7ul})
        for (unsigned long m = 1; m < n; ++m) {
            if (std::gcd(m, n) != 1) continue;
            const Rational nu{long(m), long(n)};
            for (unsigned long r = 0; r <= 12; ++r) {
                auto p = x_polynomial(m, n, r);
                ASSERT_EQ(p.coeffs.size(), r + 1);
                for (unsigned long k = 0; k <= r; ++k) {
                    Rational want = poch(-Rational(long(r)) - nu, k) * poch(-Rational(long(r)), k) /
                                    (poch(1 - nu, k) * factorial(k));
                    EXPECT_EQ(p.coeffs[k], want) << m << "/" << n << " r=" << r << " k=" << k;
                }
            }
        }
}

TEST(BigD, Examples)
{
    EXPECT_EQ(big_d(4, 0), 1);
    EXPECT_EQ(big_d(4, 1), 3);
    EXPECT_EQ(big_d(4, 2), 35);
    EXPECT_EQ(strs(x_polynomial(1, 4, 2).coeffs), (std::vector<std::string>{"1", "6", "15/7"}));
    EXPECT_EQ(strs(x_polynomial(3, 4, 2).coeffs), (std::vector<std::string>{"1", "22", "77/5"}));
}

TEST(BigD, ClearsAndIsMinimal)
{
    for (unsigned long r = 0; r <= 30; ++r) {
        Integer D = big_d(4, r);
        for (unsigned long m : {1ul, 3ul})
            for (auto& c : x_polynomial(m, 4, r).coeffs) ASSERT_EQ(Rational(c * D).get_den(), 1);
        for (auto& [p, e] : factor_small(D)) {
            Integer smaller = D / p;
            bool clears = true;
            for (unsigned long m : {1ul, 3ul})
                for (auto& c : x_polynomial(m, 4, r).coeffs) clears = clears && Rational(c * smaller).get_den() == 1;
            EXPECT_FALSE(clears) << "r=" << r << " p=" << p;
        }
    }
}

TEST(ScriptN, Examples)
{
    for (long b : {1, 3, 5, 7, 9, 11}) EXPECT_EQ(script_n(Integer(2 * b * b), 4).factors[0].second, Rational(1, 2));
    EXPECT_EQ(script_n(16, 4).factors[0].second, Rational(2));
    for (unsigned long m = 2; m <= 6; ++m) {
        Integer b = pow(Integer(2), m);
        EXPECT_EQ(script_n(4 * b * b, 4).factors[0].second, Rational(3));
    }
    EXPECT_EQ(script_n(4 * 9, 4).factors[0].second, Rational(1)); // a even, b odd
    EXPECT_THROW(script_n(0, 4), std::invalid_argument);
}

TEST(NCap, IntegralAndMaximal)
{
    // (D/N) e_j s^j must lie in Z[i] for s of (1+i)-valuation v2|d|; N times 1+i or an odd prime must not
    for (Integer d : {Integer(-2), Integer(-4), Integer(-16), Integer(-64), Integer(-18), Integer(-36), Integer(-2 * 225)}) {
        const long v = v2(abs(d));
        Integer odd = abs(d);
        mpz_tdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), v);
        Integer s_odd;
        ASSERT_TRUE(is_perfect_square(odd, &s_odd));
        const GaussianInteger s = pow(GaussianInteger{1, 1}, static_cast<unsigned long>(v)) * s_odd;
        for (unsigned long r = 0; r <= 25; ++r) {
            const auto N = n_cap(d, 4, r);
            const auto e = shifted_numerators(x_polynomial(1, 4, r), d_one(r));
            auto all_integral = [&](const GaussianInteger& div) {
                GaussianInteger sp{1, 0};
                for (unsigned long j = 0; j <= r; ++j, sp *= s) {
                    bool ok = false;
                    exact_div(sp * e[j], div, &ok);
                    if (!ok) return false;
                }
                return true;
            };
            ASSERT_TRUE(all_integral(N.gaussian())) << d << " r=" << r;
            EXPECT_FALSE(all_integral(N.gaussian() * GaussianInteger{1, 1})) << d << " r=" << r;
            for (auto& [p, m] : factor_small(N.odd)) EXPECT_FALSE(all_integral(N.gaussian() * p));
            EXPECT_EQ(N.abs_squared(), N.gaussian().norm());
        }
    }
    EXPECT_THROW(n_cap(4, 4, 1), std::invalid_argument);
    EXPECT_THROW(n_cap(-12, 4, 1), std::invalid_argument);
}

TEST(GammaRatio, Telescoping)
{
    EXPECT_EQ(gamma_ratio_x(3), Rational(128, 77));
    EXPECT_EQ(gamma_ratio_x(0), 1);
    EXPECT_EQ(gamma_ratio_r(0), Rational(1, 4));
    // Gamma(r+5/4)/(Gamma(1/4) r!) = (1/4)_{r+1} / r!
    for (unsigned long r = 0; r < 20; ++r) EXPECT_EQ(gamma_ratio_r(r), poch(Rational(1, 4), r + 1) / factorial(r));
}

TEST(Lemma24, ConstantsHoldWithMaximaAtThree)
{
    auto rep = verify_lemma24(155);
    EXPECT_TRUE(rep.r0_flagged);
    ASSERT_EQ(rep.classes.size(), 4u);
    for (auto& cls : rep.classes) {
        EXPECT_TRUE(cls.bounds_hold) << cls.d << " first failure r=" << cls.first_failure.value_or(0);
        EXPECT_TRUE(cls.maxima_at_3) << cls.d;
        EXPECT_EQ(cls.argmax1, 3u);
        EXPECT_EQ(cls.argmax2, 3u);
        // r = 0: both left-hand sides are exactly 1 and 1/4
        EXPECT_NE(cls.rows[0].lhs1.less(Real(1L, 256)), true);
        EXPECT_NE(Real(1L, 256).less(cls.rows[0].lhs1), true);
        EXPECT_NE(cls.rows[0].lhs2.less(Real(Rational(1, 4), 256)), true);
        EXPECT_NE(Real(Rational(1, 4), 256).less(cls.rows[0].lhs2), true);
    }
    EXPECT_TRUE(rep.ok());
    EXPECT_THROW(verify_lemma24(2), std::invalid_argument);
}

TEST(Hyp2f1, ClosedForms)
{
    const mpfr_prec_t P = 256;
    const Real tol(Rational(1, pow(Integer(2), 200)), P);
    // F(1,1;2;z) = -log(1-z)/z
    Complex half(Real(Rational(1, 2), P), Real(0L, P));
    Complex f = hyp2f1(1, 1, 2, half);
    Real want = Real(2L, P) * log(Real(2L, P));
    EXPECT_EQ((f.re - want).abs().less(tol), true);
    // F(a,b;b;z) = (1-z)^{-a} at z = 1/3 + i/4
    Complex z(Real(Rational(1, 3), P), Real(Rational(1, 4), P));
    Complex g = hyp2f1(2, Rational(5, 7), Rational(5, 7), z);
    Complex one(Real(1L, P), Real(0L, P));
    Complex w = one / pow(one - z, 2);
    EXPECT_EQ((g - w).abs().less(tol), true);
    // terminating: F(-2, 3; 5; z) = 1 - 6z/5 + 2z^2/5 exactly at z = 1/2
    Complex h = hyp2f1(-2, 3, 5, half);
    EXPECT_EQ((h.re - Real(Rational(1) - Rational(3, 5) + Rational(1, 10), P)).abs().less(tol), true);
}

TEST(Verify22e, AtLeastOneOnHalfCircle)
{
    auto rep = verify_22e(12);
    EXPECT_TRUE(rep.min_at_one);
    EXPECT_TRUE(rep.ok());
    std::size_t crossed = 0;
    for (auto& s : rep.rows) {
        if (s.direct_agrees) ++crossed;
        if (s.j == 0) {
            EXPECT_NE(s.value.less(Real(1L, 256)), true);
            EXPECT_NE(Real(1L, 256).less(s.value), true);
        }
    }
    EXPECT_GT(crossed, rep.rows.size() / 4);
    // omega = i, r = 1 and omega = e^{i pi/3}, r = 3
    const Real pi = Real::pi(256);
    EXPECT_EQ(Real(1L, 256).less(abs_f22e(1, pi / Real(2L, 256))), true);
    EXPECT_EQ(Real(1L, 256).less(abs_f22e(3, pi / Real(3L, 256))), true);
}

TEST(Context, Examples)
{
    auto c = build_context(make_instance(1, 3), 79, 5);
    EXPECT_EQ(c.d, -18);
    EXPECT_EQ(c.g3, 2);
    EXPECT_EQ(c.g, (GaussianInteger{1, 1}));
    EXPECT_EQ(c.scriptN.two_exponent_doubled(), 1);
    EXPECT_EQ(c.omega.norm(), 1);
    EXPECT_TRUE(c.Q_below_ub2);
    EXPECT_TRUE(c.E_above_lb);
    EXPECT_TRUE(c.phi_within_tan);

    auto c31 = build_context(make_instance(31, 5), 3076289, 313);
    EXPECT_EQ(c31.tan_phi_approx, Rational(10, 3076289));
    Rational tp(2 * 5 * 3076289, Integer(3076289) * 3076289 - 25);
    tp.canonicalize();
    EXPECT_EQ(c31.tan_phi, tp);

    EXPECT_THROW(build_context(make_instance(1, 3), 1, 1), HypothesisNotMet);
    EXPECT_THROW(build_context(make_instance(1, 3), 80, 5), std::invalid_argument);
}

TEST(Context, EvenAGivesScriptNTwo)
{
    std::size_t seen = 0;
    for (auto& s : small_contexts(60, 25, 3000)) {
        if (s.a % 2 != 0 || s.b % 2 == 0) continue;
        ApproximationContext c;
        try {
            c = build_context(make_instance(s.a, s.b), s.X, s.Y);
        } catch (const HypothesisNotMet&) {
            EXPECT_LE(2 * s.Y, Integer(s.b * s.b)); // E > 1 can only fail below b^2/2
            continue;
        }
        EXPECT_EQ(c.d, -4 * s.b * s.b);
        EXPECT_EQ(c.scriptN.two_exponent_doubled(), 2);
        EXPECT_EQ(c.g3, 4);
        ++seen;
    }
    EXPECT_GT(seen, 0u);
}

TEST(Approximant, SmallR)
{
    auto c = build_context(make_instance(1, 3), 79, 5);
    auto a0 = approximant(c, 0);
    EXPECT_EQ(a0.p, (GaussianInteger{1, 0}));
    EXPECT_EQ(a0.q, (GaussianInteger{1, 0}));
    auto a1 = approximant(c, 1), a2 = approximant(c, 2);
    EXPECT_NE(a1.p * a2.q, a2.p * a1.q);
    // Y_{1,4,1}(omega) = (3 omega + 5)/3
    GaussianRational y = eval_reversed(x_polynomial(1, 4, 1), c.omega);
    GaussianRational want = (c.omega * GaussianRational(Rational(3)) + GaussianRational(Rational(5))) /
                            GaussianRational(Rational(3));
    EXPECT_EQ(y, want);
}

TEST(Approximant, PropertySuite)
{
    std::vector<Sol> ctxs = {{1, 3, 79, 5}, {31, 5, 3076289, 313}};
    for (auto& s : small_contexts(40, 15, 2000)) ctxs.push_back(s);
    ASSERT_GT(ctxs.size(), 3u);
    std::size_t used = 0;
    for (auto& s : ctxs) {
        ApproximationContext c;
        try {
            c = build_context(make_instance(s.a, s.b), s.X, s.Y);
        } catch (const HypothesisNotMet&) {
            continue;
        }
        ++used;
        // r = 0: q_0 = p_0 = 1 exceeds k0 = 0.89 and |theta - 1| ~ |phi|/4 exceeds 0.2|phi|
        auto c0 = check_approximant(c, 0);
        EXPECT_FALSE(c0.q_bound_ok);
        EXPECT_FALSE(c0.residual_phi_ok);
        EXPECT_TRUE(c0.identity_ok && c0.nondegenerate);
        for (unsigned long r = 1; r <= 20; ++r) {
            auto ck = check_approximant(c, r);
            EXPECT_TRUE(ck.ok()) << s.a << "," << s.b << " (" << s.X << "," << s.Y << ") r=" << r << " id="
                                 << ck.identity_ok << " xy=" << ck.abs_xy_equal << " R=" << ck.r_bound_ok
                                 << " X=" << ck.x_bound_ok << " q=" << ck.q_bound_ok << " res=" << ck.residual_ok
                                 << " resphi=" << ck.residual_phi_ok << " det=" << ck.nondegenerate;
        }
    }
    EXPECT_GT(used, 3u);
}

TEST(Lemma21, SmallestR0)
{
    EXPECT_EQ(smallest_r0(Rational(1), Rational(10), Rational(1, 4)), 1u);   // 1/2 < 10
    EXPECT_EQ(smallest_r0(Rational(20), Rational(10), Rational(1, 4)), 2u);  // |q| = E/(2 ell0)
    EXPECT_EQ(smallest_r0(Rational(19), Rational(10), Rational(1, 4)), 1u);
    EXPECT_THROW(smallest_r0(Rational(1), Rational(1), Rational(1)), std::invalid_argument);
}

TEST(Lemma21, LowerBoundHoldsForNearbyFractions)
{
    const mpfr_prec_t P = 512;
    for (auto [a, b, X, Y] : std::vector<Sol>{{1, 3, 79, 5}, {31, 5, 3076289, 313}}) {
        auto c = build_context(make_instance(a, b), X, Y, 1, P);
        const Complex theta = c.theta();
        for (long x = -12; x <= 12; ++x)
            for (long y = 1; y <= 12; ++y) {
                GaussianInteger q{x, y};
                // nearest Gaussian integer to q theta
                Complex qt = Complex(q, P) * theta;
                GaussianInteger p{Integer(std::lround(qt.re.mid_d())), Integer(std::lround(qt.im.mid_d()))};
                auto lb = lemma21_lower_bound(c, p, q, false);
                Real err = (qt - Complex(p, P)).abs();
                EXPECT_EQ(lb.bound.less(err), true) << a << "," << b << " q=" << q;
            }
        EXPECT_THROW(lemma21_lower_bound(c, {1, 0}, {0, 0}, false), std::invalid_argument);
    }
}

TEST(CaseEngine, SmallInstanceIsResidual)
{
    auto cert = case_engine(make_instance(1, 3), 79, 5);
    EXPECT_TRUE(cert.residual_small_set);
    EXPECT_TRUE(cert.case1.closes);
    EXPECT_TRUE(cert.case2.closes);
    EXPECT_FALSE(cert.case3.closes);
    EXPECT_EQ(cert.overall, "residual_small_set");
    for (auto& l : cert.preliminaries) EXPECT_TRUE(l.holds) << l.name;
    // literal 3.7 link fails, 3.99 link holds
    auto find = [](const CaseResult& c, const std::string& n) {
        for (auto& l : c.links)
            if (l.name == n) return l;
        throw std::runtime_error("no link " + n);
    };
    EXPECT_FALSE(find(cert.case2, "literal_3_7").holds);
    EXPECT_TRUE(find(cert.case2, "with_3_99").holds);
    EXPECT_TRUE(find(cert.case2, "closed_form").holds);
    EXPECT_TRUE(find(cert.case3, "threshold_rounded").holds);
    EXPECT_TRUE(find(cert.case3, "threshold_exact").holds);
    EXPECT_FALSE(find(cert.case3, "const_0_0646").holds);
    for (auto n : {"aux_212", "aux_29_4", "aux_29", "aux_e3q", "aux_1_25e8", "aux_1_26e8", "const_92", "const_116",
                   "const_1420", "const_0_0026", "const_11_25", "const_0_138", "x1_over_08b"})
        EXPECT_TRUE(find(cert.case3, n).holds) << n;
}

TEST(CaseEngine, CaseOneArithmetic)
{
    // D/b^2 = 1, Y1 = 5: 508 Y1^9 < 92 b^2 Y1^5 forces Y1^4 < 92 b^2 / 508 < b^2 / 5
    const Rational Y(5);
    for (long b : {1, 10, 100, 1000}) {
        Rational B2(b * b);
        bool second = 508 * pow(Y, 9) < 92 * B2 * pow(Y, 5);
        EXPECT_EQ(second, pow(Y, 4) < Rational(92, 508) * B2);
        if (second) {
            EXPECT_LT(pow(Y, 4), B2 / 5);
        }
    }
}

TEST(CaseEngine, LargeInstanceCloses)
{
    // Example 1 family above the census limit: a = (b^2 - 5)/4, Y = (b^2 + 1)/2
    bool found = false;
    for (long b = 43; b < 200 && !found; b += 2) {
        if (b % 5 == 0) continue;
        Integer a = (Integer(b) * b - 5) / 4;
        auto inst = make_instance(a, b);
        Integer B(b);
        Integer X = (pow(B, 6) + 5 * pow(B, 4) + 15 * B * B - 5) / 16, Y = (B * B + 1) / 2;
        ASSERT_TRUE(quartic::satisfies(inst, X, Y));
        if (gcd(X, Y) != 1) continue;
        CaseCertificate cert;
        try {
            cert = case_engine(inst, X, Y);
        } catch (const HypothesisNotMet&) {
            continue;
        }
        found = true;
        EXPECT_FALSE(cert.residual_small_set);
        EXPECT_TRUE(cert.case3.closes);
        EXPECT_EQ(cert.overall, "closed");
    }
    EXPECT_TRUE(found);
}

TEST(CaseEngine, Hypotheses)
{
    EXPECT_THROW(case_engine(make_instance(1, 3), 1, 1), HypothesisNotMet);
    EXPECT_THROW(case_engine(make_instance(1, 3), 79, 6), std::invalid_argument);
}
