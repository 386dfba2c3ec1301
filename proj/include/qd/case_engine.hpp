#pragma once

#include "approx.hpp"

#include <string>
#include <vector>

namespace qd::hyperg {

/// One inequality of a proof chain, with both sides as decimal strings.
struct Link {
    std::string name;
    std::string statement;
    std::string lhs, rhs;
    bool holds = false;
};

struct CaseResult {
    std::string name;
    std::vector<Link> links;
    bool closes = false;
    std::string status;
};

struct CaseCertificate {
    Integer a, b, D, X1, Y1;
    std::vector<Link> preliminaries;
    CaseResult case1, case2, case3;
    bool residual_small_set = false; // D < 181700
    std::string overall;             // "closed", "residual_small_set" or "open"
    std::vector<std::string> notes;
};

inline const Integer& census_limit() { static const Integer v = 181700; return v; }

namespace detail {

inline std::string dec(const Rational& q, int digits = 12) { return Real(q, 256).to_string(digits); }

inline Link exact_link(std::string name, std::string statement, const Rational& lhs, const Rational& rhs, bool strict = true)
{
    return {std::move(name), std::move(statement), dec(lhs), dec(rhs), strict ? lhs < rhs : lhs <= rhs};
}

// lhs < rhs for balls built at escalating precision
template <class Build>
Link ball_link(std::string name, std::string statement, Build&& build)
{
    Link l{std::move(name), std::move(statement), "", "", false};
    l.holds = decide([&](mpfr_prec_t p) {
        auto [x, y] = build(p);
        l.lhs = x.to_string(12);
        l.rhs = y.to_string(12);
        return x.less(y);
    });
    return l;
}

inline Rational rpow(const Rational& q, long e)
{
    return e >= 0 ? pow(q, static_cast<unsigned long>(e)) : Rational(1) / pow(q, static_cast<unsigned long>(-e));
}

} // namespace detail

/// Constants of the r0 >= 2 chain, derived exactly from the base constants.
struct Case3Constants {
    Rational K1, K2;   // Y2^3 < K1 b^2 (K2 D)^r0 Y1^{4 r0 + 5}
    Rational L1, L2;   // Y2 > L1 (L2 D)^r0 b^{2 - 4 r0} Y1^{4 r0 - 1}
    Rational c0, rho0; // survival iff c0 (rho0 / (D^2 b^4))^r0 b^12 > 1 when Y1 = b^2/2
};

inline Case3Constants case3_constants()
{
    Case3Constants k;
    const Rational k0 = k0_const(), q = rat("10.74"), c = rat("3.99"), e = rat("0.372"), x = rat("1.248");
    k.K1 = (4 * k0 / c) * (4 * k0 / c) * q * q; // (2 * 2k0 / 3.99)^2 * 10.74^2
    k.K2 = q * q;
    k.L1 = (x / e) * (x / e);
    k.L2 = e * e;
    k.c0 = k.K1 / (k.L1 * k.L1 * k.L1) / 256;
    k.rho0 = 256 * k.K2 / (k.L2 * k.L2 * k.L2);
    return k;
}

inline CaseCertificate case_engine(const EquationInstance& inst, const Integer& X1, const Integer& Y1,
                                   bool check_hypotheses = true)
{
    using detail::ball_link;
    using detail::exact_link;
    const Integer& a = inst.a;
    const Integer& b = inst.b;
    const Integer& D = inst.D;
    const Integer b2 = b * b;
    const Rational Dq(D), b2q(b2), Yq(Y1);

    if (!quartic::satisfies(inst, X1, Y1) || gcd(X1, Y1) != 1 || sgn(X1) <= 0)
        throw std::invalid_argument("case_engine: (X1, Y1) must be a coprime positive solution");
    if (!(2 * Y1 > b2)) throw HypothesisNotMet("case_engine: Y1 > b^2/2 fails");
    if (Y1 < 5) throw HypothesisNotMet("case_engine: Y1 >= 5 fails");
    if (check_hypotheses) {
        auto pd = pell::solve_pell(D);
        if (!pd.neg_pell()) throw HypothesisNotMet("case_engine: negative Pell equation unsolvable");
        if (!quadfam::classify(inst, pd).single_family) throw HypothesisNotMet("case_engine: more than one family");
    }

    CaseCertificate cert;
    cert.a = a;
    cert.b = b;
    cert.D = D;
    cert.X1 = X1;
    cert.Y1 = Y1;
    cert.residual_small_set = D < census_limit();

    const auto ctx = build_context(inst, X1, Y1);
    const Rational X1sq(X1 * X1), Y4(pow(Y1, 4));
    auto& pre = cert.preliminaries;
    pre.push_back(exact_link("x1_sq_lower", "0.9984 D Y1^4 < X1^2", rat("0.9984") * Dq * Y4, X1sq));
    pre.push_back(exact_link("x1_hypot", "D Y1^4 < 1.001^2 X1^2", Dq * Y4, rat("1.002001") * X1sq));
    pre.push_back(exact_link("gap_cube", "508 < 7.98^3", Rational(508), pow(rat("7.98"), 3)));
    pre.push_back(exact_link("gap_y2_min", "2/998^2 < 0.04^4", Rational(2, 998 * 998), pow(rat("0.04"), 4)));
    pre.push_back(ball_link("c2_of_004", "3.99 < c2(0.04)", [](mpfr_prec_t p) {
        return std::pair{Real(rat("3.99"), p), quartic::c2_of_c1(Real(rat("0.04"), p))};
    }));
    pre.push_back(exact_link("k0", "1.072 * 0.83 < 0.89", rat("1.072") * c41(), k0_const()));
    pre.push_back(ball_link("q_ub2_const", "2 e^1.68 < 10.74", [](mpfr_prec_t p) {
        return std::pair{Real(2L, p) * exp(Real(log_d4(), p)), Real(rat("10.74"), p)};
    }));
    pre.push_back(ball_link("e_lb_const", "0.372 < (1 + sqrt 0.9984) / e^1.68", [](mpfr_prec_t p) {
        return std::pair{Real(rat("0.372"), p),
                         (Real(1L, p) + sqrt(Real(rat("0.9984"), p))) / exp(Real(log_d4(), p))};
    }));
    pre.push_back({"q_instance", "Q < 10.74 sqrt(D) Y1^2", ctx.Q.to_string(12), ctx.Q_ub2.to_string(12), ctx.Q_below_ub2});
    pre.push_back({"e_instance", "0.372 sqrt(D) Y1^2 / b^2 < E", ctx.E_lb.to_string(12), ctx.E.to_string(12), ctx.E_above_lb});
    pre.push_back({"phi_tan", "|phi| < 2b/X1", ctx.phi.abs().to_string(12), detail::dec(ctx.tan_phi_approx), ctx.phi_within_tan});

    // Case 1: r0 = 1, p/q not an approximant.
    {
        CaseResult& c = cert.case1;
        c.name = "r0 = 1, p/q not an approximant";
        Rational K = (4 * k0_const() * rat("10.74") / rat("3.99"));
        K *= K;
        c.links.push_back(exact_link("y2_cube_upper", "(3.56 * 10.74 / 3.99)^2 < 92", K, Rational(92)));
        c.links.push_back(exact_link("combine", "92/508 < 1/5", Rational(92, 508), Rational(1, 5)));
        // instance: (7.98 D/b^2)^3 Y1^9 < Y2^3 < 92 b^2 Y1^5 needs (7.98 D/b^2)^3 Y1^4 < 92 b^2
        Rational gap = rat("7.98") * Dq / b2q;
        Rational lhs = gap * gap * gap * Y4, rhs = 92 * b2q;
        Link inst_link = exact_link("instance", "(7.98 D/b^2)^3 Y1^4 < 92 b^2 (needed for a second solution)", lhs, rhs);
        c.links.push_back(inst_link);
        Link quartic_form = exact_link("y1_quartic", "Y1^4 < b^2/5 (needed for a second solution)", Y4, b2q / 5);
        c.links.push_back(quartic_form);
        bool consts = c.links[0].holds && c.links[1].holds;
        c.closes = consts && !inst_link.holds;
        c.status = c.closes ? "closes" : "open";
    }

    // Case 2: r0 = 1, p/q an approximant.
    {
        CaseResult& c = cert.case2;
        c.name = "r0 = 1, p/q an approximant";
        // (omega - 1)^3 / (3 omega + 5) against the closed form, exact
        const GaussianRational one(Rational(1)), om = ctx.omega;
        GaussianRational lhs_g = pow(om - one, 3) / (om * GaussianRational(Rational(3)) + GaussianRational(Rational(5)));
        const Rational s = sgn(ctx.u2) > 0 ? Rational(1) : Rational(-1);
        GaussianRational x1mb(Rational(X1), -s * Rational(b));
        GaussianRational four_x1mb(Rational(4 * X1), -s * Rational(b));
        GaussianRational rhs_g = GaussianRational(Rational(0), -4 * s * pow(Rational(b), 3)) / (four_x1mb * x1mb * x1mb);
        bool identity = lhs_g == rhs_g;
        c.links.push_back({"closed_form", "(omega-1)^3/(3 omega+5) = -4 b^3 i / ((4X1 - bi)(X1 - bi)^2)",
                           identity ? "equal" : "differ", "", identity});
        // |.|^2 > b^6 / (D^3 Y1^12)  <=>  (16 X1^2 + b^2)(X1^2 + b^2)^2 < 16 D^3 Y1^12
        Rational h = X1sq + b2q;
        c.links.push_back(exact_link("abs_lower", "(16 X1^2 + b^2)(X1^2 + b^2)^2 < 16 D^3 Y1^12",
                                     (16 * X1sq + b2q) * h * h, 16 * Dq * Dq * Dq * Y4 * Y4 * Y4));
        c.links.push_back(exact_link("five_32", "0.156 <= 5/32", rat("0.156"), Rational(5, 32), false));
        Link literal = exact_link("literal_3_7", "0.62 < 3.7 * 0.156", rat("0.62"), rat("3.7") * rat("0.156"));
        Link with_399 = exact_link("with_3_99", "0.62 < 3.99 * 0.156", rat("0.62"), rat("3.99") * rat("0.156"));
        c.links.push_back(literal);
        c.links.push_back(with_399);
        c.links.push_back(exact_link("gap_square", "63 < 7.98^2", Rational(63), rat("7.98") * rat("7.98")));
        c.links.push_back(exact_link("final_const", "(2/(0.62 * 63))^2 < 0.0027",
                                     pow(Rational(2) / (rat("0.62") * 63), 2), rat("0.0027")));
        // a second solution needs D^2/b^4 < (2/(k 7.98^2))^2 with k the effective constant
        const Rational ratio = Dq * Dq / (b2q * b2q);
        auto survives = [&](const Rational& k) {
            Rational t = Rational(2) / (k * rat("7.98") * rat("7.98"));
            return ratio < t * t;
        };
        bool s_062 = survives(rat("0.62")), s_literal = survives(rat("3.7") * rat("0.156")),
             s_399 = survives(rat("3.99") * rat("0.156"));
        c.links.push_back({"instance_0_62", "D^2/b^4 < (2/(0.62 * 7.98^2))^2 (needed for a second solution)",
                           detail::dec(ratio), "", s_062});
        c.links.push_back({"instance_0_5772", "D^2/b^4 < (2/(0.5772 * 7.98^2))^2 (needed for a second solution)",
                           detail::dec(ratio), "", s_literal});
        c.links.push_back({"instance_0_6224", "D^2/b^4 < (2/(0.62244 * 7.98^2))^2 (needed for a second solution)",
                           detail::dec(ratio), "", s_399});
        c.closes = identity && c.links[1].holds && !s_062 && !s_literal && !s_399;
        c.status = c.closes ? "closes" : "open";
        if (!literal.holds)
            cert.notes.push_back("3.7 * 0.156 = 0.5772 is below 0.62; the contradiction still closes with 0.5772");
    }

    // Case 3: r0 >= 2.
    {
        CaseResult& c = cert.case3;
        c.name = "r0 >= 2";
        const auto k = case3_constants();
        c.links.push_back(exact_link("x1_over_08b", "1.248^2 * 0.64 <= 0.9984", rat("1.248") * rat("1.248") * rat("0.64"),
                                     rat("0.9984"), false));
        c.links.push_back(exact_link("const_11_25", "11.25 <= (1.248/0.372)^2", rat("11.25"), k.L1, false));
        c.links.push_back(exact_link("const_0_138", "0.138 <= 0.372^2", rat("0.138"), k.L2, false));
        c.links.push_back(exact_link("const_92", "(3.56 * 10.74 / 3.99)^2 <= 92", k.K1, Rational(92), false));
        c.links.push_back(exact_link("const_116", "10.74^2 <= 116", k.K2, Rational(116), false));
        c.links.push_back(exact_link("const_1420", "1420 <= 11.25^3", Rational(1420), pow(rat("11.25"), 3), false));
        c.links.push_back(exact_link("const_0_0026", "0.0026 <= 0.138^3", rat("0.0026"), pow(rat("0.138"), 3), false));
        Link l0646 = exact_link("const_0_0646", "92/1420 <= 0.0646", Rational(92, 1420), rat("0.0646"), false);
        c.links.push_back(l0646);
        c.links.push_back(exact_link("const_44620", "116/0.0026 <= 44620", Rational(116) / rat("0.0026"), Rational(44620), false));
        c.links.push_back(exact_link("const_11423000", "44620 * 256 <= 11423000", Rational(44620 * 256), Rational(11423000), false));
        c.links.push_back(exact_link("const_0_000253", "0.0646/256 <= 0.000253", rat("0.0646") / 256, rat("0.000253"), false));
        // never satisfied for D >= 181700: 0.000253 * 11423000^2 * b^4 / D^4 <= 1 once b^4 < D^2
        c.links.push_back(exact_link("threshold_rounded", "0.000253 * 11423000^2 <= 181700^2",
                                     rat("0.000253") * Rational(Integer(11423000) * 11423000),
                                     Rational(census_limit() * census_limit()), false));
        c.links.push_back(exact_link("threshold_exact", "c0 rho0^2 <= 181700^2 with exact constants",
                                     k.c0 * k.rho0 * k.rho0, Rational(census_limit() * census_limit()), false));
        if (!l0646.holds)
            cert.notes.push_back("92/1420 = 0.06479 exceeds 0.0646; with the exact constants the threshold stays below 181700");

        // Auxiliary route for Y1 >= max(1700, b^2/2)
        c.links.push_back(exact_link("aux_212", "212 < 0.9984 * 1700 / 8", Rational(212), rat("0.9984") * 1700 / 8));
        c.links.push_back(ball_link("aux_29_4", "29.4 < 64 * 212 / (16 e^3.36)", [](mpfr_prec_t p) {
            return std::pair{Real(rat("29.4"), p), Real(Rational(64 * 212, 16), p) / exp(Real(rat("3.36"), p))};
        }));
        c.links.push_back(exact_link("aux_29", "10.74 / 0.372 < 29", rat("10.74") / rat("0.372"), Rational(29)));
        c.links.push_back(exact_link("aux_e3q", "29 < 29.4", Rational(29), rat("29.4")));
        Rational yc = Rational(2) * rat("1.78") * Rational(29 * 29 * 29) * rat("0.512") / rat("3.99");
        c.links.push_back(exact_link("aux_1_25e8", "(2 * 1.78 * 29^3 * 0.512 / 3.99)^2 < 1.25e8", yc * yc,
                                     Rational(125000000)));
        c.links.push_back(exact_link("aux_1_26e8", "1.25e8 / 0.9984^3 < 1.26e8", Rational(125000000) / pow(rat("0.9984"), 3),
                                     Rational(126000000)));

        // instance, exact constants: survival for some r0 >= 2 iff
        // A (B/D^2)^r0 > b^{4 - 12 r0} Y1^{8 r0 - 8}, A = K1/L1^3, B = K2/L2^3.
        const Rational A = k.K1 / (k.L1 * k.L1 * k.L1), B = k.K2 / (k.L2 * k.L2 * k.L2);
        const Rational Y8 = Y4 * Y4, b12 = pow(b2q, 6);
        const Rational sigma = B * b12 / (Dq * Dq * Y8);
        const Rational f2 = A * B * B * pow(b2q, 10) / (pow(Dq, 4) * Y8);
        Link ls{"instance_sigma", "B b^12 / (D^2 Y1^8) < 1", detail::dec(sigma), "1", sigma < 1};
        Link lf{"instance_r0_2", "A B^2 b^20 / (D^4 Y1^8) <= 1", detail::dec(f2), "1", f2 <= 1};
        c.links.push_back(ls);
        c.links.push_back(lf);
        // b^2/2 form with the rounded constants
        const Rational rho = Rational(11423000) / (Dq * Dq * b2q * b2q);
        const Rational g2 = rat("0.000253") * rho * rho * b12;
        c.links.push_back({"rounded_form_r0_2", "0.000253 (11423000/(D^2 b^4))^2 b^12 <= 1", detail::dec(g2), "1",
                           rho < 1 && g2 <= 1});
        Rational y1ub = Rational(126000000) * pow(b2q, 10) / pow(Dq, 4);
        c.links.push_back({"y1_upper", "Y1^8 < 1.26e8 b^20 / D^4 (needed when Y1 >= 1700)", detail::dec(Y8),
                           detail::dec(y1ub), Y8 < y1ub});
        c.closes = ls.holds && lf.holds;
        c.status = c.closes ? "closes" : (cert.residual_small_set ? "residual_small_set" : "open");
    }

    if (cert.case1.closes && cert.case2.closes && cert.case3.closes) cert.overall = "closed";
    else cert.overall = cert.residual_small_set ? "residual_small_set" : "open";
    cert.notes.push_back("sqrt(u1^2 + u2^2) read as the real value 2 sqrt(X1^2 + b^2)");
    return cert;
}

} // namespace qd::hyperg
