#pragma once

#include "hyperg.hpp"
#include "quadfam.hpp"
#include "quartic.hpp"

namespace qd::hyperg {

/// Data for approximating theta = omega^{1/4}, omega = (u1 + u2 i)/(u1 - u2 i), from one solution.
struct ApproximationContext {
    Integer a, b, D, X1, Y1;
    Integer u1, u2, g1, g3;
    GaussianInteger g;           // 1+i when g3 = 2 (|g| = sqrt2), else 1
    Integer d;                   // -u2^2 / |g|^2 (negative)
    ScriptN scriptN;
    Integer abs_g_scriptN_sq;    // (|g| scriptN)^2
    GaussianRational omega;
    Rational tan_phi;            // exact Im/Re of omega
    Rational tan_phi_approx;     // 2b / X1
    Real phi, theta_re, theta_im;
    Rational k0, ell0;           // ell0 = 0.4 b / X1
    Real ell0_phi;               // 0.2 |phi|
    Real Q, E;
    Real Q_ub2, E_lb;            // 10.74 sqrt(D) Y1^2 and 0.372 sqrt(D) Y1^2 / b^2
    bool Q_below_ub2 = false, E_above_lb = false, phi_within_tan = false;
    mpfr_prec_t prec = kDefaultPrecision;

    Complex theta() const { return {theta_re, theta_im}; }
};

inline const Rational& k0_const() { static const Rational v = rat("0.89"); return v; }

inline ApproximationContext build_context(const EquationInstance& inst, const Integer& X1, const Integer& Y1,
                                          int sign_u2 = 1, mpfr_prec_t prec = kDefaultPrecision)
{
    if (!quartic::satisfies(inst, X1, Y1)) throw std::invalid_argument("build_context: (X1, Y1) is not a solution");
    if (sgn(X1) <= 0 || gcd(X1, Y1) != 1) throw std::invalid_argument("build_context: need a coprime positive solution");
    if (Y1 < 5) throw HypothesisNotMet("build_context: Y1 >= 5 is required for E > 1");
    ApproximationContext c;
    c.prec = prec;
    c.a = inst.a;
    c.b = inst.b;
    c.D = inst.D;
    c.X1 = X1;
    c.Y1 = Y1;
    c.u1 = 2 * X1;
    c.u2 = sign_u2 >= 0 ? Integer(2 * inst.b) : Integer(-2 * inst.b);
    c.g1 = gcd(c.u1, c.u2);
    if (c.g1 != 2) throw ConsistencyError("build_context: gcd(u1, u2) != 2");
    Integer diff = (c.u1 - c.u2) / c.g1;
    c.g3 = mpz_even_p(diff.get_mpz_t()) ? 2 : 4;
    const bool ab_odd = mpz_odd_p(inst.a.get_mpz_t()) && mpz_odd_p(inst.b.get_mpz_t());
    if ((c.g3 == 2) != ab_odd) throw ConsistencyError("build_context: g3 parity disagrees with ab parity");
    c.g = c.g3 == 2 ? GaussianInteger{1, 1} : GaussianInteger{1, 0};
    c.d = -c.u2 * c.u2 * c.g3 / 4;
    c.scriptN = script_n(c.d, 4);
    c.abs_g_scriptN_sq = (4 / c.g3) * pow(Integer(2), static_cast<unsigned long>(c.scriptN.two_exponent_doubled()));

    GaussianRational num(Rational(c.u1), Rational(c.u2)), den(Rational(c.u1), Rational(-c.u2));
    c.omega = num / den;
    if (c.omega.norm() != 1) throw ConsistencyError("build_context: |omega| != 1");
    c.tan_phi = c.omega.im / c.omega.re;
    c.tan_phi_approx = Rational(2 * inst.b, X1);

    c.k0 = k0_const();
    c.ell0 = rat("0.4") * Rational(inst.b, X1);

    const auto P = prec;
    Complex om(c.omega, P);
    c.phi = om.arg();
    Real quarter = c.phi * Real(Rational(1, 4), P);
    c.theta_re = cos(quarter);
    c.theta_im = sin(quarter);
    c.ell0_phi = Real(c42(), P) * c.phi.abs();
    c.phi_within_tan = c.phi.abs().less(Real(c.tan_phi_approx, P)) == true;

    Real d4 = exp(Real(log_d4(), P));
    Real big = Real(Integer(2 * X1), P) + Real(2L, P) * sqrt(Real(Integer(X1 * X1 + inst.b * inst.b), P));
    Real gN = sqrt(Real(c.abs_g_scriptN_sq, P));
    c.Q = d4 * big / gN;
    c.E = gN * big / (d4 * Real(Integer(c.u2 * c.u2), P));
    Real sD = sqrt(Real(inst.D, P));
    Real y2(Integer(Y1 * Y1), P);
    c.Q_ub2 = Real(rat("10.74"), P) * sD * y2;
    c.E_lb = Real(rat("0.372"), P) * sD * y2 / Real(Integer(inst.b * inst.b), P);
    c.Q_below_ub2 = c.Q.less(c.Q_ub2) == true;
    c.E_above_lb = c.E_lb.less(c.E) == true;
    if (!(Real(1L, P).less(c.E) == true && Real(1L, P).less(c.Q) == true))
        throw HypothesisNotMet("build_context: E > 1 and Q > 1 fail");
    return c;
}

/// Gaussian integers w = (u1 - u2 i)/(2g), v = (u1 + u2 i)/(2g); omega = v / w.
inline std::pair<GaussianInteger, GaussianInteger> context_wv(const ApproximationContext& c)
{
    GaussianInteger two_g = c.g * Integer(2);
    GaussianInteger w = exact_div(GaussianInteger{c.u1, -c.u2}, two_g);
    GaussianInteger v = exact_div(GaussianInteger{c.u1, c.u2}, two_g);
    return {w, v};
}

struct Approximant {
    unsigned long r = 0;
    GaussianInteger p, q;
    NCap N;
    Integer Dr;
};

/// p_r = (D/N) X(omega) w^r, q_r = (D/N) Y(omega) w^r, computed exactly.
inline Approximant approximant(const ApproximationContext& c, unsigned long r)
{
    auto [w, v] = context_wv(c);
    const auto poly = x_polynomial(1, 4, r);
    Approximant A;
    A.r = r;
    A.Dr = d_one(r);
    A.N = n_cap(c.d, 4, r);
    std::vector<GaussianInteger> wp(r + 1), vp(r + 1);
    wp[0] = vp[0] = GaussianInteger{1, 0};
    for (unsigned long k = 1; k <= r; ++k) {
        wp[k] = wp[k - 1] * w;
        vp[k] = vp[k - 1] * v;
    }
    GaussianInteger sp{0, 0}, sq{0, 0};
    for (unsigned long k = 0; k <= r; ++k) {
        Integer Dc = Rational(poly.coeffs[k] * A.Dr).get_num();
        sp += vp[k] * wp[r - k] * Dc;
        sq += wp[k] * vp[r - k] * Dc;
    }
    bool okp = false, okq = false;
    const auto Ng = A.N.gaussian();
    A.p = exact_div(sp, Ng, &okp);
    A.q = exact_div(sq, Ng, &okq);
    if (!okp || !okq) throw ConsistencyError("approximant: p_r or q_r not integral at r = " + std::to_string(r));
    return A;
}

struct ApproximantCheck {
    unsigned long r = 0;
    Approximant A;
    Real residual;             // |q theta - p|
    Real identity_error;       // |theta Y(omega) - X(omega) - R(omega)|
    Real abs_x_minus_abs_y;
    bool identity_ok = false;  // < 2^-64
    bool abs_xy_equal = false;
    bool r_bound_ok = false;   // |R| <= gamma_r |phi| |1 - sqrt(omega)|^{2r}
    bool x_bound_ok = false;   // |X| < 1.072 gamma_x |1 + sqrt(omega)|^{2r}
    bool q_bound_ok = false;   // |q| < k0 Q^r
    bool residual_ok = false;  // |q theta - p| <= ell0 E^-r, ell0 = 0.4 b / X1
    bool residual_phi_ok = false; // same with ell0 = 0.2 |phi|
    bool nondegenerate = false;   // p_r q_{r+1} != p_{r+1} q_r
    bool ok() const
    {
        return identity_ok && abs_xy_equal && r_bound_ok && x_bound_ok && q_bound_ok && residual_ok &&
               residual_phi_ok && nondegenerate;
    }
};

namespace detail {

// Precision that survives the cancellation in q theta - p.
inline mpfr_prec_t working_precision(const ApproximationContext& c, const Approximant& A, unsigned long r)
{
    auto bits = mpz_sizeinbase(A.q.norm().get_mpz_t(), 2);
    auto ebits = static_cast<mpfr_prec_t>(r) * static_cast<mpfr_prec_t>(c.E.mid_d() > 2 ? std::log2(c.E.mid_d()) + 1 : 1);
    return std::max<mpfr_prec_t>(c.prec, static_cast<mpfr_prec_t>(bits) + ebits + 192);
}

} // namespace detail

inline ApproximantCheck check_approximant(const ApproximationContext& ctx0, unsigned long r)
{
    ApproximantCheck ck;
    ck.r = r;
    ck.A = approximant(ctx0, r);
    const auto next = approximant(ctx0, r + 1);
    ck.nondegenerate = ck.A.p * next.q != next.p * ck.A.q;

    mpfr_prec_t P = detail::working_precision(ctx0, ck.A, r);
    for (int attempt = 0; attempt < 6; ++attempt, P *= 2) {
        ApproximationContext c = P == ctx0.prec ? ctx0 : build_context(make_instance(ctx0.a, ctx0.b), ctx0.X1, ctx0.Y1,
                                                                        sgn(ctx0.u2), P);
        const Complex theta = c.theta();
        const Complex one(Real(1L, P), Real(0L, P));

        Complex p(ck.A.p, P), q(ck.A.q, P);
        ck.residual = (q * theta - p).abs();

        const auto poly = x_polynomial(1, 4, r);
        GaussianRational Xw = eval(poly, c.omega), Yw = eval_reversed(poly, c.omega);
        Complex X(Xw, P), Y(Yw, P), om(c.omega, P);
        Complex R = r_function(r, om);
        ck.identity_error = (theta * Y - X - R).abs();
        const Real tiny(Rational(1, pow(Integer(2), 64)), P);
        ck.identity_ok = ck.identity_error.less(tiny) == true;

        // |X| = |Y| exactly on the unit circle: compare norms as exact rationals
        ck.abs_xy_equal = Xw.norm() == Yw.norm();
        ck.abs_x_minus_abs_y = Real(Rational(Xw.norm() - Yw.norm()), P);

        Real half_phi = c.phi * Real(Rational(1, 2), P);
        Complex sqrt_om = Complex::polar_unit(half_phi);
        Real gap_minus = pow((one - sqrt_om).abs(), 2 * r);
        Real gap_plus = pow((one + sqrt_om).abs(), 2 * r);
        Real r_bound = Real(gamma_ratio_r(r), P) * c.phi.abs() * gap_minus;
        ck.r_bound_ok = R.abs().less(r_bound) != false; // equality allowed
        Real x_bound = Real(rat("1.072") * gamma_ratio_x(r), P) * gap_plus;
        ck.x_bound_ok = X.abs().less(x_bound) == true;

        Real Qr = pow(c.Q, r), Er = pow(c.E, r);
        ck.q_bound_ok = q.abs().less(Real(c.k0, P) * Qr) == true;
        Real lhs = ck.residual * Er;
        ck.residual_ok = lhs.less(Real(c.ell0, P)) != false;
        ck.residual_phi_ok = lhs.less(c.ell0_phi) != false;

        // retry only when a comparison came out undecided
        bool decided = ck.identity_error.less(tiny).has_value() && R.abs().less(r_bound).has_value() &&
                       X.abs().less(x_bound).has_value() && q.abs().less(Real(c.k0, P) * Qr).has_value() &&
                       lhs.less(Real(c.ell0, P)).has_value() && lhs.less(c.ell0_phi).has_value();
        if (decided) break;
    }
    return ck;
}

// ---------------------------------------------------------------------------
// Lower bound for |q theta - p| from the approximation sequence.

/// Smallest positive r0 with |q| < E^r0 / (2 ell0), from exact inputs.
inline unsigned long smallest_r0(const Rational& q_abs, const Rational& E, const Rational& ell0)
{
    if (E <= 1) throw std::invalid_argument("smallest_r0: need E > 1");
    Rational lhs = q_abs * 2 * ell0, Er = E;
    unsigned long r0 = 1;
    while (!(lhs < Er)) {
        Er *= E;
        ++r0;
    }
    return r0;
}

/// Same, with |q|^2 exact and E a ball (escalating precision on ties).
inline unsigned long smallest_r0(const ApproximationContext& ctx, const Integer& q_norm)
{
    // 4 ell0^2 |q|^2 < E^{2 r0}
    const Rational lhs = Rational(q_norm) * 4 * ctx.ell0 * ctx.ell0;
    for (unsigned long r0 = 1;; ++r0) {
        bool below = decide([&](mpfr_prec_t P) {
            ApproximationContext c =
                P == ctx.prec ? ctx : build_context(make_instance(ctx.a, ctx.b), ctx.X1, ctx.Y1, sgn(ctx.u2), P);
            return Real(lhs, P).less(pow(c.E, 2 * r0));
        }, ctx.prec);
        if (below) return r0;
    }
}

struct Lemma21Bound {
    unsigned long r0 = 0;
    Real bound; // 1/(2 k0 Q^{r0+1}) or 1/(2 k0 Q^{r0})
    bool part_b = false;
};

inline Lemma21Bound lemma21_lower_bound(const ApproximationContext& ctx, const GaussianInteger& p,
                                        const GaussianInteger& q, bool use_part_b)
{
    (void)p;
    if (q.is_zero()) throw std::invalid_argument("lemma21_lower_bound: q must be nonzero");
    Lemma21Bound out;
    out.part_b = use_part_b;
    out.r0 = smallest_r0(ctx, q.norm());
    const auto P = ctx.prec;
    unsigned long e = use_part_b ? out.r0 : out.r0 + 1;
    out.bound = Real(1L, P) / (Real(Integer(2), P) * Real(ctx.k0, P) * pow(ctx.Q, e));
    return out;
}

} // namespace qd::hyperg
