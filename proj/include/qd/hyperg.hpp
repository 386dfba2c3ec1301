#pragma once

#include "arith.hpp"
#include "ball.hpp"
#include "gaussian.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace qd::hyperg {

/// X_{m,n,r}(z) = 2F1(-r-nu, -r; 1-nu; z), nu = m/n, as exact coefficients of z^k.
struct ApproxPolynomial {
    unsigned long m = 0, n = 0, r = 0;
    std::vector<Rational> coeffs;
};

inline ApproxPolynomial x_polynomial(unsigned long m, unsigned long n, unsigned long r)
{
    if (m == 0 || m >= n) throw std::invalid_argument("x_polynomial: need 0 < m < n");
    if (std::gcd(m, n) != 1) throw std::invalid_argument("x_polynomial: m and n must be coprime");
    const Rational nu(m, n);
    ApproxPolynomial p{m, n, r, {Rational(1)}};
    p.coeffs.reserve(r + 1);
    const Rational rr(r);
    for (unsigned long k = 0; k < r; ++k) {
        const Rational kk{k};
        Rational c = p.coeffs.back() * (-rr - nu + kk) * (-rr + kk) / ((1 - nu + kk) * (kk + 1));
        p.coeffs.push_back(c);
    }
    return p;
}

inline Integer denominator_lcm(const std::vector<Rational>& cs)
{
    Integer d = 1;
    for (const auto& c : cs) d = lcm(d, c.get_den());
    return d;
}

/// D_{n,r}: lcm of coefficient denominators over every admissible m.
inline Integer big_d(unsigned long n, unsigned long r)
{
    if (n < 2) throw std::invalid_argument("big_d: need n >= 2");
    Integer d = 1;
    for (unsigned long m = 1; m < n; ++m)
        if (std::gcd(m, n) == 1) d = lcm(d, denominator_lcm(x_polynomial(m, n, r).coeffs));
    return d;
}

/// Denominator of X_{1,4,r} alone; the approximants use this one.
inline Integer d_one(unsigned long r) { return denominator_lcm(x_polynomial(1, 4, r).coeffs); }

template <class T>
Gaussian<T> eval(const ApproxPolynomial& p, const Gaussian<T>& z)
{
    Gaussian<T> acc{T(0), T(0)};
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
        acc *= z;
        acc.re += T(*it);
    }
    return acc;
}

/// Y(z) = z^r X(1/z): coefficients reversed.
template <class T>
Gaussian<T> eval_reversed(const ApproxPolynomial& p, const Gaussian<T>& z)
{
    Gaussian<T> acc{T(0), T(0)};
    for (const auto& c : p.coeffs) {
        acc *= z;
        acc.re += T(c);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Script N_{d,n}: prod over p | n of p^min(v_p(d)/2, v_p(n) + 1/(p-1)).

struct ScriptN {
    std::vector<std::pair<Integer, Rational>> factors; // (p, exponent)

    /// For a pure 2-power, the exponent of 2 in N^2 (an integer).
    long two_exponent_doubled() const
    {
        if (factors.size() != 1 || factors[0].first != 2) throw std::logic_error("ScriptN: not a power of 2");
        Rational e2 = factors[0].second * 2;
        return e2.get_num().get_si();
    }
    Real value(mpfr_prec_t prec) const
    {
        Real v(1L, prec);
        for (const auto& [p, e] : factors) v = v * exp(Real(e, prec) * log(Real(p, prec)));
        return v;
    }
    std::string to_string() const
    {
        std::string s;
        for (const auto& [p, e] : factors) {
            if (!s.empty()) s += "*";
            s += str(p) + "^(" + str(e) + ")";
        }
        return s.empty() ? "1" : s;
    }
};

inline ScriptN script_n(const Integer& d, unsigned long n)
{
    if (sgn(d) == 0) throw std::invalid_argument("script_n: d must be nonzero");
    ScriptN out;
    for (const auto& [p, mult] : factor_small(Integer(n))) {
        Rational cap = Rational(long(mult)) + Rational(1, Integer(p - 1));
        Rational half(padic_val(p, d), 2);
        half.canonicalize();
        out.factors.emplace_back(p, std::min(half, cap));
    }
    return out;
}

// ---------------------------------------------------------------------------
// N_{d,4,r} in Z[i]. With s the shift so that X(1 - s x) carries s^j on x^j,
// (D/N) X(1 - s x) must have Gaussian-integer coefficients. The 2-part is a power
// of 1+i; the odd part is a rational integer.

struct NCap {
    Integer odd = 1;
    long k = 0; // exponent of (1+i)

    Integer integer() const { return odd * pow(Integer(2), static_cast<unsigned long>(k / 2)); }
    GaussianInteger gaussian() const
    {
        GaussianInteger g = pow(GaussianInteger{1, 1}, static_cast<unsigned long>(k));
        return g * odd;
    }
    /// |N|^2 = odd^2 2^k
    Integer abs_squared() const { return odd * odd * pow(Integer(2), static_cast<unsigned long>(k)); }
};

/// Integers D e_j with e_j = sum_k c_k binom(k, j): X(1 - y) = sum_j (-1)^j e_j y^j.
inline std::vector<Integer> shifted_numerators(const ApproxPolynomial& p, const Integer& D)
{
    const auto r = p.r;
    std::vector<Integer> Dc(r + 1);
    for (unsigned long k = 0; k <= r; ++k) {
        Rational t = p.coeffs[k] * D;
        if (t.get_den() != 1) throw ConsistencyError("shifted_numerators: D does not clear denominators");
        Dc[k] = t.get_num();
    }
    std::vector<Integer> e(r + 1);
    for (unsigned long j = 0; j <= r; ++j) {
        Integer s = 0;
        for (unsigned long k = j; k <= r; ++k) s += Dc[k] * binomial(k, j);
        e[j] = s;
    }
    return e;
}

/// d < 0 with odd part of |d| a perfect square (the only shape the contexts produce).
inline NCap n_cap(const Integer& d, unsigned long n, unsigned long r)
{
    if (n != 4) throw std::invalid_argument("n_cap: only n = 4 is supported");
    if (sgn(d) >= 0) throw std::invalid_argument("n_cap: d must be negative");
    const Integer ad = abs(d);
    const long v = v2(ad);
    Integer odd_part = ad;
    mpz_tdiv_q_2exp(odd_part.get_mpz_t(), odd_part.get_mpz_t(), static_cast<mp_bitcnt_t>(v));
    Integer s_odd;
    if (!is_perfect_square(odd_part, &s_odd)) throw std::invalid_argument("n_cap: odd part of |d| must be a square");

    const auto p = x_polynomial(1, 4, r);
    const auto e = shifted_numerators(p, d_one(r));
    NCap out;
    bool first = true;
    Integer g = 0, spow = 1;
    for (unsigned long j = 0; j <= r; ++j, spow *= s_odd) {
        if (sgn(e[j]) == 0) continue;
        long kj = 2 * v2(e[j]) + static_cast<long>(j) * v;
        out.k = first ? kj : std::min(out.k, kj);
        first = false;
        g = gcd(g, Integer(e[j] * spow));
    }
    mpz_tdiv_q_2exp(g.get_mpz_t(), g.get_mpz_t(), static_cast<mp_bitcnt_t>(v2(g)));
    out.odd = g;
    return out;
}

// ---------------------------------------------------------------------------
// Gamma ratios for nu = 1/4, exact.

/// Gamma(3/4) r! / Gamma(r + 3/4) = r! / prod_{k<r} (k + 3/4)
inline Rational gamma_ratio_x(unsigned long r)
{
    Rational q(1);
    for (unsigned long k = 0; k < r; ++k) q *= Rational(long(k + 1)) / (Rational(long(k)) + Rational(3, 4));
    return q;
}

/// Gamma(r + 5/4) / (Gamma(1/4) r!) = prod_{k<=r} (k + 1/4) / r!
inline Rational gamma_ratio_r(unsigned long r)
{
    Rational q(1, 4);
    for (unsigned long k = 1; k <= r; ++k) q *= (Rational(long(k)) + Rational(1, 4)) / Rational(long(k));
    return q;
}

// ---------------------------------------------------------------------------
// Hypergeometric series with a rigorous tail bound (|z| < 1, real parameters).

inline Complex hyp2f1(const Rational& a, const Rational& b, const Rational& c, const Complex& z)
{
    const auto P = z.precision();
    if (c <= 0 && c.get_den() == 1) throw std::invalid_argument("hyp2f1: c is a non-positive integer");
    Real zabs = z.abs().upper();
    if (zabs.less(Real(1L, P)) != true) throw std::domain_error("hyp2f1: need |z| < 1");

    Complex sum(Real(1L, P), Real(0L, P));
    Complex term = sum;
    const Real eps(Rational(1, pow(Integer(2), static_cast<unsigned long>(P + 8))), P);
    // ratios (a+n)(b+n)/((c+n)(n+1)) are monotone once n exceeds every -parameter
    Rational lead = std::max<Rational>({Rational(0), Rational(-a), Rational(-b), Rational(-c)}) + 1;
    for (unsigned long n = 0;; ++n) {
        const Rational nn{long(n)};
        Rational f = (a + nn) * (b + nn) / ((c + nn) * (nn + 1));
        if (sgn(f) == 0) return sum; // terminating series
        term = term * z * Real(f, P);
        sum = sum + term;
        if (nn + 1 < lead) continue;
        Rational n1 = nn + 1;
        Rational ga = (a + n1) / (n1 + 1), gb = (b + n1) / (c + n1);
        Rational bound = std::max(Rational(1), ga) * std::max(Rational(1), gb);
        Real rho = zabs * Real(bound, P);
        if (rho.less(Real(Rational(7, 8), P)) != true) continue;
        Real tabs = term.abs().upper();
        Real tail = tabs * rho / (Real(1L, P) - rho);
        if (tail.less(eps) == true) {
            sum.re.inflate(tail);
            sum.im.inflate(tail);
            return sum;
        }
    }
}

/// R_{1,4,r}(z) = (z-1)^{2r+1} [nu..(r+nu)] / [(r+1)..(2r+1)] 2F1(r+1-nu, r+1; 2r+2; 1-z)
inline Complex r_function(unsigned long r, const Complex& z)
{
    const auto P = z.precision();
    const Rational nu(1, 4);
    Rational k(1);
    for (unsigned long j = 0; j <= r; ++j) k *= Rational(long(j)) + nu;
    for (unsigned long j = r + 1; j <= 2 * r + 1; ++j) k /= Rational(long(j));
    Complex one(Real(1L, P), Real(0L, P));
    Complex zm1 = z - one;
    Complex F = hyp2f1(Rational(long(r + 1)) - nu, Rational(long(r + 1)), Rational(long(2 * r + 2)), one - z);
    return pow(zm1, 2 * r + 1) * F * Real(k, P);
}

// ---------------------------------------------------------------------------
// Denominator ratios per class of d, normalised by (e^{1.68} / scriptN)^r.

struct Lemma24Row {
    unsigned long r = 0;
    NCap N;
    Integer D;
    Real lhs1, lhs2; // divided by (e^{1.68} / scriptN)^r
    bool below1 = false, below2 = false;
};

struct Lemma24Class {
    Integer d;
    ScriptN scriptN;
    std::vector<Lemma24Row> rows;
    unsigned long argmax1 = 0, argmax2 = 0;
    bool bounds_hold = false; // for every r >= 1
    bool maxima_at_3 = false;
    std::optional<unsigned long> first_failure;
};

struct Lemma24Report {
    unsigned long r_max = 0;
    std::vector<Lemma24Class> classes;
    bool r0_flagged = false; // r = 0 exceeds both constants
    bool ok() const
    {
        return std::all_of(classes.begin(), classes.end(),
                           [](const Lemma24Class& c) { return c.bounds_hold && c.maxima_at_3; });
    }
};

inline const Rational& c41() { static const Rational v = rat("0.83"); return v; }
inline const Rational& c42() { static const Rational v = rat("0.2"); return v; }
inline const Rational& log_d4() { static const Rational v = rat("1.68"); return v; }

/// Strict a < b between balls, escalating through the supplied builder.
template <class Build>
bool ball_less(Build&& build, mpfr_prec_t prec = kDefaultPrecision)
{
    return decide([&](mpfr_prec_t p) {
        auto [x, y] = build(p);
        return x.less(y);
    }, prec);
}

inline Lemma24Row lemma24_row(const Integer& d, unsigned long r, mpfr_prec_t prec)
{
    Lemma24Row row;
    row.r = r;
    row.D = d_one(r);
    row.N = n_cap(d, 4, r);
    const long t = static_cast<long>(r) * script_n(d, 4).two_exponent_doubled() - row.N.k;
    // (scriptN^r / |N|)^2 = 2^t / odd^2
    auto value = [&](const Rational& gamma, mpfr_prec_t p) {
        Rational base = gamma * row.D / row.N.odd;
        Rational sq = base * base;
        if (t >= 0) sq *= Rational(pow(Integer(2), static_cast<unsigned long>(t)));
        else sq /= Rational(pow(Integer(2), static_cast<unsigned long>(-t)));
        return sqrt(Real(sq, p)) * exp(Real(-log_d4() * long(r), p));
    };
    row.lhs1 = value(gamma_ratio_x(r), prec);
    row.lhs2 = value(gamma_ratio_r(r), prec);
    row.below1 = ball_less([&](mpfr_prec_t p) { return std::pair{value(gamma_ratio_x(r), p), Real(c41(), p)}; }, prec);
    row.below2 = ball_less([&](mpfr_prec_t p) { return std::pair{value(gamma_ratio_r(r), p), Real(c42(), p)}; }, prec);
    return row;
}

/// Classes of d met by the contexts: v2(|d|) = 1 (ab odd), 2, 4, 6 (scriptN = sqrt2, 2, 4, 8).
inline std::vector<Integer> lemma24_classes() { return {-2, -4, -16, -64}; }

inline Lemma24Report verify_lemma24(unsigned long r_max, mpfr_prec_t prec = kDefaultPrecision)
{
    if (r_max < 3) throw std::invalid_argument("verify_lemma24: r_max must be at least 3");
    Lemma24Report rep;
    rep.r_max = r_max;
    for (const auto& d : lemma24_classes()) {
        Lemma24Class cls;
        cls.d = d;
        cls.scriptN = script_n(d, 4);
        for (unsigned long r = 0; r <= r_max; ++r) cls.rows.push_back(lemma24_row(d, r, prec));
        const auto& r0 = cls.rows[0];
        if (!r0.below1 && !r0.below2) rep.r0_flagged = true;
        cls.bounds_hold = true;
        cls.argmax1 = cls.argmax2 = 1;
        for (unsigned long r = 1; r <= r_max; ++r) {
            const auto& row = cls.rows[r];
            if (!(row.below1 && row.below2)) {
                cls.bounds_hold = false;
                if (!cls.first_failure) cls.first_failure = r;
            }
            if (cls.rows[cls.argmax1].lhs1.less(row.lhs1) == true) cls.argmax1 = r;
            if (cls.rows[cls.argmax2].lhs2.less(row.lhs2) == true) cls.argmax2 = r;
        }
        // r = 3 must beat every other r >= 1 strictly
        cls.maxima_at_3 = true;
        for (unsigned long r = 1; r <= r_max; ++r) {
            if (r == 3) continue;
            if (cls.rows[r].lhs1.less(cls.rows[3].lhs1) != true || cls.rows[r].lhs2.less(cls.rows[3].lhs2) != true)
                cls.maxima_at_3 = false;
        }
        rep.classes.push_back(std::move(cls));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// |2F1(r+1-nu, r+1; 2r+2; 1-omega)| >= 1 on the unit circle with Re(omega) >= 0.

struct Sample22e {
    unsigned long r = 0;
    long j = 0; // theta = (pi/2) j / samples
    Real value;
    bool at_least_one = false;
    std::optional<bool> direct_agrees; // only where |1 - omega| <= 3/4
};

struct Report22e {
    unsigned long samples = 0;
    std::vector<Sample22e> rows;
    bool min_at_one = false;
    bool ok() const
    {
        return min_at_one && std::all_of(rows.begin(), rows.end(), [](const Sample22e& s) {
                   return s.at_least_one && s.direct_agrees.value_or(true);
               });
    }
};

/// Via F(a,b;2b;z) = (1-z)^{-a/2} F(a/2, b-a/2; b+1/2; z^2/(4z-4)); with z = 1 - e^{i theta}
/// the new argument is sin^2(theta/2) and |(1-z)^{-a/2}| = 1.
inline Real abs_f22e(unsigned long r, const Real& theta)
{
    const auto P = theta.precision();
    const Rational a = Rational(long(r + 1)) - Rational(1, 4), b{long(r + 1)};
    Real s = sin(theta * Real(Rational(1, 2), P));
    Complex x(s * s, Real(0L, P));
    Complex F = hyp2f1(a / 2, b - a / 2, b + Rational(1, 2), x);
    return F.re;
}

inline Report22e verify_22e(unsigned long samples, mpfr_prec_t prec = kDefaultPrecision)
{
    if (samples < 1) throw std::invalid_argument("verify_22e: samples must be at least 1");
    Report22e rep;
    rep.samples = samples;
    const Real pi = Real::pi(prec);
    rep.min_at_one = true;
    for (unsigned long r = 1; r <= 8; ++r) {
        const Rational a = Rational(long(r + 1)) - Rational(1, 4), b{long(r + 1)}, c{long(2 * r + 2)};
        for (long j = -long(samples); j <= long(samples); ++j) {
            Sample22e s;
            s.r = r;
            s.j = j;
            Real theta = pi * Real(Rational(j, long(2 * samples)), prec);
            s.value = abs_f22e(r, theta);
            // undecided against 1 means within the error radius, which is accepted
            s.at_least_one = s.value.less(Real(1L, prec)) != true;
            if (j == 0) {
                if (s.value.less(Real(1L, prec)) == true || Real(1L, prec).less(s.value) == true) rep.min_at_one = false;
            } else if (Real(1L, prec).less(s.value) != true) {
                rep.min_at_one = false;
            }
            Complex omega = Complex::polar_unit(theta);
            Complex one(Real(1L, prec), Real(0L, prec));
            Complex z = one - omega;
            if (z.abs().less(Real(Rational(3, 4), prec)) == true) {
                Real direct = hyp2f1(a, b, c, z).abs();
                Real diff = (direct - s.value).abs();
                s.direct_agrees = diff.less(Real(Rational(1, pow(Integer(2), 64)), prec)) == true;
            }
            rep.rows.push_back(std::move(s));
        }
    }
    return rep;
}

} // namespace qd::hyperg
