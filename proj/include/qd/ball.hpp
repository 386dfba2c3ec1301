#pragma once

#include "arith.hpp"
#include "gaussian.hpp"

#include <mpfr.h>

#include <cmath>
#include <functional>
#include <optional>
#include <string>

namespace qd {

inline constexpr mpfr_prec_t kDefaultPrecision = 256;
inline constexpr mpfr_prec_t kRadPrecision = 64;

/// Real ball: the true value lies in [mid - rad, mid + rad].
class Real {
public:
    explicit Real(mpfr_prec_t prec = kDefaultPrecision)
    {
        mpfr_init2(mid_, prec);
        mpfr_init2(rad_, kRadPrecision);
        mpfr_set_zero(mid_, 1);
        mpfr_set_zero(rad_, 1);
    }
    Real(const Rational& q, mpfr_prec_t prec) : Real(prec)
    {
        add_rounding(mpfr_set_q(mid_, q.get_mpq_t(), MPFR_RNDN));
    }
    Real(const Integer& z, mpfr_prec_t prec) : Real(prec)
    {
        add_rounding(mpfr_set_z(mid_, z.get_mpz_t(), MPFR_RNDN));
    }
    Real(long v, mpfr_prec_t prec) : Real(prec) { add_rounding(mpfr_set_si(mid_, v, MPFR_RNDN)); }
    Real(const Real& o) : Real(mpfr_get_prec(o.mid_))
    {
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    Real(Real&& o) noexcept : Real(mpfr_get_prec(o.mid_))
    {
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
    }
    Real& operator=(Real o) noexcept
    {
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
        return *this;
    }
    ~Real()
    {
        mpfr_clear(mid_);
        mpfr_clear(rad_);
    }

    static Real pi(mpfr_prec_t prec)
    {
        Real r(prec);
        r.add_rounding(mpfr_const_pi(r.mid_, MPFR_RNDN));
        return r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(mid_); }
    const __mpfr_struct* mid() const { return mid_; }
    const __mpfr_struct* rad() const { return rad_; }
    double mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    /// Upper bound of |x|.
    Real abs() const
    {
        Real r(*this);
        mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);
        return r;
    }

    bool contains_zero() const { return !certainly_positive() && !certainly_negative(); }

    /// Widens the ball by |e| (midpoint plus radius of e, rounded up).
    void inflate(const Real& e)
    {
        Rad m = e.abs_mid_up();
        mpfr_add(rad_, rad_, m.v, MPFR_RNDU);
        mpfr_add(rad_, rad_, e.rad_, MPFR_RNDU);
    }
    /// Upper endpoint mid + rad as a ball of radius zero (rounded up).
    Real upper() const
    {
        Real r(precision() + kRadPrecision);
        mpfr_add(r.mid_, mid_, rad_, MPFR_RNDU);
        return r;
    }

    // Strict comparisons decided only when the balls are disjoint.
    std::optional<bool> less(const Real& o) const
    {
        Real d = o - *this;
        if (d.certainly_positive()) return true;
        if (d.certainly_nonpositive()) return false;
        return std::nullopt;
    }
    bool certainly_positive() const
    {
        if (mpfr_sgn(mid_) <= 0) return false;
        return mpfr_cmp(mid_, rad_) > 0;
    }
    bool certainly_negative() const
    {
        if (mpfr_sgn(mid_) >= 0) return false;
        mpfr_t t;
        mpfr_init2(t, precision());
        mpfr_neg(t, mid_, MPFR_RNDN);
        bool ok = mpfr_cmp(t, rad_) > 0;
        mpfr_clear(t);
        return ok;
    }
    bool certainly_nonpositive() const
    {
        // mid + rad <= 0
        mpfr_t t;
        mpfr_init2(t, precision() + kRadPrecision);
        mpfr_add(t, mid_, rad_, MPFR_RNDU);
        bool ok = mpfr_sgn(t) <= 0;
        mpfr_clear(t);
        return ok;
    }

    std::string to_string(int digits = 20) const
    {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, mid_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }
    std::string rad_string() const
    {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.3Rg", rad_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    friend Real operator-(const Real& a)
    {
        Real r(a);
        mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
        return r;
    }
    friend Real operator+(const Real& a, const Real& b)
    {
        Real r(std::max(a.precision(), b.precision()));
        int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
        r.add_rounding(t);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) { return a + (-b); }
    friend Real operator*(const Real& a, const Real& b)
    {
        Real r(std::max(a.precision(), b.precision()));
        int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        Rad am = a.abs_mid_up(), bm = b.abs_mid_up();
        Rad x, y, z;
        mpfr_mul(x.v, am.v, b.rad_, MPFR_RNDU);
        mpfr_mul(y.v, bm.v, a.rad_, MPFR_RNDU);
        mpfr_mul(z.v, a.rad_, b.rad_, MPFR_RNDU);
        mpfr_add(r.rad_, x.v, y.v, MPFR_RNDU);
        mpfr_add(r.rad_, r.rad_, z.v, MPFR_RNDU);
        r.add_rounding(t);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b)
    {
        Rad bl = b.abs_lower();
        if (mpfr_sgn(bl.v) <= 0) throw std::domain_error("Real: division by a ball containing zero");
        Real r(std::max(a.precision(), b.precision()));
        int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        // (|a| rb + |b| ra) / (|b| (|b| - rb))
        Rad am = a.abs_mid_up(), bm = b.abs_mid_up(), bmd = b.abs_mid_down();
        Rad num, x, den;
        mpfr_mul(num.v, am.v, b.rad_, MPFR_RNDU);
        mpfr_mul(x.v, bm.v, a.rad_, MPFR_RNDU);
        mpfr_add(num.v, num.v, x.v, MPFR_RNDU);
        mpfr_mul(den.v, bmd.v, bl.v, MPFR_RNDD);
        mpfr_div(r.rad_, num.v, den.v, MPFR_RNDU);
        r.add_rounding(t);
        return r;
    }

    friend Real sqrt(const Real& x)
    {
        Rad lo = x.lower();
        if (mpfr_sgn(lo.v) <= 0) throw std::domain_error("Real: sqrt of a ball reaching <= 0");
        Real r(x.precision());
        int t = mpfr_sqrt(r.mid_, x.mid_, MPFR_RNDN);
        Rad s;
        mpfr_sqrt(s.v, lo.v, MPFR_RNDD);
        mpfr_div(r.rad_, x.rad_, s.v, MPFR_RNDU);
        r.add_rounding(t);
        return r;
    }
    friend Real exp(const Real& x)
    {
        Real r(x.precision());
        int t = mpfr_exp(r.mid_, x.mid_, MPFR_RNDN);
        Rad e, m;
        mpfr_expm1(e.v, x.rad_, MPFR_RNDU);
        mpfr_abs(m.v, r.mid_, MPFR_RNDU);
        mpfr_mul_2si(m.v, m.v, 1, MPFR_RNDU); // covers the midpoint rounding of exp itself
        mpfr_mul(r.rad_, e.v, m.v, MPFR_RNDU);
        r.add_rounding(t);
        return r;
    }
    friend Real log(const Real& x)
    {
        Rad lo = x.lower();
        if (mpfr_sgn(lo.v) <= 0) throw std::domain_error("Real: log of a ball reaching <= 0");
        Real r(x.precision());
        int t = mpfr_log(r.mid_, x.mid_, MPFR_RNDN);
        mpfr_div(r.rad_, x.rad_, lo.v, MPFR_RNDU);
        r.add_rounding(t);
        return r;
    }
    friend Real sin(const Real& x)
    {
        Real r(x.precision());
        int t = mpfr_sin(r.mid_, x.mid_, MPFR_RNDN);
        mpfr_set(r.rad_, x.rad_, MPFR_RNDU);
        r.add_rounding(t);
        return r;
    }
    friend Real cos(const Real& x)
    {
        Real r(x.precision());
        int t = mpfr_cos(r.mid_, x.mid_, MPFR_RNDN);
        mpfr_set(r.rad_, x.rad_, MPFR_RNDU);
        r.add_rounding(t);
        return r;
    }
    /// atan2(y, x); Lipschitz constant 1/|z| on the ball.
    friend Real atan2(const Real& y, const Real& x)
    {
        Real r(std::max(x.precision(), y.precision()));
        int t = mpfr_atan2(r.mid_, y.mid_, x.mid_, MPFR_RNDN);
        Rad hx = x.abs_mid_down(), hy = y.abs_mid_down(), h, s;
        mpfr_hypot(h.v, hx.v, hy.v, MPFR_RNDD);
        mpfr_add(s.v, x.rad_, y.rad_, MPFR_RNDU);
        mpfr_sub(h.v, h.v, s.v, MPFR_RNDD);
        if (mpfr_sgn(h.v) <= 0) throw std::domain_error("Real: atan2 near the origin");
        mpfr_div(r.rad_, s.v, h.v, MPFR_RNDU);
        r.add_rounding(t);
        return r;
    }

private:
    mpfr_t mid_;
    mpfr_t rad_;

    struct Rad {
        mpfr_t v;
        Rad() { mpfr_init2(v, kRadPrecision); mpfr_set_zero(v, 1); }
        Rad(Rad&& o) noexcept { mpfr_init2(v, kRadPrecision); mpfr_swap(v, o.v); }
        Rad(const Rad&) = delete;
        Rad& operator=(const Rad&) = delete;
        ~Rad() { mpfr_clear(v); }
    };

    void add_rounding(int ternary)
    {
        if (ternary == 0 || mpfr_zero_p(mid_)) return;
        // one ulp of mid bounds the round-to-nearest error
        Rad u;
        mpfr_set_ui_2exp(u.v, 1, mpfr_get_exp(mid_) - precision(), MPFR_RNDU);
        mpfr_add(rad_, rad_, u.v, MPFR_RNDU);
    }
    Rad abs_mid_up() const
    {
        Rad r;
        mpfr_abs(r.v, mid_, MPFR_RNDU);
        return r;
    }
    Rad abs_mid_down() const
    {
        Rad r;
        mpfr_abs(r.v, mid_, MPFR_RNDD);
        return r;
    }
    // lower bound of |x| (may be <= 0)
    Rad abs_lower() const
    {
        Rad r;
        mpfr_abs(r.v, mid_, MPFR_RNDD);
        mpfr_sub(r.v, r.v, rad_, MPFR_RNDD);
        return r;
    }
    // lower endpoint mid - rad
    Rad lower() const
    {
        Rad r;
        mpfr_sub(r.v, mid_, rad_, MPFR_RNDD);
        return r;
    }
};

/// Complex ball as a pair of real balls; err() bounds the Euclidean radius.
class Complex {
public:
    Real re, im;

    explicit Complex(mpfr_prec_t prec = kDefaultPrecision) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(const GaussianRational& z, mpfr_prec_t prec) : re(z.re, prec), im(z.im, prec) {}
    Complex(const GaussianInteger& z, mpfr_prec_t prec) : re(z.re, prec), im(z.im, prec) {}

    mpfr_prec_t precision() const { return re.precision(); }
    double err() const { return re.rad_d() + im.rad_d(); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& k) { return {a.re * k, a.im * k}; }
    friend Complex operator/(const Complex& a, const Complex& b)
    {
        Real n = b.re * b.re + b.im * b.im;
        Complex c = a * b.conj();
        return {c.re / n, c.im / n};
    }
    Complex conj() const { return {re, -im}; }
    Real norm() const { return re * re + im * im; }
    Real abs() const
    {
        Real n = norm();
        if (n.certainly_positive()) return sqrt(n);
        // ball touching zero: |z| <= |re| + |im| is a valid enclosure midpoint-free bound
        return re.abs() + im.abs();
    }
    Real arg() const { return atan2(im, re); }

    static Complex polar_unit(const Real& theta) { return {cos(theta), sin(theta)}; }
};

inline Complex pow(const Complex& z, unsigned long e)
{
    Complex r(Real(1L, z.precision()), Real(0L, z.precision()));
    Complex b = z;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

inline Real pow(const Real& x, unsigned long e)
{
    Real r(1L, x.precision());
    Real b = x;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

/// Decides a strict inequality, doubling precision until the balls separate.
inline bool decide(const std::function<std::optional<bool>(mpfr_prec_t)>& test,
                   mpfr_prec_t prec = kDefaultPrecision, mpfr_prec_t max_prec = 1 << 16)
{
    for (mpfr_prec_t p = prec; p <= max_prec; p *= 2) {
        if (auto r = test(p)) return *r;
    }
    throw std::runtime_error("decide: inequality undecided at maximum precision");
}

/// x < q for a rational threshold.
inline std::optional<bool> less_than(const Real& x, const Rational& q)
{
    return x.less(Real(q, x.precision()));
}

} // namespace qd
