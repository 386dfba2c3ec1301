#pragma once

#include "arith.hpp"

#include <ostream>

namespace qd {

/// a + b i over an exact ring (Integer or Rational).
template <class T>
struct Gaussian {
    T re{0};
    T im{0};

    Gaussian() = default;
    Gaussian(T r, T i = T(0)) : re(std::move(r)), im(std::move(i)) {}
    template <class U>
    explicit Gaussian(const Gaussian<U>& o) : re(T(o.re)), im(T(o.im)) {}

    static Gaussian i() { return {T(0), T(1)}; }

    T norm() const { return T(re * re + im * im); }
    Gaussian conj() const { return {re, T(-im)}; }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    Gaussian operator-() const { return {T(-re), T(-im)}; }
    Gaussian& operator+=(const Gaussian& o) { re += o.re; im += o.im; return *this; }
    Gaussian& operator-=(const Gaussian& o) { re -= o.re; im -= o.im; return *this; }
    Gaussian& operator*=(const Gaussian& o)
    {
        T r = re * o.re - im * o.im;
        T s = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(s);
        return *this;
    }
    Gaussian& operator*=(const T& k) { re *= k; im *= k; return *this; }

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator*(Gaussian a, const T& k) { return a *= k; }
    friend Gaussian operator*(const T& k, Gaussian a) { return a *= k; }
    friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Gaussian& z)
    {
        return os << z.re << (sgn(z.im) < 0 ? "" : "+") << z.im << "i";
    }
};

using GaussianInteger = Gaussian<Integer>;
using GaussianRational = Gaussian<Rational>;

template <class T>
Gaussian<T> pow(Gaussian<T> z, unsigned long e)
{
    Gaussian<T> r{T(1), T(0)};
    while (e) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

inline GaussianRational operator/(const GaussianRational& a, const GaussianRational& b)
{
    Rational n = b.norm();
    if (sgn(n) == 0) throw std::domain_error("Gaussian division by zero");
    GaussianRational q = a * b.conj();
    q.re /= n;
    q.im /= n;
    return q;
}

inline bool is_integral(const GaussianRational& z)
{
    return z.re.get_den() == 1 && z.im.get_den() == 1;
}

inline GaussianInteger to_integer(const GaussianRational& z)
{
    if (!is_integral(z)) throw std::domain_error("Gaussian rational is not integral");
    return {z.re.get_num(), z.im.get_num()};
}

/// Exact quotient a/b in Z[i]; nullopt-like failure reported through `ok`.
inline GaussianInteger exact_div(const GaussianInteger& a, const GaussianInteger& b, bool* ok = nullptr)
{
    GaussianRational q = GaussianRational(a) / GaussianRational(b);
    bool integral = is_integral(q);
    if (ok) *ok = integral;
    else if (!integral) throw std::domain_error("Gaussian division not exact");
    return integral ? to_integer(q) : GaussianInteger{};
}

} // namespace qd
