#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qd {

using Integer = mpz_class;
using Rational = mpq_class;
using u128 = unsigned __int128;

struct TheoremViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string str(const Integer& x) { return x.get_str(); }
inline std::string str(const Rational& x) { return x.get_str(); }

inline Rational rat(const char* s)
{
    // decimal literal like "7.98" -> 798/100
    std::string t(s);
    auto dot = t.find('.');
    if (dot == std::string::npos) return Rational(Integer(t, 10));
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    Integer den = 1;
    for (std::size_t i = dot + 1; i < t.size(); ++i) den *= 10;
    Rational q(Integer(digits, 10), den);
    q.canonicalize();
    return q;
}

inline Integer isqrt(const Integer& n)
{
    if (sgn(n) < 0) throw std::domain_error("isqrt: negative input");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

namespace detail {

template <unsigned M>
struct SquareMask {
    std::array<bool, M> ok{};
    constexpr SquareMask()
    {
        for (unsigned k = 0; k < M; ++k) ok[(k * k) % M] = true;
    }
};

inline constexpr SquareMask<64> mask64{};
inline constexpr SquareMask<63> mask63{};
inline constexpr SquareMask<65> mask65{};
inline constexpr SquareMask<11> mask11{};

} // namespace detail

/// Residue prefilter; false means "certainly not a square".
inline bool square_residues_ok(const Integer& n)
{
    if (!detail::mask64.ok[mpz_fdiv_ui(n.get_mpz_t(), 64)]) return false;
    unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 63UL * 65 * 11);
    return detail::mask63.ok[r % 63] && detail::mask65.ok[r % 65] && detail::mask11.ok[r % 11];
}

inline bool is_perfect_square(const Integer& n, Integer* root = nullptr)
{
    if (sgn(n) < 0) return false;
    if (!square_residues_ok(n)) return false;
    Integer s, rem;
    mpz_sqrtrem(s.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    if (sgn(rem) != 0) return false;
    if (root) *root = s;
    return true;
}

inline std::uint64_t isqrt_u128(u128 n)
{
    if (n == 0) return 0;
    // long double has a 64-bit mantissa; correct by at most a few steps
    auto x = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
    while (static_cast<u128>(x) * x > n) --x;
    while (static_cast<u128>(x + 1) * (x + 1) <= n) ++x;
    return x;
}

inline bool is_perfect_square_u128(u128 n, std::uint64_t* root = nullptr)
{
    if (!detail::mask64.ok[static_cast<unsigned>(n & 63)]) return false;
    unsigned r = static_cast<unsigned>(n % (63u * 65 * 11));
    if (!detail::mask63.ok[r % 63] || !detail::mask65.ok[r % 65] || !detail::mask11.ok[r % 11]) return false;
    std::uint64_t s = isqrt_u128(n);
    if (static_cast<u128>(s) * s != n) return false;
    if (root) *root = s;
    return true;
}

inline bool is_prime(const Integer& p)
{
    return sgn(p) > 0 && mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

inline long padic_val(const Integer& p, const Integer& x)
{
    if (sgn(x) == 0) throw std::domain_error("padic_val: zero");
    if (!is_prime(p)) throw std::domain_error("padic_val: p is not prime");
    Integer t = x;
    return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
}

inline long padic_val(const Integer& p, const Rational& x)
{
    if (sgn(x) == 0) throw std::domain_error("padic_val: zero");
    return padic_val(p, x.get_num()) - padic_val(p, x.get_den());
}

inline long v2(const Integer& x)
{
    if (sgn(x) == 0) throw std::domain_error("v2: zero");
    return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
}

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer pow(const Integer& b, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rational pow(const Rational& b, unsigned long e)
{
    Rational r(pow(b.get_num(), e), pow(b.get_den(), e));
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Perfect power p^m (m >= 0) test; returns the prime through *p when m >= 1.
inline bool is_prime_power(const Integer& n, Integer* p = nullptr, unsigned long* m = nullptr)
{
    if (n == 1) {
        if (m) *m = 0;
        return true;
    }
    if (n < 2) return false;
    for (unsigned long e = mpz_sizeinbase(n.get_mpz_t(), 2); e >= 1; --e) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0 && is_prime(root)) {
            if (p) *p = root;
            if (m) *m = e;
            return true;
        }
    }
    return false;
}

/// Trial-division factorization; adequate for the Y values met at desk scale.
inline std::vector<std::pair<Integer, unsigned>> factor_small(Integer n)
{
    std::vector<std::pair<Integer, unsigned>> out;
    if (n < 2) return out;
    for (Integer q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) {
            n /= q;
            ++e;
        }
        if (e) out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

} // namespace qd

namespace qd {

/// The hypotheses of a check do not hold for the given input.
struct HypothesisNotMet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace qd
