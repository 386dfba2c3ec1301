#pragma once

#include "arith.hpp"
#include "pell.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace qd {

struct EquationInstance {
    Integer a, b, D;
};

inline EquationInstance make_instance(const Integer& a, const Integer& b)
{
    if (a < 1 || b < 1) throw std::invalid_argument("instance: a and b must be positive");
    if (gcd(a, b) != 1) throw std::invalid_argument("instance: gcd(a, b) must be 1");
    Integer D = a * a + b * b;
    if (is_perfect_square(D)) throw std::invalid_argument("instance: a^2 + b^2 is a perfect square");
    return {a, b, D};
}

} // namespace qd

namespace qd::quadfam {

using pell::Pair;

/// Primitive class representatives of x^2 - D y^2 = N (Lagrange-Matthews-Mollin).
/// One representative per class modulo the norm-1 units of Z[sqrt D].
inline std::vector<Pair> primitive_classes(const pell::PellData& pd, const Integer& N)
{
    const Integer& D = pd.D;
    Integer n = abs(N);
    std::vector<Pair> reps;
    if (n > Integer(1) << 40) throw std::invalid_argument("primitive_classes: |N| too large for residue enumeration");
    const unsigned long nn = n.get_ui();
    const unsigned long dmod = mpz_fdiv_ui(D.get_mpz_t(), nn);
    std::vector<Integer> roots;
    // z^2 mod n stepped incrementally over 0 <= z <= n/2; -z covers the other half
    unsigned long sq = 0;
    for (unsigned long z = 0; 2 * z <= nn; ++z) {
        if (sq == dmod) {
            roots.emplace_back(z);
            if (z != 0 && 2 * z != nn) roots.emplace_back(-static_cast<long>(z));
        }
        sq = static_cast<unsigned long>((sq + 2 * static_cast<u128>(z) + 1) % nn);
    }
    std::sort(roots.begin(), roots.end());
    for (const Integer& zz : roots) {
        // first row with |Q_{i+1}| = 1 gives G^2 - D B^2 = +-|N|
        pell::pqa_visit(zz, n, D, [&](const pell::PqaRow& row) {
            if (row.Q != 1 && row.Q != -1) return false;
            Integer val = row.G * row.G - D * row.B * row.B;
            if (val == N) reps.push_back({row.G, row.B});
            else if (pd.fund_minus) {
                const auto& [x, y] = *pd.fund_minus;
                reps.push_back({row.G * x + D * row.B * y, row.G * y + row.B * x});
            }
            return true;
        });
    }
    for (auto& r : reps)
        if (sgn(r.y) < 0 || (sgn(r.y) == 0 && sgn(r.x) < 0)) { r.x = -r.x; r.y = -r.y; }
    return reps;
}

namespace detail {

// zeta * conj(xi) / N as (2P/N', 2Q/N') test; `half` admits the order {(t + u sqrt D)/2 : t = u mod 2}.
inline bool unit_quotient(const Integer& D, const Integer& N, const Pair& xi, const Pair& zeta, bool half)
{
    Integer P = zeta.x * xi.x - D * zeta.y * xi.y;
    Integer Q = zeta.y * xi.x - zeta.x * xi.y;
    Integer n = abs(N);
    if (!half) return mpz_divisible_p(P.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(Q.get_mpz_t(), n.get_mpz_t());
    Integer P2 = 2 * P, Q2 = 2 * Q;
    if (!mpz_divisible_p(P2.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(Q2.get_mpz_t(), n.get_mpz_t())) return false;
    Integer T = P2 / n, U = Q2 / n;
    return mpz_even_p(Integer(T - U).get_mpz_t());
}

} // namespace detail

/// Same family: zeta in +-(unit of norm 1) * xi or * conj(xi), units from {(t + u sqrt D)/2}.
inline bool same_orbit(const Integer& D, const Integer& N, const Pair& xi, const Pair& zeta)
{
    return detail::unit_quotient(D, N, xi, zeta, true) || detail::unit_quotient(D, N, {xi.x, -xi.y}, zeta, true);
}

/// Same class over Z[sqrt D] without conjugation (LMM equivalence).
inline bool same_class(const Integer& D, const Integer& N, const Pair& xi, const Pair& zeta)
{
    return detail::unit_quotient(D, N, xi, zeta, false);
}

struct QuadFamilyReport {
    std::vector<Pair> classes;          // LMM classes (Z[sqrt D] units)
    std::vector<Pair> representatives;  // orbits under +-alpha^2 and conjugation
    bool single_family = false;
    bool lemma31_applicable = false;
};

inline bool lemma31_applies(const EquationInstance& inst, const pell::PellData& pd)
{
    if (gcd(inst.a, inst.b) != 1 || is_perfect_square(inst.D) || !pd.neg_pell()) return false;
    Integer b = inst.b;
    if (mpz_even_p(b.get_mpz_t())) {
        Integer h = b / 2;
        if (is_prime_power(h) && mpz_odd_p(h.get_mpz_t())) return true;
    }
    return is_prime_power(b);
}

inline bool lemma31_applies(const EquationInstance& inst)
{
    if (gcd(inst.a, inst.b) != 1 || is_perfect_square(inst.D)) return false;
    return lemma31_applies(inst, pell::solve_pell(inst.D));
}

/// Orbit grouping of the LMM classes; families are compared with the orbit of (a, 1).
inline QuadFamilyReport classify(const EquationInstance& inst, const pell::PellData& pd)
{
    QuadFamilyReport rep;
    const Integer N = -inst.b * inst.b;
    rep.classes = primitive_classes(pd, N);
    for (const auto& c : rep.classes) {
        if (c.x * c.x - inst.D * c.y * c.y != N || gcd(c.x, c.y) != 1)
            throw ConsistencyError("quadfam: class representative fails the norm equation");
        bool seen = false;
        for (const auto& r : rep.representatives)
            if (same_orbit(inst.D, N, r, c)) { seen = true; break; }
        if (!seen) rep.representatives.push_back(c);
    }
    const Pair base{inst.a, 1};
    rep.single_family = !rep.representatives.empty();
    for (const auto& r : rep.representatives)
        if (!same_orbit(inst.D, N, base, r)) rep.single_family = false;
    rep.lemma31_applicable = lemma31_applies(inst, pd);
    if (rep.lemma31_applicable && !rep.single_family)
        throw TheoremViolation("prime-power b predicts a single family but enumeration found " +
                               std::to_string(rep.representatives.size()) + " for (a,b) = (" + str(inst.a) + "," +
                               str(inst.b) + ")");
    return rep;
}

inline QuadFamilyReport enumerate_families(const EquationInstance& inst)
{
    pell::PellData pd = pell::solve_pell(inst.D);
    if (!pd.t1u1) throw std::invalid_argument("enumerate_families: x^2 - Dy^2 = -4 has no solution");
    return classify(inst, pd);
}

/// Nagell-bound brute force: primitive solutions with 0 < y <= sqrt(|N|(x1+1)/(2D)); nullopt past `limit`.
inline std::optional<std::vector<Pair>> nagell_bruteforce(const pell::PellData& pd, const Integer& N,
                                                          unsigned long limit)
{
    Integer n = abs(N);
    Integer bound = isqrt(Integer(n * (pd.fund_plus.x + 1)) / (2 * pd.D)) + 1;
    if (bound > limit) return std::nullopt;
    std::vector<Pair> out;
    for (Integer y = 1; y <= bound; ++y) {
        Integer x;
        if (is_perfect_square(Integer(pd.D * y * y + N), &x) && gcd(x, y) == 1) {
            out.push_back({x, y});
            if (sgn(x) != 0) out.push_back({-x, y});
        }
    }
    return out;
}

} // namespace qd::quadfam
