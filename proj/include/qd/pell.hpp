#pragma once

#include "arith.hpp"

#include <optional>
#include <set>
#include <vector>

namespace qd::pell {

struct ContinuedFraction {
    Integer a0;
    std::vector<Integer> period;
};

struct Pair {
    Integer x, y;
    friend bool operator==(const Pair&, const Pair&) = default;
};

struct PellData {
    Integer D;
    Pair fund_plus;
    std::optional<Pair> fund_minus;
    std::optional<Pair> t1u1;
    std::size_t period_length = 0;

    bool neg_pell() const { return fund_minus.has_value(); }
};

/// alpha^k = (T + U sqrt D)/2
struct PellPower {
    unsigned long k = 0;
    Integer T, U;
};

inline void require_nonsquare(const Integer& D)
{
    if (D <= 1) throw std::invalid_argument("pell: D must exceed 1");
    if (is_perfect_square(D)) throw std::invalid_argument("pell: D is a perfect square");
}

inline ContinuedFraction continued_fraction_sqrt(const Integer& D)
{
    require_nonsquare(D);
    ContinuedFraction cf;
    cf.a0 = isqrt(D);
    Integer m = 0, d = 1, a = cf.a0;
    do {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (cf.a0 + m) / d;
        cf.period.push_back(a);
    } while (a != 2 * cf.a0);
    return cf;
}

/// One row of the PQa algorithm: G_i^2 - D B_i^2 = (-1)^(i+1) Q_{i+1} Q0.
struct PqaRow {
    Integer G, B, P, Q;
};

/// PQa for (P0 + sqrt D)/Q0, with Q0 | P0^2 - D. Calls visit(row) until it returns true or a
/// full period past the preperiod has been produced.
template <class Visit>
void pqa_visit(Integer P, Integer Q, const Integer& D, Visit&& visit)
{
    if (sgn(Q) == 0 || !mpz_divisible_p(Integer(P * P - D).get_mpz_t(), Q.get_mpz_t()))
        throw std::invalid_argument("pqa: Q0 must divide P0^2 - D");
    const Integer s = isqrt(D);
    Integer A2 = 0, A1 = 1, B2 = 1, B1 = 0, G2 = -P, G1 = Q;
    std::set<std::pair<Integer, Integer>> seen;
    Integer a, t;
    for (;;) {
        // floor((P + sqrt D)/Q) for either sign of Q
        t = P + s;
        if (sgn(Q) < 0) t += 1;
        mpz_fdiv_q(a.get_mpz_t(), t.get_mpz_t(), Q.get_mpz_t());
        Integer A = a * A1 + A2, B = a * B1 + B2, G = a * G1 + G2;
        A2.swap(A1); A1.swap(A);
        B2.swap(B1); B1 = B;
        G2.swap(G1); G1 = G;
        P = a * Q - P;
        Q = (D - P * P) / Q;
        if (visit(PqaRow{G1, B1, P, Q})) return;
        // (P, Q) reduced pairs repeat after the preperiod; only those need remembering
        if (sgn(P) > 0 && P <= s && sgn(Q) > 0) {
            if (!seen.emplace(P, Q).second) return;
        }
    }
}

inline std::vector<PqaRow> pqa(const Integer& P, const Integer& Q, const Integer& D)
{
    std::vector<PqaRow> out;
    pqa_visit(P, Q, D, [&](const PqaRow& r) {
        out.push_back(r);
        return false;
    });
    return out;
}

inline PellData solve_pell(const Integer& D)
{
    ContinuedFraction cf = continued_fraction_sqrt(D);
    PellData pd;
    pd.D = D;
    pd.period_length = cf.period.size();
    Integer p2 = 1, p1 = cf.a0, q2 = 0, q1 = 1;
    for (std::size_t i = 0; i + 1 < cf.period.size(); ++i) {
        Integer p = cf.period[i] * p1 + p2, q = cf.period[i] * q1 + q2;
        p2 = p1; p1 = p; q2 = q1; q1 = q;
    }
    Pair last{p1, q1};
    if (cf.period.size() % 2 == 1) {
        pd.fund_minus = last;
        pd.fund_plus = {last.x * last.x + D * last.y * last.y, 2 * last.x * last.y};
    } else {
        pd.fund_plus = last;
    }
    if (mpz_divisible_ui_p(D.get_mpz_t(), 4) && !is_perfect_square(Integer(D / 4))) {
        // x even, y odd: (x/2)^2 - (D/4) y^2 = -1; only the fundamental solution can have odd y
        PellData q = solve_pell(D / 4);
        if (q.fund_minus && mpz_odd_p(q.fund_minus->y.get_mpz_t()))
            pd.t1u1 = Pair{2 * q.fund_minus->x, q.fund_minus->y};
    }
    if (pd.fund_minus) {
        Pair best{2 * pd.fund_minus->x, 2 * pd.fund_minus->y};
        if (mpz_fdiv_ui(D.get_mpz_t(), 8) == 5) {
            pqa_visit(1, 2, D, [&](const PqaRow& row) {
                if (sgn(row.G) > 0 && sgn(row.B) > 0 && row.G * row.G - D * row.B * row.B == -4) {
                    if (row.B < best.y) best = {row.G, row.B};
                    return true;
                }
                return false;
            });
        }
        pd.t1u1 = best;
    }
    return pd;
}

inline PellPower mul(const PellPower& a, const PellPower& b, const Integer& D)
{
    PellPower r;
    r.k = a.k + b.k;
    r.T = (a.T * b.T + D * a.U * b.U) / 2;
    r.U = (a.T * b.U + b.T * a.U) / 2;
    return r;
}

inline PellPower alpha_power(const PellData& pd, unsigned long k)
{
    if (!pd.t1u1) throw std::invalid_argument("alpha_power: x^2 - Dy^2 = -4 is unsolvable for this D");
    PellPower r{0, 2, 0};
    PellPower base{1, pd.t1u1->x, pd.t1u1->y};
    while (k) {
        if (k & 1) r = mul(r, base, pd.D);
        k >>= 1;
        if (k) base = mul(base, base, pd.D);
    }
    return r;
}

struct RecurrenceReport {
    unsigned long checked_upto = 0;
    bool t1_holds = true;      // U_{k+2} = T1 U_{k+1} + U_k
    bool two_t1_holds = true;  // U_{k+2} = 2 T1 U_{k+1} + U_k
};

inline RecurrenceReport recurrence_report(const PellData& pd, unsigned long kmax)
{
    RecurrenceReport rep;
    rep.checked_upto = kmax;
    const Integer& T1 = pd.t1u1.value().x;
    std::vector<PellPower> seq;
    PellPower cur = alpha_power(pd, 0), a1 = alpha_power(pd, 1);
    for (unsigned long k = 0; k <= kmax + 2; ++k) {
        seq.push_back(cur);
        cur = mul(cur, a1, pd.D);
    }
    for (unsigned long k = 0; k <= kmax; ++k) {
        const auto &u0 = seq[k].U, &u1 = seq[k + 1].U, &u2 = seq[k + 2].U;
        const auto &t0 = seq[k].T, &t1 = seq[k + 1].T, &t2 = seq[k + 2].T;
        if (u2 != T1 * u1 + u0 || t2 != T1 * t1 + t0) rep.t1_holds = false;
        if (u2 != 2 * T1 * u1 + u0) rep.two_t1_holds = false;
    }
    return rep;
}

/// Smallest y in [1, y_max] with D y^2 + N a square; the oracle for the CF solver.
inline std::optional<Pair> brute_minimal(const Integer& D, long N, unsigned long y_max)
{
    for (unsigned long y = 1; y <= y_max; ++y) {
        Integer x;
        if (is_perfect_square(Integer(D * y * y + N), &x) && sgn(x) > 0) return Pair{x, Integer(y)};
    }
    return std::nullopt;
}

/// CF result agrees with the brute-force scan: same minimum when it lies within y_max, none otherwise.
inline bool oracle_agrees(const std::optional<Pair>& cf, const std::optional<Pair>& brute, unsigned long y_max)
{
    if (cf && cf->y <= y_max) return brute && *brute == *cf;
    return !brute;
}

} // namespace qd::pell
