#pragma once

#include "arith.hpp"
#include "ball.hpp"
#include "gaussian.hpp"
#include "pell.hpp"
#include "quadfam.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace qd::quartic {

struct GaussianRep {
    Integer r, s;
    int sign_x = 1, sign_b = 1, sign_w = 1;
};

struct QuarticSolution {
    Integer X, Y;
    bool coprime = false;
    std::optional<GaussianRep> witness;

    friend bool operator<(const QuarticSolution& p, const QuarticSolution& q)
    {
        return p.Y != q.Y ? p.Y < q.Y : p.X < q.X;
    }
    friend bool operator==(const QuarticSolution& p, const QuarticSolution& q) { return p.X == q.X && p.Y == q.Y; }
};

inline bool satisfies(const EquationInstance& inst, const Integer& X, const Integer& Y)
{
    Integer Y2 = Y * Y;
    return X * X - inst.D * Y2 * Y2 == -inst.b * inst.b;
}

inline QuarticSolution make_solution(const Integer& X, const Integer& Y)
{
    return {X, Y, gcd(X, Y) == 1, std::nullopt};
}

/// Every Y in [y_lo, y_hi] with D Y^4 - b^2 a square.
inline std::vector<QuarticSolution> direct_scan(const EquationInstance& inst, const Integer& y_lo, const Integer& y_hi,
                                                bool coprime_only)
{
    std::vector<QuarticSolution> out;
    const Integer b2 = inst.b * inst.b;
    Integer top = inst.D * pow(y_hi, 4);
    if (mpz_sizeinbase(top.get_mpz_t(), 2) < 126 && y_hi.fits_ulong_p()) {
        const u128 D = static_cast<u128>(inst.D.get_ui());
        const u128 bb = static_cast<u128>(b2.get_ui());
        for (unsigned long y = y_lo.get_ui(); y <= y_hi.get_ui(); ++y) {
            u128 y2 = static_cast<u128>(y) * y;
            u128 v = D * y2 * y2 - bb;
            std::uint64_t x;
            if (is_perfect_square_u128(v, &x)) {
                auto s = make_solution(Integer(std::to_string(x)), Integer(y));
                if (!coprime_only || s.coprime) out.push_back(s);
            }
        }
        return out;
    }
    for (Integer y = y_lo; y <= y_hi; ++y) {
        Integer x, y2 = y * y;
        if (is_perfect_square(Integer(inst.D * y2 * y2 - b2), &x)) {
            auto s = make_solution(x, y);
            if (!coprime_only || s.coprime) out.push_back(s);
        }
    }
    return out;
}

/// Provenance of a lifted solution: alpha^(2k) with the given sign.
struct LiftedSolution {
    QuarticSolution sol;
    unsigned long k = 0;
    int sign = 1;
};

/// Single-family lift: 2Y^2 = T_2k +- a U_2k, 2X = D U_2k +- a T_2k.
inline std::vector<LiftedSolution> lift_eq15(const EquationInstance& inst, const pell::PellData& pd,
                                             const Integer& y_max)
{
    std::vector<LiftedSolution> out;
    const Integer bound = 2 * y_max * y_max;
    const pell::PellPower a2 = pell::alpha_power(pd, 2);
    pell::PellPower cur = pell::alpha_power(pd, 0);
    for (unsigned long k = 0;; ++k) {
        if (cur.T - inst.a * cur.U > bound) break;
        for (int sign : {1, -1}) {
            Integer twoY2 = cur.T + sign * inst.a * cur.U;
            Integer twoX = inst.D * cur.U + sign * inst.a * cur.T;
            if (sgn(twoY2) <= 0 || twoY2 > bound || mpz_odd_p(twoY2.get_mpz_t()) || mpz_odd_p(twoX.get_mpz_t())) continue;
            Integer Y;
            if (!is_perfect_square(Integer(twoY2 / 2), &Y)) continue;
            QuarticSolution s = make_solution(abs(Integer(twoX / 2)), Y);
            if (!satisfies(inst, s.X, s.Y)) throw ConsistencyError("lift_eq15: lifted point fails the quartic");
            bool dup = std::any_of(out.begin(), out.end(), [&](const LiftedSolution& l) { return l.sol == s; });
            if (!dup) out.push_back({s, k, sign});
        }
        cur = pell::mul(cur, a2, pd.D);
        cur.k = 2 * (k + 1);
    }
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.sol < q.sol; });
    return out;
}

/// Lifting through every LMM class with the norm-1 unit; valid without the single-family hypothesis.
inline std::vector<QuarticSolution> lift_classes(const EquationInstance& inst, const pell::PellData& pd,
                                                 const Integer& y_max)
{
    std::vector<QuarticSolution> out;
    const Integer bound = y_max * y_max;
    const auto& eps = pd.fund_plus;
    auto consider = [&](const Integer& x, const Integer& y) {
        Integer Y;
        Integer ay = abs(y);
        if (ay <= bound && sgn(ay) > 0 && is_perfect_square(ay, &Y)) {
            QuarticSolution s = make_solution(abs(x), Y);
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
        }
    };
    for (const auto& rho : quadfam::primitive_classes(pd, -inst.b * inst.b)) {
        for (int dir : {1, -1}) {
            Integer x = rho.x, y = rho.y, prev = -1;
            if (dir == 1) consider(x, y);
            for (;;) {
                Integer nx = x * eps.x + dir * inst.D * y * eps.y;
                Integer ny = x * eps.y * dir + y * eps.x;
                x = nx;
                y = ny;
                consider(x, y);
                Integer ay = abs(y);
                if (ay > bound && ay > prev && sgn(prev) >= 0) break;
                prev = ay;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::optional<GaussianRep> find_witness(const EquationInstance& inst, const Integer& X, const Integer& Y)
{
    const GaussianInteger ab{inst.a, inst.b};
    for (Integer r = 0; r * r <= Y; ++r) {
        Integer s;
        if (!is_perfect_square(Integer(Y - r * r), &s)) continue;
        for (int w : {1, -1}) {
            GaussianInteger z = ab * pow(GaussianInteger{r, w * s}, 4);
            for (int sx : {1, -1})
                for (int sb : {1, -1}) {
                    if (z.re != sx * X || z.im != sb * inst.b) continue;
                    // (s + w r i)^4 = (r - w s i)^4, so order r < s by flipping the inner sign
                    if (r > s && sgn(s) > 0) return GaussianRep{s, r, sx, sb, -w};
                    return GaussianRep{r, s, sx, sb, w};
                }
        }
    }
    return std::nullopt;
}

/// Witness hypotheses: negative Pell solvable and a single family.
inline bool lemma32_hypotheses(const EquationInstance& inst, const pell::PellData& pd)
{
    return pd.neg_pell() && quadfam::classify(inst, pd).single_family;
}

inline GaussianRep gaussian_witness(const EquationInstance& inst, const QuarticSolution& sol, const pell::PellData& pd)
{
    if (!sol.coprime || !satisfies(inst, sol.X, sol.Y))
        throw HypothesisNotMet("gaussian_witness: needs a coprime solution of the quartic");
    if (sol.Y == 1 && sol.X == inst.a) return GaussianRep{1, 0, 1, 1, 1};
    if (auto w = find_witness(inst, sol.X, sol.Y)) return *w;
    std::string at = "(X,Y) = (" + str(sol.X) + "," + str(sol.Y) + ")";
    if (!lemma32_hypotheses(inst, pd)) throw HypothesisNotMet("gaussian_witness: no witness and Lemma 3.2aa hypotheses fail for " + at);
    throw TheoremViolation("no (r,s) with +-X +- bi = (a+bi)(r +- si)^4 for " + at);
}

inline GaussianRep gaussian_witness(const EquationInstance& inst, const QuarticSolution& sol)
{
    return gaussian_witness(inst, sol, pell::solve_pell(inst.D));
}

struct MethodAgreement {
    std::vector<QuarticSolution> lifted, scanned;
    bool used_eq15 = false;
};

/// Both methods, unsorted comparison left to the caller.
inline MethodAgreement run_methods(const EquationInstance& inst, const pell::PellData& pd, const Integer& y_max,
                                   std::optional<bool> single_family = std::nullopt)
{
    MethodAgreement m;
    bool eq15 = false;
    if (pd.neg_pell()) {
        if (!single_family) single_family = quadfam::classify(inst, pd).single_family;
        eq15 = *single_family;
    }
    m.used_eq15 = eq15;
    if (eq15)
        for (auto& l : lift_eq15(inst, pd, y_max)) m.lifted.push_back(l.sol);
    else
        m.lifted = lift_classes(inst, pd, y_max);
    m.scanned = direct_scan(inst, 1, y_max, true);
    return m;
}

inline std::vector<QuarticSolution> solve_coprime(const EquationInstance& inst, const Integer& y_max,
                                                  const pell::PellData& pd,
                                                  std::optional<bool> single_family = std::nullopt)
{
    if (y_max < 1) throw std::invalid_argument("solve_coprime: y_max must be >= 1");
    MethodAgreement m = run_methods(inst, pd, y_max, single_family);
    if (m.lifted != m.scanned) {
        std::string msg = "solve_coprime: family lifting and direct scan disagree for (" + str(inst.a) + "," +
                          str(inst.b) + "): lifted";
        for (auto& s : m.lifted) msg += " (" + str(s.X) + "," + str(s.Y) + ")";
        msg += " scanned";
        for (auto& s : m.scanned) msg += " (" + str(s.X) + "," + str(s.Y) + ")";
        throw ConsistencyError(msg);
    }
    for (auto& s : m.scanned) {
        s.witness = find_witness(inst, s.X, s.Y);
        if (s.Y == 1 && s.X == inst.a) s.witness = GaussianRep{1, 0, 1, 1, 1};
        if (!s.witness && m.used_eq15)
            throw TheoremViolation("no Gaussian witness for (" + str(s.X) + "," + str(s.Y) + ")");
    }
    return m.scanned;
}

inline std::vector<QuarticSolution> solve_coprime(const EquationInstance& inst, const Integer& y_max)
{
    return solve_coprime(inst, y_max, pell::solve_pell(inst.D));
}

inline std::vector<QuarticSolution> solve_all(const EquationInstance& inst, const Integer& y_max)
{
    auto out = direct_scan(inst, 1, y_max, false);
    for (auto& s : out) {
        if (s.coprime) s.witness = find_witness(inst, s.X, s.Y);
        if (s.Y == 1 && s.X == inst.a) s.witness = GaussianRep{1, 0, 1, 1, 1};
    }
    return out;
}

struct FamilyDecomposition {
    unsigned long k = 0;
    int sign = 1;
    Integer b1, b2, r1, s1;
    bool doubled = false;
};

/// b1, b2, r1, s1 from the exact identity (Y + A)(Y - A) = (b U_k / 2)^2, A = (T_k +- a U_k)/2.
inline FamilyDecomposition decompose_family(const EquationInstance& inst, const QuarticSolution& sol,
                                            const pell::PellData& pd)
{
    if (!sol.coprime || sol.Y <= 1) throw HypothesisNotMet("decompose_family: needs a coprime solution with Y > 1");
    if (!pd.neg_pell()) throw HypothesisNotMet("decompose_family: negative Pell unsolvable");
    std::optional<LiftedSolution> src;
    for (auto& l : lift_eq15(inst, pd, sol.Y))
        if (l.sol == sol) src = l;
    if (!src) throw HypothesisNotMet("decompose_family: solution is not a single-family lift");

    const pell::PellPower pk = pell::alpha_power(pd, src->k);
    const Integer A2 = pk.T + src->sign * inst.a * pk.U;
    if (mpz_odd_p(A2.get_mpz_t())) throw TheoremViolation("decompose_family: T_k +- aU_k is odd");
    const Integer A = A2 / 2;
    const Integer plus = sol.Y + A, minus = sol.Y - A;
    const Integer g = gcd(plus, minus);
    if (g != 1 && g != 2) throw TheoremViolation("decompose_family: gcd(Y + A, Y - A) does not divide 2");
    Integer m, n;
    if (!is_perfect_square(Integer(plus / g), &m) || !is_perfect_square(Integer(minus / g), &n))
        throw TheoremViolation("decompose_family: Y +- A are not (twice) squares");

    FamilyDecomposition fd;
    fd.k = src->k;
    fd.sign = src->sign;
    fd.doubled = (g == 2);
    // split m = b1 s1, n = b2 r1 over the divisors of b (or b/2)
    std::vector<Integer> bases{inst.b};
    if (fd.doubled && mpz_even_p(inst.b.get_mpz_t())) bases.push_back(inst.b / 2);
    for (const Integer& bb : bases) {
        for (Integer b1 = 1; b1 <= bb; ++b1) {
            if (!mpz_divisible_p(bb.get_mpz_t(), b1.get_mpz_t())) continue;
            Integer b2 = bb / b1;
            if (gcd(b1, b2) != 1) continue;
            if (!mpz_divisible_p(m.get_mpz_t(), b1.get_mpz_t()) || !mpz_divisible_p(n.get_mpz_t(), b2.get_mpz_t())) continue;
            Integer s1 = m / b1, r1 = n / b2;
            if (gcd(r1, s1) != 1) continue;
            // (Y+A)(Y-A) = (bU/2)^2 forces b1 b2 r1 s1 g = bU/2
            if (b1 * b2 * r1 * s1 * g * 2 != inst.b * pk.U) continue;
            fd.b1 = b1; fd.b2 = b2; fd.r1 = r1; fd.s1 = s1;
            return fd;
        }
    }
    throw TheoremViolation("decompose_family: no (b1, b2, r1, s1) satisfies (Y + A)(Y - A) = (b U_k / 2)^2");
}

enum class GapStatus { holds, fails, hypothesis_not_met };

/// Y2 > 7.98 (D/b^2) Y1^3 in exact rationals.
inline bool gap_inequality(const Rational& d_over_b2, const Integer& Y1, const Integer& Y2)
{
    return Rational(Y2) > rat("7.98") * d_over_b2 * Rational(pow(Y1, 3));
}

inline GapStatus check_gap(const EquationInstance& inst, const QuarticSolution& s1, const QuarticSolution& s2)
{
    if (!s1.coprime || !s2.coprime || !(s2.Y > s1.Y) || !(s1.Y > 1) || !is_prime_power(inst.b) ||
        !satisfies(inst, s1.X, s1.Y) || !satisfies(inst, s2.X, s2.Y))
        return GapStatus::hypothesis_not_met;
    Rational ratio(inst.D, inst.b * inst.b);
    ratio.canonicalize();
    return gap_inequality(ratio, s1.Y, s2.Y) ? GapStatus::holds : GapStatus::fails;
}

struct LowerBoundReport {
    bool primes_1mod4 = true;
    std::optional<bool> y_gt_half_b;        // negative Pell and single family
    std::optional<bool> y_gt_quarter_b2;    // (c): b = p^m, negative Pell
    std::optional<bool> y_gt_half_b2;       // (c): p odd
    bool violation() const
    {
        return !primes_1mod4 || y_gt_half_b == false || y_gt_quarter_b2 == false || y_gt_half_b2 == false;
    }
};

inline LowerBoundReport y_lower_bound_report(const EquationInstance& inst, const QuarticSolution& sol,
                                             const pell::PellData& pd, std::optional<bool> single_family = std::nullopt)
{
    if (!sol.coprime || sol.Y <= 1) throw HypothesisNotMet("y_lower_bound_report: needs coprime solution with Y > 1");
    LowerBoundReport rep;
    for (auto& [p, e] : factor_small(sol.Y))
        if (mpz_fdiv_ui(p.get_mpz_t(), 4) != 1) rep.primes_1mod4 = false;
    const Rational Y(sol.Y), b(inst.b);
    if (pd.neg_pell()) {
        if (!single_family) single_family = quadfam::classify(inst, pd).single_family;
        if (*single_family) rep.y_gt_half_b = Y > b / 2;
        Integer p;
        unsigned long m = 0;
        if (is_prime_power(inst.b, &p, &m) && m >= 1) {
            rep.y_gt_quarter_b2 = Y > b * b / 4;
            if (p != 2) rep.y_gt_half_b2 = Y > b * b / 2;
        }
    }
    return rep;
}

/// c2 = (2 - c1^2) sqrt(4 - c1^2)
inline Real c2_of_c1(const Real& c1)
{
    const auto P = c1.precision();
    if (!c1.certainly_positive() || c1.less(Real(1L, P)) != true)
        throw std::domain_error("c2_of_c1: c1 must lie in (0, 1)");
    Real sq = c1 * c1;
    return (Real(2L, P) - sq) * sqrt(Real(4L, P) - sq);
}

} // namespace qd::quartic
