#pragma once

#include "arith.hpp"
#include "pell.hpp"
#include "quadfam.hpp"
#include "quartic.hpp"

#include <algorithm>
#include <atomic>
#include <iterator>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

namespace qd::census {

using quartic::QuarticSolution;

/// 1.26e8 b^20 / D^4 > Y^8
inline bool passes_y1ub(const Integer& b, const Integer& D, const Integer& Y)
{
    return Integer(126000000) * pow(b, 20) > pow(D, 4) * pow(Y, 8);
}

/// Largest Y >= 0 with passes_y1ub(b, D, Y).
inline Integer y_ub(const Integer& b, const Integer& D)
{
    const Integer num = Integer(126000000) * pow(b, 20), den = pow(D, 4);
    Integer q = num / den, y;
    mpz_root(y.get_mpz_t(), q.get_mpz_t(), 8);
    while (sgn(y) > 0 && !passes_y1ub(b, D, y)) --y;
    while (passes_y1ub(b, D, Integer(y + 1))) ++y;
    return y;
}

struct CensusRecord {
    Integer a, b, D;
    bool has_solution_Y_ge2 = false;
    std::optional<Integer> min_Y_ge2;
    bool passes_y1ub = false;   // for min_Y_ge2
    bool neg_pell = false;
    bool single_family = false;
    std::vector<QuarticSolution> solutions;   // (a,1) plus every hit in the scanned range
    Integer y_max;

    // the four readings of the candidate filter
    bool cand_all = false;
    bool cand_coprime = false;
    bool cand_all_half_b2 = false;
    bool cand_coprime_half_b2 = false;

    std::size_t coprime_count() const
    {
        return std::count_if(solutions.begin(), solutions.end(), [](const auto& s) { return s.coprime; });
    }
};

struct ScanOptions {
    Integer limit = 181700;
    Integer y_cutoff = 1700;
    unsigned threads = 0;   // 0: hardware concurrency
};

namespace detail {

struct ResidueTable {
    unsigned m;
    std::vector<char> ok;
};

template <unsigned M>
ResidueTable residue_table(unsigned long D, unsigned long b2, const qd::detail::SquareMask<M>& mask)
{
    ResidueTable t{M, std::vector<char>(M)};
    for (unsigned y = 0; y < M; ++y) {
        unsigned long y2 = (unsigned long)y * y % M;
        unsigned long v = (D % M * (y2 * y2 % M) % M + M - b2 % M) % M;
        t.ok[y] = mask.ok[v];
    }
    return t;
}

/// Y in [2, y_hi] with D Y^4 - b^2 a square.
inline std::vector<QuarticSolution> scan_pair(const Integer& D, const Integer& b, const Integer& y_hi)
{
    std::vector<QuarticSolution> out;
    const Integer top = D * pow(y_hi, 4);
    if (mpz_sizeinbase(top.get_mpz_t(), 2) >= 126 || !y_hi.fits_ulong_p()) {
        EquationInstance inst{0, b, D};
        return quartic::direct_scan(inst, 2, y_hi, false);
    }
    const unsigned long d = D.get_ui(), bb = Integer(b * b).get_ui(), hi = y_hi.get_ui();
    const auto t64 = residue_table(d, bb, qd::detail::mask64);
    const auto t63 = residue_table(d, bb, qd::detail::mask63);
    const auto t65 = residue_table(d, bb, qd::detail::mask65);
    const auto t11 = residue_table(d, bb, qd::detail::mask11);
    unsigned r64 = 2, r63 = 2, r65 = 2, r11 = 2;
    for (unsigned long y = 2; y <= hi; ++y) {
        if (t64.ok[r64] && t63.ok[r63] && t65.ok[r65] && t11.ok[r11]) {
            u128 y2 = (u128)y * y;
            u128 v = (u128)d * y2 * y2 - bb;
            std::uint64_t x = isqrt_u128(v);
            if ((u128)x * x == v) out.push_back(quartic::make_solution(Integer(std::to_string(x)), Integer(y)));
        }
        if (++r64 == 64) r64 = 0;
        if (++r63 == 63) r63 = 0;
        if (++r65 == 65) r65 = 0;
        if (++r11 == 11) r11 = 0;
    }
    return out;
}

inline unsigned thread_count(unsigned requested)
{
    if (requested) return requested;
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

} // namespace detail

/// Fills the Pell/family fields and the candidate flags.
inline void annotate(CensusRecord& rec, const Integer& y_cutoff)
{
    const EquationInstance inst{rec.a, rec.b, rec.D};
    auto pd = pell::solve_pell(rec.D);
    rec.neg_pell = pd.neg_pell();
    rec.single_family = quadfam::classify(inst, pd).single_family;
    const Integer b2 = rec.b * rec.b;
    for (auto& s : rec.solutions) {
        if (s.coprime) s.witness = s.Y == 1 ? quartic::GaussianRep{1, 0, 1, 1, 1} : quartic::find_witness(inst, s.X, s.Y);
        if (s.Y < 2) continue;
        if (!quartic::satisfies(inst, s.X, s.Y)) throw ConsistencyError("census: recorded point fails the quartic");
        if (!(s.Y < y_cutoff || passes_y1ub(rec.b, rec.D, s.Y))) continue;
        const bool big = 2 * s.Y > b2;
        rec.cand_all = true;
        if (s.coprime) rec.cand_coprime = true;
        if (big) rec.cand_all_half_b2 = true;
        if (big && s.coprime) rec.cand_coprime_half_b2 = true;
    }
}

/// One record per coprime (a,b), D < limit non-square, with a hit Y >= 2 in [2, max(y_cutoff - 1, Y_ub)].
/// Sorted by (D, a); independent of the thread count.
inline std::vector<CensusRecord> scan(const ScanOptions& opt)
{
    if (opt.limit > 10000000) throw std::invalid_argument("census scan: limit above 1e7");
    if (opt.y_cutoff < 2) throw std::invalid_argument("census scan: y_cutoff must be >= 2");
    const unsigned long limit = opt.limit.get_ui();
    const unsigned long a_top = isqrt(Integer(limit)).get_ui() + 1;
    std::atomic<unsigned long> next{1};
    std::mutex mu;
    std::vector<CensusRecord> all;
    std::exception_ptr failure;

    auto worker = [&] {
        std::vector<CensusRecord> local;
        try {
            for (unsigned long a = next++; a <= a_top; a = next++) {
                for (unsigned long b = 1; a * a + b * b < limit; ++b) {
                    if (std::gcd(a, b) != 1) continue;
                    const Integer A(a), B(b), D(a * a + b * b);
                    if (is_perfect_square(D)) continue;
                    Integer hi = std::max(Integer(opt.y_cutoff - 1), y_ub(B, D));
                    auto hits = detail::scan_pair(D, B, hi);
                    if (hits.empty()) continue;
                    CensusRecord rec;
                    rec.a = A;
                    rec.b = B;
                    rec.D = D;
                    rec.y_max = hi;
                    rec.has_solution_Y_ge2 = true;
                    rec.min_Y_ge2 = hits.front().Y;
                    rec.passes_y1ub = passes_y1ub(B, D, hits.front().Y);
                    rec.solutions.push_back(quartic::make_solution(A, 1));
                    rec.solutions.insert(rec.solutions.end(), hits.begin(), hits.end());
                    annotate(rec, opt.y_cutoff);
                    local.push_back(std::move(rec));
                }
            }
        } catch (...) {
            std::lock_guard lk(mu);
            if (!failure) failure = std::current_exception();
            next = a_top + 1;
        }
        std::lock_guard lk(mu);
        for (auto& r : local) all.push_back(std::move(r));
    };

    std::vector<std::thread> pool;
    const unsigned n = detail::thread_count(opt.threads);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    std::sort(all.begin(), all.end(), [](const auto& p, const auto& q) { return p.D != q.D ? p.D < q.D : p.a < q.a; });
    return all;
}

struct InterpretationCounts {
    std::size_t all = 0, coprime = 0, all_half_b2 = 0, coprime_half_b2 = 0;
};

inline InterpretationCounts count_interpretations(const std::vector<CensusRecord>& recs)
{
    InterpretationCounts c;
    for (const auto& r : recs) {
        c.all += r.cand_all;
        c.coprime += r.cand_coprime;
        c.all_half_b2 += r.cand_all_half_b2;
        c.coprime_half_b2 += r.cand_coprime_half_b2;
    }
    return c;
}

/// Candidate pairs: coprime hit with 2Y > b^2 (the reading that gives 35 at D < 181700, cutoff 1700).
inline std::vector<const CensusRecord*> candidates(const std::vector<CensusRecord>& recs)
{
    std::vector<const CensusRecord*> out;
    for (const auto& r : recs)
        if (r.cand_coprime_half_b2) out.push_back(&r);
    return out;
}

using PairAB = std::pair<long, long>;

inline const std::vector<PairAB>& published_twelve()
{
    static const std::vector<PairAB> v{{1, 1},  {1, 3},   {3, 7},  {9, 7},   {11, 3},  {11, 7},
                                       {18, 43}, {19, 9}, {29, 11}, {29, 17}, {31, 5}, {41, 13}};
    return v;
}

struct TwelveDiff {
    std::vector<PairAB> found, missing, extra;
    bool matches() const { return missing.empty() && extra.empty(); }
};

/// Keeps candidates with neg_pell and single_family, sorted by (a, b).
inline std::vector<PairAB> filter_twelve(const std::vector<CensusRecord>& recs)
{
    std::vector<PairAB> out;
    for (const auto* r : candidates(recs))
        if (r->neg_pell && r->single_family) out.emplace_back(r->a.get_si(), r->b.get_si());
    std::sort(out.begin(), out.end());
    return out;
}

inline TwelveDiff diff_twelve(const std::vector<PairAB>& found)
{
    TwelveDiff d;
    d.found = found;
    auto want = published_twelve();
    std::sort(want.begin(), want.end());
    std::set_difference(want.begin(), want.end(), found.begin(), found.end(), std::back_inserter(d.missing));
    std::set_difference(found.begin(), found.end(), want.begin(), want.end(), std::back_inserter(d.extra));
    return d;
}

struct FinalCheck {
    PairAB pair;
    Integer y_bound;
    std::vector<QuarticSolution> coprime;
    bool base_present = false;
    bool ok = false;   // (a,1) plus at most one more
};

/// Coprime solutions with Y <= max(1700, Y_ub, b^2), by family lifting and direct scan.
inline FinalCheck final_check(long a, long b)
{
    auto inst = make_instance(a, b);
    FinalCheck fc;
    fc.pair = {a, b};
    fc.y_bound = std::max({Integer(1700), y_ub(inst.b, inst.D), Integer(inst.b * inst.b)});
    fc.coprime = quartic::solve_coprime(inst, fc.y_bound);
    fc.base_present = std::any_of(fc.coprime.begin(), fc.coprime.end(),
                                  [&](const auto& s) { return s.Y == 1 && s.X == inst.a; });
    fc.ok = fc.base_present && fc.coprime.size() <= 2;
    return fc;
}

inline std::vector<FinalCheck> final_check_twelve(const std::vector<PairAB>& pairs)
{
    std::vector<FinalCheck> out;
    for (auto [a, b] : pairs) out.push_back(final_check(a, b));
    return out;
}

struct FamilyCheck {
    std::string family;
    Integer b, a, X, Y;
    bool holds = false;
};

struct RemarkReport {
    std::vector<FamilyCheck> checks;
    std::vector<FamilyCheck> reported;   // even b' family, not asserted
    std::size_t example1 = 0, example2 = 0, square_b = 0, recurrence = 0;
    bool ok() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
    }
};

namespace detail {

inline bool quartic_holds(const Integer& a, const Integer& b, const Integer& X, const Integer& Y)
{
    Integer D = a * a + b * b, Y2 = Y * Y;
    return X * X - D * Y2 * Y2 == -b * b;
}

} // namespace detail

/// Remark families: the first n_odd valid odd b for both examples, square b = b1^2 for b1 <= b1_max,
/// n_terms terms of b_{n+2} = 50 b_{n+1} - b_n, and the even b' family up to bp_max (reported only).
inline RemarkReport verify_remark_families(std::size_t n_odd = 50, long b1_max = 15, std::size_t n_terms = 10,
                                           long bp_max = 40)
{
    RemarkReport rep;
    auto add = [&](const char* fam, const Integer& b, const Integer& a, const Integer& X, const Integer& Y) {
        rep.checks.push_back({fam, b, a, X, Y, detail::quartic_holds(a, b, X, Y)});
    };
    for (long b = 3; rep.example1 < n_odd; b += 2) {
        if (b % 5 == 0) continue;
        Integer B(b), a = (B * B - 5) / 4;
        add("example1_base", B, a, a, 1);
        add("example1", B, a, (pow(B, 6) + 5 * pow(B, 4) + 15 * B * B - 5) / 16, (B * B + 1) / 2);
        ++rep.example1;
    }
    for (long b = 1; rep.example2 < n_odd; b += 2) {
        Integer B(b), a = (5 * B * B - 1) / 4;
        add("example2_base", B, a, a, 1);
        add("example2", B, a, (3125 * pow(B, 6) + 625 * pow(B, 4) + 75 * B * B - 1) / 16, (25 * B * B + 1) / 2);
        ++rep.example2;
    }
    for (long b1 = 3; b1 <= b1_max; b1 += 2) {
        if (b1 % 5 == 0) continue;
        Integer B = Integer(b1) * b1, a = (B * B - 5) / 4;
        add("square_b", B, a, (pow(B, 3) + 3 * B) / 4, b1);
        ++rep.square_b;
    }
    Integer prev = -3, cur = 4;
    for (std::size_t n = 0; n < n_terms; ++n) {
        Integer v = 624 * prev * prev + 625, r;
        bool sq = is_perfect_square(v, &r);
        rep.checks.push_back({"recurrence", prev, 0, r, 0, sq});
        ++rep.recurrence;
        Integer nx = 50 * cur - prev;
        prev = cur;
        cur = nx;
    }
    for (long bp = 2; bp <= bp_max; bp += 2) {
        if (bp % 10 != 0 && bp % 10 != 2 && bp % 10 != 8) continue;
        Integer P(bp), b = P * P - 1, a = pow(P, 3) / 4 - 3 * P / 2;
        if (sgn(a) <= 0) continue;
        Integer X = P * (pow(P, 6) + 4 * pow(P, 4) + 5 * P * P + 10) / 4;
        rep.reported.push_back({"even_b_prime", b, a, X, b + 2, detail::quartic_holds(a, b, X, Integer(b + 2))});
    }
    return rep;
}

struct InvariantReport {
    std::size_t two_coprime_checked = 0, three_total_checked = 0, family_three_checked = 0;
    std::vector<PairAB> two_coprime_violations, three_total_violations, family_three_violations;
    bool ok() const { return two_coprime_violations.empty() && three_total_violations.empty() && family_three_violations.empty(); }
};

/// Solution-count invariants over the records: at most 2 coprime for b = p^m with negative Pell,
/// at most 3 total for b = p or p^2, at most 3 coprime under the single-family hypothesis.
inline InvariantReport count_invariants(const std::vector<CensusRecord>& recs)
{
    InvariantReport rep;
    for (const auto& r : recs) {
        if (!r.neg_pell) continue;
        const PairAB ab{r.a.get_si(), r.b.get_si()};
        Integer p;
        unsigned long m = 0;
        const bool pp = r.b == 1 || is_prime_power(r.b, &p, &m);
        if (pp) {
            ++rep.two_coprime_checked;
            if (r.coprime_count() > 2) rep.two_coprime_violations.push_back(ab);
        }
        if (pp && (m == 1 || m == 2)) {
            ++rep.three_total_checked;
            if (r.solutions.size() > 3) rep.three_total_violations.push_back(ab);
        }
        if (r.single_family) {
            ++rep.family_three_checked;
            if (r.coprime_count() > 3) rep.family_three_violations.push_back(ab);
        }
    }
    return rep;
}

} // namespace qd::census
