#include "qd/census.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace qd;
using namespace qd::census;

namespace {

const CensusRecord* find(const std::vector<CensusRecord>& recs, long a, long b)
{
    for (const auto& r : recs)
        if (r.a == a && r.b == b) return &r;
    return nullptr;
}

bool has(const std::vector<quartic::QuarticSolution>& v, long X, long Y)
{
    return std::any_of(v.begin(), v.end(), [&](const auto& s) { return s.X == X && s.Y == Y; });
}

} // namespace

TEST(YUb, BoundaryIsExact)
{
    for (long b = 1; b < 60; b += 7)
        for (long a = 1; a < 80; a += 9) {
            Integer B(b), D(a * a + b * b);
            Integer y = y_ub(B, D);
            if (sgn(y) > 0) {
                EXPECT_TRUE(passes_y1ub(B, D, y));
            }
            EXPECT_FALSE(passes_y1ub(B, D, Integer(y + 1)));
        }
    // b = 1: 1.26e8 / 16 > Y^8 for Y <= 7 (7^8 = 5764801 < 7875000 < 8^8)
    EXPECT_EQ(y_ub(1, 2), 7);
}

TEST(ScanPair, MatchesDirectScan)
{
    for (long a : {1, 3, 19, 31, 70})
        for (long b : {1, 3, 5, 9, 17}) {
            if (std::gcd(a, b) != 1) continue;
            Integer D(a * a + b * b);
            if (is_perfect_square(D)) continue;
            auto fast = census::detail::scan_pair(D, b, 5000);
            auto slow = quartic::direct_scan({a, b, D}, 2, 5000, false);
            EXPECT_EQ(fast, slow) << a << "," << b;
        }
}

TEST(Scan, SmallLimitAgainstBruteForce)
{
    ScanOptions o;
    o.limit = 3000;
    o.y_cutoff = 200;
    o.threads = 2;
    auto recs = scan(o);
    std::size_t expected = 0;
    for (long a = 1; a * a < 3000; ++a)
        for (long b = 1; a * a + b * b < 3000; ++b) {
            Integer D(a * a + b * b);
            if (std::gcd(a, b) != 1 || is_perfect_square(D)) continue;
            Integer hi = std::max(Integer(199), y_ub(b, D));
            bool hit = false;
            for (Integer y = 2; y <= hi && !hit; ++y)
                hit = is_perfect_square(Integer(D * pow(y, 4) - b * b));
            expected += hit;
            EXPECT_EQ(hit, find(recs, a, b) != nullptr) << a << "," << b;
        }
    EXPECT_EQ(recs.size(), expected);
    for (std::size_t i = 1; i < recs.size(); ++i)
        EXPECT_TRUE(recs[i - 1].D < recs[i].D || (recs[i - 1].D == recs[i].D && recs[i - 1].a < recs[i].a));
}

TEST(Scan, IndependentOfThreadCount)
{
    ScanOptions o;
    o.limit = 8000;
    o.threads = 1;
    auto one = scan(o);
    o.threads = 4;
    auto four = scan(o);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].a, four[i].a);
        EXPECT_EQ(one[i].b, four[i].b);
        EXPECT_EQ(one[i].solutions, four[i].solutions);
        EXPECT_EQ(one[i].single_family, four[i].single_family);
    }
}

TEST(Scan, PublishedRecords)
{
    ScanOptions o;
    o.limit = 1000;
    auto recs = scan(o);
    auto r315 = find(recs, 31, 5);
    ASSERT_NE(r315, nullptr);
    EXPECT_TRUE(has(r315->solutions, 31, 1));
    EXPECT_TRUE(has(r315->solutions, 785, 5));
    EXPECT_TRUE(has(r315->solutions, 3076289, 313));
    EXPECT_EQ(r315->coprime_count(), 2u);
    EXPECT_EQ(*r315->min_Y_ge2, 5);

    auto r199 = find(recs, 19, 9);
    ASSERT_NE(r199, nullptr);
    EXPECT_TRUE(has(r199->solutions, 189, 3));
    auto y41 = std::find_if(r199->solutions.begin(), r199->solutions.end(), [](auto& s) { return s.Y == 41; });
    ASSERT_NE(y41, r199->solutions.end());
    EXPECT_TRUE(y41->coprime);
    // 2 * 41 > 81, so it passes the strictest reading
    EXPECT_TRUE(r199->cand_coprime_half_b2);

    auto r13 = find(recs, 1, 3);
    ASSERT_NE(r13, nullptr);
    EXPECT_TRUE(r13->neg_pell);
    EXPECT_TRUE(r13->single_family);
    EXPECT_TRUE(has(r13->solutions, 79, 5));
}

TEST(Twelve, DiffAgainstPublishedList)
{
    auto d = diff_twelve(published_twelve());
    EXPECT_TRUE(d.matches());
    std::vector<PairAB> got{{1, 1}, {1, 3}, {2, 3}, {3, 7}};
    d = diff_twelve(got);
    EXPECT_FALSE(d.matches());
    EXPECT_EQ(d.extra, (std::vector<PairAB>{{2, 3}}));
    EXPECT_EQ(d.missing.size(), 9u);
}

TEST(Twelve, FilterUsesFlags)
{
    CensusRecord r;
    r.a = 1;
    r.b = 3;
    r.cand_coprime_half_b2 = true;
    r.neg_pell = true;
    r.single_family = true;
    CensusRecord s = r;
    s.a = 2;
    s.single_family = false;
    CensusRecord t = r;
    t.a = 4;
    t.cand_coprime_half_b2 = false;
    t.cand_all = true;
    auto out = filter_twelve({r, s, t});
    EXPECT_EQ(out, (std::vector<PairAB>{{1, 3}}));
}

TEST(FinalCheck, Examples)
{
    auto f315 = final_check(31, 5);
    EXPECT_TRUE(f315.ok);
    ASSERT_EQ(f315.coprime.size(), 2u);
    EXPECT_TRUE(has(f315.coprime, 31, 1));
    EXPECT_TRUE(has(f315.coprime, 3076289, 313));

    // 239^2 - 2 * 13^4 = -1
    auto f11 = final_check(1, 1);
    EXPECT_TRUE(f11.ok);
    ASSERT_EQ(f11.coprime.size(), 2u);
    EXPECT_TRUE(has(f11.coprime, 1, 1));
    EXPECT_TRUE(has(f11.coprime, 239, 13));

    auto f13 = final_check(1, 3);
    ASSERT_EQ(f13.coprime.size(), 2u);
    EXPECT_TRUE(has(f13.coprime, 79, 5));
    EXPECT_GE(f13.y_bound, 1700);

    // b^2 = 1849 dominates the bound
    auto f1843 = final_check(18, 43);
    EXPECT_GE(f1843.y_bound, 1849);
    EXPECT_TRUE(f1843.base_present);
}

TEST(RemarkFamilies, Fixtures)
{
    auto rep = verify_remark_families();
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.example1, 50u);
    EXPECT_EQ(rep.example2, 50u);
    EXPECT_EQ(rep.recurrence, 10u);
    EXPECT_EQ(rep.square_b, 5u);   // b1 = 3, 7, 9, 11, 13
    auto at = [&](const char* fam, long b) {
        for (auto& c : rep.checks)
            if (c.family == fam && c.b == b) return c;
        return FamilyCheck{};
    };
    auto e1 = at("example1", 3);
    EXPECT_EQ(e1.X, 79);
    EXPECT_EQ(e1.Y, 5);
    auto e2 = at("example2", 1);
    EXPECT_EQ(e2.X, 239);
    EXPECT_EQ(e2.Y, 13);
    auto sq = at("square_b", 9);
    EXPECT_EQ(sq.a, 19);
    EXPECT_EQ(sq.X, 189);
    auto rc = at("recurrence", 203);
    EXPECT_EQ(rc.X, 5071);
    EXPECT_FALSE(rep.reported.empty());
}

TEST(Invariants, FlagsViolations)
{
    CensusRecord r;
    r.a = 1;
    r.b = 5;
    r.neg_pell = true;
    r.single_family = true;
    for (long y : {1, 2, 3}) r.solutions.push_back({0, y, true, std::nullopt});
    auto rep = count_invariants({r});
    EXPECT_EQ(rep.two_coprime_violations.size(), 1u);
    EXPECT_TRUE(rep.three_total_violations.empty());
    r.solutions.push_back({0, 4, false, std::nullopt});
    rep = count_invariants({r});
    EXPECT_EQ(rep.three_total_violations.size(), 1u);
    EXPECT_TRUE(rep.family_three_violations.empty());
    r.neg_pell = false;
    EXPECT_TRUE(count_invariants({r}).ok());
}
