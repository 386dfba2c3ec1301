#pragma once

// JSON and CSV views. Integers and rationals are always strings; reals are decimal strings
// rounded to `digits` significant digits.

#include "acceptance.hpp"
#include "approx.hpp"
#include "case_engine.hpp"
#include "census.hpp"
#include "hyperg.hpp"
#include "pell.hpp"
#include "quadfam.hpp"
#include "quartic.hpp"

#include <json.hpp>

#include <string>

namespace qd::report {

using Json = nlohmann::ordered_json;

inline constexpr int digits = 20;

inline Json num(const Integer& x) { return str(x); }
inline Json num(const Rational& x) { return str(x); }
inline Json num(const Real& x) { return x.to_string(digits); }

inline Json pair(const pell::Pair& p) { return Json{{"x", num(p.x)}, {"y", num(p.y)}}; }

inline Json opt_pair(const std::optional<pell::Pair>& p) { return p ? pair(*p) : Json(nullptr); }

inline Json gaussian(const GaussianInteger& z) { return Json{{"re", num(z.re)}, {"im", num(z.im)}}; }

inline Json pell(const pell::PellData& pd)
{
    return Json{{"D", num(pd.D)},
                {"period_length", pd.period_length},
                {"fund_plus", pair(pd.fund_plus)},
                {"fund_minus", opt_pair(pd.fund_minus)},
                {"t1u1", opt_pair(pd.t1u1)},
                {"neg_pell", pd.neg_pell()}};
}

inline Json families(const EquationInstance& inst, const pell::PellData& pd, const quadfam::QuadFamilyReport& rep)
{
    Json classes = Json::array(), reps = Json::array();
    for (const auto& c : rep.classes) classes.push_back(pair(c));
    for (const auto& r : rep.representatives) reps.push_back(pair(r));
    return Json{{"a", num(inst.a)},
                {"b", num(inst.b)},
                {"D", num(inst.D)},
                {"N", num(Integer(-inst.b * inst.b))},
                {"neg_pell", pd.neg_pell()},
                {"classes", classes},
                {"representatives", reps},
                {"single_family", rep.single_family},
                {"lemma31_applicable", rep.lemma31_applicable}};
}

inline Json solution(const quartic::QuarticSolution& s)
{
    Json w = nullptr;
    if (s.witness)
        w = Json{{"r", num(s.witness->r)},
                 {"s", num(s.witness->s)},
                 {"sign_x", s.witness->sign_x},
                 {"sign_b", s.witness->sign_b},
                 {"sign_w", s.witness->sign_w}};
    return Json{{"X", num(s.X)}, {"Y", num(s.Y)}, {"coprime", s.coprime}, {"witness", w}};
}

inline Json solutions(const std::vector<quartic::QuarticSolution>& v)
{
    Json out = Json::array();
    for (const auto& s : v) out.push_back(solution(s));
    return out;
}

/// One JSON-lines record; the field order is part of the output format.
inline Json record(const census::CensusRecord& r)
{
    return Json{{"a", num(r.a)},
                {"b", num(r.b)},
                {"D", num(r.D)},
                {"has_solution_Y_ge2", r.has_solution_Y_ge2},
                {"min_Y_ge2", r.min_Y_ge2 ? num(*r.min_Y_ge2) : Json(nullptr)},
                {"passes_y1ub", r.passes_y1ub},
                {"neg_pell", r.neg_pell},
                {"single_family", r.single_family},
                {"y_max", num(r.y_max)},
                {"candidate",
                 Json{{"all", r.cand_all},
                      {"coprime", r.cand_coprime},
                      {"all_half_b2", r.cand_all_half_b2},
                      {"coprime_half_b2", r.cand_coprime_half_b2}}},
                {"solutions", solutions(r.solutions)}};
}

inline std::string csv_header() { return "a,b,D,n_solutions,neg_pell,single_family"; }

inline std::string csv_row(const census::CensusRecord& r)
{
    return str(r.a) + "," + str(r.b) + "," + str(r.D) + "," + std::to_string(r.solutions.size()) + "," +
           (r.neg_pell ? "true" : "false") + "," + (r.single_family ? "true" : "false");
}

inline Json counts(const census::InterpretationCounts& c)
{
    return Json{{"all", c.all}, {"coprime", c.coprime}, {"all_half_b2", c.all_half_b2}, {"coprime_half_b2", c.coprime_half_b2}};
}

inline Json pairs(const std::vector<census::PairAB>& v)
{
    Json out = Json::array();
    for (auto [a, b] : v) out.push_back(Json::array({std::to_string(a), std::to_string(b)}));
    return out;
}

inline Json final_check(const census::FinalCheck& f)
{
    return Json{{"a", std::to_string(f.pair.first)},
                {"b", std::to_string(f.pair.second)},
                {"y_bound", num(f.y_bound)},
                {"coprime", solutions(f.coprime)},
                {"base_present", f.base_present},
                {"ok", f.ok}};
}

inline Json invariants(const census::InvariantReport& inv)
{
    return Json{{"at_most_two_coprime", Json{{"checked", inv.two_coprime_checked}, {"violations", pairs(inv.two_coprime_violations)}}},
                {"at_most_three_total", Json{{"checked", inv.three_total_checked}, {"violations", pairs(inv.three_total_violations)}}},
                {"single_family_at_most_three",
                 Json{{"checked", inv.family_three_checked}, {"violations", pairs(inv.family_three_violations)}}}};
}

inline Json lemma24(const hyperg::Lemma24Report& rep)
{
    Json classes = Json::array();
    for (const auto& c : rep.classes) {
        Json rows = Json::array();
        for (const auto& r : c.rows)
            rows.push_back(Json{{"r", r.r},
                                {"N_odd", num(r.N.odd)},
                                {"N_k", r.N.k},
                                {"D", num(r.D)},
                                {"lhs1", num(r.lhs1)},
                                {"lhs2", num(r.lhs2)},
                                {"below1", r.below1},
                                {"below2", r.below2}});
        classes.push_back(Json{{"d", num(c.d)},
                               {"scriptN", c.scriptN.to_string()},
                               {"argmax1", c.argmax1},
                               {"argmax2", c.argmax2},
                               {"bounds_hold", c.bounds_hold},
                               {"maxima_at_3", c.maxima_at_3},
                               {"first_failure", c.first_failure ? Json(*c.first_failure) : Json(nullptr)},
                               {"rows", rows}});
    }
    return Json{{"r_max", rep.r_max},
                {"c1", num(hyperg::c41())},
                {"c2", num(hyperg::c42())},
                {"r0_flagged", rep.r0_flagged},
                {"ok", rep.ok()},
                {"classes", classes}};
}

inline Json context(const hyperg::ApproximationContext& c)
{
    return Json{{"a", num(c.a)},
                {"b", num(c.b)},
                {"D", num(c.D)},
                {"X1", num(c.X1)},
                {"Y1", num(c.Y1)},
                {"u1", num(c.u1)},
                {"u2", num(c.u2)},
                {"g1", num(c.g1)},
                {"g3", num(c.g3)},
                {"g", gaussian(c.g)},
                {"d", num(c.d)},
                {"scriptN", c.scriptN.to_string()},
                {"abs_g_scriptN_sq", num(c.abs_g_scriptN_sq)},
                {"omega", Json{{"re", num(c.omega.re)}, {"im", num(c.omega.im)}}},
                {"tan_phi", num(c.tan_phi)},
                {"tan_phi_approx", num(c.tan_phi_approx)},
                {"phi", num(c.phi)},
                {"theta", Json{{"re", num(c.theta_re)}, {"im", num(c.theta_im)}}},
                {"k0", num(c.k0)},
                {"ell0", num(c.ell0)},
                {"ell0_phi", num(c.ell0_phi)},
                {"Q", num(c.Q)},
                {"E", num(c.E)},
                {"Q_ub2", num(c.Q_ub2)},
                {"E_lb", num(c.E_lb)},
                {"Q_below_ub2", c.Q_below_ub2},
                {"E_above_lb", c.E_above_lb},
                {"phi_within_tan", c.phi_within_tan},
                {"precision_bits", c.prec}};
}

inline Json approximant_check(const hyperg::ApproximantCheck& k)
{
    return Json{{"r", k.r},
                {"p", gaussian(k.A.p)},
                {"q", gaussian(k.A.q)},
                {"residual", num(k.residual)},
                {"identity_error", num(k.identity_error)},
                {"identity_ok", k.identity_ok},
                {"r_bound_ok", k.r_bound_ok},
                {"x_bound_ok", k.x_bound_ok},
                {"q_bound_ok", k.q_bound_ok},
                {"residual_ok", k.residual_ok},
                {"residual_phi_ok", k.residual_phi_ok},
                {"nondegenerate", k.nondegenerate},
                {"ok", k.ok()}};
}

inline Json link(const hyperg::Link& l)
{
    return Json{{"name", l.name}, {"statement", l.statement}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"holds", l.holds}};
}

inline Json case_result(const hyperg::CaseResult& c)
{
    Json links = Json::array();
    for (const auto& l : c.links) links.push_back(link(l));
    return Json{{"name", c.name}, {"closes", c.closes}, {"status", c.status}, {"links", links}};
}

inline Json certificate(const hyperg::CaseCertificate& c)
{
    Json pre = Json::array();
    for (const auto& l : c.preliminaries) pre.push_back(link(l));
    return Json{{"a", num(c.a)},
                {"b", num(c.b)},
                {"D", num(c.D)},
                {"X1", num(c.X1)},
                {"Y1", num(c.Y1)},
                {"preliminaries", pre},
                {"case1", case_result(c.case1)},
                {"case2", case_result(c.case2)},
                {"case3", case_result(c.case3)},
                {"residual_small_set", c.residual_small_set},
                {"overall", c.overall},
                {"notes", c.notes}};
}

inline Json criterion(const acceptance::Criterion& c)
{
    return Json{{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
}

} // namespace qd::report
