// qdiophant: command-line front end for X^2 - (a^2+b^2) Y^4 = -b^2.
// Exit status: 0 ok, 1 usage or bad input, 2 reproduction failure.

#include "qd/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace qd;
using report::Json;

namespace {

constexpr int kOk = 0, kUsage = 1, kFailure = 2;

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    long precision = kDefaultPrecision;
    unsigned threads = 0;
    std::string format = "json";
};

Integer parse_int(const std::string& s, const char* what)
{
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0) throw Usage(std::string(what) + ": not an integer: " + s);
    return z;
}

long env_long(const char* name, long fallback)
{
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    long x = std::strtol(v, &end, 10);
    if (*end != '\0') throw Usage(std::string(name) + ": not an integer: " + v);
    return x;
}

void emit(const Json& j, const Config& cfg)
{
    if (cfg.format == "csv") throw Usage("--format csv is only available for census scan");
    std::cout << (cfg.format == "text" ? j.dump() : j.dump(2)) << "\n";
}

int cmd_pell(const Config& cfg, const std::string& d)
{
    Integer D = parse_int(d, "D");
    pell::PellData pd;
    try {
        pd = pell::solve_pell(D);
    } catch (const std::invalid_argument& e) {
        throw Usage(e.what());
    }
    emit(report::pell(pd), cfg);
    return kOk;
}

EquationInstance instance(const std::string& a, const std::string& b)
{
    try {
        return make_instance(parse_int(a, "A"), parse_int(b, "B"));
    } catch (const std::invalid_argument& e) {
        throw Usage(e.what());
    }
}

int cmd_families(const Config& cfg, const std::string& a, const std::string& b)
{
    auto inst = instance(a, b);
    auto pd = pell::solve_pell(inst.D);
    emit(report::families(inst, pd, quadfam::classify(inst, pd)), cfg);
    return kOk;
}

int cmd_quartic(const Config& cfg, const std::string& a, const std::string& b, const std::string& ymax, bool all)
{
    auto inst = instance(a, b);
    Integer y = parse_int(ymax, "--ymax");
    if (y < 1 || y > 10000000) throw Usage("--ymax must lie in [1, 1e7]");
    auto sols = all ? quartic::solve_all(inst, y) : quartic::solve_coprime(inst, y);
    emit(report::solutions(sols), cfg);
    return kOk;
}

int cmd_lemma24(const Config& cfg, unsigned long rmax)
{
    if (rmax < 3 || rmax > 2000) throw Usage("--rmax must lie in [3, 2000]");
    auto rep = hyperg::verify_lemma24(rmax, cfg.precision);
    emit(report::lemma24(rep), cfg);
    return rep.ok() ? kOk : kFailure;
}

int cmd_context(const Config& cfg, const std::string& a, const std::string& b, const std::string& x1,
                const std::string& y1, unsigned long rmax)
{
    auto inst = instance(a, b);
    Integer X1 = parse_int(x1, "X1"), Y1 = parse_int(y1, "Y1");
    hyperg::ApproximationContext ctx;
    try {
        ctx = hyperg::build_context(inst, X1, Y1, 1, cfg.precision);
    } catch (const std::invalid_argument& e) {
        throw Usage(e.what());
    }
    Json checks = Json::array();
    bool ok = true;
    for (unsigned long r = 0; r <= rmax; ++r) {
        auto k = hyperg::check_approximant(ctx, r);
        if (r >= 1 && !k.ok()) ok = false;
        checks.push_back(report::approximant_check(k));
    }
    Json cert = nullptr;
    std::string cert_skip;
    try {
        cert = report::certificate(hyperg::case_engine(inst, X1, Y1));
    } catch (const HypothesisNotMet& e) {
        cert_skip = e.what();
    }
    Json out{{"context", report::context(ctx)}, {"approximants", checks}, {"certificate", cert}};
    if (!cert_skip.empty()) out["certificate_skipped"] = cert_skip;
    emit(out, cfg);
    return ok ? kOk : kFailure;
}

census::ScanOptions scan_options(const Config& cfg, const std::string& limit, const std::string& ycut)
{
    census::ScanOptions o;
    o.limit = parse_int(limit, "--limit");
    o.y_cutoff = parse_int(ycut, "--ycutoff");
    o.threads = cfg.threads;
    if (o.limit < 3 || o.limit > 10000000) throw Usage("--limit must lie in [3, 1e7]");
    if (o.y_cutoff < 2 || o.y_cutoff > 10000000) throw Usage("--ycutoff must lie in [2, 1e7]");
    return o;
}

int cmd_scan(const Config& cfg, const std::string& limit, const std::string& ycut, const std::string& csv_path)
{
    auto recs = census::scan(scan_options(cfg, limit, ycut));
    if (cfg.format == "csv") {
        std::cout << report::csv_header() << "\n";
        for (const auto& r : recs) std::cout << report::csv_row(r) << "\n";
    } else {
        for (const auto& r : recs) std::cout << report::record(r).dump() << "\n";
    }
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw Usage("cannot write " + csv_path);
        f << report::csv_header() << "\n";
        for (const auto& r : recs) f << report::csv_row(r) << "\n";
    }
    std::vector<census::PairAB> cand;
    for (const auto* r : census::candidates(recs)) cand.emplace_back(r->a.get_si(), r->b.get_si());
    Json summary{{"records", recs.size()},
                 {"counts", report::counts(census::count_interpretations(recs))},
                 {"candidates", report::pairs(cand)},
                 {"invariants", report::invariants(census::count_invariants(recs))}};
    std::cerr << summary.dump() << "\n";
    return kOk;
}

int cmd_twelve(const Config& cfg)
{
    census::ScanOptions o;
    o.threads = cfg.threads;
    auto recs = census::scan(o);
    auto found = census::filter_twelve(recs);
    auto diff = census::diff_twelve(found);
    auto fc = census::final_check_twelve(found);
    bool fc_ok = std::all_of(fc.begin(), fc.end(), [](const auto& f) { return f.ok; });
    if (cfg.format == "text") {
        for (auto [a, b] : found) std::cout << "(" << a << "," << b << ")\n";
        if (!diff.matches()) {
            std::cerr << "mismatch with the published list: missing " << acceptance::detail::pairs(diff.missing)
                      << ", extra " << acceptance::detail::pairs(diff.extra) << "\n";
        }
    } else {
        Json checks = Json::array();
        for (const auto& f : fc) checks.push_back(report::final_check(f));
        emit(Json{{"pairs", report::pairs(found)},
                  {"matches", diff.matches()},
                  {"missing", report::pairs(diff.missing)},
                  {"extra", report::pairs(diff.extra)},
                  {"counts", report::counts(census::count_interpretations(recs))},
                  {"final_check", checks}},
             cfg);
    }
    for (const auto& f : fc)
        if (!f.ok) std::cerr << "NEW SOLUTION: (" << f.pair.first << "," << f.pair.second << ") has "
                             << f.coprime.size() << " coprime solutions up to Y = " << f.y_bound << "\n";
    return diff.matches() && fc_ok ? kOk : kFailure;
}

int cmd_paper_check(const Config& cfg, bool keep_going)
{
    acceptance::Options opt;
    opt.threads = cfg.threads;
    opt.prec = cfg.precision;
    acceptance::Suite suite(opt);
    Json results = Json::array();
    std::optional<acceptance::Criterion> first_fail;
    for (int id = 1; id <= acceptance::Suite::count; ++id) {
        auto c = suite.run(id);
        if (cfg.format == "text") std::cout << acceptance::line(c) << std::endl;
        results.push_back(report::criterion(c));
        if (!c.passed && !first_fail) first_fail = c;
        if (!c.passed && !keep_going) break;
    }
    if (cfg.format != "text")
        emit(Json{{"passed", !first_fail},
                  {"first_failure", first_fail ? Json("criterion " + std::to_string(first_fail->id) + ": " + first_fail->name)
                                               : Json(nullptr)},
                  {"criteria", results}},
             cfg);
    else if (first_fail)
        std::cout << "FAILED at criterion " << first_fail->id << ": " << first_fail->name << "\n";
    return first_fail ? kFailure : kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Search and verification tools for X^2 - (a^2+b^2) Y^4 = -b^2"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    long precision = 0;
    long threads = -1;
    app.add_option("--precision", precision, "working precision in bits (env QD_PRECISION, default 256)");
    app.add_option("--threads", threads, "census worker threads, 0 = all cores (env QD_THREADS)");
    app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));

    std::string s1, s2, s3, s4, ymax, limit = "181700", ycut = "1700", csv_path;
    bool all = false, keep_going = false;
    unsigned long rmax = 155, ctx_rmax = 3;

    auto* pell = app.add_subcommand("pell", "fundamental solutions of x^2 - D y^2 = 1, -1, -4");
    pell->add_option("D", s1)->required();

    auto* fam = app.add_subcommand("families", "solution families of x^2 - (a^2+b^2) y^2 = -b^2");
    fam->add_option("A", s1)->required();
    fam->add_option("B", s2)->required();

    auto* qrt = app.add_subcommand("quartic", "solutions of the quartic with Y <= ymax");
    qrt->add_option("A", s1)->required();
    qrt->add_option("B", s2)->required();
    qrt->add_option("--ymax", ymax)->required();
    qrt->add_flag("--all", all, "include non-coprime solutions");

    auto* hyp = app.add_subcommand("hyperg", "hypergeometric approximations");
    hyp->require_subcommand(1);
    auto* l24 = hyp->add_subcommand("verify-lemma24", "denominator ratio constants for r <= rmax");
    l24->add_option("--rmax", rmax)->required();
    auto* ctx = hyp->add_subcommand("context", "approximation context and case certificate for one solution");
    ctx->add_option("A", s1)->required();
    ctx->add_option("B", s2)->required();
    ctx->add_option("X1", s3)->required();
    ctx->add_option("Y1", s4)->required();
    ctx->add_option("--rmax", ctx_rmax, "approximants checked for r = 0..rmax (default 3)");

    auto* cen = app.add_subcommand("census", "finite census of (a, b)");
    cen->require_subcommand(1);
    auto* scan = cen->add_subcommand("scan", "JSON-lines records, summary on stderr");
    scan->add_option("--limit", limit)->required();
    scan->add_option("--ycutoff", ycut)->required();
    scan->add_option("--csv", csv_path, "also write the summary CSV to this file");
    auto* twelve = cen->add_subcommand("twelve", "pairs with negative Pell and a single family");

    auto* check = app.add_subcommand("paper-check", "run every acceptance criterion");
    check->add_flag("--keep-going", keep_going, "run all criteria instead of stopping at the first failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        cfg.precision = precision ? precision : env_long("QD_PRECISION", kDefaultPrecision);
        long t = threads >= 0 ? threads : env_long("QD_THREADS", 0);
        if (cfg.precision < 64 || cfg.precision > (1 << 20)) throw Usage("precision must lie in [64, 2^20] bits");
        if (t < 0 || t > 4096) throw Usage("threads must lie in [0, 4096]");
        cfg.threads = static_cast<unsigned>(t);

        if (*pell) return cmd_pell(cfg, s1);
        if (*fam) return cmd_families(cfg, s1, s2);
        if (*qrt) return cmd_quartic(cfg, s1, s2, ymax, all);
        if (*l24) return cmd_lemma24(cfg, rmax);
        if (*ctx) return cmd_context(cfg, s1, s2, s3, s4, ctx_rmax);
        if (*scan) return cmd_scan(cfg, limit, ycut, csv_path);
        if (*twelve) return cmd_twelve(cfg);
        if (*check) return cmd_paper_check(cfg, keep_going);
    } catch (const Usage& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const TheoremViolation& e) {
        std::cerr << "theorem violated: " << e.what() << "\n";
        return kFailure;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency check failed: " << e.what() << "\n";
        return kFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
