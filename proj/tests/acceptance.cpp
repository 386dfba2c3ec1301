// One PASS/FAIL line per acceptance criterion; exit 2 if any fails.
#include "qd/acceptance.hpp"

#include <cstdlib>
#include <iostream>

int main()
{
    qd::acceptance::Options opt;
    if (const char* t = std::getenv("QD_THREADS")) opt.threads = static_cast<unsigned>(std::strtoul(t, nullptr, 10));
    if (const char* p = std::getenv("QD_PRECISION")) opt.prec = static_cast<mpfr_prec_t>(std::strtol(p, nullptr, 10));
    qd::acceptance::Suite suite(opt);
    int failed = 0;
    for (int id = 1; id <= qd::acceptance::Suite::count; ++id) {
        auto c = suite.run(id);
        failed += !c.passed;
        std::cout << qd::acceptance::line(c) << " (" << c.seconds << " s)" << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " of 8 criteria failed" : std::string("all 8 criteria passed")) << "\n";
    return failed ? 2 : 0;
}
