// One PASS/FAIL line per acceptance criterion; exit status 1 if any criterion fails.
#include "qcheat/reporting.hpp"

#include <cstdio>
#include <functional>
#include <string>

using namespace qcheat;

namespace {

struct Criterion {
    int id;
    const char* title;
    double time_limit;  // seconds
    std::function<SuiteReport(const SuiteOptions&)> run;
};

}  // namespace

int main() {
    const SuiteOptions o;
    const Criterion criteria[] = {
        {1, "tensor algebra identities", 5.0, suite_algebra},
        {2, "admissible exponent interval", 1.0, suite_roots},
        {3, "discrete geometry exactness", 10.0, suite_geometry},
        {4, "convergence orders m_x 4 -> 8", 120.0, suite_calculus},
        {5, "flow invariants", 60.0, suite_flow},
        {6, "energy derivative formula gate", 180.0, suite_lemma},
        {7, "monotonicity gate", 300.0, [](const SuiteOptions& so) { return suite_theorem(so); }},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        std::string failures;
        bool ok = true;
        double seconds = 0.0;
        try {
            const SuiteReport r = c.run(o);
            seconds = r.seconds;
            for (const Check& k : r.checks) {
                if (k.informational || k.pass) continue;
                ok = false;
                if (!failures.empty()) failures += "; ";
                failures += k.name + " = " + format_double(k.value) + " (limit " + format_double(k.threshold) + ")";
            }
            if (seconds > c.time_limit) {
                ok = false;
                if (!failures.empty()) failures += "; ";
                failures += "runtime " + format_double(seconds) + " s over " + format_double(c.time_limit) + " s";
            }
        } catch (const std::exception& e) {
            ok = false;
            failures = std::string("error: ") + e.what();
        }
        if (!ok) ++failed;
        std::printf("Criterion %d: %s  %s, %.1f s%s%s\n", c.id, ok ? "PASS" : "FAIL", c.title, seconds,
                    failures.empty() ? "" : "  failing: ", failures.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of 7 criteria pass\n", 7 - failed);
    return failed == 0 ? 0 : 1;
}
