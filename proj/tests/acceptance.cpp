// One line per acceptance criterion: verdict, worst criterion ratio, runtime against its limit.
#include <cstdio>
#include <string>
#include <vector>

#include "cstk/verify.hpp"

namespace {

struct Item {
    const char* label;
    const char* check;
    double limit_seconds;
};

const std::vector<Item> kItems{
    {"orthogonality-2d", "orthogonality-2d", 10},
    {"normalization-closed-form", "kummer-normalization", 1},
    {"kernel-reduction", "kernel-reduction", 5},
    {"generating-function", "generating-function", 2},
    {"pde-eigen-identity", "pde-eigen", 5},
    {"assoc-hermite-orthogonality", "assoc-hermite", 30},
    {"overlap", "overlap", 10},
    {"transform-end-to-end", "transform", 60},
    {"resolution-of-identity", "resolution-identity", 30},
    {"quadrature-self-tests", "quadrature", 1},
};

}  // namespace

int main() {
    cstk::VerifyConfig cfg;
    int failures = 0;
    for (std::size_t i = 0; i < kItems.size(); ++i) {
        const Item& it = kItems[i];
        std::string detail;
        bool ok = false;
        double runtime = 0;
        try {
            const auto r = cstk::run_check(it.check, cfg);
            runtime = r.runtime_seconds;
            ok = r.pass && runtime < it.limit_seconds;
            for (const auto& c : r.criteria) {
                char buf[160];
                std::snprintf(buf, sizeof buf, " %s=%.3g/%.3g", c.name.c_str(), c.value, c.tolerance);
                detail += buf;
            }
        } catch (const std::exception& e) {
            detail = std::string(" error: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("[%s] %2zu %-28s runtime=%.3fs/%.0fs%s\n", ok ? "PASS" : "FAIL", i + 1, it.label, runtime,
                    it.limit_seconds, detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", kItems.size() - failures, kItems.size());
    return failures == 0 ? 0 : 1;
}
