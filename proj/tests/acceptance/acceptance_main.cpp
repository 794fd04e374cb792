#include <cstdio>
#include <exception>

#include "dri/bench/acceptance.hpp"

int main() {
    using namespace dri::bench;
    AcceptanceOptions opt;
    opt.cache = dri::TruthCache::from_environment();
    opt.series_table = DRI_SERIES_TABLE;
    int failed = 0;
    try {
        run_acceptance(opt, [&](const CriterionResult& r) {
            std::printf("%s\n", format_result(r).c_str());
            std::fflush(stdout);
            if (!r.passed) ++failed;
        });
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: %s\n", e.what());
        return 2;
    }
    std::printf("%d of 9 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
