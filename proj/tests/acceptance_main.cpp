// Acceptance battery: one pass/fail line per criterion; exit 0 iff all pass.
#include <cstdio>
#include <cstring>

#include "solitonlab/acceptance.hpp"

int main(int argc, char** argv) {
    soliton::AcceptanceConfig cfg;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) cfg.quick = true;
        if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) cfg.jobs = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--n") == 0 && i + 1 < argc)
            cfg.grid_n = static_cast<std::size_t>(std::atoll(argv[++i]));
    }
    cfg.jobs = std::max(cfg.jobs, 2);

    int failures = 0;
    try {
        const auto results = soliton::run_acceptance(cfg);
        for (const auto& r : results) {
            std::printf("[%s] criterion %2d: %s  (%s)\n", r.pass ? " ok " : "FAIL", r.id,
                        r.name.c_str(), r.detail.c_str());
            if (!r.pass) ++failures;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
        return 3;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 4;
    }
    std::printf("all criteria passed\n");
    return 0;
}
