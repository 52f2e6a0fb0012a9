// Acceptance battery: one pass/fail line per criterion, nonzero exit on
// any failure. `dskp-lab verify` runs the same suite.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "dskp/acceptance.hpp"

int main(int argc, char** argv) {
    uint64_t seed = 1;
    for (int i = 1; i + 1 < argc; i += 2)
        if (std::string(argv[i]) == "--seed") seed = std::strtoull(argv[i + 1], nullptr, 10);

    auto results = dskp::run_acceptance_suite(seed);
    int failures = 0;
    for (auto& r : results) {
        std::printf("[%s] %2d  %-50s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.details.c_str());
        failures += !r.pass;
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}
