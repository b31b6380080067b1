// Runs criteria 1..12 and prints one PASS/FAIL line each, followed by the
// observed values. Exit status is the number of failing criteria.

#include "pwl/acceptance.hpp"

#include <cstdio>
#include <exception>

int main(int argc, char** argv) {
    std::vector<pwl::CriterionResult> results;
    auto suite = argc > 1 ? pwl::parse_suite(argv[1]) : pwl::Suite::full;
    try {
        if (suite) {
            results = pwl::run_suite(*suite);
        } else {
            for (int i = 1; i < argc; ++i) results.push_back(pwl::run_check(argv[i]));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "usage: acceptance [fast|full|atlas | id...]: %s\n", e.what());
        return 64;
    }
    int failed = 0;
    for (auto& r : results) {
        std::printf("criterion %s: %s  %s (%.1f s)\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
        for (auto& n : r.notes) std::printf("    %s\n", n.c_str());
        failed += !r.pass;
    }
    std::fflush(stdout);
    return failed;
}
