// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. The same matrix backs the CLI `suite` subcommand.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "bracelet/suite.hpp"

int main(int argc, char** argv) {
    bracelet::suite::Options opt;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--only")) opt.only = argv[i + 1];
        if (!std::strcmp(argv[i], "--budget")) opt.budget = std::strtoull(argv[i + 1], nullptr, 10);
        if (!std::strcmp(argv[i], "--seed")) opt.seed = std::strtoull(argv[i + 1], nullptr, 10);
        if (!std::strcmp(argv[i], "--jobs")) opt.jobs = std::atoi(argv[i + 1]);
    }

    auto rows = bracelet::suite::run(opt);
    bool all_pass = !rows.empty();
    for (const auto& r : rows) {
        const char* status = r.budget_hit ? "RESOURCE" : (r.pass ? "PASS" : "FAIL");
        std::printf("%-8s %-20s %8.2fs  %s\n", status, r.id.c_str(), r.seconds,
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    std::printf("%s\n", all_pass ? "acceptance: all criteria passed"
                                 : "acceptance: CRITERIA FAILED");
    return all_pass ? 0 : 1;
}
