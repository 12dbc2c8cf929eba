#ifndef BRACELET_SUITE_HPP
#define BRACELET_SUITE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bracelet/oracle.hpp"

namespace bracelet::suite {

struct Options {
    std::string only;  // substring filter on row ids; empty = all
    std::uint64_t budget = oracle::kDefaultBudget;
    int jobs = 1;
    std::uint64_t seed = 20240601;
};

struct RowResult {
    std::string id;
    bool pass = false;
    bool budget_hit = false;  // resource exhaustion, reported distinctly
    double seconds = 0.0;
    std::string detail;
};

// The acceptance matrix: one row per claim, each exercising constructors
// against the independent oracles at its stated tolerance.
std::vector<RowResult> run(const Options& opt);

// Seeded k-permutation of [0,n): mt19937_64 + partial Fisher-Yates with
// index = rng() % remaining. The documented sampling procedure for every
// randomized sweep in the project.
std::vector<int> sample_sequence(std::mt19937_64& rng, int n, int k);

}  // namespace bracelet::suite

#endif
