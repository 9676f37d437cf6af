// verify_types.hpp -- plain result/config records shared by the statistical
// checks (kept free of heavy includes so levy.hpp can use them).
#pragma once

#include <cstdint>
#include <string>

namespace fracfields {

struct MCConfig {
    std::uint64_t n_samples = 100000;
    std::uint64_t seed = 0;
    int n_chunks = 1; // concurrent chunk executors; never affects the values
    double tolerance_sigmas = 4.0;
};

// One analytic-vs-empirical comparison; pass iff |statistic| <= threshold.
struct ComparisonReport {
    std::string name;
    double analytic = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    std::uint64_t n_samples = 0;
};

} // namespace fracfields
