// verify.hpp -- Monte Carlo estimators, statistical comparators, and the
// reproducible parallel campaign runner.
//
// Determinism contract: a check's sample stream is split into fixed chunks
// of 4096 draws; chunk c of check i runs on the stream seeded by
// derive_seed(seed, i, c).  MCConfig.n_chunks only sets how many chunks
// execute concurrently, so reports are a pure function of (manifest, seed,
// n_samples) -- bit-identical for any chunk count or thread schedule.
#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

#include "fracfields/rng.hpp"
#include "fracfields/verify_types.hpp"

namespace fracfields {

// Sample mean and standard error of e^{-eta X}.
std::pair<double, double> empirical_laplace(const std::vector<double>& samples,
                                            double eta);

struct PmfEstimate {
    std::vector<double> prob;      // indices 0..n_max
    std::vector<double> std_error; // binomial standard errors
    double tail_mass = 0.0;        // observed mass above n_max
};
PmfEstimate empirical_pmf(const std::vector<long long>& samples, long long n_max);

// Two-sample Kolmogorov-Smirnov: (statistic, 1% critical value
// 1.628 sqrt((m+n)/(m n))).
std::pair<double, double> ks_two_sample(std::vector<double> a, std::vector<double> b);

// One-sample KS against a CDF; critical value 1.628 / sqrt(n).
std::pair<double, double> ks_one_sample(std::vector<double> a,
                                        const std::function<double(double)>& cdf);

// Upper quantile of chi-square(dof), via the regularized gamma inverse.
double chi_square_critical(int dof, double tail_prob = 0.01);

struct ChiSquareResult {
    double statistic = 0.0;
    double critical = 0.0;
    int dof = 0;
    bool pass = false;
};
// Goodness of fit of observed bin counts against expected probabilities
// (already merged so each expected count is adequate).
ChiSquareResult chi_square_gof(const std::vector<long long>& observed,
                               const std::vector<double>& expected_prob,
                               double tail_prob = 0.01);

// ------------------------------- campaign -------------------------------

struct CheckDescriptor {
    std::string name;
    std::string check_type;
    nlohmann::json params;
};

std::vector<CheckDescriptor> default_manifest();

nlohmann::json manifest_to_json(const std::vector<CheckDescriptor>& manifest);
std::vector<CheckDescriptor> manifest_from_json(const nlohmann::json& j);

// Runs every check; throws std::invalid_argument on an unknown check_type.
std::vector<ComparisonReport> run_campaign(const std::vector<CheckDescriptor>& manifest,
                                           const MCConfig& cfg);

// Serialization with fixed 17-significant-digit number formatting so equal
// reports are byte-identical files.
std::string reports_to_json(const std::vector<ComparisonReport>& reports);
std::string reports_to_csv(const std::vector<ComparisonReport>& reports);

// --------------------- chunked MC building blocks ---------------------
// Exposed so tests and the acceptance suite can reuse the deterministic
// drivers directly.

inline constexpr std::uint64_t kChunkSamples = 4096;

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

// Mean/SE of draw(rng) over n_samples draws, chunk-deterministic.
MeanEstimate mc_mean(std::uint64_t n_samples, std::uint64_t seed, std::uint64_t check_index,
                     int n_workers, const std::function<double(RngState&)>& draw);

// All draws, concatenated in chunk order.
std::vector<double> mc_samples(std::uint64_t n_samples, std::uint64_t seed,
                               std::uint64_t check_index, int n_workers,
                               const std::function<double(RngState&)>& draw);

// Histogram of integer draws in [0, n_max] plus overflow mass.
PmfEstimate mc_pmf(std::uint64_t n_samples, std::uint64_t seed, std::uint64_t check_index,
                   int n_workers, long long n_max,
                   const std::function<long long(RngState&)>& draw);

// Paired draws from one stream (lhs then rhs per replicate), for two-sample
// comparisons of independently simulated constructions.
std::pair<std::vector<double>, std::vector<double>> mc_sample_pairs(
    std::uint64_t n_samples, std::uint64_t seed, std::uint64_t check_index, int n_workers,
    const std::function<double(RngState&)>& lhs, const std::function<double(RngState&)>& rhs);

} // namespace fracfields
