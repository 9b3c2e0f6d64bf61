#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randten/ball.hpp"
#include "randten/variance.hpp"

namespace randten {

struct CheckLine {
    std::string name;
    Verdict verdict = Verdict::inconclusive;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckLine> lines;
    std::size_t holds = 0;
    std::size_t violated = 0;
    std::size_t inconclusive = 0;

    void add(CheckLine line);
    bool failed() const { return violated > 0; }
};

/// Seeded symmetric gaussian-stack models over (r, d) in {2,3}^2:
/// sigma_l^2 <= binom(r, r-l) * prefix_l^2, verdicts gated to
/// oracle-grade rows (grid resolution `resolution`).
SuiteResult symmetric_comparison_suite(std::size_t models, std::uint64_t seed,
                                       const AscentConfig& cfg,
                                       std::size_t resolution = 64);

/// Seeded gaussian-stack models of order r-1 <= 3, d <= 3, n <= 3, every
/// partition P: the fused variance parameters against the stacked
/// partition norms.
SuiteResult partition_variance_suite(std::size_t models, std::uint64_t seed,
                                     const AscentConfig& cfg,
                                     std::size_t resolution = 64);

/// Seeded (A, xs, beta) instances, r <= 3, d <= 3: Monte Carlo second
/// moment of the smoothed chaos vs. the exact contraction series, within
/// four standard errors.
SuiteResult second_moment_suite(std::size_t instances, std::size_t samples,
                                std::uint64_t seed);

/// Random finite priors (support 2..50) and bounded g: the Gibbs
/// posterior attains the log-MGF within 1e-10 and no sampled posterior
/// beats it.
SuiteResult donsker_varadhan_suite(std::size_t instances, std::uint64_t seed);

/// Random positive coefficients per order r in {2..5}: the dense-scan
/// infimum of a_0 x + sum a_l x^(1-l) sits inside the two-sided max-term
/// estimate, and golden section reproduces the dense scan to 1e-6.
SuiteResult beta_sandwich_suite(std::size_t samples_per_order, std::uint64_t seed);

}  // namespace randten
