#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace randten {

/// Pairwise (cascade) summation; reduction order is fixed by the element
/// order, so results do not depend on thread count.
double pairwise_sum(std::span<const double> values);

/// Sample mean and standard error (sd / sqrt(n)) via pairwise sums.
struct MeanStderr {
    double mean = 0.0;
    double std_err = 0.0;
};
MeanStderr mean_and_stderr(std::span<const double> values);

/// log(sum_i exp(a_i)), max-shifted.
double log_sum_exp(std::span<const double> a);

/// Minimize a unimodal function over [lo, hi] by golden-section search
/// with a fixed iteration budget. Returns the bracket midpoint.
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, int iterations);

}  // namespace randten
