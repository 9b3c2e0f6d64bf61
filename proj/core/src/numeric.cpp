#include "randten/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace randten {

namespace {

double pairwise_sum_range(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_range(v, half) + pairwise_sum_range(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_range(values.data(), values.size());
}

MeanStderr mean_and_stderr(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("standard error needs at least two values");
    const double mean = pairwise_sum(values) / static_cast<double>(n);
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i] - mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

double log_sum_exp(std::span<const double> a) {
    if (a.empty()) throw std::invalid_argument("log_sum_exp of empty range");
    const double m = *std::max_element(a.begin(), a.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : a) s += std::exp(v - m);
    return m + std::log(s);
}

double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, int iterations) {
    if (!(lo < hi)) throw std::invalid_argument("golden section needs lo < hi");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iterations && c < d; ++i) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace randten
