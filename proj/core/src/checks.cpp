#include "randten/checks.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <sstream>

#include "randten/bounds.hpp"
#include "randten/mc.hpp"
#include "randten/model.hpp"
#include "randten/numeric.hpp"
#include "randten/parallel.hpp"
#include "randten/rng.hpp"
#include "randten/serialize.hpp"

namespace randten {

void SuiteResult::add(CheckLine line) {
    switch (line.verdict) {
        case Verdict::holds: ++holds; break;
        case Verdict::violated: ++violated; break;
        case Verdict::inconclusive: ++inconclusive; break;
    }
    lines.push_back(std::move(line));
}

namespace {

std::string row_detail(const ComparisonRow& row) {
    std::ostringstream out;
    out << "lhs=" << format_double(row.lhs) << " (" << to_string(row.lhs_provenance)
        << ") rhs=" << format_double(row.rhs) << " (" << to_string(row.rhs_provenance)
        << ")";
    return out.str();
}

}  // namespace

SuiteResult symmetric_comparison_suite(std::size_t models, std::uint64_t seed,
                                       const AscentConfig& cfg, std::size_t resolution) {
    SuiteResult result;
    result.suite = "symmetric-comparison";
    constexpr struct {
        std::size_t r, d;
    } combos[] = {{2, 2}, {3, 2}, {2, 3}, {3, 3}};
    for (std::size_t i = 0; i < models; ++i) {
        const auto combo = combos[i % std::size(combos)];
        const std::size_t n = 1 + i % 3;
        const RandomTensorModel model =
            generate_model(ModelKind::symmetric_stack,
                           std::vector<std::size_t>(combo.r, combo.d), n,
                           CoeffDist::gaussian, SplitRng::derive_seed(seed, i));
        const ComparisonReport report =
            symmetric_comparison_check(model, 2.0, cfg, resolution);
        for (const auto& row : report.rows) {
            std::ostringstream name;
            name << "model " << i << " (r=" << combo.r << " d=" << combo.d << " n=" << n
                 << ") ell=" << row.ell;
            result.add({name.str(), row.verdict, row_detail(row)});
        }
    }
    return result;
}

SuiteResult partition_variance_suite(std::size_t models, std::uint64_t seed,
                                     const AscentConfig& cfg, std::size_t resolution) {
    SuiteResult result;
    result.suite = "partition-variance";
    constexpr struct {
        std::size_t order, d;
    } combos[] = {{1, 2}, {2, 2}, {1, 3}, {3, 2}, {2, 3}, {3, 3}};
    for (std::size_t i = 0; i < models; ++i) {
        const auto combo = combos[i % std::size(combos)];
        const std::size_t n = 1 + i % 3;
        const RandomTensorModel model =
            generate_model(ModelKind::gaussian_stack,
                           std::vector<std::size_t>(combo.order, combo.d), n,
                           CoeffDist::gaussian, SplitRng::derive_seed(seed, i));
        for (const Partition& part : enumerate_partitions(combo.order)) {
            const ComparisonReport report =
                partition_variance_check(model, part, cfg, resolution);
            for (const auto& row : report.rows) {
                std::ostringstream name;
                name << "model " << i << " (order=" << combo.order << " d=" << combo.d
                     << " n=" << n << ") blocks=" << part.block_count()
                     << " ell=" << row.ell;
                result.add({name.str(), row.verdict, row_detail(row)});
            }
        }
    }
    return result;
}

SuiteResult second_moment_suite(std::size_t instances, std::size_t samples,
                                std::uint64_t seed) {
    SuiteResult result;
    result.suite = "second-moment";
    for (std::size_t i = 0; i < instances; ++i) {
        SplitRng rng = SplitRng::derive(seed, i);
        const std::size_t r = 1 + i % 3;
        const std::size_t d = 2 + i % 2;
        DenseTensor a(std::vector<std::size_t>(r, d));
        for (std::size_t f = 0; f < a.size(); ++f) a[f] = rng.next_symmetric();
        std::vector<std::vector<double>> xs(r, std::vector<double>(d));
        for (auto& x : xs) {
            for (double& v : x) v = rng.next_symmetric();
        }
        const double beta = rng.next_uniform(0.5, 2.0);
        const double rhs = second_moment_rhs(a, xs, beta);

        const double noise = 1.0 / std::sqrt(beta);
        const std::uint64_t sample_seed = rng.next_u64();
        std::vector<double> draws(samples);
        parallel_for(samples, [&](std::size_t s) {
            SplitRng local = SplitRng::derive(sample_seed, s);
            std::vector<std::vector<double>> shifted(r, std::vector<double>(d));
            for (std::size_t t = 0; t < r; ++t) {
                for (std::size_t j = 0; j < d; ++j) {
                    shifted[t][j] = xs[t][j] + noise * local.next_gaussian();
                }
            }
            const double v = eval_multilinear(a, shifted);
            draws[s] = v * v;
        });
        const MeanStderr ms = mean_and_stderr(draws);
        const bool ok = std::abs(ms.mean - rhs) <= 4.0 * ms.std_err + 1e-12;

        std::ostringstream name;
        name << "instance " << i << " (r=" << r << " d=" << d << ")";
        std::ostringstream detail;
        detail << "mc=" << format_double(ms.mean) << " rhs=" << format_double(rhs)
               << " se=" << format_double(ms.std_err);
        result.add({name.str(), ok ? Verdict::holds : Verdict::violated, detail.str()});
    }
    return result;
}

SuiteResult donsker_varadhan_suite(std::size_t instances, std::uint64_t seed) {
    SuiteResult result;
    result.suite = "donsker-varadhan";
    for (std::size_t i = 0; i < instances; ++i) {
        SplitRng rng = SplitRng::derive(seed, i);
        const std::size_t support = 2 + i % 49;
        std::vector<double> prior(support);
        double total = 0.0;
        for (double& w : prior) {
            w = -std::log(1.0 - rng.next_unit());
            total += w;
        }
        for (double& w : prior) w /= total;
        std::vector<double> g(support);
        for (double& v : g) v = rng.next_uniform(-10.0, 10.0);

        const DonskerVaradhanReport report =
            donsker_varadhan_check(prior, g, rng.next_u64(), 1000);
        const bool ok = std::abs(report.gap) <= 1e-10 &&
                        report.sup_probe <= report.lhs + 1e-10;

        std::ostringstream name;
        name << "instance " << i << " (support=" << support << ")";
        std::ostringstream detail;
        detail << "gap=" << format_double(report.gap)
               << " probe_slack=" << format_double(report.lhs - report.sup_probe);
        result.add({name.str(), ok ? Verdict::holds : Verdict::violated, detail.str()});
    }
    return result;
}

namespace {

double dense_scan_min(std::span<const double> coeffs, std::size_t points) {
    // coeffs[0] multiplies x, coeffs[l] (l >= 2) multiplies x^(1-l).
    const double lo = std::log(1e-6), hi = std::log(1e6);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points; ++i) {
        const double x =
            std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
        double v = coeffs[0] * x;
        for (std::size_t ell = 2; ell < coeffs.size(); ++ell) {
            v += coeffs[ell] * std::pow(x, 1.0 - static_cast<double>(ell));
        }
        best = std::min(best, v);
    }
    return best;
}

}  // namespace

SuiteResult beta_sandwich_suite(std::size_t samples_per_order, std::uint64_t seed) {
    SuiteResult result;
    result.suite = "beta-sandwich";
    for (std::size_t r = 2; r <= 5; ++r) {
        for (std::size_t s = 0; s < samples_per_order; ++s) {
            SplitRng rng = SplitRng::derive(seed, r * 1000 + s);
            std::vector<double> coeffs(r + 1, 0.0);
            coeffs[0] = std::exp(rng.next_uniform(std::log(1e-2), std::log(1e2)));
            for (std::size_t ell = 2; ell <= r; ++ell) {
                coeffs[ell] = std::exp(rng.next_uniform(std::log(1e-2), std::log(1e2)));
            }

            const double dense = dense_scan_min(coeffs, 100000);
            const double golden_y = golden_section_min(
                [&](double y) {
                    const double x = std::exp(y);
                    double v = coeffs[0] * x;
                    for (std::size_t ell = 2; ell <= r; ++ell) {
                        v += coeffs[ell] * std::pow(x, 1.0 - static_cast<double>(ell));
                    }
                    return v;
                },
                std::log(1e-9), std::log(1e9), 200);
            double golden_value = coeffs[0] * std::exp(golden_y);
            for (std::size_t ell = 2; ell <= r; ++ell) {
                golden_value +=
                    coeffs[ell] * std::pow(std::exp(golden_y), 1.0 - static_cast<double>(ell));
            }

            double max_term = 0.0;
            for (std::size_t ell = 2; ell <= r; ++ell) {
                const double le = static_cast<double>(ell);
                max_term = std::max(max_term, std::pow(coeffs[ell], 1.0 / le) *
                                                  std::pow(coeffs[0], (le - 1.0) / le));
            }
            const double rd = static_cast<double>(r);
            const double lower = 2.0 * std::pow(rd - 1.0, (1.0 - rd) / rd) * max_term;
            const double upper = rd * max_term;

            const double slack = 1e-9 * std::max(1.0, std::abs(dense));
            const bool in_sandwich = lower <= dense + slack && dense <= upper + slack;
            const bool golden_matches =
                std::abs(golden_value - dense) <= 1e-6 * std::max(1.0, std::abs(dense));

            std::ostringstream name;
            name << "r=" << r << " sample " << s;
            std::ostringstream detail;
            detail << "lower=" << format_double(lower) << " inf=" << format_double(dense)
                   << " upper=" << format_double(upper)
                   << " golden=" << format_double(golden_value);
            result.add({name.str(),
                        in_sandwich && golden_matches ? Verdict::holds : Verdict::violated,
                        detail.str()});
        }
    }
    return result;
}

}  // namespace randten
