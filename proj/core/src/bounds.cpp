#include "randten/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "randten/injective_norm.hpp"
#include "randten/numeric.hpp"
#include "randten/parallel.hpp"
#include "randten/rng.hpp"

namespace randten {

namespace {

constexpr double kBetaBracketLo = 1e-9;
constexpr double kBetaBracketHi = 1e9;
constexpr int kGoldenIterations = 200;

void validate_query(const BoundQuery& q) {
    if (q.dims.size() != q.profile.order()) {
        throw std::invalid_argument("dims do not match variance profile order");
    }
    if (q.profile.kind != ProfileKind::subset) {
        throw std::invalid_argument("bound needs a subset-kind variance profile");
    }
    for (double v : q.profile.values) {
        if (v < 0.0) throw std::invalid_argument("variance parameters must be nonnegative");
    }
}

double beta_series(std::span<const double> values, double beta) {
    double s = 0.0;
    for (std::size_t ell = 0; ell < values.size(); ++ell) {
        s += std::pow(beta, 1.0 - static_cast<double>(ell)) * values[ell];
    }
    return s;
}

BoundReport report_at_beta(const BoundQuery& q, double beta) {
    BoundReport report;
    report.beta_used = beta;
    report.dimension_factor = dimension_factor(q.dims, q.p);
    report.provenance = q.profile.provenance;
    double sum = 0.0;
    for (std::size_t ell = 0; ell < q.profile.values.size(); ++ell) {
        const double term =
            std::pow(beta, 1.0 - static_cast<double>(ell)) * q.profile.values[ell];
        report.terms[ell] = term;
        sum += term;
    }
    report.bound = std::sqrt(sum * report.dimension_factor);
    return report;
}

/// Report for the degenerate profiles whose infimum is a limit: only the
/// sigma_1^2 term survives.
BoundReport limit_report(const BoundQuery& q, double beta_label, bool flag) {
    BoundReport report;
    report.beta_used = beta_label;
    report.infimum_not_attained = flag;
    report.dimension_factor = dimension_factor(q.dims, q.p);
    report.provenance = q.profile.provenance;
    for (std::size_t ell = 0; ell < q.profile.values.size(); ++ell) report.terms[ell] = 0.0;
    if (q.profile.values.size() > 1) report.terms[1] = q.profile.values[1];
    report.bound = std::sqrt(report.terms[1] * report.dimension_factor);
    return report;
}

}  // namespace

double dimension_factor(std::span<const std::size_t> dims, double p) {
    double s = 0.0;
    for (std::size_t d : dims) {
        s += is_inf_order(p) ? static_cast<double>(d)
                             : std::pow(static_cast<double>(d), 1.0 - 2.0 / p);
    }
    return s;
}

BoundReport fixed_beta_bound(const BoundQuery& query) {
    validate_query(query);
    if (!query.beta) throw std::invalid_argument("fixed-beta bound needs beta");
    if (!(*query.beta > 0.0)) throw std::invalid_argument("beta must be positive");
    return report_at_beta(query, *query.beta);
}

BoundReport optimized_beta_bound(const BoundQuery& query) {
    validate_query(query);
    if (query.beta) throw std::invalid_argument("beta optimization takes no explicit beta");

    const std::vector<double>& v = query.profile.values;
    const std::size_t r = query.profile.order();
    const bool any_positive = std::any_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
    if (!any_positive) {
        BoundReport report = report_at_beta(query, 1.0);
        return report;
    }

    bool tail = false;
    for (std::size_t ell = 2; ell <= r; ++ell) tail = tail || v[ell] > 0.0;

    if (v[0] == 0.0 && !tail) {
        // Only the beta-free sigma_1^2 term is present.
        return report_at_beta(query, 1.0);
    }
    if (v[0] == 0.0) {
        // Terms vanish as beta -> inf, leaving sigma_1^2.
        return limit_report(query, std::numeric_limits<double>::infinity(), true);
    }
    if (!tail) {
        // g(beta) = sigma_0^2 beta + sigma_1^2 decreases toward beta -> 0.
        return limit_report(query, 0.0, true);
    }

    const auto series_at_log = [&](double y) { return beta_series(v, std::exp(y)); };
    const double y_star = golden_section_min(series_at_log, std::log(kBetaBracketLo),
                                             std::log(kBetaBracketHi), kGoldenIterations);
    BoundReport report = report_at_beta(query, std::exp(y_star));

    if (r >= 2) {
        // Two-sided estimate for the l != 1 part of the series.
        std::vector<double> reduced = v;
        reduced[1] = 0.0;
        const auto reduced_at_log = [&](double y) { return beta_series(reduced, std::exp(y)); };
        const double y_red = golden_section_min(reduced_at_log, std::log(kBetaBracketLo),
                                                std::log(kBetaBracketHi), kGoldenIterations);
        SandwichCheck check;
        check.infimum = reduced_at_log(y_red);
        double max_term = 0.0;
        for (std::size_t ell = 2; ell <= r; ++ell) {
            const double le = static_cast<double>(ell);
            max_term = std::max(max_term, std::pow(v[ell], 1.0 / le) *
                                              std::pow(v[0], (le - 1.0) / le));
        }
        const double rd = static_cast<double>(r);
        check.lower = 2.0 * std::pow(rd - 1.0, (1.0 - rd) / rd) * max_term;
        check.upper = rd * max_term;
        const double slack = 1e-9 * std::max(1.0, std::abs(check.infimum));
        check.holds = check.lower <= check.infimum + slack &&
                      check.infimum <= check.upper + slack;
        report.sandwich = check;
    }
    return report;
}

BoundReport max_term_bound(const BoundQuery& query) {
    validate_query(query);
    const std::vector<double>& v = query.profile.values;
    const std::size_t r = query.profile.order();

    BoundReport report;
    report.dimension_factor = dimension_factor(query.dims, query.p);
    report.provenance = query.profile.provenance;
    report.terms[1] = r >= 1 ? v[1] : 0.0;

    double max_term = 0.0;
    std::size_t arg = 0;
    for (std::size_t ell = 2; ell <= r; ++ell) {
        const double le = static_cast<double>(ell);
        const double term =
            std::pow(v[ell], 1.0 / le) * std::pow(v[0], (le - 1.0) / le);
        if (term > max_term) {
            max_term = term;
            arg = ell;
        }
    }
    if (arg != 0) report.terms[arg] = static_cast<double>(r) * max_term;
    report.constants["max_term"] = max_term;

    double sum = 0.0;
    for (const auto& [ell, term] : report.terms) sum += term;
    report.bound = std::sqrt(sum * report.dimension_factor);
    return report;
}

SymmetricBoundReport symmetric_model_bound(const RandomTensorModel& model, double p,
                                           const AscentConfig& cfg) {
    if (!model.symmetric) {
        throw std::invalid_argument("symmetric bound needs a symmetric model");
    }
    const std::size_t r = model.order();
    SymmetricBoundReport out;
    if (auto closed = closed_form_profile(model, p, ProfileKind::prefix)) {
        out.prefix_profile = *closed;
    } else {
        out.prefix_profile = prefix_variance_profile(model, p, cfg);
    }

    out.converted = out.prefix_profile;
    out.converted.kind = ProfileKind::subset;
    for (std::size_t ell = 0; ell <= r; ++ell) {
        out.converted.values[ell] *= binomial(r, r - ell);
    }

    BoundQuery query;
    query.profile = out.converted;
    query.dims = model.shape();
    query.p = p;
    out.report = max_term_bound(query);
    const double d = static_cast<double>(model.shape().front());
    out.normalized_bound = std::pow(d, 1.0 / p - 0.5) * out.report.bound;
    out.note =
        "constant is the constructive composition of the prefix-parameter "
        "comparison with the max-term bound";
    return out;
}

MatrixCaseReport matrix_model_bound(const RandomTensorModel& model,
                                    const AscentConfig& cfg, double constant) {
    if (model.order() != 2) throw std::invalid_argument("matrix bound needs order 2");
    MatrixCaseReport report;
    report.constant = constant;
    report.term1 = std::sqrt(std::max(mode_gram_top_eigenvalue(model.tensors, 0),
                                      mode_gram_top_eigenvalue(model.tensors, 1)));

    SubsetVarianceObjective sup_objective(model.tensors, 0);
    const BallSpec spec(2.0, model.shape());
    double sup = maximize_block_multilinear(sup_objective, spec, cfg).value;
    report.sup_provenance = Provenance::heuristic;
    try {
        sup = std::max(sup, grid_supremum_oracle(sup_objective, spec, 64));
        report.sup_provenance = Provenance::oracle;
    } catch (const SearchSpaceTooLarge&) {
    }
    double frob_sq = 0.0;
    for (const auto& t : model.tensors) frob_sq += frobenius_norm_sq(t);
    report.term2 = std::pow(sup, 0.25) * std::pow(frob_sq, 0.25);
    report.rhs = constant * (report.term1 + report.term2);
    return report;
}

namespace {

double partition_norm_sum(const DenseTensor& stacked, double moment_p, double offset,
                          const AscentConfig& cfg, std::size_t partition_cap) {
    if (moment_p < 2.0) throw std::invalid_argument("moment order must be >= 2");
    const std::vector<Partition> partitions =
        enumerate_partitions(stacked.order(), partition_cap);
    std::vector<double> contributions(partitions.size());
    parallel_for(partitions.size(), [&](std::size_t i) {
        const Partition& part = partitions[i];
        const DenseTensor fused = reshape_partition(stacked, part);
        const double norm = estimate_injective_norm(fused, 2.0, cfg).value;
        const double exponent = (static_cast<double>(part.block_count()) + offset) / 2.0;
        contributions[i] = std::pow(moment_p, exponent) * norm;
    });
    return pairwise_sum(contributions);
}

}  // namespace

double latala_moment_bound(const DenseTensor& a, double moment_p, double c_r,
                           const AscentConfig& cfg, std::size_t partition_cap) {
    return c_r * partition_norm_sum(a, moment_p, 0.0, cfg, partition_cap);
}

double partition_moment_bound(const RandomTensorModel& model, const Partition& p,
                              double moment_p, double constant, const AscentConfig& cfg,
                              std::size_t partition_cap) {
    if (p.order != model.order()) {
        throw std::invalid_argument("partition order does not match model order");
    }
    const DenseTensor stacked = stack_tensors(model.tensors);
    const double offset = -static_cast<double>(p.block_count());
    return constant * partition_norm_sum(stacked, moment_p, offset, cfg, partition_cap);
}

double second_moment_rhs(const DenseTensor& a, std::span<const std::vector<double>> xs,
                         double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const std::size_t r = a.order();
    if (xs.size() != r) throw std::invalid_argument("need one center vector per axis");
    double total = 0.0;
    for (std::size_t ell = 0; ell <= r; ++ell) {
        double level = 0.0;
        for (const auto& members : enumerate_subsets(r, ell)) {
            std::vector<std::vector<double>> sub;
            sub.reserve(members.size());
            for (std::size_t s : members) sub.push_back(xs[s]);
            const IndexSubset subset(r, members);
            level += frobenius_norm_sq(contract_subset(a, subset, sub));
        }
        total += std::pow(beta, static_cast<double>(ell) - static_cast<double>(r)) * level;
    }
    return total;
}

DonskerVaradhanReport donsker_varadhan_check(std::span<const double> prior,
                                             std::span<const double> g,
                                             std::uint64_t seed, int probes) {
    if (prior.size() != g.size() || prior.empty()) {
        throw std::invalid_argument("prior and g need matching nonzero lengths");
    }
    double mass = 0.0;
    for (double w : prior) {
        if (!(w > 0.0)) throw std::invalid_argument("prior entries must be positive");
        mass += w;
    }
    if (std::abs(mass - 1.0) > 1e-12) {
        throw std::invalid_argument("prior must sum to 1 within 1e-12");
    }

    const std::size_t n = prior.size();
    std::vector<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = std::log(prior[i]) + g[i];
    DonskerVaradhanReport report;
    report.lhs = log_sum_exp(shifted);

    const auto posterior_value = [&](std::span<const double> rho) {
        double value = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (rho[i] == 0.0) continue;  // 0 log 0 = 0
            value += rho[i] * (g[i] - std::log(rho[i] / prior[i]));
        }
        return value;
    };

    std::vector<double> gibbs(n);
    for (std::size_t i = 0; i < n; ++i) gibbs[i] = std::exp(shifted[i] - report.lhs);
    report.gibbs_value = posterior_value(gibbs);
    report.gap = report.lhs - report.gibbs_value;

    SplitRng rng(seed);
    std::vector<double> rho(n);
    report.sup_probe = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < probes; ++k) {
        double total = 0.0;
        for (double& w : rho) {
            w = -std::log(1.0 - rng.next_unit());
            total += w;
        }
        for (double& w : rho) w /= total;
        report.sup_probe = std::max(report.sup_probe, posterior_value(rho));
    }
    return report;
}

}  // namespace randten
