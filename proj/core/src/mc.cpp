#include "randten/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "randten/injective_norm.hpp"
#include "randten/numeric.hpp"
#include "randten/parallel.hpp"
#include "randten/rng.hpp"

namespace randten {

CoefficientSample sample_coefficients(CoeffDist dist, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need at least one coefficient");
    CoefficientSample sample;
    sample.dist = dist;
    sample.seed = seed;
    sample.values.resize(n);
    SplitRng rng(seed);
    for (double& v : sample.values) {
        switch (dist) {
            case CoeffDist::gaussian: v = rng.next_gaussian(); break;
            case CoeffDist::rademacher: v = static_cast<double>(rng.next_sign()); break;
            case CoeffDist::uniform: v = rng.next_symmetric(); break;
        }
    }
    return sample;
}

DenseTensor assemble_tensor(const RandomTensorModel& model, const CoefficientSample& xi) {
    if (xi.values.size() != model.count()) {
        throw std::invalid_argument("coefficient count does not match model");
    }
    DenseTensor out(model.shape());
    for (std::size_t k = 0; k < model.count(); ++k) {
        const double c = xi.values[k];
        const double* src = model.tensors[k].data();
        double* dst = out.data();
        for (std::size_t f = 0; f < out.size(); ++f) dst[f] += c * src[f];
    }
    return out;
}

McEstimate mc_injective_mean(const RandomTensorModel& model, double p,
                             std::size_t trials, const AscentConfig& cfg,
                             std::uint64_t seed) {
    if (trials < 2) throw std::invalid_argument("need at least two trials");
    McEstimate est;
    est.trials = trials;
    est.per_trial.resize(trials);
    parallel_for(trials, [&](std::size_t t) {
        const CoefficientSample xi = sample_coefficients(
            model.coeff_dist, model.count(), SplitRng::derive_seed(seed, t));
        est.per_trial[t] = estimate_injective_norm(assemble_tensor(model, xi), p, cfg).value;
    });
    const MeanStderr ms = mean_and_stderr(est.per_trial);
    est.mean = ms.mean;
    est.std_err = ms.std_err;
    return est;
}

McEstimate chaos_moment_estimate(const DenseTensor& a, double moment_p,
                                 std::size_t trials, std::uint64_t seed) {
    if (a.order() < 1) throw std::invalid_argument("chaos needs order >= 1");
    if (moment_p < 2.0) throw std::invalid_argument("moment order must be >= 2");
    if (trials < 2) throw std::invalid_argument("need at least two trials");

    McEstimate est;
    est.trials = trials;
    est.per_trial.resize(trials);
    const std::size_t r = a.order();
    parallel_for(trials, [&](std::size_t t) {
        SplitRng rng = SplitRng::derive(seed, t);
        std::vector<std::vector<double>> gs(r);
        for (std::size_t axis = 0; axis < r; ++axis) {
            gs[axis].resize(a.dim(axis));
            for (double& v : gs[axis]) v = rng.next_gaussian();
        }
        est.per_trial[t] = std::pow(std::abs(eval_multilinear(a, gs)), moment_p);
    });
    const MeanStderr ms = mean_and_stderr(est.per_trial);
    est.mean = std::pow(ms.mean, 1.0 / moment_p);
    est.std_err = ms.mean > 0.0
                      ? ms.std_err * est.mean / (moment_p * ms.mean)
                      : 0.0;
    return est;
}

const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::independent_entry: return "independent_entry";
        case ModelKind::diagonal: return "diagonal";
        case ModelKind::gaussian_stack: return "gaussian_stack";
        case ModelKind::symmetric_stack: return "symmetric_stack";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "independent_entry") return ModelKind::independent_entry;
    if (s == "diagonal") return ModelKind::diagonal;
    if (s == "gaussian_stack") return ModelKind::gaussian_stack;
    if (s == "symmetric_stack") return ModelKind::symmetric_stack;
    throw std::invalid_argument("unknown model kind: " + s);
}

namespace {

std::size_t common_dim(const std::vector<std::size_t>& dims) {
    for (std::size_t d : dims) {
        if (d != dims.front()) {
            throw std::invalid_argument("this model kind needs a cubical shape");
        }
    }
    return dims.front();
}

}  // namespace

RandomTensorModel generate_model(ModelKind kind, const std::vector<std::size_t>& dims,
                                 std::size_t n, CoeffDist dist, std::uint64_t seed) {
    if (dims.empty()) throw std::invalid_argument("model needs order >= 1");
    std::vector<DenseTensor> tensors;
    switch (kind) {
        case ModelKind::independent_entry: {
            std::size_t total = 1;
            for (std::size_t d : dims) total *= d;
            tensors.reserve(total);
            for (std::size_t f = 0; f < total; ++f) {
                DenseTensor t(dims);
                t[f] = 1.0;
                tensors.push_back(std::move(t));
            }
            return {std::move(tensors), dist, false};
        }
        case ModelKind::diagonal: {
            const std::size_t d = common_dim(dims);
            tensors.reserve(d);
            for (std::size_t k = 0; k < d; ++k) {
                DenseTensor t(dims);
                std::size_t diag = 0;
                for (std::size_t axis = 0; axis < dims.size(); ++axis) diag = diag * d + k;
                t[diag] = 1.0;
                tensors.push_back(std::move(t));
            }
            return {std::move(tensors), dist, dims.size() >= 2};
        }
        case ModelKind::gaussian_stack:
        case ModelKind::symmetric_stack: {
            if (n < 1) throw std::invalid_argument("stack models need n >= 1");
            if (kind == ModelKind::symmetric_stack) common_dim(dims);
            tensors.reserve(n);
            for (std::size_t k = 0; k < n; ++k) {
                DenseTensor t(dims);
                SplitRng rng = SplitRng::derive(seed, k);
                for (std::size_t f = 0; f < t.size(); ++f) t[f] = rng.next_gaussian();
                if (kind == ModelKind::symmetric_stack) t = symmetrize_tensor(t);
                tensors.push_back(std::move(t));
            }
            return {std::move(tensors), dist, kind == ModelKind::symmetric_stack};
        }
    }
    throw std::invalid_argument("unknown model kind");
}

namespace {

std::string summarize_provenance(const std::vector<Provenance>& provenance) {
    bool seen[4] = {false, false, false, false};
    for (Provenance p : provenance) seen[static_cast<int>(p)] = true;
    std::string out;
    for (int i = 0; i < 4; ++i) {
        if (!seen[i]) continue;
        if (!out.empty()) out += '+';
        out += to_string(static_cast<Provenance>(i));
    }
    return out;
}

double safe_ratio(double bound, double mean) {
    if (mean > 0.0) return bound / mean;
    if (bound > 0.0) return std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

CompareReport compare_bounds_report(const RandomTensorModel& model,
                                    const std::string& model_id, double p,
                                    std::size_t trials, const AscentConfig& cfg,
                                    std::uint64_t seed) {
    CompareReport report;
    report.model_id = model_id;
    report.p = p;
    report.trials = trials;

    VarianceProfile profile;
    if (auto closed = closed_form_profile(model, p, ProfileKind::subset)) {
        profile = *closed;
    } else {
        profile = variance_profile(model, p, cfg);
    }
    report.provenance_summary = summarize_provenance(profile.provenance);

    BoundQuery query;
    query.profile = profile;
    query.dims = model.shape();
    query.p = p;
    report.optimized = optimized_beta_bound(query);
    report.max_term = max_term_bound(query);

    report.empirical = mc_injective_mean(model, p, trials, cfg, seed);
    report.ratio_optimized = safe_ratio(report.optimized.bound, report.empirical.mean);
    report.ratio_max_term = safe_ratio(report.max_term.bound, report.empirical.mean);

    report.validity_applicable = true;
    for (Provenance prov : profile.provenance) {
        if (prov == Provenance::heuristic || prov == Provenance::empirical) {
            report.validity_applicable = false;
        }
    }
    if (report.validity_applicable) {
        report.validity_ok =
            report.empirical.mean + 3.0 * report.empirical.std_err <=
            report.optimized.bound + 1e-12;
    }
    return report;
}

}  // namespace randten
