#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randten/ball.hpp"
#include "randten/bounds.hpp"
#include "randten/model.hpp"
#include "randten/tensor.hpp"
#include "randten/variance.hpp"

namespace randten {

struct CoefficientSample {
    std::vector<double> values;
    CoeffDist dist = CoeffDist::gaussian;
    std::uint64_t seed = 0;
};

/// n independent draws, deterministic in (dist, n, seed).
CoefficientSample sample_coefficients(CoeffDist dist, std::size_t n, std::uint64_t seed);

/// sum_k xi_k T_k.
DenseTensor assemble_tensor(const RandomTensorModel& model, const CoefficientSample& xi);

struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::size_t trials = 0;
    std::vector<double> per_trial;
};

/// Monte Carlo mean of the estimated lp injective norm over draws of the
/// coefficient vector. Trial t uses the coefficient stream (seed, t); the
/// per-trial norm estimate is itself a lower estimate, which only makes
/// bound-validity checks stricter.
McEstimate mc_injective_mean(const RandomTensorModel& model, double p,
                             std::size_t trials, const AscentConfig& cfg,
                             std::uint64_t seed);

/// (E |A(g_1, .., g_r)|^moment_p)^(1/moment_p) over independent standard
/// gaussian vectors, with a delta-method standard error on the
/// transformed scale.
McEstimate chaos_moment_estimate(const DenseTensor& a, double moment_p,
                                 std::size_t trials, std::uint64_t seed);

enum class ModelKind { independent_entry, diagonal, gaussian_stack, symmetric_stack };
const char* to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

/// Stock model families: the full basis-tensor family (independent
/// entries), the diagonal basis family, seeded dense gaussian stacks, and
/// their symmetrized variant.
RandomTensorModel generate_model(ModelKind kind, const std::vector<std::size_t>& dims,
                                 std::size_t n, CoeffDist dist, std::uint64_t seed);

struct CompareReport {
    std::string model_id;
    double p = 2.0;
    std::size_t trials = 0;
    McEstimate empirical;
    BoundReport optimized;  // optimized-beta bound
    BoundReport max_term;   // beta-free bound
    double ratio_optimized = 0.0;
    double ratio_max_term = 0.0;
    bool validity_applicable = false;  // profile fully oracle grade?
    bool validity_ok = true;           // mean + 3 stderr <= optimized bound
    std::string provenance_summary;
};

/// Empirical mean vs. the two bounds. When the variance profile is fully
/// closed-form/oracle, the report also checks mean + 3 stderr <= bound.
CompareReport compare_bounds_report(const RandomTensorModel& model,
                                    const std::string& model_id, double p,
                                    std::size_t trials, const AscentConfig& cfg,
                                    std::uint64_t seed);

}  // namespace randten
