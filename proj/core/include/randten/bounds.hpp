#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "randten/ball.hpp"
#include "randten/model.hpp"
#include "randten/tensor.hpp"
#include "randten/variance.hpp"

namespace randten {

/// Inputs for the expected-injective-norm bound family.
struct BoundQuery {
    VarianceProfile profile;
    std::vector<std::size_t> dims;
    double p = 2.0;
    std::optional<double> beta;
    double c_r = 1.0;
    std::optional<double> moment_p;
};

/// Verification of the two-sided estimate that brackets
/// inf_x { a_0 x + sum_{l>=2} a_l x^(1-l) } by multiples of
/// max_l a_l^(1/l) a_0^((l-1)/l).
struct SandwichCheck {
    double lower = 0.0;
    double upper = 0.0;
    double infimum = 0.0;
    bool holds = false;
};

struct BoundReport {
    double bound = 0.0;
    double beta_used = 1.0;
    std::map<std::size_t, double> terms;  // l -> beta^(1-l) sigma_l^2
    double dimension_factor = 0.0;
    std::vector<Provenance> provenance;
    bool infimum_not_attained = false;
    std::optional<SandwichCheck> sandwich;
    std::map<std::string, double> constants;
};

/// sum_t d_t^(1 - 2/p); at p = inf the exponent limit gives d_t itself.
double dimension_factor(std::span<const std::size_t> dims, double p);

/// sqrt((sum_l beta^(1-l) sigma_l^2) * dimension factor) at the given beta.
BoundReport fixed_beta_bound(const BoundQuery& query);

/// Same bound at the minimizing beta. The summand is convex in log(beta),
/// so a golden-section search on log(beta) over [1e-9, 1e9] (200
/// iterations) finds it. Degenerate profiles where the infimum is only
/// approached are flagged instead of faked with an extreme beta. When the
/// sandwich applies, the report carries its verification.
BoundReport optimized_beta_bound(const BoundQuery& query);

/// Beta-free closed form:
/// sqrt((sigma_1^2 + r max_{2<=l<=r} sigma_l^(2/l) sigma_0^((2l-2)/l)) * dim factor).
BoundReport max_term_bound(const BoundQuery& query);

struct SymmetricBoundReport {
    BoundReport report;               // max-term bound on the converted profile
    VarianceProfile prefix_profile;   // the prefix parameters
    VarianceProfile converted;        // binom(r, r-l)-scaled, subset kind
    double normalized_bound = 0.0;    // d^(1/p - 1/2) * bound
    std::string note;                 // constant is the constructive composition
};

/// Bound for symmetric cubical models via the prefix parameters: scales
/// them by binom(r, r-l) and applies the max-term bound.
SymmetricBoundReport symmetric_model_bound(const RandomTensorModel& model, double p,
                                           const AscentConfig& cfg);

struct MatrixCaseReport {
    double term1 = 0.0;       // max(||sum T T^T||, ||sum T^T T||)^(1/2)
    double term2 = 0.0;       // (sup_xy sum (x^T T y)^2)^(1/4) (sum ||T||_F^2)^(1/4)
    double rhs = 0.0;         // constant * (term1 + term2)
    double constant = 2.0;
    Provenance sup_provenance = Provenance::heuristic;
};

/// Order-2, p = 2 specialization of the bound.
MatrixCaseReport matrix_model_bound(const RandomTensorModel& model,
                                    const AscentConfig& cfg, double constant = 2.0);

/// C_r * sum over partitions P of moment_p^(|P|/2) ||A^P||, with the
/// partition norms estimated at p = 2.
double latala_moment_bound(const DenseTensor& a, double moment_p, double c_r,
                           const AscentConfig& cfg, std::size_t partition_cap = 8);

/// For a model of order r-1 fused by P, with A the stacked order-r
/// tensor: C * sum over Q in S(r) of moment_p^((|Q|-|P|)/2) ||A^Q||.
double partition_moment_bound(const RandomTensorModel& model, const Partition& p,
                              double moment_p, double constant, const AscentConfig& cfg,
                              std::size_t partition_cap = 8);

/// sum_l beta^(l-r) sum_{|I|=l} ||A contracted along I at xs||_F^2: the
/// exact second moment of the beta^(-1)-smoothed chaos at center xs.
double second_moment_rhs(const DenseTensor& a, std::span<const std::vector<double>> xs,
                         double beta);

struct DonskerVaradhanReport {
    double lhs = 0.0;          // log sum_i prior_i exp(g_i)
    double gibbs_value = 0.0;  // E_rho g - KL(rho || prior) at the Gibbs posterior
    double gap = 0.0;          // lhs - gibbs_value
    double sup_probe = 0.0;    // best random posterior value
};

/// Finite-space variational identity: the Gibbs posterior attains the
/// log-MGF, and no posterior exceeds it.
DonskerVaradhanReport donsker_varadhan_check(std::span<const double> prior,
                                             std::span<const double> g,
                                             std::uint64_t seed = 0x5EEDF00D,
                                             int probes = 1000);

}  // namespace randten
