#pragma once

#include <optional>
#include <string>
#include <vector>

#include "randten/ball.hpp"
#include "randten/injective_norm.hpp"
#include "randten/model.hpp"
#include "randten/tensor.hpp"

namespace randten {

enum class Provenance { closed_form, heuristic, oracle, empirical };
const char* to_string(Provenance p);

enum class ProfileKind {
    subset,  // sup over all r blocks, summed over all contraction subsets
    prefix,  // sup over the first r-l blocks, prefix contraction only
};
const char* to_string(ProfileKind k);

/// Squared variance parameters sigma_0^2 .. sigma_r^2 (or the prefix
/// variant), each tagged with how it was obtained.
struct VarianceProfile {
    double p = 2.0;
    ProfileKind kind = ProfileKind::subset;
    std::vector<double> values;           // index l = 0..r
    std::vector<Provenance> provenance;   // one per value

    std::size_t order() const noexcept { return values.size() - 1; }
};

/// sum over |I| = r-l of sum_k ||T_k contracted along I||_F^2, a convex
/// quadratic in each block.
class SubsetVarianceObjective final : public BlockObjective {
public:
    SubsetVarianceObjective(std::vector<DenseTensor> tensors, std::size_t ell);

    const std::vector<std::size_t>& dims() const override;
    double value(std::span<const std::vector<double>> xs) const override;
    std::vector<double> block_gradient(std::span<const std::vector<double>> xs,
                                       std::size_t t) const override;

private:
    std::vector<DenseTensor> tensors_;
    std::size_t ell_;
    std::vector<std::vector<std::size_t>> subsets_;
};

/// sum_k ||T_k(x_1, .., x_{r-l}, ., .., .)||_F^2 over the first r-l
/// blocks only (cubical symmetric models).
class PrefixVarianceObjective final : public BlockObjective {
public:
    PrefixVarianceObjective(std::vector<DenseTensor> tensors, std::size_t ell);

    const std::vector<std::size_t>& dims() const override { return block_dims_; }
    double value(std::span<const std::vector<double>> xs) const override;
    std::vector<double> block_gradient(std::span<const std::vector<double>> xs,
                                       std::size_t t) const override;

private:
    std::vector<DenseTensor> tensors_;
    std::size_t prefix_;
    std::vector<std::size_t> block_dims_;
};

/// Heuristic profile via block ascent; the top entry (l = r, empty
/// contraction) is the closed form sum_k ||T_k||_F^2.
VarianceProfile variance_profile(const RandomTensorModel& model, double p,
                                 const AscentConfig& cfg);

/// Prefix-contraction profile for symmetric cubical models.
VarianceProfile prefix_variance_profile(const RandomTensorModel& model, double p,
                                        const AscentConfig& cfg);

/// Exact profiles for recognized model families (zero models; the single
/// identity-matrix model at p = 2; the diagonal basis family at p = 2).
std::optional<VarianceProfile> closed_form_profile(const RandomTensorModel& model,
                                                   double p, ProfileKind kind);

/// At p = 2, l = r-1: the subset objective splits per axis into
/// quadratics, so the supremum is the sum of top axis-Gram eigenvalues.
double axis_gram_top_eigensum(const RandomTensorModel& model);

/// Top eigenvalue of sum_k U_t(T_k) U_t(T_k)^T for the mode-t unfolding
/// U_t. For matrices this is ||sum T_k T_k^T||_op (t = 0) and
/// ||sum T_k^T T_k||_op (t = 1).
double mode_gram_top_eigenvalue(const std::vector<DenseTensor>& tensors,
                                std::size_t axis);

/// Best-effort oracle-grade profile: closed forms, the exact eigenvalue
/// route at l = r-1 (p = 2), grid oracles where the search space fits the
/// cap, ascent (tagged heuristic) otherwise. Grid values are polished
/// with the ascent value; both are feasible-point lower bounds.
VarianceProfile oracle_variance_profile(const RandomTensorModel& model, double p,
                                        const AscentConfig& cfg,
                                        std::size_t grid_resolution = 64,
                                        std::size_t eval_cap = kDefaultGridCap);

VarianceProfile oracle_prefix_profile(const RandomTensorModel& model, double p,
                                      const AscentConfig& cfg,
                                      std::size_t grid_resolution = 64,
                                      std::size_t eval_cap = kDefaultGridCap);

enum class Verdict { holds, violated, inconclusive };
const char* to_string(Verdict v);

struct ComparisonRow {
    std::size_t ell = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    Provenance lhs_provenance = Provenance::heuristic;
    Provenance rhs_provenance = Provenance::heuristic;
    Verdict verdict = Verdict::inconclusive;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::size_t violations() const;
    std::size_t conclusive() const;
};

/// Checks sigma_l^2 <= binom(r, r-l) * prefix_l^2 for all l. Verdicts are
/// only issued when both sides are oracle grade; heuristic rows report
/// inconclusive.
ComparisonReport symmetric_comparison_check(const RandomTensorModel& model, double p,
                                            const AscentConfig& cfg,
                                            std::size_t grid_resolution = 64,
                                            std::size_t eval_cap = kDefaultGridCap);

/// For a model of order r-1 fused by partition P: checks, at p = 2 and
/// each l <= |P|, that sigma_l^2 of the fused model is at most the sum of
/// squared partition norms ||A^Q|| over Q in S(r) with |Q| = |P|-l+1,
/// where A stacks the model tensors along a new trailing axis.
ComparisonReport partition_variance_check(const RandomTensorModel& model,
                                          const Partition& p,
                                          const AscentConfig& cfg,
                                          std::size_t grid_resolution = 64,
                                          std::size_t eval_cap = kDefaultGridCap);

/// binom(n, k) as a double.
double binomial(std::size_t n, std::size_t k);

/// Inequality slack used by the comparison verdicts.
inline bool leq_with_slack(double lhs, double rhs) {
    return lhs <= rhs + 1e-9 + 1e-6 * std::max(std::abs(lhs), std::abs(rhs));
}

}  // namespace randten
