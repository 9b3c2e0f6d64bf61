#include "randten/variance.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randten {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::closed_form: return "closed_form";
        case Provenance::heuristic: return "heuristic";
        case Provenance::oracle: return "oracle";
        case Provenance::empirical: return "empirical";
    }
    return "unknown";
}

const char* to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::subset: return "subset";
        case ProfileKind::prefix: return "prefix";
    }
    return "unknown";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double acc = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(acc);
}

namespace {

double model_frobenius_sq(const std::vector<DenseTensor>& tensors) {
    double s = 0.0;
    for (const auto& t : tensors) s += frobenius_norm_sq(t);
    return s;
}

/// v_j = sum over residual cells of d[.., j at axis, ..] * w[residual].
/// w must have the shape of d with `axis` removed.
std::vector<double> axis_weighted_sum(const DenseTensor& d, std::size_t axis,
                                      const DenseTensor& w) {
    const auto& shape = d.shape();
    std::size_t inner = 1;
    for (std::size_t t = axis + 1; t < shape.size(); ++t) inner *= shape[t];
    const std::size_t len = shape[axis];
    const std::size_t outer = d.size() / (inner * len);
    std::vector<double> v(len, 0.0);
    const double* src = d.data();
    const double* wsrc = w.data();
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t j = 0; j < len; ++j) {
            const double* row = src + (o * len + j) * inner;
            const double* wrow = wsrc + o * inner;
            double acc = 0.0;
            for (std::size_t i = 0; i < inner; ++i) acc += row[i] * wrow[i];
            v[j] += acc;
        }
    }
    return v;
}

/// Adds the block-t gradient of ||T contracted along `subset`||_F^2 to g.
/// The contraction pairs axis s with xs[s]; t must belong to subset.
void accumulate_contraction_gradient(const DenseTensor& tensor,
                                     const std::vector<std::size_t>& subset, std::size_t t,
                                     std::span<const std::vector<double>> xs,
                                     std::vector<double>& g) {
    DenseTensor cur = tensor;
    // Contract the other subset axes from the top down; pending axis
    // numbers stay valid because only higher axes get removed first.
    for (std::size_t j = subset.size(); j-- > 0;) {
        const std::size_t axis = subset[j];
        if (axis == t) continue;
        cur = contract_axis(cur, axis, xs[axis]);
    }
    std::size_t below = 0;
    for (std::size_t s : subset) below += s < t ? 1 : 0;
    const std::size_t pos = t - below;

    const DenseTensor w = contract_axis(cur, pos, xs[t]);
    const std::vector<double> v = axis_weighted_sum(cur, pos, w);
    for (std::size_t i = 0; i < v.size(); ++i) g[i] += 2.0 * v[i];
}

double contraction_value_sq(const DenseTensor& tensor,
                            const std::vector<std::size_t>& subset,
                            std::span<const std::vector<double>> xs) {
    DenseTensor cur = tensor;
    for (std::size_t j = subset.size(); j-- > 0;) {
        cur = contract_axis(cur, subset[j], xs[subset[j]]);
    }
    return frobenius_norm_sq(cur);
}

}  // namespace

SubsetVarianceObjective::SubsetVarianceObjective(std::vector<DenseTensor> tensors,
                                                 std::size_t ell)
    : tensors_(std::move(tensors)), ell_(ell) {
    if (tensors_.empty()) throw std::invalid_argument("objective needs tensors");
    const std::size_t r = tensors_.front().order();
    if (ell_ > r) throw std::invalid_argument("contraction level exceeds order");
    subsets_ = enumerate_subsets(r, r - ell_);
}

const std::vector<std::size_t>& SubsetVarianceObjective::dims() const {
    return tensors_.front().shape();
}

double SubsetVarianceObjective::value(std::span<const std::vector<double>> xs) const {
    double total = 0.0;
    for (const auto& subset : subsets_) {
        for (const auto& t : tensors_) total += contraction_value_sq(t, subset, xs);
    }
    return total;
}

std::vector<double> SubsetVarianceObjective::block_gradient(
    std::span<const std::vector<double>> xs, std::size_t t) const {
    std::vector<double> g(dims()[t], 0.0);
    for (const auto& subset : subsets_) {
        if (!std::binary_search(subset.begin(), subset.end(), t)) continue;
        for (const auto& tensor : tensors_) {
            accumulate_contraction_gradient(tensor, subset, t, xs, g);
        }
    }
    return g;
}

PrefixVarianceObjective::PrefixVarianceObjective(std::vector<DenseTensor> tensors,
                                                 std::size_t ell)
    : tensors_(std::move(tensors)) {
    if (tensors_.empty()) throw std::invalid_argument("objective needs tensors");
    const std::size_t r = tensors_.front().order();
    if (ell >= r) throw std::invalid_argument("prefix objective needs at least one block");
    prefix_ = r - ell;
    const auto& shape = tensors_.front().shape();
    block_dims_.assign(shape.begin(), shape.begin() + static_cast<std::ptrdiff_t>(prefix_));
}

double PrefixVarianceObjective::value(std::span<const std::vector<double>> xs) const {
    std::vector<std::size_t> prefix(prefix_);
    for (std::size_t t = 0; t < prefix_; ++t) prefix[t] = t;
    double total = 0.0;
    for (const auto& t : tensors_) total += contraction_value_sq(t, prefix, xs);
    return total;
}

std::vector<double> PrefixVarianceObjective::block_gradient(
    std::span<const std::vector<double>> xs, std::size_t t) const {
    if (t >= prefix_) throw std::out_of_range("prefix block index out of range");
    std::vector<std::size_t> prefix(prefix_);
    for (std::size_t s = 0; s < prefix_; ++s) prefix[s] = s;
    std::vector<double> g(block_dims_[t], 0.0);
    for (const auto& tensor : tensors_) {
        accumulate_contraction_gradient(tensor, prefix, t, xs, g);
    }
    return g;
}

VarianceProfile variance_profile(const RandomTensorModel& model, double p,
                                 const AscentConfig& cfg) {
    const std::size_t r = model.order();
    VarianceProfile profile;
    profile.p = p;
    profile.kind = ProfileKind::subset;
    profile.values.assign(r + 1, 0.0);
    profile.provenance.assign(r + 1, Provenance::heuristic);
    const BallSpec spec(p, model.shape());
    for (std::size_t ell = 0; ell < r; ++ell) {
        SubsetVarianceObjective objective(model.tensors, ell);
        profile.values[ell] = maximize_block_multilinear(objective, spec, cfg).value;
    }
    profile.values[r] = model_frobenius_sq(model.tensors);
    profile.provenance[r] = Provenance::closed_form;
    return profile;
}

VarianceProfile prefix_variance_profile(const RandomTensorModel& model, double p,
                                        const AscentConfig& cfg) {
    if (!model.symmetric) {
        throw std::invalid_argument("prefix profile is defined for symmetric models");
    }
    const std::size_t r = model.order();
    VarianceProfile profile;
    profile.p = p;
    profile.kind = ProfileKind::prefix;
    profile.values.assign(r + 1, 0.0);
    profile.provenance.assign(r + 1, Provenance::heuristic);
    for (std::size_t ell = 0; ell < r; ++ell) {
        PrefixVarianceObjective objective(model.tensors, ell);
        const BallSpec spec(p, objective.dims());
        profile.values[ell] = maximize_block_multilinear(objective, spec, cfg).value;
    }
    profile.values[r] = model_frobenius_sq(model.tensors);
    profile.provenance[r] = Provenance::closed_form;
    return profile;
}

namespace {

bool is_zero_model(const RandomTensorModel& model) {
    for (const auto& t : model.tensors) {
        for (double v : t.values()) {
            if (v != 0.0) return false;
        }
    }
    return true;
}

bool is_identity_matrix_model(const RandomTensorModel& model) {
    if (model.count() != 1 || model.order() != 2) return false;
    const DenseTensor& t = model.tensors.front();
    const std::size_t d = t.dim(0);
    if (t.dim(1) != d) return false;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (t[i * d + j] != (i == j ? 1.0 : 0.0)) return false;
        }
    }
    return true;
}

/// T_k = e_k x e_k x .. x e_k for k = 1..d.
bool is_diagonal_basis_model(const RandomTensorModel& model) {
    const auto& shape = model.shape();
    const std::size_t d = shape.front();
    for (std::size_t dim : shape) {
        if (dim != d) return false;
    }
    if (model.count() != d) return false;
    for (std::size_t k = 0; k < d; ++k) {
        const DenseTensor& t = model.tensors[k];
        std::size_t diag = 0;
        for (std::size_t axis = 0; axis < t.order(); ++axis) diag = diag * d + k;
        for (std::size_t f = 0; f < t.size(); ++f) {
            if (t[f] != (f == diag ? 1.0 : 0.0)) return false;
        }
    }
    return true;
}

}  // namespace

std::optional<VarianceProfile> closed_form_profile(const RandomTensorModel& model,
                                                   double p, ProfileKind kind) {
    const std::size_t r = model.order();
    VarianceProfile profile;
    profile.p = p;
    profile.kind = kind;
    profile.values.assign(r + 1, 0.0);
    profile.provenance.assign(r + 1, Provenance::closed_form);

    if (is_zero_model(model)) return profile;
    if (p != 2.0) return std::nullopt;

    if (is_identity_matrix_model(model)) {
        const double d = static_cast<double>(model.shape().front());
        profile.values = kind == ProfileKind::subset ? std::vector<double>{1.0, 2.0, d}
                                                     : std::vector<double>{1.0, 1.0, d};
        return profile;
    }
    if (is_diagonal_basis_model(model)) {
        const double d = static_cast<double>(model.shape().front());
        for (std::size_t ell = 0; ell < r; ++ell) {
            profile.values[ell] =
                kind == ProfileKind::subset ? binomial(r, r - ell) : 1.0;
        }
        profile.values[r] = d;
        return profile;
    }
    return std::nullopt;
}

namespace {

Eigen::MatrixXd mode_gram(const std::vector<DenseTensor>& tensors, std::size_t axis) {
    const auto& shape = tensors.front().shape();
    const auto d = static_cast<Eigen::Index>(shape[axis]);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
    std::size_t inner = 1;
    for (std::size_t t = axis + 1; t < shape.size(); ++t) inner *= shape[t];
    for (const auto& tensor : tensors) {
        const std::size_t len = shape[axis];
        const std::size_t outer = tensor.size() / (inner * len);
        Eigen::MatrixXd unfold(d, static_cast<Eigen::Index>(outer * inner));
        const double* src = tensor.data();
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t j = 0; j < len; ++j) {
                const double* row = src + (o * len + j) * inner;
                for (std::size_t i = 0; i < inner; ++i) {
                    unfold(static_cast<Eigen::Index>(j),
                           static_cast<Eigen::Index>(o * inner + i)) = row[i];
                }
            }
        }
        gram.noalias() += unfold * unfold.transpose();
    }
    return gram;
}

double top_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return std::max(0.0, solver.eigenvalues().maxCoeff());
}

}  // namespace

double axis_gram_top_eigensum(const RandomTensorModel& model) {
    double total = 0.0;
    for (std::size_t axis = 0; axis < model.order(); ++axis) {
        total += top_eigenvalue(mode_gram(model.tensors, axis));
    }
    return total;
}

double mode_gram_top_eigenvalue(const std::vector<DenseTensor>& tensors,
                                std::size_t axis) {
    if (tensors.empty()) throw std::invalid_argument("mode gram needs tensors");
    if (axis >= tensors.front().order()) throw std::out_of_range("mode axis out of range");
    return top_eigenvalue(mode_gram(tensors, axis));
}

VarianceProfile oracle_variance_profile(const RandomTensorModel& model, double p,
                                        const AscentConfig& cfg,
                                        std::size_t grid_resolution,
                                        std::size_t eval_cap) {
    if (auto closed = closed_form_profile(model, p, ProfileKind::subset)) return *closed;

    const std::size_t r = model.order();
    VarianceProfile profile;
    profile.p = p;
    profile.kind = ProfileKind::subset;
    profile.values.assign(r + 1, 0.0);
    profile.provenance.assign(r + 1, Provenance::heuristic);
    profile.values[r] = model_frobenius_sq(model.tensors);
    profile.provenance[r] = Provenance::closed_form;

    const BallSpec spec(p, model.shape());
    for (std::size_t ell = 0; ell < r; ++ell) {
        if (ell + 1 == r && p == 2.0) {
            // The |I| = 1 objective is a per-axis sum of quadratics.
            profile.values[ell] = axis_gram_top_eigensum(model);
            profile.provenance[ell] = Provenance::oracle;
            continue;
        }
        SubsetVarianceObjective objective(model.tensors, ell);
        const double ascended = maximize_block_multilinear(objective, spec, cfg).value;
        try {
            const double gridded =
                grid_supremum_oracle(objective, spec, grid_resolution, eval_cap);
            profile.values[ell] = std::max(gridded, ascended);
            profile.provenance[ell] = Provenance::oracle;
        } catch (const SearchSpaceTooLarge&) {
            profile.values[ell] = ascended;
        }
    }
    return profile;
}

VarianceProfile oracle_prefix_profile(const RandomTensorModel& model, double p,
                                      const AscentConfig& cfg,
                                      std::size_t grid_resolution,
                                      std::size_t eval_cap) {
    if (!model.symmetric) {
        throw std::invalid_argument("prefix profile is defined for symmetric models");
    }
    if (auto closed = closed_form_profile(model, p, ProfileKind::prefix)) return *closed;

    const std::size_t r = model.order();
    VarianceProfile profile;
    profile.p = p;
    profile.kind = ProfileKind::prefix;
    profile.values.assign(r + 1, 0.0);
    profile.provenance.assign(r + 1, Provenance::heuristic);
    profile.values[r] = model_frobenius_sq(model.tensors);
    profile.provenance[r] = Provenance::closed_form;

    for (std::size_t ell = 0; ell < r; ++ell) {
        if (ell + 1 == r && p == 2.0) {
            profile.values[ell] = top_eigenvalue(mode_gram(model.tensors, 0));
            profile.provenance[ell] = Provenance::oracle;
            continue;
        }
        PrefixVarianceObjective objective(model.tensors, ell);
        const BallSpec spec(p, objective.dims());
        const double ascended = maximize_block_multilinear(objective, spec, cfg).value;
        try {
            const double gridded =
                grid_supremum_oracle(objective, spec, grid_resolution, eval_cap);
            profile.values[ell] = std::max(gridded, ascended);
            profile.provenance[ell] = Provenance::oracle;
        } catch (const SearchSpaceTooLarge&) {
            profile.values[ell] = ascended;
        }
    }
    return profile;
}

std::size_t ComparisonReport::violations() const {
    std::size_t n = 0;
    for (const auto& row : rows) n += row.verdict == Verdict::violated ? 1 : 0;
    return n;
}

std::size_t ComparisonReport::conclusive() const {
    std::size_t n = 0;
    for (const auto& row : rows) n += row.verdict != Verdict::inconclusive ? 1 : 0;
    return n;
}

namespace {

bool oracle_grade(Provenance p) {
    return p == Provenance::closed_form || p == Provenance::oracle;
}

Verdict gated_verdict(double lhs, double rhs, Provenance lp, Provenance rp) {
    if (!oracle_grade(lp) || !oracle_grade(rp)) return Verdict::inconclusive;
    return leq_with_slack(lhs, rhs) ? Verdict::holds : Verdict::violated;
}

}  // namespace

ComparisonReport symmetric_comparison_check(const RandomTensorModel& model, double p,
                                            const AscentConfig& cfg,
                                            std::size_t grid_resolution,
                                            std::size_t eval_cap) {
    if (!model.symmetric) {
        throw std::invalid_argument("symmetric comparison needs a symmetric model");
    }
    const std::size_t r = model.order();
    const VarianceProfile lhs = oracle_variance_profile(model, p, cfg, grid_resolution, eval_cap);
    const VarianceProfile rhs = oracle_prefix_profile(model, p, cfg, grid_resolution, eval_cap);

    ComparisonReport report;
    for (std::size_t ell = 0; ell <= r; ++ell) {
        ComparisonRow row;
        row.ell = ell;
        row.lhs = lhs.values[ell];
        row.rhs = binomial(r, r - ell) * rhs.values[ell];
        row.lhs_provenance = lhs.provenance[ell];
        row.rhs_provenance = rhs.provenance[ell];
        row.verdict = gated_verdict(row.lhs, row.rhs, row.lhs_provenance, row.rhs_provenance);
        report.rows.push_back(row);
    }
    return report;
}

ComparisonReport partition_variance_check(const RandomTensorModel& model,
                                          const Partition& partition,
                                          const AscentConfig& cfg,
                                          std::size_t grid_resolution,
                                          std::size_t eval_cap) {
    if (partition.order != model.order()) {
        throw std::invalid_argument("partition order does not match model order");
    }
    const std::size_t m = partition.block_count();

    std::vector<DenseTensor> fused;
    fused.reserve(model.count());
    for (const auto& t : model.tensors) fused.push_back(reshape_partition(t, partition));
    const RandomTensorModel fused_model(std::move(fused), model.coeff_dist, false);
    const VarianceProfile lhs =
        oracle_variance_profile(fused_model, 2.0, cfg, grid_resolution, eval_cap);

    const DenseTensor stacked = stack_tensors(model.tensors);
    const std::size_t r = stacked.order();

    // Squared partition norms of the stacked tensor, bucketed by block count.
    std::vector<double> bucket_sq(r + 1, 0.0);
    std::vector<Provenance> bucket_prov(r + 1, Provenance::closed_form);
    for (const Partition& q : enumerate_partitions(r)) {
        const DenseTensor fused_q = reshape_partition(stacked, q);
        double norm = 0.0;
        Provenance prov = Provenance::oracle;
        if (q.block_count() == 1) {
            norm = frobenius_norm(fused_q);
            prov = Provenance::closed_form;
        } else if (q.block_count() == 2) {
            norm = matrix_operator_norm_oracle(fused_q);
        } else {
            const double ascended = estimate_injective_norm(fused_q, 2.0, cfg).value;
            try {
                const double gridded =
                    injective_norm_grid_oracle(fused_q, 2.0, grid_resolution, eval_cap).value;
                norm = std::max(gridded, ascended);
            } catch (const SearchSpaceTooLarge&) {
                norm = ascended;
                prov = Provenance::heuristic;
            }
        }
        const std::size_t bucket = q.block_count();
        bucket_sq[bucket] += norm * norm;
        if (prov == Provenance::heuristic) {
            bucket_prov[bucket] = Provenance::heuristic;
        } else if (prov == Provenance::oracle &&
                   bucket_prov[bucket] != Provenance::heuristic) {
            bucket_prov[bucket] = Provenance::oracle;
        }
    }

    ComparisonReport report;
    for (std::size_t ell = 0; ell <= m; ++ell) {
        ComparisonRow row;
        row.ell = ell;
        row.lhs = lhs.values[ell];
        const std::size_t bucket = m - ell + 1;
        row.rhs = bucket_sq[bucket];
        row.lhs_provenance = lhs.provenance[ell];
        row.rhs_provenance = bucket_prov[bucket];
        row.verdict = gated_verdict(row.lhs, row.rhs, row.lhs_provenance, row.rhs_provenance);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace randten
