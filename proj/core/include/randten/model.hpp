#pragma once

#include <string>
#include <vector>

#include "randten/tensor.hpp"

namespace randten {

/// Coefficient laws, all zero mean and 1-subgaussian under the standard
/// normalization: standard gaussian, Rademacher, uniform on [-1, 1].
enum class CoeffDist { gaussian, rademacher, uniform };

const char* to_string(CoeffDist d);
CoeffDist coeff_dist_from_string(const std::string& s);

/// T = sum_k xi_k T_k with deterministic same-shape tensors T_k and iid
/// subgaussian coefficients.
struct RandomTensorModel {
    std::vector<DenseTensor> tensors;
    CoeffDist coeff_dist = CoeffDist::gaussian;
    bool symmetric = false;

    RandomTensorModel(std::vector<DenseTensor> ts, CoeffDist dist, bool sym = false);

    std::size_t count() const noexcept { return tensors.size(); }
    std::size_t order() const noexcept { return tensors.front().order(); }
    const std::vector<std::size_t>& shape() const noexcept { return tensors.front().shape(); }
};

/// Whether the tensor is invariant under every permutation of its axes
/// (requires a cubical shape).
bool is_symmetric_tensor(const DenseTensor& a, double tol = 1e-12);

/// Average of a tensor over all permutations of its axes.
DenseTensor symmetrize_tensor(const DenseTensor& a);

}  // namespace randten
