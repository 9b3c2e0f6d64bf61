#pragma once

#include <string>
#include <vector>

#include "randten/ball.hpp"
#include "randten/tensor.hpp"

namespace randten {

enum class NormMethod { ascent, matrix_oracle, vertex_oracle, grid_oracle };

const char* to_string(NormMethod m);

struct NormEstimate {
    double value = 0.0;
    NormMethod method = NormMethod::ascent;
    std::vector<std::vector<double>> argmax;  // empty for oracle methods
    int restarts_used = 0;
};

/// Heuristic lower estimate of sup A(x_1, .., x_r) over the lp ball
/// product: block ascent on the form and on its negation (the two agree
/// in exact arithmetic, running both hardens the restarts). The argmax is
/// sign-adjusted so that evaluating A at it reproduces the value.
NormEstimate estimate_injective_norm(const DenseTensor& a, double p,
                                     const AscentConfig& cfg);

/// Largest singular value; exact reference for p = 2, order 2.
double matrix_operator_norm_oracle(const DenseTensor& m);

/// Exact injective norm at p = inf by sign-vertex enumeration.
NormEstimate injective_norm_vertex_oracle(const DenseTensor& a,
                                          std::size_t eval_cap = kDefaultGridCap);

/// Grid lower bound on the lp injective norm.
NormEstimate injective_norm_grid_oracle(const DenseTensor& a, double p,
                                        std::size_t resolution,
                                        std::size_t eval_cap = kDefaultGridCap);

}  // namespace randten
