#include "randten/injective_norm.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace randten {

const char* to_string(NormMethod m) {
    switch (m) {
        case NormMethod::ascent: return "ascent";
        case NormMethod::matrix_oracle: return "matrix_oracle";
        case NormMethod::vertex_oracle: return "vertex_oracle";
        case NormMethod::grid_oracle: return "grid_oracle";
    }
    return "unknown";
}

NormEstimate estimate_injective_norm(const DenseTensor& a, double p,
                                     const AscentConfig& cfg) {
    if (a.order() < 1) throw std::invalid_argument("injective norm needs order >= 1");
    const BallSpec spec(p, a.shape());
    AscentResult pos = maximize_block_multilinear(MultilinearFormObjective(a, 1.0), spec, cfg);
    AscentResult neg = maximize_block_multilinear(MultilinearFormObjective(a, -1.0), spec, cfg);

    NormEstimate est;
    est.method = NormMethod::ascent;
    est.restarts_used = cfg.restarts;
    if (neg.value > pos.value) {
        est.value = neg.value;
        est.argmax = std::move(neg.argmax);
        for (double& v : est.argmax.front()) v = -v;  // A(argmax) == value again
    } else {
        est.value = pos.value;
        est.argmax = std::move(pos.argmax);
    }
    return est;
}

double matrix_operator_norm_oracle(const DenseTensor& m) {
    if (m.order() != 2) throw std::invalid_argument("operator norm oracle needs order 2");
    const auto rows = static_cast<Eigen::Index>(m.dim(0));
    const auto cols = static_cast<Eigen::Index>(m.dim(1));
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        mat(m.data(), rows, cols);
    Eigen::MatrixXd gram = cols <= rows ? Eigen::MatrixXd(mat.transpose() * mat)
                                        : Eigen::MatrixXd(mat * mat.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    const double top = solver.eigenvalues().maxCoeff();
    return std::sqrt(std::max(0.0, top));
}

NormEstimate injective_norm_vertex_oracle(const DenseTensor& a, std::size_t eval_cap) {
    if (a.order() < 1) throw std::invalid_argument("injective norm needs order >= 1");
    const BallSpec spec(kInfOrder, a.shape());
    // The form and its negation share vertices, so one scan of |value|
    // would do; scanning the positive form keeps the oracle dumb.
    const double pos = grid_supremum_oracle(MultilinearFormObjective(a, 1.0), spec, 2, eval_cap);
    const double neg = grid_supremum_oracle(MultilinearFormObjective(a, -1.0), spec, 2, eval_cap);
    NormEstimate est;
    est.value = std::max(pos, neg);
    est.method = NormMethod::vertex_oracle;
    return est;
}

NormEstimate injective_norm_grid_oracle(const DenseTensor& a, double p,
                                        std::size_t resolution, std::size_t eval_cap) {
    if (a.order() < 1) throw std::invalid_argument("injective norm needs order >= 1");
    const BallSpec spec(p, a.shape());
    const double pos = grid_supremum_oracle(MultilinearFormObjective(a, 1.0), spec, resolution, eval_cap);
    const double neg = grid_supremum_oracle(MultilinearFormObjective(a, -1.0), spec, resolution, eval_cap);
    NormEstimate est;
    est.value = std::max(pos, neg);
    est.method = NormMethod::grid_oracle;
    return est;
}

}  // namespace randten
