#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "randten/tensor.hpp"

namespace randten {

inline constexpr double kInfOrder = std::numeric_limits<double>::infinity();

inline bool is_inf_order(double p) { return std::isinf(p); }

/// Product of lp balls: one ball of order p per block, block t of
/// dimension dims[t].
struct BallSpec {
    double p = 2.0;
    std::vector<std::size_t> dims;

    BallSpec(double p_, std::vector<std::size_t> dims_);
};

struct AscentConfig {
    int restarts = 32;
    int max_iters = 1000;
    double rel_tol = 1e-9;
    std::uint64_t seed = 0x5EEDF00D;
};

/// Thrown by lp_dual_map on a zero input; the ascent driver treats the
/// block as stationary and the restart loop carries on.
struct NoAscentDirection : std::runtime_error {
    NoAscentDirection() : std::runtime_error("zero gradient: no ascent direction") {}
};

/// Thrown when a grid oracle would exceed its evaluation cap.
struct SearchSpaceTooLarge : std::length_error {
    explicit SearchSpaceTooLarge(const std::string& what) : std::length_error(what) {}
};

/// Unit-lp-norm maximizer of <g, x>. The maximum equals the dual norm
/// ||g||_q, 1/p + 1/q = 1. At p = inf, zero entries map to +1.
std::vector<double> lp_dual_map(std::span<const double> g, double p);

/// ||x||_p (p >= 1 or inf).
double lp_norm(std::span<const double> x, double p);

/// Objective over a product of blocks, convex in each block with the
/// others held fixed.
class BlockObjective {
public:
    virtual ~BlockObjective() = default;
    virtual const std::vector<std::size_t>& dims() const = 0;
    virtual double value(std::span<const std::vector<double>> xs) const = 0;
    virtual std::vector<double> block_gradient(std::span<const std::vector<double>> xs,
                                               std::size_t t) const = 0;
};

/// The form (x_1, .., x_r) -> sign * A(x_1, .., x_r).
class MultilinearFormObjective final : public BlockObjective {
public:
    explicit MultilinearFormObjective(DenseTensor a, double sign = 1.0);

    const std::vector<std::size_t>& dims() const override { return tensor_.shape(); }
    double value(std::span<const std::vector<double>> xs) const override;
    std::vector<double> block_gradient(std::span<const std::vector<double>> xs,
                                       std::size_t t) const override;

private:
    DenseTensor tensor_;
    double sign_;
};

struct AscentResult {
    double value = 0.0;
    std::vector<std::vector<double>> argmax;
    int restarts_used = 0;
};

/// Multi-restart conditional-gradient ascent: cyclic block updates
/// x_t <- lp_dual_map(block gradient). For block-convex objectives every
/// update is non-decreasing, so the result is a feasible-point (lower)
/// bound on the supremum. Deterministic given (seed, restarts); restarts
/// may run on several threads.
AscentResult maximize_block_multilinear(const BlockObjective& objective,
                                        const BallSpec& spec,
                                        const AscentConfig& cfg);

/// Direction grid on the lp unit sphere in dimension `dim`: spherical
/// angle grid (resolution points per angle) normalized onto the sphere,
/// plus the signed basis vectors.
std::vector<std::vector<double>> sphere_grid(std::size_t dim, double p,
                                             std::size_t resolution);

inline constexpr std::size_t kDefaultGridCap = 25'000'000;

/// Exhaustive lower bound on the supremum over the ball product. Finite
/// p scans sphere_grid points per block; p = inf enumerates the sign
/// vertices, which is exact for per-block convex objectives. Refuses
/// (SearchSpaceTooLarge) when the grid product exceeds `eval_cap`.
double grid_supremum_oracle(const BlockObjective& objective, const BallSpec& spec,
                            std::size_t resolution,
                            std::size_t eval_cap = kDefaultGridCap);

}  // namespace randten
