#include "randten/ball.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "randten/parallel.hpp"
#include "randten/rng.hpp"

namespace randten {

BallSpec::BallSpec(double p_, std::vector<std::size_t> dims_)
    : p(p_), dims(std::move(dims_)) {
    if (!(p >= 2.0)) throw std::invalid_argument("ball order p must be >= 2 (or inf)");
    if (dims.empty()) throw std::invalid_argument("ball product needs at least one block");
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("ball dimensions must be positive");
    }
}

double lp_norm(std::span<const double> x, double p) {
    if (is_inf_order(p)) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v) / m, p);
    return m * std::pow(s, 1.0 / p);
}

std::vector<double> lp_dual_map(std::span<const double> g, double p) {
    if (!(p >= 2.0)) throw std::invalid_argument("ball order p must be >= 2 (or inf)");
    bool all_zero = true;
    for (double v : g) {
        if (v != 0.0) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) throw NoAscentDirection();

    std::vector<double> x(g.size());
    if (is_inf_order(p)) {
        for (std::size_t i = 0; i < g.size(); ++i) x[i] = g[i] < 0.0 ? -1.0 : 1.0;
        return x;
    }
    if (p == 2.0) {
        const double n = lp_norm(g, 2.0);
        for (std::size_t i = 0; i < g.size(); ++i) x[i] = g[i] / n;
        return x;
    }
    // x_i ~ sign(g_i) |g_i|^(q-1), q = p/(p-1); scale first so the powers
    // stay in range.
    const double q = p / (p - 1.0);
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double a = std::abs(g[i]) / m;
        const double y = std::pow(a, q - 1.0);
        x[i] = g[i] < 0.0 ? -y : y;
    }
    const double n = lp_norm(x, p);
    for (double& v : x) v /= n;
    return x;
}

MultilinearFormObjective::MultilinearFormObjective(DenseTensor a, double sign)
    : tensor_(std::move(a)), sign_(sign) {
    if (tensor_.order() < 1) {
        throw std::invalid_argument("multilinear form needs order >= 1");
    }
}

double MultilinearFormObjective::value(std::span<const std::vector<double>> xs) const {
    return sign_ * eval_multilinear(tensor_, xs);
}

std::vector<double> MultilinearFormObjective::block_gradient(
    std::span<const std::vector<double>> xs, std::size_t t) const {
    DenseTensor cur = tensor_;
    // Contract from the top axis down so remaining axis numbers stay valid.
    for (std::size_t axis = tensor_.order(); axis-- > 0;) {
        if (axis == t) continue;
        cur = contract_axis(cur, axis, xs[axis]);
    }
    std::vector<double> g(cur.values().begin(), cur.values().end());
    for (double& v : g) v *= sign_;
    return g;
}

namespace {

std::vector<double> normalized_to_sphere(std::vector<double> v, double p) {
    const double n = lp_norm(v, p);
    for (double& c : v) c /= n;
    return v;
}

std::vector<std::vector<double>> initial_blocks(const BallSpec& spec, int restart,
                                                std::uint64_t seed) {
    std::vector<std::vector<double>> xs;
    xs.reserve(spec.dims.size());
    if (restart == 0) {
        // Deterministic anchor: the all-ones direction.
        for (std::size_t d : spec.dims) {
            xs.push_back(normalized_to_sphere(std::vector<double>(d, 1.0), spec.p));
        }
        return xs;
    }
    SplitRng rng = SplitRng::derive(seed, static_cast<std::uint64_t>(restart));
    for (std::size_t d : spec.dims) {
        std::vector<double> v(d);
        bool nonzero = false;
        for (double& c : v) {
            c = rng.next_cauchy();
            nonzero = nonzero || c != 0.0;
        }
        if (!nonzero) v[0] = 1.0;
        xs.push_back(normalized_to_sphere(std::move(v), spec.p));
    }
    return xs;
}

struct RestartOutcome {
    double value = 0.0;
    std::vector<std::vector<double>> argmax;
};

RestartOutcome run_restart(const BlockObjective& objective, const BallSpec& spec,
                           const AscentConfig& cfg, int restart) {
    std::vector<std::vector<double>> xs = initial_blocks(spec, restart, cfg.seed);
    const std::size_t blocks = spec.dims.size();
    double value = objective.value(xs);
    if (!std::isfinite(value)) {
        throw std::runtime_error("non-finite objective value at ascent start");
    }
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        const double cycle_start = value;
        for (std::size_t t = 0; t < blocks; ++t) {
            std::vector<double> g = objective.block_gradient(xs, t);
            bool zero = true;
            for (double v : g) {
                if (v != 0.0) {
                    zero = false;
                    break;
                }
            }
            if (zero) continue;  // stationary block, nothing to ascend
            xs[t] = lp_dual_map(g, spec.p);
            const double next = objective.value(xs);
            if (!std::isfinite(next)) {
                throw std::runtime_error("non-finite objective value during ascent");
            }
            if (next < value - 1e-9 * std::max(1.0, std::abs(value))) {
                throw std::logic_error("ascent step decreased a block-convex objective");
            }
            value = std::max(value, next);
        }
        if (value - cycle_start <= cfg.rel_tol * std::max(1.0, std::abs(value))) break;
    }
    return {value, std::move(xs)};
}

}  // namespace

AscentResult maximize_block_multilinear(const BlockObjective& objective,
                                        const BallSpec& spec, const AscentConfig& cfg) {
    if (objective.dims() != spec.dims) {
        throw std::invalid_argument("objective dimensions do not match ball spec");
    }
    if (cfg.restarts < 1) throw std::invalid_argument("need at least one restart");

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
    parallel_for(outcomes.size(), [&](std::size_t i) {
        outcomes[i] = run_restart(objective, spec, cfg, static_cast<int>(i));
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i) {
        if (outcomes[i].value > outcomes[best].value) best = i;
    }
    return {outcomes[best].value, std::move(outcomes[best].argmax), cfg.restarts};
}

namespace {

void append_angle_points(std::size_t dim, double p, std::size_t resolution,
                         std::vector<double>& angles,
                         std::vector<std::vector<double>>& out) {
    if (angles.size() == dim - 1) {
        std::vector<double> v(dim);
        double sines = 1.0;
        for (std::size_t i = 0; i < dim - 1; ++i) {
            v[i] = sines * std::cos(angles[i]);
            sines *= std::sin(angles[i]);
        }
        v[dim - 1] = sines;
        out.push_back(normalized_to_sphere(std::move(v), p));
        return;
    }
    const bool last = angles.size() == dim - 2;
    const std::size_t count = resolution;
    for (std::size_t k = 0; k < count; ++k) {
        const double a = last ? 2.0 * std::numbers::pi * static_cast<double>(k) /
                                    static_cast<double>(count)
                              : std::numbers::pi * static_cast<double>(k) /
                                    static_cast<double>(count - 1);
        angles.push_back(a);
        append_angle_points(dim, p, resolution, angles, out);
        angles.pop_back();
    }
}

}  // namespace

std::vector<std::vector<double>> sphere_grid(std::size_t dim, double p,
                                             std::size_t resolution) {
    if (dim == 0) throw std::invalid_argument("sphere grid needs dimension >= 1");
    if (resolution < 2) throw std::invalid_argument("sphere grid needs resolution >= 2");
    std::vector<std::vector<double>> out;
    if (dim == 1) {
        out.push_back({1.0});
        out.push_back({-1.0});
        return out;
    }
    std::vector<double> angles;
    append_angle_points(dim, p, resolution, angles, out);
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<double> e(dim, 0.0);
        e[i] = 1.0;
        out.push_back(e);
        e[i] = -1.0;
        out.push_back(std::move(e));
    }
    return out;
}

double grid_supremum_oracle(const BlockObjective& objective, const BallSpec& spec,
                            std::size_t resolution, std::size_t eval_cap) {
    if (objective.dims() != spec.dims) {
        throw std::invalid_argument("objective dimensions do not match ball spec");
    }
    const std::size_t blocks = spec.dims.size();

    double estimate = 1.0;
    for (std::size_t d : spec.dims) {
        estimate *= is_inf_order(spec.p)
                        ? std::pow(2.0, static_cast<double>(d))
                        : (d == 1 ? 2.0
                                  : std::pow(static_cast<double>(resolution),
                                             static_cast<double>(d - 1)) +
                                        2.0 * static_cast<double>(d));
    }
    if (estimate > static_cast<double>(eval_cap)) {
        throw SearchSpaceTooLarge("grid oracle refused: about " + std::to_string(estimate) +
                                  " evaluations exceed cap " + std::to_string(eval_cap));
    }

    std::vector<std::vector<std::vector<double>>> grids(blocks);
    for (std::size_t t = 0; t < blocks; ++t) {
        if (is_inf_order(spec.p)) {
            const std::size_t d = spec.dims[t];
            grids[t].reserve(std::size_t{1} << d);
            for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
                std::vector<double> v(d);
                for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? -1.0 : 1.0;
                grids[t].push_back(std::move(v));
            }
        } else {
            grids[t] = sphere_grid(spec.dims[t], spec.p, resolution);
        }
    }

    std::vector<std::size_t> pick(blocks, 0);
    std::vector<std::vector<double>> xs(blocks);
    for (std::size_t t = 0; t < blocks; ++t) xs[t] = grids[t][0];
    double best = objective.value(xs);
    while (true) {
        std::size_t t = blocks;
        while (t-- > 0) {
            if (++pick[t] < grids[t].size()) {
                xs[t] = grids[t][pick[t]];
                break;
            }
            pick[t] = 0;
            xs[t] = grids[t][0];
            if (t == 0) return best;
        }
        best = std::max(best, objective.value(xs));
    }
}

}  // namespace randten
