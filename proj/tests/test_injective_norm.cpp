#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "randten/injective_norm.hpp"
#include "randten/rng.hpp"

using namespace randten;
namespace oracle = randten::testing;

namespace {

DenseTensor identity_matrix(std::size_t d) {
    DenseTensor t({d, d});
    for (std::size_t i = 0; i < d; ++i) t[i * d + i] = 1.0;
    return t;
}

}  // namespace

TEST_CASE("identity matrices have unit operator norm") {
    const AscentConfig cfg;
    for (std::size_t d : {2, 3, 5}) {
        const NormEstimate est = estimate_injective_norm(identity_matrix(d), 2.0, cfg);
        CHECK(est.value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(est.method == NormMethod::ascent);
        CHECK(matrix_operator_norm_oracle(identity_matrix(d)) == doctest::Approx(1.0));
    }
}

TEST_CASE("order-3 diagonal tensor attains its top diagonal entry") {
    DenseTensor t({2, 2, 2});
    t[0] = 2.0;  // (0,0,0)
    t[7] = 5.0;  // (1,1,1)
    const AscentConfig cfg;
    CHECK(estimate_injective_norm(t, 2.0, cfg).value == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("matrix oracle examples") {
    DenseTensor diag({2, 2});
    diag[0] = 3.0;
    diag[3] = 1.0;
    CHECK(matrix_operator_norm_oracle(diag) == doctest::Approx(3.0));
    CHECK_THROWS_AS(matrix_operator_norm_oracle(DenseTensor({2, 2, 2})), std::invalid_argument);

    SplitRng rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        const DenseTensor m = oracle::random_tensor({2, 2}, rng);
        const double want =
            oracle::closed_form_2x2_operator_norm(m[0], m[1], m[2], m[3]);
        CHECK(matrix_operator_norm_oracle(m) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("ascent matches the eigen oracle on random matrices") {
    SplitRng rng(32);
    const AscentConfig cfg;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t rows = 2 + rep % 3;
        const std::size_t cols = 2 + (rep / 3) % 3;
        const DenseTensor m = oracle::random_tensor({rows, cols}, rng);
        const double want = matrix_operator_norm_oracle(m);
        CHECK(estimate_injective_norm(m, 2.0, cfg).value ==
              doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("negation handling catches sign-asymmetric even-order forms") {
    // All entries negative: the positive form maximum needs a sign flip.
    DenseTensor m({2, 2}, {-1.0, -2.0, -3.0, -4.0});
    const AscentConfig cfg;
    const NormEstimate est = estimate_injective_norm(m, 2.0, cfg);
    CHECK(est.value == doctest::Approx(matrix_operator_norm_oracle(m)).epsilon(1e-8));
    // The stored argmax must reproduce the value with the stated sign.
    CHECK(eval_multilinear(m, est.argmax) == doctest::Approx(est.value).epsilon(1e-10));
}

TEST_CASE("scale equivariance with a fixed seed") {
    SplitRng rng(33);
    const DenseTensor a = oracle::random_tensor({3, 2, 3}, rng);
    DenseTensor scaled = a;
    for (std::size_t f = 0; f < scaled.size(); ++f) scaled[f] *= -2.5;
    const AscentConfig cfg{.restarts = 8, .seed = 5};
    const double base = estimate_injective_norm(a, 2.0, cfg).value;
    const double big = estimate_injective_norm(scaled, 2.0, cfg).value;
    CHECK(big == doctest::Approx(2.5 * base).epsilon(1e-9));
}

TEST_CASE("rank-one tensors are estimated exactly") {
    SplitRng rng(34);
    const AscentConfig cfg;
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t r = 2 + rep % 3;
        std::vector<std::vector<double>> vs;
        double want = 1.0;
        for (std::size_t t = 0; t < r; ++t) {
            vs.push_back(oracle::random_vector(2 + (rep + t) % 5, rng));
            want *= oracle::l2_norm(vs.back());
        }
        const NormEstimate est = estimate_injective_norm(oracle::rank_one(vs), 2.0, cfg);
        CHECK(est.value == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("ascent agrees with vertex enumeration at p = inf") {
    SplitRng rng(35);
    const AscentConfig cfg;
    for (int rep = 0; rep < 6; ++rep) {
        const DenseTensor a = oracle::random_tensor({2, 3, 2}, rng);
        const double exact = injective_norm_vertex_oracle(a).value;
        const double ascent = estimate_injective_norm(a, kInfOrder, cfg).value;
        CHECK(ascent == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("argmax blocks are feasible and reproduce the value") {
    SplitRng rng(36);
    const AscentConfig cfg;
    const double orders[] = {2.0, 3.0, kInfOrder};
    for (int rep = 0; rep < 9; ++rep) {
        const DenseTensor a = oracle::random_tensor({2, 2, 3}, rng);
        const double p = orders[rep % 3];
        const NormEstimate est = estimate_injective_norm(a, p, cfg);
        for (const auto& block : est.argmax) CHECK(lp_norm(block, p) <= 1.0 + 1e-12);
        CHECK(eval_multilinear(a, est.argmax) ==
              doctest::Approx(est.value).epsilon(1e-10));
    }
}
