#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "randten/mc.hpp"
#include "randten/rng.hpp"
#include "randten/variance.hpp"

using namespace randten;
namespace oracle = randten::testing;

namespace {

RandomTensorModel identity_model(std::size_t d) {
    DenseTensor t({d, d});
    for (std::size_t i = 0; i < d; ++i) t[i * d + i] = 1.0;
    return RandomTensorModel({std::move(t)}, CoeffDist::gaussian, true);
}

RandomTensorModel diagonal_model(std::size_t r, std::size_t d) {
    return generate_model(ModelKind::diagonal, std::vector<std::size_t>(r, d), 0,
                          CoeffDist::gaussian, 0);
}

RandomTensorModel scaled(const RandomTensorModel& model, double c) {
    std::vector<DenseTensor> ts = model.tensors;
    for (auto& t : ts) {
        for (std::size_t f = 0; f < t.size(); ++f) t[f] *= c;
    }
    return {std::move(ts), model.coeff_dist, false};
}

}  // namespace

TEST_CASE("identity matrix model profile is (1, 2, 2)") {
    const AscentConfig cfg;
    const VarianceProfile got = variance_profile(identity_model(2), 2.0, cfg);
    REQUIRE(got.values.size() == 3);
    CHECK(got.values[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(got.values[1] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(got.values[2] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(got.provenance[2] == Provenance::closed_form);

    // Independent eigen route for the middle entry.
    const double eigen = mode_gram_top_eigenvalue(identity_model(2).tensors, 0) +
                         mode_gram_top_eigenvalue(identity_model(2).tensors, 1);
    CHECK(got.values[1] == doctest::Approx(eigen).epsilon(1e-8));
}

TEST_CASE("diagonal order-3 model profile is (1, 3, 3, d)") {
    const AscentConfig cfg;
    for (std::size_t d : {2, 3}) {
        const VarianceProfile got = variance_profile(diagonal_model(3, d), 2.0, cfg);
        REQUIRE(got.values.size() == 4);
        CHECK(got.values[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(got.values[1] == doctest::Approx(3.0).epsilon(1e-6));
        CHECK(got.values[2] == doctest::Approx(3.0).epsilon(1e-6));
        CHECK(got.values[3] == doctest::Approx(static_cast<double>(d)).epsilon(1e-12));
    }
    // Grid-oracle confirmation at d = 2.
    const RandomTensorModel small = diagonal_model(3, 2);
    for (std::size_t ell : {0, 1, 2}) {
        const SubsetVarianceObjective objective(small.tensors, ell);
        const double grid =
            grid_supremum_oracle(objective, BallSpec(2.0, small.shape()), 64);
        const double want = ell == 0 ? 1.0 : 3.0;
        CHECK(grid == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("top profile entry is the closed-form Frobenius sum") {
    SplitRng rng(41);
    const AscentConfig cfg{.restarts = 4};
    const RandomTensorModel model = generate_model(
        ModelKind::gaussian_stack, {2, 3}, 3, CoeffDist::rademacher, rng.next_u64());
    double want = 0.0;
    for (const auto& t : model.tensors) want += frobenius_norm_sq(t);
    const VarianceProfile got = variance_profile(model, 2.0, cfg);
    CHECK(got.values[2] == doctest::Approx(want).epsilon(1e-14));
    CHECK(got.provenance[2] == Provenance::closed_form);
}

TEST_CASE("prefix profile closed forms") {
    const AscentConfig cfg;
    const VarianceProfile eye = prefix_variance_profile(identity_model(2), 2.0, cfg);
    REQUIRE(eye.values.size() == 3);
    CHECK(eye.values[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(eye.values[1] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(eye.values[2] == doctest::Approx(2.0).epsilon(1e-12));

    const VarianceProfile diag = prefix_variance_profile(diagonal_model(3, 4), 2.0, cfg);
    REQUIRE(diag.values.size() == 4);
    CHECK(diag.values[0] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(diag.values[1] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(diag.values[2] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(diag.values[3] == doctest::Approx(4.0).epsilon(1e-12));

    const RandomTensorModel zero({DenseTensor({2, 2})}, CoeffDist::gaussian, true);
    const VarianceProfile zp = prefix_variance_profile(zero, 2.0, cfg);
    for (double v : zp.values) CHECK(v == 0.0);

    const RandomTensorModel plain = generate_model(ModelKind::gaussian_stack, {2, 2}, 1,
                                                   CoeffDist::gaussian, 3);
    CHECK_THROWS_AS(prefix_variance_profile(plain, 2.0, cfg), std::invalid_argument);
}

TEST_CASE("closed_form_profile recognizes the stock families") {
    CHECK(closed_form_profile(identity_model(3), 2.0, ProfileKind::subset)->values ==
          std::vector<double>{1.0, 2.0, 3.0});
    CHECK(closed_form_profile(diagonal_model(3, 5), 2.0, ProfileKind::subset)->values ==
          std::vector<double>{1.0, 3.0, 3.0, 5.0});
    CHECK(closed_form_profile(diagonal_model(3, 5), 2.0, ProfileKind::prefix)->values ==
          std::vector<double>{1.0, 1.0, 1.0, 5.0});
    const RandomTensorModel dense = generate_model(ModelKind::gaussian_stack, {2, 2}, 2,
                                                   CoeffDist::gaussian, 4);
    CHECK(!closed_form_profile(dense, 2.0, ProfileKind::subset).has_value());
    CHECK(!closed_form_profile(identity_model(3), 4.0, ProfileKind::subset).has_value());
}

TEST_CASE("profiles scale quadratically") {
    SplitRng rng(42);
    const AscentConfig cfg{.restarts = 8, .seed = 17};
    const RandomTensorModel model = generate_model(ModelKind::gaussian_stack, {2, 2, 2}, 2,
                                                   CoeffDist::gaussian, rng.next_u64());
    const VarianceProfile base = variance_profile(model, 2.0, cfg);
    const VarianceProfile big = variance_profile(scaled(model, 3.0), 2.0, cfg);
    for (std::size_t ell = 0; ell < base.values.size(); ++ell) {
        CHECK(big.values[ell] == doctest::Approx(9.0 * base.values[ell]).epsilon(1e-7));
    }
}

TEST_CASE("adding tensors never shrinks the profile") {
    SplitRng rng(43);
    const AscentConfig cfg{.restarts = 8, .seed = 29};
    const RandomTensorModel small = generate_model(ModelKind::gaussian_stack, {2, 2}, 2,
                                                   CoeffDist::gaussian, 11);
    std::vector<DenseTensor> more = small.tensors;
    more.push_back(oracle::random_tensor({2, 2}, rng));
    const RandomTensorModel large(std::move(more), CoeffDist::gaussian, false);

    const VarianceProfile a = variance_profile(small, 2.0, cfg);
    const VarianceProfile b = variance_profile(large, 2.0, cfg);
    for (std::size_t ell = 0; ell < a.values.size(); ++ell) {
        CHECK(b.values[ell] >= a.values[ell] - 1e-8);
    }
}

TEST_CASE("matrix sigma_1^2 equals the eigen identity") {
    SplitRng rng(44);
    const AscentConfig cfg;
    for (int rep = 0; rep < 6; ++rep) {
        const std::size_t rows = 2 + rep % 5;
        const std::size_t cols = 2 + (rep + 2) % 5;
        std::vector<DenseTensor> ts;
        for (int k = 0; k <= rep % 3; ++k) ts.push_back(oracle::random_tensor({rows, cols}, rng));
        const RandomTensorModel model(std::move(ts), CoeffDist::gaussian, false);
        const double eigen = mode_gram_top_eigenvalue(model.tensors, 0) +
                             mode_gram_top_eigenvalue(model.tensors, 1);
        const VarianceProfile got = variance_profile(model, 2.0, cfg);
        CHECK(got.values[1] == doctest::Approx(eigen).epsilon(1e-8));
    }
}

TEST_CASE("oracle profile upgrades provenance where it can") {
    const AscentConfig cfg{.restarts = 8};
    const RandomTensorModel model = generate_model(ModelKind::gaussian_stack, {2, 2}, 2,
                                                   CoeffDist::gaussian, 12);
    const VarianceProfile got = oracle_variance_profile(model, 2.0, cfg);
    CHECK(got.provenance[0] == Provenance::oracle);   // grid fits
    CHECK(got.provenance[1] == Provenance::oracle);   // eigen route
    CHECK(got.provenance[2] == Provenance::closed_form);

    const RandomTensorModel big = generate_model(ModelKind::gaussian_stack, {6, 6, 6}, 1,
                                                 CoeffDist::gaussian, 13);
    const VarianceProfile coarse = oracle_variance_profile(big, 2.0, cfg, 64, 1000);
    CHECK(coarse.provenance[0] == Provenance::heuristic);  // cap refused the grid
    CHECK(coarse.provenance[2] == Provenance::oracle);     // eigen still exact
}

TEST_CASE("symmetric comparison check on closed-form models") {
    const AscentConfig cfg;
    SUBCASE("identity matrix model") {
        const ComparisonReport report = symmetric_comparison_check(identity_model(2), 2.0, cfg);
        REQUIRE(report.rows.size() == 3);
        CHECK(report.violations() == 0);
        CHECK(report.conclusive() == 3);
        CHECK(report.rows[1].lhs == doctest::Approx(2.0));
        CHECK(report.rows[1].rhs == doctest::Approx(2.0));  // binom(2,1) * 1
        CHECK(report.rows[2].lhs == doctest::Approx(report.rows[2].rhs));  // l = r
    }
    SUBCASE("diagonal order-3 model") {
        const ComparisonReport report = symmetric_comparison_check(diagonal_model(3, 2), 2.0, cfg);
        REQUIRE(report.rows.size() == 4);
        CHECK(report.violations() == 0);
        CHECK(report.rows[1].lhs == doctest::Approx(3.0));
        CHECK(report.rows[1].rhs == doctest::Approx(3.0));  // binom(3,2) * 1
    }
    SUBCASE("rejects plain models") {
        const RandomTensorModel plain = generate_model(ModelKind::gaussian_stack, {2, 2}, 1,
                                                       CoeffDist::gaussian, 5);
        CHECK_THROWS_AS(symmetric_comparison_check(plain, 2.0, cfg), std::invalid_argument);
    }
}

TEST_CASE("partition variance check hand cases") {
    const AscentConfig cfg;
    SUBCASE("single unit vector model") {
        const RandomTensorModel model({DenseTensor({2}, {1.0, 0.0})}, CoeffDist::gaussian,
                                      false);
        const Partition p(1, {{0}});
        const ComparisonReport report = partition_variance_check(model, p, cfg);
        REQUIRE(report.rows.size() == 2);
        CHECK(report.violations() == 0);
        CHECK(report.conclusive() == 2);
        CHECK(report.rows[0].lhs == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(report.rows[0].rhs >= 1.0 - 1e-9);
        // l = |P|: lhs is the Frobenius sum; the single-block partition of
        // the stacked tensor contributes exactly that on the right.
        CHECK(report.rows[1].lhs == doctest::Approx(1.0));
    }
    SUBCASE("zero model") {
        const RandomTensorModel zero({DenseTensor({2, 2})}, CoeffDist::gaussian, false);
        const ComparisonReport report =
            partition_variance_check(zero, Partition(2, {{0}, {1}}), cfg);
        CHECK(report.violations() == 0);
        for (const auto& row : report.rows) {
            CHECK(row.lhs == 0.0);
            CHECK(row.rhs >= 0.0);
        }
    }
    SUBCASE("l = |P| row always closes with the stacked Frobenius norm") {
        const RandomTensorModel model = generate_model(ModelKind::gaussian_stack, {2, 2}, 2,
                                                       CoeffDist::gaussian, 21);
        double frob_sq = 0.0;
        for (const auto& t : model.tensors) frob_sq += frobenius_norm_sq(t);
        const ComparisonReport report =
            partition_variance_check(model, Partition(2, {{0, 1}}), cfg);
        const ComparisonRow& last = report.rows.back();
        CHECK(last.lhs == doctest::Approx(frob_sq).epsilon(1e-12));
        CHECK(last.verdict == Verdict::holds);
    }
}

TEST_CASE("binomial helper") {
    CHECK(binomial(3, 2) == 3.0);
    CHECK(binomial(5, 0) == 1.0);
    CHECK(binomial(6, 3) == 20.0);
    CHECK(binomial(2, 5) == 0.0);
}
