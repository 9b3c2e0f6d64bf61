// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Tolerances are pinned here, not configurable.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "randten/bounds.hpp"
#include "randten/checks.hpp"
#include "randten/injective_norm.hpp"
#include "randten/mc.hpp"
#include "randten/numeric.hpp"
#include "randten/rng.hpp"
#include "randten/serialize.hpp"
#include "randten/variance.hpp"

using namespace randten;
namespace oracle = randten::testing;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool rel_close(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

// 1. Ascent vs. eigen oracle on seeded gaussian matrices, under 10 s.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    SplitRng rng(1001);
    const AscentConfig cfg;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t rows = 2 + rng.next_below(6);
        const std::size_t cols = 2 + rng.next_below(6);
        const DenseTensor m = oracle::random_tensor({rows, cols}, rng);
        const double want = matrix_operator_norm_oracle(m);
        const double got = estimate_injective_norm(m, 2.0, cfg).value;
        worst = std::max(worst, std::abs(got - want) / want);
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "max rel err " << format_double(worst) << ", " << format_double(elapsed) << " s";
    report(1, "matrix oracle agreement, 50 seeded matrices up to 7x7",
           worst <= 1e-6 && elapsed < 10.0, detail.str());
}

// 2. Rank-one exactness.
void criterion_2() {
    SplitRng rng(1002);
    const AscentConfig cfg;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t r = 2 + rng.next_below(3);
        std::vector<std::vector<double>> vs;
        double want = 1.0;
        for (std::size_t t = 0; t < r; ++t) {
            vs.push_back(oracle::random_vector(2 + rng.next_below(5), rng));
            want *= oracle::l2_norm(vs.back());
        }
        const double got = estimate_injective_norm(oracle::rank_one(vs), 2.0, cfg).value;
        worst = std::max(worst, std::abs(got - want) / want);
    }
    report(2, "rank-one exactness, 100 tensors (r <= 4, d <= 6)", worst <= 1e-8,
           "max rel err " + format_double(worst));
}

// 3. Variance closed forms via plain ascent.
void criterion_3() {
    const AscentConfig cfg;
    bool pass = true;
    std::ostringstream detail;

    DenseTensor eye({2, 2});
    eye[0] = eye[3] = 1.0;
    const RandomTensorModel identity({eye}, CoeffDist::gaussian, true);
    const VarianceProfile ip = variance_profile(identity, 2.0, cfg);
    const double identity_want[] = {1.0, 2.0, 2.0};
    for (int ell = 0; ell < 3; ++ell) {
        if (!rel_close(ip.values[ell], identity_want[ell], 1e-6)) {
            pass = false;
            detail << "identity ell=" << ell << " got " << format_double(ip.values[ell]) << "; ";
        }
    }
    for (std::size_t d = 2; d <= 6; ++d) {
        const RandomTensorModel diag = generate_model(ModelKind::diagonal, {d, d, d}, 0,
                                                      CoeffDist::gaussian, 0);
        const VarianceProfile dp = variance_profile(diag, 2.0, cfg);
        const double want[] = {1.0, 3.0, 3.0, static_cast<double>(d)};
        for (int ell = 0; ell < 4; ++ell) {
            if (!rel_close(dp.values[ell], want[ell], 1e-6)) {
                pass = false;
                detail << "diagonal d=" << d << " ell=" << ell << " got "
                       << format_double(dp.values[ell]) << "; ";
            }
        }
    }
    report(3, "variance closed forms: identity (1,2,2) and diagonal (1,3,3,d)", pass,
           detail.str());
}

// 4. Comparison inequalities: zero violations on oracle-grade rows.
void criterion_4() {
    const AscentConfig cfg;
    const SuiteResult sym = symmetric_comparison_suite(20, 1004, cfg, 64);
    const SuiteResult part = partition_variance_suite(20, 1005, cfg, 64);
    std::ostringstream detail;
    detail << "symmetric: " << sym.holds << " holds / " << sym.violated << " violated / "
           << sym.inconclusive << " inconclusive; partition: " << part.holds << " / "
           << part.violated << " / " << part.inconclusive;
    const bool coverage = sym.holds >= 40 && part.holds >= 40;
    report(4, "variance comparison inequalities on 20+20 seeded models",
           sym.violated == 0 && part.violated == 0 && coverage, detail.str());
}

// 5. Expected-norm bound validity on the diagonal order-3 family.
void criterion_5() {
    const auto start = std::chrono::steady_clock::now();
    const AscentConfig cfg;
    bool pass = true;
    std::ostringstream detail;
    for (std::size_t d : {2, 4, 8}) {
        const RandomTensorModel model = generate_model(ModelKind::diagonal, {d, d, d}, 0,
                                                       CoeffDist::gaussian, 0);
        const auto closed = closed_form_profile(model, 2.0, ProfileKind::subset);
        if (!closed) {
            pass = false;
            continue;
        }
        BoundQuery query;
        query.profile = *closed;
        query.dims = model.shape();
        query.p = 2.0;
        const double bound = optimized_beta_bound(query).bound;
        const McEstimate est = mc_injective_mean(model, 2.0, 500, cfg, 1006 + d);
        const bool ok = est.mean + 3.0 * est.std_err <= bound;
        pass = pass && ok;
        detail << "d=" << d << ": mean " << format_double(est.mean) << " + 3se vs bound "
               << format_double(bound) << (ok ? " ok; " : " VIOLATED; ");
    }
    const double elapsed = seconds_since(start);
    detail << format_double(elapsed) << " s";
    report(5, "bound validity for diagonal order-3 models, 500 trials",
           pass && elapsed < 60.0, detail.str());
}

// 6. Second-moment identity against Monte Carlo.
void criterion_6() {
    const SuiteResult suite = second_moment_suite(20, 1000000, 1007);
    std::ostringstream detail;
    detail << suite.holds << " within 4 se of " << suite.lines.size();
    report(6, "smoothed second-moment identity, 20 instances x 1e6 samples",
           suite.violated == 0 && suite.lines.size() == 20, detail.str());
}

// 7. Two-sided beta estimate and golden-section agreement.
void criterion_7() {
    const SuiteResult suite = beta_sandwich_suite(100, 1008);
    std::ostringstream detail;
    detail << suite.holds << " of " << suite.lines.size() << " inside the sandwich";
    report(7, "beta sandwich, 100 samples per order r in 2..5",
           suite.violated == 0 && suite.lines.size() == 400, detail.str());
}

// 8. Variational identity on finite spaces.
void criterion_8() {
    const SuiteResult suite = donsker_varadhan_suite(1000, 1009);
    std::ostringstream detail;
    detail << suite.holds << " of " << suite.lines.size();
    report(8, "variational identity, 1000 finite instances (support 2..50)",
           suite.violated == 0 && suite.lines.size() == 1000, detail.str());
}

// 9. Chaos moments vs. the partition moment bound (test constant 3).
void criterion_9() {
    SplitRng rng(1010);
    const AscentConfig cfg;
    bool pass = true;
    std::ostringstream detail;
    for (int i = 0; i < 10; ++i) {
        const std::size_t d = 2 + rng.next_below(3);
        const DenseTensor a = oracle::random_tensor({d, d}, rng);
        for (double moment_p : {2.0, 4.0, 8.0}) {
            const McEstimate est =
                chaos_moment_estimate(a, moment_p, 100000, rng.next_u64());
            const double bound = latala_moment_bound(a, moment_p, 3.0, cfg);
            if (est.mean > bound) {
                pass = false;
                detail << "i=" << i << " p=" << format_double(moment_p) << " est "
                       << format_double(est.mean) << " > bound " << format_double(bound)
                       << "; ";
            }
            if (moment_p == 2.0 &&
                std::abs(est.mean - frobenius_norm(a)) > 4.0 * est.std_err) {
                pass = false;
                detail << "i=" << i << " second moment off Frobenius; ";
            }
        }
    }
    report(9, "chaos moments below the partition bound (C_r = 3), 10 seeded matrices",
           pass, detail.str());
}

// 10. Partition enumeration combinatorics.
void criterion_10() {
    const std::size_t bell[] = {1, 2, 5, 15, 52};
    bool pass = true;
    std::ostringstream detail;
    for (std::size_t r = 1; r <= 5; ++r) {
        const auto parts = enumerate_partitions(r);
        if (parts.size() != bell[r - 1]) {
            pass = false;
            detail << "r=" << r << " count " << parts.size() << "; ";
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (std::size_t b = 1; b < parts[i].block_count(); ++b) {
                if (parts[i].blocks[b - 1].front() >= parts[i].blocks[b].front()) pass = false;
            }
            for (std::size_t j = i + 1; j < parts.size(); ++j) {
                if (parts[i].blocks == parts[j].blocks) pass = false;
            }
        }
    }
    report(10, "partition counts match the Bell numbers 1,2,5,15,52", pass, detail.str());
}

// 11. Byte-identical compare output across thread counts.
void criterion_11() {
    const RandomTensorModel model = generate_model(ModelKind::gaussian_stack, {3, 3}, 3,
                                                   CoeffDist::gaussian, 4242);
    const std::string model_path = "acceptance_model.json";
    save_model(model, model_path);

    const std::string cli = RANDTEN_CLI_PATH;
    const std::string args = " compare --model " + model_path +
                             " --p 2 --trials 64 --seed 7 --restarts 8 --format csv";
    std::vector<std::string> outputs;
    bool ran = true;
    for (const char* threads : {"1", "4", "4"}) {
        const std::string out_path = std::string("acceptance_compare_") + threads + ".csv";
        const std::string cmd = std::string("RANDTEN_THREADS=") + threads + " " + cli + args +
                                " > " + out_path + " 2>/dev/null";
        ran = ran && std::system(cmd.c_str()) == 0;
        std::ifstream in(out_path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        outputs.push_back(buf.str());
        std::remove(out_path.c_str());
    }
    std::remove(model_path.c_str());
    const bool identical = outputs.size() == 3 && outputs[0] == outputs[1] &&
                           outputs[0] == outputs[2] && !outputs[0].empty();
    report(11, "compare CSV is byte-identical across thread counts", ran && identical,
           ran ? (identical ? "3 runs, identical bytes" : "outputs differ")
               : "CLI invocation failed");
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
              << 11 - failures << "/11 criteria, " << format_double(seconds_since(start))
              << " s)" << std::endl;
    return failures == 0 ? 0 : 1;
}
