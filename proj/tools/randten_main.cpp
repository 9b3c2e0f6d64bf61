// Command-line front end: bound evaluation, Monte Carlo estimation,
// bound-vs-empirical comparison, chaos moments, and the identity check
// suites, over JSON tensor/model documents.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "randten/bounds.hpp"
#include "randten/checks.hpp"
#include "randten/injective_norm.hpp"
#include "randten/mc.hpp"
#include "randten/model.hpp"
#include "randten/serialize.hpp"
#include "randten/variance.hpp"

using nlohmann::ordered_json;
using namespace randten;

namespace {

constexpr std::uint64_t kDefaultSeed = 0x5EEDF00D;

struct CommonFlags {
    double p = 2.0;
    bool p_inf = false;
    int restarts = 32;
    std::uint64_t seed = kDefaultSeed;
    std::string format = "table";
};

double norm_order(const CommonFlags& flags) {
    return flags.p_inf ? kInfOrder : flags.p;
}

AscentConfig ascent_config(const CommonFlags& flags) {
    AscentConfig cfg;
    cfg.restarts = flags.restarts;
    cfg.seed = flags.seed;
    return cfg;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_p = true) {
    if (with_p) {
        cmd->add_option("--p", flags.p, "ball order p (>= 2)")->check(CLI::Range(2.0, 1e18));
        cmd->add_flag("--p-inf", flags.p_inf, "use the l-infinity ball");
    }
    cmd->add_option("--restarts", flags.restarts, "ascent restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", flags.seed, "random seed (printed in the report)");
    cmd->add_option("--format", flags.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
}

ordered_json config_node(const CommonFlags& flags,
                         const std::vector<std::pair<std::string, std::string>>& extra) {
    ordered_json node;
    node["p"] = flags.p_inf ? ordered_json("inf") : ordered_json(flags.p);
    node["restarts"] = flags.restarts;
    node["seed"] = flags.seed;
    for (const auto& [key, value] : extra) node[key] = value;
    return node;
}

void print_config_table(const CommonFlags& flags,
                        const std::vector<std::pair<std::string, std::string>>& extra) {
    std::cout << "# p = " << (flags.p_inf ? "inf" : format_double(flags.p)) << "\n";
    std::cout << "# restarts = " << flags.restarts << "\n";
    std::cout << "# seed = " << flags.seed << "\n";
    for (const auto& [key, value] : extra) std::cout << "# " << key << " = " << value << "\n";
}

std::string provenance_label(const std::vector<Provenance>& provenance) {
    bool seen[4] = {false, false, false, false};
    for (Provenance p : provenance) seen[static_cast<int>(p)] = true;
    std::string out;
    for (int i = 0; i < 4; ++i) {
        if (!seen[i]) continue;
        if (!out.empty()) out += '+';
        out += to_string(static_cast<Provenance>(i));
    }
    return out;
}

VarianceProfile profile_for(const RandomTensorModel& model, double p,
                            const AscentConfig& cfg) {
    if (auto closed = closed_form_profile(model, p, ProfileKind::subset)) return *closed;
    return variance_profile(model, p, cfg);
}

void print_bound_table(const BoundReport& report, const std::string& mode) {
    const std::string label = provenance_label(report.provenance);
    std::cout << "mode = " << mode << "\n";
    std::cout << "bound = " << format_double(report.bound) << " [" << label << "]\n";
    std::cout << "beta = " << format_double(report.beta_used) << "\n";
    std::cout << "dimension_factor = " << format_double(report.dimension_factor) << "\n";
    for (const auto& [ell, term] : report.terms) {
        std::cout << "term[" << ell << "] = " << format_double(term) << " [" << label << "]\n";
    }
    for (const auto& [name, value] : report.constants) {
        std::cout << name << " = " << format_double(value) << "\n";
    }
    if (report.infimum_not_attained) std::cout << "infimum_not_attained = true\n";
    if (report.sandwich) {
        std::cout << "sandwich_lower = " << format_double(report.sandwich->lower) << "\n";
        std::cout << "sandwich_infimum = " << format_double(report.sandwich->infimum) << "\n";
        std::cout << "sandwich_upper = " << format_double(report.sandwich->upper) << "\n";
        std::cout << "sandwich_holds = " << (report.sandwich->holds ? "true" : "false") << "\n";
    }
}

int run_bound(const std::string& model_path, const CommonFlags& flags,
              std::optional<double> beta, bool optimize, bool max_term, bool symmetric,
              bool matrix, double constant) {
    const int modes = (beta ? 1 : 0) + (optimize ? 1 : 0) + (max_term ? 1 : 0) +
                      (symmetric ? 1 : 0) + (matrix ? 1 : 0);
    if (modes > 1) {
        std::cerr << "error: choose one of --beta, --optimize-beta, --max-term, "
                     "--symmetric, --matrix\n";
        return 1;
    }
    const RandomTensorModel model = load_model(model_path);
    const AscentConfig cfg = ascent_config(flags);
    const double p = norm_order(flags);
    std::string mode = "optimize-beta";

    BoundReport report;
    ordered_json extra_json;
    if (matrix) {
        mode = "matrix";
        const MatrixCaseReport mr = matrix_model_bound(model, cfg, constant);
        extra_json["term1"] = mr.term1;
        extra_json["term2"] = mr.term2;
        extra_json["rhs"] = mr.rhs;
        extra_json["constant"] = mr.constant;
        extra_json["sup_provenance"] = to_string(mr.sup_provenance);
        if (flags.format == "json") {
            ordered_json node;
            node["config"] = config_node(flags, {{"model", model_path}, {"mode", mode}});
            node["matrix_bound"] = extra_json;
            std::cout << node.dump(2) << "\n";
        } else {
            print_config_table(flags, {{"model", model_path}, {"mode", mode}});
            std::cout << "term1 = " << format_double(mr.term1) << " [oracle]\n";
            std::cout << "term2 = " << format_double(mr.term2) << " ["
                      << to_string(mr.sup_provenance) << "]\n";
            std::cout << "rhs = " << format_double(mr.rhs) << " (constant "
                      << format_double(mr.constant) << ")\n";
        }
        return 0;
    }

    if (symmetric) {
        mode = "symmetric";
        const SymmetricBoundReport sr = symmetric_model_bound(model, p, cfg);
        report = sr.report;
        extra_json["normalized_bound"] = sr.normalized_bound;
        extra_json["note"] = sr.note;
        ordered_json prefix = ordered_json::array();
        for (double v : sr.prefix_profile.values) prefix.push_back(v);
        extra_json["prefix_profile"] = prefix;
    } else {
        BoundQuery query;
        query.profile = profile_for(model, p, cfg);
        query.dims = model.shape();
        query.p = p;
        if (beta) {
            mode = "fixed-beta";
            query.beta = *beta;
            report = fixed_beta_bound(query);
        } else if (max_term) {
            mode = "max-term";
            report = max_term_bound(query);
        } else {
            report = optimized_beta_bound(query);
        }
    }

    if (flags.format == "json") {
        ordered_json node;
        node["config"] = config_node(flags, {{"model", model_path}, {"mode", mode}});
        node["report"] = ordered_json::parse(bound_report_to_json(report));
        if (!extra_json.is_null()) node["extra"] = extra_json;
        std::cout << node.dump(2) << "\n";
    } else {
        print_config_table(flags, {{"model", model_path}, {"mode", mode}});
        print_bound_table(report, mode);
        if (symmetric) {
            std::cout << "normalized_bound = "
                      << format_double(extra_json["normalized_bound"].get<double>()) << "\n";
        }
    }
    return 0;
}

int run_estimate(const std::string& model_path, const CommonFlags& flags,
                 std::size_t trials) {
    const RandomTensorModel model = load_model(model_path);
    const McEstimate est =
        mc_injective_mean(model, norm_order(flags), trials, ascent_config(flags), flags.seed);
    if (flags.format == "json") {
        ordered_json node;
        node["config"] = config_node(
            flags, {{"model", model_path}, {"trials", std::to_string(trials)}});
        node["estimate"] = ordered_json::parse(mc_estimate_to_json(est));
        node["estimate"]["provenance"] = "empirical";
        std::cout << node.dump(2) << "\n";
    } else {
        print_config_table(flags, {{"model", model_path}, {"trials", std::to_string(trials)}});
        std::cout << "mean = " << format_double(est.mean) << " [empirical]\n";
        std::cout << "stderr = " << format_double(est.std_err) << " [empirical]\n";
        std::cout << "trials = " << est.trials << "\n";
    }
    return 0;
}

int run_compare(const std::string& model_path, const CommonFlags& flags,
                std::size_t trials) {
    const RandomTensorModel model = load_model(model_path);
    const std::string model_id = std::filesystem::path(model_path).stem().string();
    const CompareReport report = compare_bounds_report(
        model, model_id, norm_order(flags), trials, ascent_config(flags), flags.seed);

    if (flags.format == "json") {
        ordered_json node;
        node["config"] = config_node(
            flags, {{"model", model_path}, {"trials", std::to_string(trials)}});
        node["empirical"] = ordered_json::parse(mc_estimate_to_json(report.empirical));
        node["optimized"] = ordered_json::parse(bound_report_to_json(report.optimized));
        node["max_term"] = ordered_json::parse(bound_report_to_json(report.max_term));
        node["ratio_optimized"] = format_double(report.ratio_optimized);
        node["ratio_max_term"] = format_double(report.ratio_max_term);
        node["provenance"] = report.provenance_summary;
        if (report.validity_applicable) node["validity_ok"] = report.validity_ok;
        std::cout << node.dump(2) << "\n";
    } else if (flags.format == "csv") {
        std::cout << "# seed = " << flags.seed << "\n";
        std::cout << "# restarts = " << flags.restarts << "\n";
        std::cout << compare_csv_header() << "\n" << compare_csv_row(report) << "\n";
    } else {
        print_config_table(flags, {{"model", model_path}, {"trials", std::to_string(trials)}});
        std::cout << "empirical_mean = " << format_double(report.empirical.mean)
                  << " [empirical]\n";
        std::cout << "stderr = " << format_double(report.empirical.std_err)
                  << " [empirical]\n";
        std::cout << "optimized_bound = " << format_double(report.optimized.bound) << " ["
                  << report.provenance_summary << "]\n";
        std::cout << "beta = " << format_double(report.optimized.beta_used) << "\n";
        std::cout << "max_term_bound = " << format_double(report.max_term.bound) << " ["
                  << report.provenance_summary << "]\n";
        std::cout << "ratio_optimized = " << format_double(report.ratio_optimized) << "\n";
        std::cout << "ratio_max_term = " << format_double(report.ratio_max_term) << "\n";
        if (report.validity_applicable) {
            std::cout << "validity_ok = " << (report.validity_ok ? "true" : "false") << "\n";
        }
    }
    if (report.validity_applicable && !report.validity_ok) return 1;
    return 0;
}

int run_chaos(const std::string& tensor_path, const CommonFlags& flags, double moment_p,
              std::size_t trials, double c_r) {
    const DenseTensor tensor = load_tensor(tensor_path);
    const McEstimate est = chaos_moment_estimate(tensor, moment_p, trials, flags.seed);
    const double bound = latala_moment_bound(tensor, moment_p, c_r, ascent_config(flags));
    if (flags.format == "json") {
        ordered_json node;
        node["config"] = config_node(flags, {{"tensor", tensor_path},
                                             {"moment_p", format_double(moment_p)},
                                             {"trials", std::to_string(trials)},
                                             {"cr", format_double(c_r)}});
        node["moment"] = ordered_json::parse(mc_estimate_to_json(est));
        node["moment"]["provenance"] = "empirical";
        node["moment_bound"] = bound;
        node["moment_bound_provenance"] = "heuristic";
        std::cout << node.dump(2) << "\n";
    } else {
        print_config_table(flags, {{"tensor", tensor_path},
                                   {"moment_p", format_double(moment_p)},
                                   {"trials", std::to_string(trials)},
                                   {"cr", format_double(c_r)}});
        std::cout << "moment_estimate = " << format_double(est.mean) << " [empirical]\n";
        std::cout << "stderr = " << format_double(est.std_err) << " [empirical]\n";
        std::cout << "moment_bound = " << format_double(bound) << " [heuristic]\n";
    }
    return 0;
}

int run_check(const std::string& suite, const CommonFlags& flags, std::size_t samples,
              std::size_t mc_samples) {
    const AscentConfig cfg = ascent_config(flags);
    std::vector<SuiteResult> results;
    const bool all = suite == "all";
    if (all || suite == "symmetric-comparison") {
        results.push_back(symmetric_comparison_suite(samples, flags.seed, cfg));
    }
    if (all || suite == "partition-variance") {
        results.push_back(partition_variance_suite(samples, flags.seed, cfg));
    }
    if (all || suite == "second-moment") {
        results.push_back(second_moment_suite(samples, mc_samples, flags.seed));
    }
    if (all || suite == "donsker-varadhan") {
        results.push_back(donsker_varadhan_suite(samples, flags.seed));
    }
    if (all || suite == "beta-sandwich") {
        results.push_back(beta_sandwich_suite(samples, flags.seed));
    }
    if (results.empty()) {
        std::cerr << "error: unknown suite " << suite << "\n";
        return 1;
    }

    bool failed = false;
    if (flags.format == "json") {
        ordered_json node;
        node["config"] = config_node(flags, {{"suite", suite},
                                             {"samples", std::to_string(samples)}});
        node["suites"] = ordered_json::array();
        for (const SuiteResult& result : results) {
            ordered_json s;
            s["suite"] = result.suite;
            s["holds"] = result.holds;
            s["violated"] = result.violated;
            s["inconclusive"] = result.inconclusive;
            s["lines"] = ordered_json::array();
            for (const CheckLine& line : result.lines) {
                s["lines"].push_back({{"name", line.name},
                                      {"verdict", to_string(line.verdict)},
                                      {"detail", line.detail}});
            }
            node["suites"].push_back(s);
            failed = failed || result.failed();
        }
        std::cout << node.dump(2) << "\n";
    } else {
        print_config_table(flags, {{"suite", suite}, {"samples", std::to_string(samples)}});
        for (const SuiteResult& result : results) {
            for (const CheckLine& line : result.lines) {
                std::cout << "[" << to_string(line.verdict) << "] " << result.suite << " "
                          << line.name << ": " << line.detail << "\n";
            }
            std::cout << result.suite << ": " << result.holds << " holds, "
                      << result.violated << " violated, " << result.inconclusive
                      << " inconclusive\n";
            failed = failed || result.failed();
        }
    }
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"injective-norm bounds for subgaussian random tensors"};
    app.require_subcommand(1);

    CommonFlags flags;

    // bound
    auto* bound = app.add_subcommand("bound", "evaluate a norm bound for a model");
    std::string bound_model;
    std::optional<double> beta;
    bool optimize = false, max_term = false, symmetric = false, matrix = false;
    double constant = 2.0;
    bound->add_option("--model", bound_model, "model JSON path")->required();
    bound->add_option("--beta", beta, "fixed beta value");
    bound->add_flag("--optimize-beta", optimize, "minimize over beta (default)");
    bound->add_flag("--max-term", max_term, "beta-free max-term bound");
    bound->add_flag("--symmetric", symmetric, "prefix-parameter bound for symmetric models");
    bound->add_flag("--matrix", matrix, "order-2 two-term bound");
    bound->add_option("--constant", constant, "constant for the matrix bound");
    add_common(bound, flags);

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo injective-norm mean");
    std::string estimate_model;
    std::size_t trials = 1000;
    estimate->add_option("--model", estimate_model, "model JSON path")->required();
    estimate->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::Range(2, 1 << 30));
    add_common(estimate, flags);

    // compare
    auto* compare = app.add_subcommand("compare", "empirical mean vs. bounds");
    std::string compare_model;
    compare->add_option("--model", compare_model, "model JSON path")->required();
    compare->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::Range(2, 1 << 30));
    add_common(compare, flags);
    compare->get_option("--format")->default_val("csv");

    // chaos
    auto* chaos = app.add_subcommand("chaos", "chaos moment estimate and bound");
    std::string chaos_tensor;
    double moment_p = 2.0;
    double c_r = 1.0;
    chaos->add_option("--tensor", chaos_tensor, "tensor JSON path")->required();
    chaos->add_option("--moment-p", moment_p, "moment order (>= 2)")
        ->check(CLI::Range(2.0, 1e6));
    chaos->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::Range(2, 1 << 30));
    chaos->add_option("--cr", c_r, "order-dependent constant");
    add_common(chaos, flags, false);

    // check
    auto* check = app.add_subcommand("check", "run an identity/inequality suite");
    std::string suite = "all";
    std::size_t samples = 20;
    std::size_t mc_samples = 1000000;
    check->add_option("--suite", suite, "suite name")
        ->check(CLI::IsMember({"symmetric-comparison", "partition-variance", "second-moment",
                               "donsker-varadhan", "beta-sandwich", "all"}));
    check->add_option("--samples", samples, "instances per suite")->check(CLI::PositiveNumber);
    check->add_option("--mc-samples", mc_samples, "Monte Carlo samples for the second-moment suite")
        ->check(CLI::PositiveNumber);
    add_common(check, flags, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bound->parsed()) {
            return run_bound(bound_model, flags, beta, optimize, max_term, symmetric, matrix,
                             constant);
        }
        if (estimate->parsed()) return run_estimate(estimate_model, flags, trials);
        if (compare->parsed()) return run_compare(compare_model, flags, trials);
        if (chaos->parsed()) return run_chaos(chaos_tensor, flags, moment_p, trials, c_r);
        if (check->parsed()) return run_check(suite, flags, samples, mc_samples);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
