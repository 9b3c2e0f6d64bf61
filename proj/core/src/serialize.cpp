#include "randten/serialize.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace randten {

using nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int precision : {15, 16, 17}) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

namespace {

ordered_json tensor_to_node(const DenseTensor& tensor) {
    ordered_json node;
    node["shape"] = tensor.shape();
    node["data"] = std::vector<double>(tensor.values().begin(), tensor.values().end());
    return node;
}

DenseTensor tensor_from_node(const nlohmann::json& node) {
    if (!node.is_object() || !node.contains("shape") || !node.contains("data")) {
        throw ParseError("tensor document needs \"shape\" and \"data\"");
    }
    std::vector<std::size_t> shape = node.at("shape").get<std::vector<std::size_t>>();
    std::vector<double> data = node.at("data").get<std::vector<double>>();
    return DenseTensor(std::move(shape), std::move(data));
}

nlohmann::json parse_document(const std::string& text, const std::string& origin) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": parse error at byte " + std::to_string(e.byte) +
                         ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace

std::string tensor_to_json(const DenseTensor& tensor) {
    return tensor_to_node(tensor).dump(2);
}

DenseTensor tensor_from_json(const std::string& text, const std::string& origin) {
    return tensor_from_node(parse_document(text, origin));
}

DenseTensor load_tensor(const std::string& path) {
    return tensor_from_json(read_file(path), path);
}

void save_tensor(const DenseTensor& tensor, const std::string& path) {
    write_file(path, tensor_to_json(tensor) + "\n");
}

std::string model_to_json(const RandomTensorModel& model) {
    ordered_json node;
    node["tensors"] = ordered_json::array();
    for (const auto& t : model.tensors) node["tensors"].push_back(tensor_to_node(t));
    node["coeff_dist"] = to_string(model.coeff_dist);
    node["symmetric"] = model.symmetric;
    return node.dump(2);
}

RandomTensorModel model_from_json(const std::string& text, const std::string& origin) {
    const nlohmann::json node = parse_document(text, origin);
    if (!node.is_object() || !node.contains("tensors") || !node.contains("coeff_dist")) {
        throw ParseError(origin + ": model document needs \"tensors\" and \"coeff_dist\"");
    }
    std::vector<DenseTensor> tensors;
    for (const auto& t : node.at("tensors")) tensors.push_back(tensor_from_node(t));
    const CoeffDist dist = coeff_dist_from_string(node.at("coeff_dist").get<std::string>());
    const bool symmetric = node.value("symmetric", false);
    return RandomTensorModel(std::move(tensors), dist, symmetric);
}

RandomTensorModel load_model(const std::string& path) {
    return model_from_json(read_file(path), path);
}

void save_model(const RandomTensorModel& model, const std::string& path) {
    write_file(path, model_to_json(model) + "\n");
}

namespace {

ordered_json json_number_or_tag(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

}  // namespace

std::string bound_report_to_json(const BoundReport& report) {
    ordered_json node;
    node["bound"] = report.bound;
    node["beta"] = json_number_or_tag(report.beta_used);
    ordered_json terms;
    for (const auto& [ell, term] : report.terms) terms[std::to_string(ell)] = term;
    node["terms"] = terms;
    node["dimension_factor"] = report.dimension_factor;
    ordered_json provenance = ordered_json::array();
    for (Provenance p : report.provenance) provenance.push_back(to_string(p));
    node["provenance"] = provenance;
    ordered_json constants;
    for (const auto& [name, value] : report.constants) constants[name] = value;
    node["constants"] = constants;
    if (report.infimum_not_attained) node["infimum_not_attained"] = true;
    if (report.sandwich) {
        node["sandwich"] = {{"lower", report.sandwich->lower},
                            {"infimum", report.sandwich->infimum},
                            {"upper", report.sandwich->upper},
                            {"holds", report.sandwich->holds}};
    }
    return node.dump(2);
}

std::string mc_estimate_to_json(const McEstimate& estimate) {
    ordered_json node;
    node["mean"] = estimate.mean;
    node["stderr"] = estimate.std_err;
    node["trials"] = estimate.trials;
    return node.dump(2);
}

std::string compare_csv_header() {
    return "model_id,p,trials,empirical_mean,stderr,thm1_bound,beta,cor2_bound,"
           "ratio_thm1,ratio_cor2,provenance";
}

std::string compare_csv_row(const CompareReport& report) {
    std::ostringstream row;
    row << report.model_id << ',' << format_double(report.p) << ',' << report.trials
        << ',' << format_double(report.empirical.mean) << ','
        << format_double(report.empirical.std_err) << ','
        << format_double(report.optimized.bound) << ','
        << format_double(report.optimized.beta_used) << ','
        << format_double(report.max_term.bound) << ','
        << format_double(report.ratio_optimized) << ','
        << format_double(report.ratio_max_term) << ',' << report.provenance_summary;
    return row.str();
}

}  // namespace randten
