#pragma once

#include <stdexcept>
#include <string>

#include "randten/bounds.hpp"
#include "randten/mc.hpp"
#include "randten/model.hpp"
#include "randten/tensor.hpp"

namespace randten {

/// Malformed input document; message carries the origin (path) and byte
/// offset reported by the parser.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Shortest round-trip decimal for a finite double ("%.17g" fallback);
/// "inf"/"-inf"/"nan" for the rest. Used everywhere a number reaches an
/// output byte stream, so identical runs emit identical bytes.
std::string format_double(double v);

// Tensor documents: {"shape": [d_1, .., d_r], "data": [flat row-major]}.
// Round-trips are bit-faithful for finite doubles.
std::string tensor_to_json(const DenseTensor& tensor);
DenseTensor tensor_from_json(const std::string& text,
                             const std::string& origin = "<string>");
DenseTensor load_tensor(const std::string& path);
void save_tensor(const DenseTensor& tensor, const std::string& path);

// Model documents:
// {"tensors": [tensor, ..], "coeff_dist": "gaussian", "symmetric": false}.
std::string model_to_json(const RandomTensorModel& model);
RandomTensorModel model_from_json(const std::string& text,
                                  const std::string& origin = "<string>");
RandomTensorModel load_model(const std::string& path);
void save_model(const RandomTensorModel& model, const std::string& path);

std::string bound_report_to_json(const BoundReport& report);
std::string mc_estimate_to_json(const McEstimate& estimate);

std::string compare_csv_header();
std::string compare_csv_row(const CompareReport& report);

}  // namespace randten
