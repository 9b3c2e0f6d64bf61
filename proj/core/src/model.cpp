#include "randten/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randten {

const char* to_string(CoeffDist d) {
    switch (d) {
        case CoeffDist::gaussian: return "gaussian";
        case CoeffDist::rademacher: return "rademacher";
        case CoeffDist::uniform: return "uniform";
    }
    return "unknown";
}

CoeffDist coeff_dist_from_string(const std::string& s) {
    if (s == "gaussian") return CoeffDist::gaussian;
    if (s == "rademacher") return CoeffDist::rademacher;
    if (s == "uniform") return CoeffDist::uniform;
    throw std::invalid_argument("unknown coefficient distribution: " + s);
}

RandomTensorModel::RandomTensorModel(std::vector<DenseTensor> ts, CoeffDist dist, bool sym)
    : tensors(std::move(ts)), coeff_dist(dist), symmetric(sym) {
    if (tensors.empty()) throw std::invalid_argument("model needs at least one tensor");
    const auto& shape = tensors.front().shape();
    if (shape.empty()) throw std::invalid_argument("model tensors need order >= 1");
    for (const auto& t : tensors) {
        if (t.shape() != shape) throw std::invalid_argument("model tensors must share a shape");
    }
    if (symmetric) {
        for (const auto& t : tensors) {
            if (!is_symmetric_tensor(t)) {
                throw std::invalid_argument("symmetric flag set on a non-symmetric tensor");
            }
        }
    }
}

namespace {

bool cubical(const DenseTensor& a) {
    for (std::size_t d : a.shape()) {
        if (d != a.shape().front()) return false;
    }
    return true;
}

/// Apply perm to the axes: out[i_1..i_r] = a[i_perm(1)..i_perm(r)].
DenseTensor permute_axes(const DenseTensor& a, const std::vector<std::size_t>& perm) {
    const auto& shape = a.shape();
    const std::size_t r = a.order();
    std::vector<std::size_t> out_shape(r);
    for (std::size_t t = 0; t < r; ++t) out_shape[t] = shape[perm[t]];
    DenseTensor out(out_shape);
    std::vector<std::size_t> idx(r, 0);
    for (std::size_t f = 0; f < a.size(); ++f) {
        std::size_t src = 0;
        for (std::size_t t = 0; t < r; ++t) src = src * shape[t] + idx[perm[t]];
        out[f] = a[src];
        for (std::size_t t = r; t-- > 0;) {
            if (++idx[t] < out_shape[t]) break;
            idx[t] = 0;
        }
    }
    return out;
}

}  // namespace

bool is_symmetric_tensor(const DenseTensor& a, double tol) {
    if (a.order() <= 1) return true;
    if (!cubical(a)) return false;
    std::vector<std::size_t> perm(a.order());
    for (std::size_t t = 0; t < perm.size(); ++t) perm[t] = t;
    while (std::next_permutation(perm.begin(), perm.end())) {
        DenseTensor p = permute_axes(a, perm);
        for (std::size_t f = 0; f < a.size(); ++f) {
            if (std::abs(p[f] - a[f]) > tol) return false;
        }
    }
    return true;
}

DenseTensor symmetrize_tensor(const DenseTensor& a) {
    if (a.order() <= 1) return a;
    if (!cubical(a)) throw std::invalid_argument("symmetrization needs a cubical shape");
    std::vector<std::size_t> perm(a.order());
    for (std::size_t t = 0; t < perm.size(); ++t) perm[t] = t;
    DenseTensor acc(a.shape());
    std::size_t count = 0;
    do {
        DenseTensor p = permute_axes(a, perm);
        for (std::size_t f = 0; f < acc.size(); ++f) acc[f] += p[f];
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (std::size_t f = 0; f < acc.size(); ++f) acc[f] /= static_cast<double>(count);
    return acc;
}

}  // namespace randten
