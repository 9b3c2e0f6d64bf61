#include "randten/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace randten {

namespace {

std::size_t checked_product(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) {
        if (d == 0) throw std::invalid_argument("tensor dimension must be positive");
        n *= d;
    }
    return n;
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), values_(checked_product(shape_), 0.0) {}

DenseTensor::DenseTensor(std::vector<std::size_t> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
    if (values_.size() != checked_product(shape_)) {
        throw std::invalid_argument("tensor value count does not match shape");
    }
}

DenseTensor DenseTensor::scalar(double v) {
    DenseTensor t;
    t.values_[0] = v;
    return t;
}

std::size_t DenseTensor::dim(std::size_t axis) const {
    if (axis >= shape_.size()) throw std::out_of_range("tensor axis out of range");
    return shape_[axis];
}

double DenseTensor::scalar_value() const {
    if (!shape_.empty()) throw std::invalid_argument("not an order-0 tensor");
    return values_[0];
}

IndexSubset::IndexSubset(std::size_t r, std::vector<std::size_t> m)
    : order(r), members(std::move(m)) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] >= r) throw std::out_of_range("subset member exceeds tensor order");
        if (i > 0 && members[i] <= members[i - 1]) {
            throw std::invalid_argument("subset members must be strictly increasing");
        }
    }
}

Partition::Partition(std::size_t r, std::vector<std::vector<std::size_t>> b)
    : order(r), blocks(std::move(b)) {
    std::vector<bool> seen(r, false);
    std::size_t covered = 0;
    for (auto& block : blocks) {
        if (block.empty()) throw std::invalid_argument("partition block must be nonempty");
        std::sort(block.begin(), block.end());
        for (std::size_t t : block) {
            if (t >= r) throw std::out_of_range("partition member exceeds tensor order");
            if (seen[t]) throw std::invalid_argument("partition blocks must be disjoint");
            seen[t] = true;
            ++covered;
        }
    }
    if (covered != r) throw std::invalid_argument("partition must cover every axis");
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

Partition Partition::singletons(std::size_t r) {
    std::vector<std::vector<std::size_t>> blocks(r);
    for (std::size_t t = 0; t < r; ++t) blocks[t] = {t};
    return Partition(r, std::move(blocks));
}

DenseTensor contract_axis(const DenseTensor& a, std::size_t axis,
                          std::span<const double> x) {
    const auto& shape = a.shape();
    if (axis >= shape.size()) throw std::out_of_range("contraction axis out of range");
    if (x.size() != shape[axis]) {
        throw std::invalid_argument("contraction vector length does not match axis dimension");
    }
    std::size_t inner = 1;
    for (std::size_t t = axis + 1; t < shape.size(); ++t) inner *= shape[t];
    const std::size_t len = shape[axis];
    const std::size_t outer = a.size() / (inner * len);

    std::vector<std::size_t> out_shape;
    out_shape.reserve(shape.size() - 1);
    for (std::size_t t = 0; t < shape.size(); ++t) {
        if (t != axis) out_shape.push_back(shape[t]);
    }
    DenseTensor out(std::move(out_shape));
    const double* src = a.data();
    double* dst = out.data();
    for (std::size_t o = 0; o < outer; ++o) {
        const std::size_t obase = o * inner;
        for (std::size_t j = 0; j < len; ++j) {
            const double w = x[j];
            const double* row = src + (o * len + j) * inner;
            for (std::size_t i = 0; i < inner; ++i) dst[obase + i] += w * row[i];
        }
    }
    return out;
}

DenseTensor contract_subset(const DenseTensor& a, const IndexSubset& subset,
                            std::span<const std::vector<double>> xs) {
    if (subset.order != a.order()) {
        throw std::invalid_argument("subset order does not match tensor order");
    }
    if (xs.size() != subset.members.size()) {
        throw std::invalid_argument("contraction needs one vector per subset member");
    }
    DenseTensor cur = a;
    for (std::size_t j = subset.members.size(); j-- > 0;) {
        cur = contract_axis(cur, subset.members[j], xs[j]);
    }
    return cur;
}

double eval_multilinear(const DenseTensor& a,
                        std::span<const std::vector<double>> xs) {
    if (xs.size() != a.order()) {
        throw std::invalid_argument("evaluation needs one vector per axis");
    }
    std::vector<std::size_t> all(a.order());
    for (std::size_t t = 0; t < all.size(); ++t) all[t] = t;
    return contract_subset(a, IndexSubset(a.order(), std::move(all)), xs).scalar_value();
}

double frobenius_norm_sq(const DenseTensor& a) {
    double s = 0.0;
    for (double v : a.values()) s += v * v;
    return s;
}

double frobenius_norm(const DenseTensor& a) { return std::sqrt(frobenius_norm_sq(a)); }

DenseTensor reshape_partition(const DenseTensor& a, const Partition& p) {
    if (p.order != a.order()) {
        throw std::invalid_argument("partition order does not match tensor order");
    }
    const auto& shape = a.shape();
    const std::size_t m = p.block_count();
    std::vector<std::size_t> out_shape(m, 1);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t t : p.blocks[j]) out_shape[j] *= shape[t];
    }
    DenseTensor out(out_shape);

    std::vector<std::size_t> idx(a.order(), 0);
    std::vector<std::size_t> fused(m, 0);
    for (std::size_t f = 0; f < a.size(); ++f) {
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t code = 0;
            for (std::size_t t : p.blocks[j]) code = code * shape[t] + idx[t];
            fused[j] = code;
        }
        std::size_t out_flat = 0;
        for (std::size_t j = 0; j < m; ++j) out_flat = out_flat * out_shape[j] + fused[j];
        out[out_flat] = a[f];

        for (std::size_t t = a.order(); t-- > 0;) {
            if (++idx[t] < shape[t]) break;
            idx[t] = 0;
        }
    }
    return out;
}

DenseTensor stack_tensors(std::span<const DenseTensor> tensors) {
    if (tensors.empty()) throw std::invalid_argument("cannot stack an empty sequence");
    const auto& shape = tensors.front().shape();
    for (const auto& t : tensors) {
        if (t.shape() != shape) throw std::invalid_argument("stacked tensors must share a shape");
    }
    const std::size_t n = tensors.size();
    std::vector<std::size_t> out_shape = shape;
    out_shape.push_back(n);
    DenseTensor out(std::move(out_shape));
    for (std::size_t k = 0; k < n; ++k) {
        const double* src = tensors[k].data();
        double* dst = out.data();
        const std::size_t base = tensors[k].size();
        for (std::size_t f = 0; f < base; ++f) dst[f * n + k] = src[f];
    }
    return out;
}

namespace {

void grow_partitions(std::size_t r, std::size_t pos, std::vector<std::size_t>& labels,
                     std::size_t max_label, std::vector<Partition>& out) {
    if (pos == r) {
        std::vector<std::vector<std::size_t>> blocks(max_label + 1);
        for (std::size_t t = 0; t < r; ++t) blocks[labels[t]].push_back(t);
        out.emplace_back(r, std::move(blocks));
        return;
    }
    for (std::size_t lab = 0; lab <= max_label + 1; ++lab) {
        labels[pos] = lab;
        grow_partitions(r, pos + 1, labels, std::max(max_label, lab), out);
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(std::size_t r, std::size_t cap) {
    if (r < 1) throw std::invalid_argument("partition enumeration needs order >= 1");
    if (r > cap) {
        throw std::length_error("partition enumeration refused: order " + std::to_string(r) +
                                " exceeds cap " + std::to_string(cap));
    }
    std::vector<Partition> out;
    std::vector<std::size_t> labels(r, 0);
    grow_partitions(r, 1, labels, 0, out);
    return out;
}

std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t r, std::size_t k) {
    if (k > r) throw std::invalid_argument("subset size exceeds order");
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        if (k == 0) break;
        std::size_t i = k;
        while (i-- > 0) {
            if (cur[i] != i + r - k) break;
            if (i == 0) return out;
        }
        if (cur[i] == i + r - k) break;
        ++cur[i];
        for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace randten
