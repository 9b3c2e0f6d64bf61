#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace randten {

/// Dense tensor of arbitrary order with row-major storage (last index
/// fastest). An order-0 tensor has an empty shape and exactly one value.
class DenseTensor {
public:
    DenseTensor() : values_(1, 0.0) {}

    explicit DenseTensor(std::vector<std::size_t> shape);
    DenseTensor(std::vector<std::size_t> shape, std::vector<double> values);

    static DenseTensor scalar(double v);

    std::size_t order() const noexcept { return shape_.size(); }
    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    std::size_t dim(std::size_t axis) const;
    std::size_t size() const noexcept { return values_.size(); }

    std::span<const double> values() const noexcept { return values_; }
    const double* data() const noexcept { return values_.data(); }
    double* data() noexcept { return values_.data(); }

    double operator[](std::size_t flat) const { return values_[flat]; }
    double& operator[](std::size_t flat) { return values_[flat]; }

    /// Value of an order-0 tensor.
    double scalar_value() const;

    bool same_shape(const DenseTensor& other) const noexcept {
        return shape_ == other.shape_;
    }

private:
    std::vector<std::size_t> shape_;
    std::vector<double> values_;
};

/// Subset of the axes {0, .., r-1} of an order-r tensor, kept sorted and
/// duplicate-free. May be empty.
struct IndexSubset {
    std::size_t order = 0;
    std::vector<std::size_t> members;

    IndexSubset(std::size_t r, std::vector<std::size_t> m);

    std::size_t count() const noexcept { return members.size(); }
};

/// Partition of the axes {0, .., r-1} in canonical form: blocks ordered by
/// their smallest element, elements sorted within each block.
struct Partition {
    std::size_t order = 0;
    std::vector<std::vector<std::size_t>> blocks;

    Partition(std::size_t r, std::vector<std::vector<std::size_t>> b);

    std::size_t block_count() const noexcept { return blocks.size(); }

    static Partition singletons(std::size_t r);
};

/// A(x_1, .., x_r): full multilinear evaluation.
double eval_multilinear(const DenseTensor& a,
                        std::span<const std::vector<double>> xs);

/// Contract one axis against a vector; the remaining axes keep their
/// relative order.
DenseTensor contract_axis(const DenseTensor& a, std::size_t axis,
                          std::span<const double> x);

/// Contract the axes in `subset` against `xs` (given in increasing member
/// order). Returns the order r-|I| tensor over the complementary axes.
DenseTensor contract_subset(const DenseTensor& a, const IndexSubset& subset,
                            std::span<const std::vector<double>> xs);

double frobenius_norm_sq(const DenseTensor& a);
double frobenius_norm(const DenseTensor& a);

/// Fuse each partition block into one axis. The fused index encodes the
/// block's original indices in row-major order of its members.
DenseTensor reshape_partition(const DenseTensor& a, const Partition& p);

/// Stack n same-shape tensors along a new trailing axis of length n.
DenseTensor stack_tensors(std::span<const DenseTensor> tensors);

/// All partitions of {0, .., r-1} in canonical form. Guarded by `cap`
/// because the count grows as the Bell numbers.
std::vector<Partition> enumerate_partitions(std::size_t r,
                                            std::size_t cap = 8);

/// All k-element subsets of {0, .., r-1}, each sorted, in lexicographic
/// order.
std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t r,
                                                        std::size_t k);

}  // namespace randten
