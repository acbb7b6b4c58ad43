#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mslice {

/// Dense row-major d-tensor. Axes may have different extents, which covers
/// rectangular tensors whose merged axes have dimension N^2.
class DenseTensor {
public:
    DenseTensor() = default;
    explicit DenseTensor(std::vector<std::size_t> shape);
    DenseTensor(std::vector<std::size_t> shape, std::vector<double> data);

    /// d-tensor with every extent equal to n.
    static DenseTensor cube(std::size_t order, std::size_t n);

    /// Outer product v1 (x) v2 (x) ... (x) vk.
    static DenseTensor outer(std::span<const std::vector<double>> factors);

    std::size_t order() const noexcept { return shape_.size(); }
    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    std::size_t flat_index(std::span<const std::size_t> index) const;
    std::vector<std::size_t> unflatten(std::size_t flat) const;

    double operator()(std::span<const std::size_t> index) const { return data_[flat_index(index)]; }
    double& operator()(std::span<const std::size_t> index) { return data_[flat_index(index)]; }
    double at(std::initializer_list<std::size_t> index) const;
    double& at(std::initializer_list<std::size_t> index);

    DenseTensor scaled(double c) const;

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

}  // namespace mslice
