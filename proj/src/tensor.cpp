#include "mslice/tensor.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace mslice {

namespace {

std::size_t product(const std::vector<std::size_t>& shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
    if (shape_.empty()) throw std::invalid_argument("tensor order must be at least 1");
    data_.assign(product(shape_), 0.0);
}

DenseTensor::DenseTensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_.empty()) throw std::invalid_argument("tensor order must be at least 1");
    if (data_.size() != product(shape_)) throw std::invalid_argument("tensor data does not match its shape");
    for (const double v : data_) {
        if (!std::isfinite(v)) throw std::invalid_argument("tensor entries must be finite");
    }
}

DenseTensor DenseTensor::cube(std::size_t order, std::size_t n) {
    return DenseTensor(std::vector<std::size_t>(order, n));
}

DenseTensor DenseTensor::outer(std::span<const std::vector<double>> factors) {
    std::vector<std::size_t> shape;
    for (const auto& f : factors) shape.push_back(f.size());
    DenseTensor t(shape);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const auto idx = t.unflatten(flat);
        double v = 1.0;
        for (std::size_t a = 0; a < idx.size(); ++a) v *= factors[a][idx[a]];
        t.data_[flat] = v;
    }
    return t;
}

std::size_t DenseTensor::flat_index(std::span<const std::size_t> index) const {
    if (index.size() != shape_.size()) throw std::invalid_argument("index arity does not match tensor order");
    std::size_t flat = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a) {
        if (index[a] >= shape_[a]) throw std::out_of_range("tensor index out of range");
        flat = flat * shape_[a] + index[a];
    }
    return flat;
}

std::vector<std::size_t> DenseTensor::unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(shape_.size());
    for (std::size_t a = shape_.size(); a-- > 0;) {
        idx[a] = flat % shape_[a];
        flat /= shape_[a];
    }
    return idx;
}

double DenseTensor::at(std::initializer_list<std::size_t> index) const {
    return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
}

double& DenseTensor::at(std::initializer_list<std::size_t> index) {
    return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
}

DenseTensor DenseTensor::scaled(double c) const {
    DenseTensor out = *this;
    for (auto& v : out.data_) v *= c;
    return out;
}

}  // namespace mslice
