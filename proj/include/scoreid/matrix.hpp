#pragma once

#include <cstddef>
#include <vector>

namespace scoreid {

/// Dense n x n matrix of doubles indexed by arm pairs.
class PairMatrix {
public:
    PairMatrix() = default;
    PairMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::size_t size() const { return n_; }

    bool operator==(const PairMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace scoreid
