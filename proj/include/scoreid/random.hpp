#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace scoreid {

/// Counter-based random stream: output n is a SplitMix64 finalizer applied to
/// key + n * golden. Streams with different keys are independent for our
/// purposes, and a stream's output depends only on (key, counter), so runs
/// are reproducible regardless of thread scheduling.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key = 0) : key_(key) {}

    /// Stream for trial `trial` of a batch seeded with `base_seed`.
    static RandomStream derive(std::uint64_t base_seed, std::uint64_t trial);

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform();

    /// Index i with probability weights[i] / sum(weights). Inverse-CDF.
    std::size_t categorical(std::span<const double> weights);

    /// Symmetric Dirichlet(1) draw of the given dimension.
    std::vector<double> dirichlet_flat(std::size_t dimension);

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace scoreid
