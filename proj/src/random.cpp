#include "scoreid/random.hpp"

#include <cmath>

namespace scoreid {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

RandomStream RandomStream::derive(std::uint64_t base_seed, std::uint64_t trial) {
    return RandomStream(mix64(base_seed + trial));
}

std::uint64_t RandomStream::next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RandomStream::categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double target = uniform() * total;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        cumulative += weights[i];
        last_positive = i;
        if (target < cumulative) return i;
    }
    return last_positive;
}

std::vector<double> RandomStream::dirichlet_flat(std::size_t dimension) {
    std::vector<double> draw(dimension);
    double total = 0.0;
    for (auto& x : draw) {
        // 1 - U lies in (0, 1], so the log is finite.
        x = -std::log(1.0 - uniform());
        total += x;
    }
    for (auto& x : draw) x /= total;
    return draw;
}

}  // namespace scoreid
