#pragma once

// SplitMix64: a splittable 64-bit generator. Trajectory streams are derived
// deterministically from (master seed, trajectory index), which is what makes
// ensemble results independent of execution order.

#include <cstdint>
#include <string_view>

namespace ecsim {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) from the top 53 bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Fair coin from the top bit: +1 or -1.
    int coin() { return (next() >> 63) ? +1 : -1; }

    // Seed for stream `index` of a master seed. The finalizer is bijective,
    // so distinct indices give well-separated streams.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
        SplitMix64 g(master ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
        return g.next();
    }

    static constexpr std::string_view algorithm = "splitmix64";

private:
    std::uint64_t state_;
};

}  // namespace ecsim
