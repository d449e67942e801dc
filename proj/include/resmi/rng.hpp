#pragma once

#include <cstdint>
#include <vector>

namespace resmi {

struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// Counter-free splitmix64 stream. Output is fully determined by
// (seed, stream_id) and identical on every platform.
class Rng {
public:
    explicit Rng(RngSeed s);

    std::uint64_t next_u64();

    // Uniform over [0, bound), bound >= 1. Unbiased via rejection.
    std::uint64_t next_below(std::uint64_t bound);

    // Uniform over [0, 1) with 53 random bits.
    double next_double();

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace resmi
