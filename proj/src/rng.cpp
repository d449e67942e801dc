#include "resmi/rng.hpp"

namespace resmi {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(RngSeed s) {
    // Mix seed and stream so adjacent streams are uncorrelated.
    std::uint64_t x = s.seed;
    std::uint64_t a = splitmix64(x);
    x ^= s.stream_id * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    state_ = a ^ splitmix64(x);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

std::uint64_t Rng::next_below(std::uint64_t bound) {
    // Rejection sampling over the largest multiple of bound.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace resmi
