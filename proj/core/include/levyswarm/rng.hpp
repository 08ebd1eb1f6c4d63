#pragma once

#include <cstdint>

namespace levyswarm {

// Counter-based random stream.  The variate for a given (seed, stream id,
// epoch, draw index) is a pure function of those four integers, so parallel
// code can hand every agent its own stream per step and get bitwise identical
// results no matter how work is scheduled across threads.
//
// Construction: out(n) = mix64(base + n * GOLDEN) where base is derived by
// hashing (seed, id, epoch) together.  mix64 is the splitmix64 finalizer.

namespace detail {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0, std::uint64_t epoch = 0) {
        using detail::mix64;
        using detail::kGolden;
        std::uint64_t b = mix64(seed + kGolden);
        b = mix64(b ^ (stream_id + kGolden));
        b = mix64(b ^ (epoch + kGolden));
        base_ = b;
    }

    std::uint64_t next_u64() { return detail::mix64(base_ + (n_++) * detail::kGolden); }

    // Uniform on (0,1]: never returns 0, so x^(-1/alpha) is always finite.
    double uniform_open0() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform on [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    std::uint64_t draws_used() const { return n_; }

private:
    std::uint64_t base_;
    std::uint64_t n_ = 0;
};

} // namespace levyswarm
