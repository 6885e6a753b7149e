#ifndef AMBC_RNG_HPP
#define AMBC_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace ambc::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

/// Purpose tags keeping independent draw sequences apart.
namespace stream {
inline constexpr std::uint64_t channel = 1;
inline constexpr std::uint64_t cs = 2;
inline constexpr std::uint64_t block = 3;
inline constexpr std::uint64_t dominance = 4;
inline constexpr std::uint64_t campaign = 5;
}  // namespace stream

/// Counter-based generator: the initial state is a pure function of
/// (seed, stream, index), so any draw can be regenerated independently of
/// evaluation order or worker count.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t index)
        : state_(mix64(mix64(seed + kGolden * stream_id) ^
                       (index * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull))) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform in (0, 1]; never returns 0, so log() stays finite.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    /// Unit-mean exponential draw.
    double exponential() { return -std::log(uniform01()); }

    /// Uniform angle in [0, 2*pi).
    double uniform_angle() {
        return 2.0 * std::numbers::pi *
               (static_cast<double>(next_u64() >> 11) * 0x1p-53);
    }

    /// Circularly symmetric complex Gaussian CN(0, 1), polar form:
    /// |X|^2 is exactly unit-mean exponential.
    std::complex<double> complex_gaussian() {
        const double r = std::sqrt(exponential());
        return std::polar(r, uniform_angle());
    }

private:
    std::uint64_t state_;
};

}  // namespace ambc::rng

#endif  // AMBC_RNG_HPP
