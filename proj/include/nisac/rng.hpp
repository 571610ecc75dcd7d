#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace nisac {

// Seed plus logical stream id. The substream used for trial t is a pure
// function of (seed, stream_id, t); nothing else feeds the generator, so any
// execution order (or parallelism) reproduces the same draws.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// splitmix64 sequence whose initial state is a hash of (seed, stream_id,
// trial). All distributions are generated from raw 64-bit words by hand so
// output is bit-identical across compilers and standard libraries.
class RandomStream {
  public:
    RandomStream(RngSeed s, std::uint64_t trial = 0) {
        state_ = detail::mix64(s.seed + detail::kGolden);
        state_ = detail::mix64(state_ ^ (s.stream_id + 0xbf58476d1ce4e5b9ULL));
        state_ = detail::mix64(state_ ^ (trial + 0x94d049bb133111ebULL));
    }

    std::uint64_t next_u64() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    // Uniform on (0,1]; never 0, so -log(u) stays finite.
    double next_unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform on [0,1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal through the radius/phase form.
    double next_gaussian() {
        const double r = std::sqrt(-2.0 * std::log(next_unit_open()));
        return r * std::cos(2.0 * kPi * next_unit());
    }

    // Circularly symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> next_cscg(double variance = 1.0) {
        const double r = std::sqrt(-variance * std::log(next_unit_open()));
        const double phi = 2.0 * kPi * next_unit();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

  private:
    static constexpr double kPi = 3.14159265358979323846;
    std::uint64_t state_ = 0;
};

}  // namespace nisac
