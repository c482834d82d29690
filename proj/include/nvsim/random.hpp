#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace nvsim {

// splitmix64 finalizer; decorrelates derived seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed of the index-th substream of a base seed. Every simulation run owns
// one substream, so results do not depend on execution order.
constexpr std::uint64_t substream_seed(std::uint64_t base_seed, std::uint64_t index) {
    return mix64(base_seed ^ mix64(index + 1));
}

// Deterministic random stream. mt19937_64 is fully specified by the
// standard, and the value transforms below are fixed arithmetic, so a given
// seed produces the same draw sequence everywhere. Streams are never shared:
// one stream per simulation run, one per model build.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    // uniform on [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller; consumes exactly two uniforms per draw
    double normal01() {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi_v<double> * u2);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace nvsim
