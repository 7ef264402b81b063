#pragma once

#include <cstdint>
#include <random>

namespace cuckoo {

__extension__ using uint128 = unsigned __int128;

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used to derive
// independent stream seeds from structured coordinates.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for one coordinate tuple: fold each coordinate through mix64.
//   derive_seed(s, a, b) = mix64(mix64(mix64(s) ^ a) ^ b)
template <typename... Coords>
constexpr std::uint64_t derive_seed(std::uint64_t seed, Coords... coords) noexcept {
    std::uint64_t h = mix64(seed);
    ((h = mix64(h ^ static_cast<std::uint64_t>(coords))), ...);
    return h;
}

// Stream salts so that different consumers of one instance seed never
// share random bits.
enum class Stream : std::uint64_t {
    instance = 0x696e7374616e6365ULL,
    tie_break = 0x7469652d62726b00ULL,
    rhs = 0x7268732d62697473ULL,
};

// Platform-independent generator. std::mt19937_64 has a fully specified
// output sequence; the std distributions do not, so bounded integers and
// unit reals are derived here from the raw 64-bit outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, Stream stream)
        : engine_(derive_seed(seed, static_cast<std::uint64_t>(stream))) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        uint128 product = static_cast<uint128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<uint128>(next()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    // Uniform real in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bit() { return (next() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace cuckoo
