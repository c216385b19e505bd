#pragma once

#include <array>
#include <cstdint>

namespace sbl {

/// Philox4x64-10 counter-based random block generator.
///
/// A block is a pure function of (counter, key), so any consumer can draw
/// the random numbers it needs by content address (seed, stream, indices)
/// with no generator state and no dependence on evaluation order.
struct Philox4x64 {
    static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                              std::array<std::uint64_t, 2> key);
};

/// Maps a 64-bit word to (0, 1]; never returns 0, safe under log().
double u64_to_unit_open(std::uint64_t x);
/// Maps a 64-bit word to [0, 1).
double u64_to_unit(std::uint64_t x);

/// Stream tags keep independent consumers of the same seed decorrelated.
namespace rng_stream {
inline constexpr std::uint64_t increments = 0x1;
inline constexpr std::uint64_t bridge = 0x2;
inline constexpr std::uint64_t validation = 0x3;
inline constexpr std::uint64_t corpus = 0x4;
}  // namespace rng_stream

/// Standard normal draw addressed by (seed, stream, c0, c1, c2).
double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                      std::uint64_t c1 = 0, std::uint64_t c2 = 0);

/// Uniform [0,1) draw addressed the same way (distinct from the normal
/// stream at equal counters).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                       std::uint64_t c1 = 0, std::uint64_t c2 = 0);

}  // namespace sbl
