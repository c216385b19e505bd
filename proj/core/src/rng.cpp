#include "sbl/rng.hpp"

#include <cmath>
#include <numbers>

namespace sbl {

namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    return static_cast<std::uint64_t>(p);
}

}  // namespace

std::array<std::uint64_t, 4> Philox4x64::block(std::array<std::uint64_t, 4> ctr,
                                               std::array<std::uint64_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, hi1;
        const std::uint64_t lo0 = mulhilo(kMult0, ctr[0], hi0);
        const std::uint64_t lo1 = mulhilo(kMult1, ctr[2], hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

double u64_to_unit_open(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

double u64_to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                      std::uint64_t c1, std::uint64_t c2) {
    const auto out = Philox4x64::block({c0, c1, c2, 0}, {seed, stream});
    const double u1 = u64_to_unit_open(out[0]);
    const double u2 = u64_to_unit(out[1]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                       std::uint64_t c1, std::uint64_t c2) {
    const auto out = Philox4x64::block({c0, c1, c2, 0}, {seed, stream});
    return u64_to_unit(out[2]);
}

}  // namespace sbl
