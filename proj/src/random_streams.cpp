#include "nursesim/random_streams.hpp"

#include <cassert>

namespace nursesim {

namespace {

constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMulA, ctr[0], hi0, lo0);
        mulhilo(kMulB, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    return ctr;
}

double RandomStreams::uniform(Stream stream, std::uint64_t major, std::uint32_t middle,
                              std::uint32_t minor) const {
    assert(minor < (1u << 24));
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(major),
        static_cast<std::uint32_t>(major >> 32),
        middle,
        (static_cast<std::uint32_t>(stream) << 24) | (minor & 0xFFFFFFu),
    };
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    const auto out = philox4x32(ctr, key);
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(out[0]) << 21) ^ (static_cast<std::uint64_t>(out[1]) >> 11);
    return static_cast<double>(bits & ((1ull << 53) - 1)) * 0x1.0p-53;
}

std::uint32_t RandomStreams::below(std::uint32_t n, Stream stream, std::uint64_t major,
                                   std::uint32_t middle, std::uint32_t minor) const {
    assert(n > 0);
    const auto k = static_cast<std::uint32_t>(uniform(stream, major, middle, minor) * n);
    return k < n ? k : n - 1;
}

}  // namespace nursesim
