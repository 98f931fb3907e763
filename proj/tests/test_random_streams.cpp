#include <doctest.h>

#include <set>

#include "nursesim/random_streams.hpp"

using namespace nursesim;

TEST_SUITE("core-model") {

TEST_CASE("philox4x32-10 known-answer vectors") {
    using A4 = std::array<std::uint32_t, 4>;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("same seed gives identical first 10^6 draws per substream") {
    const RandomStreams a(2024), b(2024);
    for (Stream s : {Stream::arrival_occurrence, Stream::arrival_type, Stream::service_completion,
                     Stream::content_transition, Stream::tie_break}) {
        StreamCursor ca(a, s), cb(b, s);
        bool same = true;
        for (int k = 0; k < 1000000; ++k)
            if (ca.next() != cb.next()) same = false;
        CHECK(same);
    }
}

TEST_CASE("draws are in [0,1) and streams differ") {
    const RandomStreams rng(7);
    double sum = 0;
    for (std::uint64_t k = 0; k < 100000; ++k) {
        const double u = rng.uniform(Stream::arrival_occurrence, k);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
    CHECK(rng.uniform(Stream::arrival_occurrence, 5) != rng.uniform(Stream::arrival_type, 5));
    CHECK(rng.uniform(Stream::service_completion, 5, 1, 0) != rng.uniform(Stream::service_completion, 5, 2, 0));
    CHECK(RandomStreams(7).uniform(Stream::tie_break, 1) != RandomStreams(8).uniform(Stream::tie_break, 1));
}

TEST_CASE("below covers its range") {
    const RandomStreams rng(3);
    std::set<std::uint32_t> seen;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const auto v = rng.below(3, Stream::tie_break, k);
        REQUIRE(v < 3);
        seen.insert(v);
    }
    CHECK(seen.size() == 3);
}

}  // TEST_SUITE
