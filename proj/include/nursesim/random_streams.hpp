#ifndef NURSESIM_RANDOM_STREAMS_HPP
#define NURSESIM_RANDOM_STREAMS_HPP

#include <array>
#include <cstdint>

namespace nursesim {

// Philox4x32-10 block function (Salmon et al., SC'11). Stateless: maps a
// 128-bit counter and a 64-bit key to 128 random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

enum class Stream : std::uint32_t {
    arrival_occurrence = 1,
    arrival_type = 2,
    service_completion = 3,
    content_transition = 4,
    tie_break = 5,
};

// Counter-based random streams. Every draw is addressed by (stream, index
// tuple) instead of by position in a sequence, so a draw depends only on the
// master seed and on what it is for. Arrival draws are keyed by period;
// service and content draws by (patient id, stage, period-within-visit), which
// replays the same patient trajectory randomness under any policy.
class RandomStreams {
public:
    explicit RandomStreams(std::uint64_t master_seed) : seed_(master_seed) {}

    std::uint64_t master_seed() const { return seed_; }

    // Uniform double in [0, 1) with 53 random bits. `minor` must fit in 24 bits.
    double uniform(Stream stream, std::uint64_t major, std::uint32_t middle = 0,
                   std::uint32_t minor = 0) const;

    // Uniform integer in [0, n), n > 0.
    std::uint32_t below(std::uint32_t n, Stream stream, std::uint64_t major,
                        std::uint32_t middle = 0, std::uint32_t minor = 0) const;

private:
    std::uint64_t seed_;
};

// Sequential view over one stream, for callers that just want "the next draw".
class StreamCursor {
public:
    StreamCursor(const RandomStreams& rng, Stream stream) : rng_(&rng), stream_(stream) {}
    double next() { return rng_->uniform(stream_, position_++); }
    std::uint64_t position() const { return position_; }

private:
    const RandomStreams* rng_;
    Stream stream_;
    std::uint64_t position_ = 0;
};

}  // namespace nursesim

#endif
