#ifndef WPANSIM_RANDOM_STREAM_H
#define WPANSIM_RANDOM_STREAM_H

#include <cstdint>
#include <random>
#include <string_view>

namespace wpansim
{

/// What a stream is used for. Each node owns one stream per purpose.
enum class StreamPurpose : uint8_t
{
    Interarrival = 0,
    Size = 1,
    Start = 2,
    Backoff = 3,
    Destination = 4,
};

/**
 * A reproducible pseudo-random stream identified by (seed, stream id).
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard, seeded with a splitmix64 mix of the run seed and the stream id.
 * Conversion to reals and integers is done here rather than through
 * <random> distributions, whose algorithms are implementation-defined.
 */
class RandomStream
{
  public:
    static constexpr std::string_view kGeneratorName = "mt19937_64+splitmix64";

    RandomStream(uint64_t seed, uint64_t streamId);

    /// Stream id for a node/purpose pair; `sub` separates e.g. per-radio backoff streams.
    static uint64_t StreamIdFor(uint32_t node, StreamPurpose purpose, uint32_t sub = 0);

    /// Uniform on [0, 1) with 53 random bits.
    double NextUniform();

    /// Uniform integer on [0, bound). bound must be > 0.
    uint64_t NextBelow(uint64_t bound);

    uint64_t Seed() const
    {
        return m_seed;
    }

    uint64_t StreamId() const
    {
        return m_streamId;
    }

  private:
    uint64_t m_seed;
    uint64_t m_streamId;
    std::mt19937_64 m_engine;
};

/// The splitmix64 finalizer.
uint64_t SplitMix64(uint64_t x);

} // namespace wpansim

#endif // WPANSIM_RANDOM_STREAM_H
