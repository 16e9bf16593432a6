#include "wpansim/random-stream.h"

#include "wpansim/errors.h"

#include <limits>

namespace wpansim
{

uint64_t
SplitMix64(uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(uint64_t seed, uint64_t streamId)
    : m_seed(seed),
      m_streamId(streamId),
      m_engine(SplitMix64(SplitMix64(seed) ^ SplitMix64(streamId + 0x632be59bd9b4e019ULL)))
{
}

uint64_t
RandomStream::StreamIdFor(uint32_t node, StreamPurpose purpose, uint32_t sub)
{
    return (static_cast<uint64_t>(node) << 16) | (static_cast<uint64_t>(purpose) << 8) |
           (sub & 0xffu);
}

double
RandomStream::NextUniform()
{
    return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
}

uint64_t
RandomStream::NextBelow(uint64_t bound)
{
    if (bound == 0)
    {
        throw EngineFault("RandomStream::NextBelow with zero bound");
    }
    // Rejection keeps the result unbiased for bounds that are not powers of two.
    const uint64_t max = std::numeric_limits<uint64_t>::max();
    const uint64_t limit = max - (max % bound + 1) % bound;
    uint64_t x;
    do
    {
        x = m_engine();
    } while (x > limit);
    return x % bound;
}

} // namespace wpansim
