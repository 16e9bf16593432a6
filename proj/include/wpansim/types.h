#ifndef WPANSIM_TYPES_H
#define WPANSIM_TYPES_H

#include <compare>
#include <cstdint>
#include <functional>

namespace wpansim
{

using NodeId = uint32_t;
using FrameId = uint64_t;

/// Logical radio channel; stable for the lifetime of a scenario.
struct ChannelId
{
    uint16_t index{0};

    auto operator<=>(const ChannelId&) const = default;
};

} // namespace wpansim

template <>
struct std::hash<wpansim::ChannelId>
{
    std::size_t operator()(const wpansim::ChannelId& c) const noexcept
    {
        return std::hash<uint16_t>{}(c.index);
    }
};

#endif // WPANSIM_TYPES_H
