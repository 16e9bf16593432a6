#ifndef WPANSIM_FRAME_H
#define WPANSIM_FRAME_H

#include "wpansim/sim-time.h"
#include "wpansim/types.h"

#include <vector>

namespace wpansim
{

enum class FrameKind : uint8_t
{
    Data,
    Ack,
    /// Ring token handed to the successor; carries no payload and is not acknowledged.
    Token,
};

/// Why a data packet was lost.
enum class DropCause : uint8_t
{
    ChannelAccessFailure,
    RetryExhausted,
    QueueOverflow,
    TokenStarvation,
    NoRoute,
};

inline constexpr DropCause kAllDropCauses[] = {
    DropCause::ChannelAccessFailure,
    DropCause::RetryExhausted,
    DropCause::QueueOverflow,
    DropCause::TokenStarvation,
    DropCause::NoRoute,
};

const char* ToString(DropCause cause);
const char* ToString(FrameKind kind);

/**
 * A data, acknowledgement or token unit on the air.
 *
 * `id` identifies the application packet and survives relaying; each hop
 * sets `transmitter` and `nextHop`. `hopTrace` lists the nodes that have
 * held the packet, starting with the source.
 */
struct Frame
{
    FrameId id{0};
    FrameKind kind{FrameKind::Data};
    NodeId source{0};
    NodeId finalDestination{0};
    NodeId transmitter{0};
    NodeId nextHop{0};
    uint32_t payloadBits{0};
    SimTime createdAt;
    std::vector<NodeId> hopTrace;
    FrameId ackFor{0};

    bool IsData() const
    {
        return kind == FrameKind::Data;
    }
};

/// Issues unique frame ids within one simulation instance.
class FrameIdAllocator
{
  public:
    FrameId Next()
    {
        return m_next++;
    }

  private:
    FrameId m_next{1};
};

} // namespace wpansim

#endif // WPANSIM_FRAME_H
