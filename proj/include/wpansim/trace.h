#ifndef WPANSIM_TRACE_H
#define WPANSIM_TRACE_H

#include "wpansim/sim-time.h"
#include "wpansim/types.h"

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <vector>

namespace wpansim
{

enum class TraceKind : uint8_t
{
    State,
    Backoff,
    SenseStart,
    SenseEnd,
    TxStart,
    TxEnd,
    Receive,
    AckTimeout,
    Acked,
    /// The MAC abandoned its copy of a frame.
    GiveUp,
    /// A packet is lost for good (all copies gone, never delivered).
    Drop,
    Enqueue,
    Token,
    Generate,
    Deliver,
};

const char* ToString(TraceKind kind);

/**
 * One protocol event. Numeric fields are -1 / 0 when they do not apply;
 * `note` carries names (states, drop causes, frame kind).
 */
struct TraceRecord
{
    SimTime time;
    NodeId node{0};
    TraceKind kind{TraceKind::State};
    int channel{-1};
    FrameId frameId{0};
    int backoffExponent{-1};
    int csmaBackoffs{-1};
    int retransmissions{-1};
    int64_t value{-1};
    SimTime start;
    SimTime end;
    bool flag{false};
    std::string note;
};

/// `t=<s> node=<id> kind=<event> detail=<...>`
std::string FormatTrace(const TraceRecord& record);

/**
 * Fan-out point for trace records. Always keeps the most recent records so
 * an engine fault can be reported with context; forwards to the sink only
 * when one is installed.
 */
class Tracer
{
  public:
    using Sink = std::function<void(const TraceRecord&)>;

    explicit Tracer(Sink sink = {}, std::size_t tailLength = 32);

    void Emit(TraceRecord record);

    bool HasSink() const
    {
        return static_cast<bool>(m_sink);
    }

    std::vector<TraceRecord> Tail() const;

  private:
    Sink m_sink;
    std::size_t m_tailLength;
    std::deque<TraceRecord> m_tail;
};

} // namespace wpansim

#endif // WPANSIM_TRACE_H
