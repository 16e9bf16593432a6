#ifndef WPANSIM_METRICS_H
#define WPANSIM_METRICS_H

#include "wpansim/frame.h"
#include "wpansim/sim-time.h"
#include "wpansim/types.h"

#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

namespace wpansim
{

struct BucketRow
{
    double startSeconds{0};
    double throughputBps{0};
    double sentBps{0};
    double receivedBps{0};
    uint64_t droppedCount{0};
};

struct GlobalMetrics
{
    /// Payload bits delivered to final destinations per second.
    double throughputBps{0};
    /// Payload bits created by applications per second.
    double sentBps{0};
    /// Payload bits of intact data frames received by their addressed next hop
    /// per second, summed over every hop of every path.
    double receivedBps{0};
    /// Payload bits of intact data frames heard by any listening node per second.
    double heardBps{0};
    double droppedPerSec{0};
    uint64_t droppedTotal{0};
    uint64_t packetsSent{0};
    uint64_t packetsDelivered{0};
    /// Mean creation-to-delivery delay of packets delivered in the window, seconds.
    double meanLatency{0};
};

struct NodeMetrics
{
    double throughputBps{0};
    double sentBps{0};
    double receivedBps{0};
    uint64_t droppedCount{0};
};

/// Whole-run packet fates; created == delivered + dropped + inFlight.
struct FrameAccounting
{
    uint64_t created{0};
    uint64_t delivered{0};
    uint64_t dropped{0};
    uint64_t inFlight{0};
    uint64_t duplicates{0};
};

struct MetricsReport
{
    SimTime bucketWidth;
    SimTime windowStart;
    SimTime windowEnd;
    std::vector<BucketRow> buckets;
    GlobalMetrics global;
    std::map<DropCause, uint64_t> dropCauses;
    std::map<NodeId, NodeMetrics> perNode;
    FrameAccounting accounting;

    double WindowSeconds() const
    {
        return (windowEnd - windowStart).Seconds();
    }
};

/**
 * Raw metric samples for one run. Reports are computed afterwards over
 * [warmup, end) so one run can be summarized with any window and bucket
 * width. A partial last bucket is normalized by the nominal width, which
 * keeps sum(bucket * width) equal to global * window.
 */
class MetricsCollector
{
  public:
    void RecordSent(NodeId node, uint32_t bits, SimTime t);
    void RecordReceived(NodeId node, uint32_t bits, SimTime t);
    void RecordHeard(NodeId node, uint32_t bits, SimTime t);
    void RecordSink(NodeId node, uint32_t bits, SimTime t, SimTime latency);
    void RecordDropped(NodeId node, DropCause cause, SimTime t);

    /// Throws ConfigError if warmup >= end or bucketWidth <= 0.
    MetricsReport Report(SimTime end, SimTime bucketWidth, SimTime warmup, const FrameAccounting& accounting) const;

    uint64_t SentCount() const
    {
        return m_sent.size();
    }

    uint64_t SinkCount() const
    {
        return m_sink.size();
    }

    uint64_t DroppedCount() const
    {
        return m_dropped.size();
    }

  private:
    struct Sample
    {
        SimTime t;
        NodeId node;
        uint32_t bits;
    };

    struct SinkSample
    {
        SimTime t;
        NodeId node;
        uint32_t bits;
        SimTime latency;
    };

    struct DropSample
    {
        SimTime t;
        NodeId node;
        DropCause cause;
    };

    std::vector<Sample> m_sent;
    std::vector<Sample> m_received;
    std::vector<Sample> m_heard;
    std::vector<SinkSample> m_sink;
    std::vector<DropSample> m_dropped;
};

/**
 * Tracks the fate of every packet across relay copies.
 *
 * A packet may briefly exist twice (a relay holds it while the upstream
 * sender still waits for an ACK that was lost). It counts as dropped only
 * when its last copy disappears without a delivery, using the cause of the
 * most recent copy loss.
 */
class FrameLedger
{
  public:
    using DropHandler = std::function<void(FrameId id, NodeId node, DropCause cause, SimTime t)>;

    explicit FrameLedger(DropHandler onDrop);

    void Created(FrameId id);
    void CopySpawned(FrameId id);
    /// The holder's copy was acknowledged by the next hop.
    void CopyHandedOff(FrameId id, SimTime t);
    void CopyDropped(FrameId id, NodeId node, DropCause cause, SimTime t);
    /// True for the first delivery of `id`.
    bool Delivered(FrameId id);

    FrameAccounting Accounting() const;

  private:
    struct Entry
    {
        uint32_t live{0};
        bool delivered{false};
        bool hasCause{false};
        DropCause lastCause{DropCause::ChannelAccessFailure};
        NodeId lastNode{0};
    };

    void Settle(FrameId id, Entry& entry, SimTime t);

    DropHandler m_onDrop;
    std::unordered_map<FrameId, Entry> m_entries;
    FrameAccounting m_counts;
};

} // namespace wpansim

#endif // WPANSIM_METRICS_H
