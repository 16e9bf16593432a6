#include "wpansim/metrics.h"

#include "wpansim/errors.h"

#include <cmath>

namespace wpansim
{

void
MetricsCollector::RecordSent(NodeId node, uint32_t bits, SimTime t)
{
    m_sent.push_back(Sample{t, node, bits});
}

void
MetricsCollector::RecordReceived(NodeId node, uint32_t bits, SimTime t)
{
    m_received.push_back(Sample{t, node, bits});
}

void
MetricsCollector::RecordHeard(NodeId node, uint32_t bits, SimTime t)
{
    m_heard.push_back(Sample{t, node, bits});
}

void
MetricsCollector::RecordSink(NodeId node, uint32_t bits, SimTime t, SimTime latency)
{
    m_sink.push_back(SinkSample{t, node, bits, latency});
}

void
MetricsCollector::RecordDropped(NodeId node, DropCause cause, SimTime t)
{
    m_dropped.push_back(DropSample{t, node, cause});
}

MetricsReport
MetricsCollector::Report(SimTime end, SimTime bucketWidth, SimTime warmup, const FrameAccounting& accounting) const
{
    if (bucketWidth <= SimTime::Zero())
    {
        throw ConfigError("bucket width must be > 0");
    }
    if (warmup < SimTime::Zero() || warmup >= end)
    {
        throw ConfigError("warmup must lie in [0, duration)");
    }
    MetricsReport report;
    report.bucketWidth = bucketWidth;
    report.windowStart = warmup;
    report.windowEnd = end;
    report.accounting = accounting;

    const int64_t span = (end - warmup).Nanoseconds();
    const int64_t width = bucketWidth.Nanoseconds();
    const auto bucketCount = static_cast<std::size_t>((span + width - 1) / width);
    const double widthSec = bucketWidth.Seconds();
    const double window = (end - warmup).Seconds();

    std::vector<double> throughputBits(bucketCount, 0);
    std::vector<double> sentBits(bucketCount, 0);
    std::vector<double> receivedBits(bucketCount, 0);
    std::vector<uint64_t> drops(bucketCount, 0);

    auto inWindow = [&](SimTime t) { return t >= warmup && t < end; };
    auto bucketOf = [&](SimTime t) { return static_cast<std::size_t>((t - warmup).Nanoseconds() / width); };

    double totalSent = 0;
    double totalReceived = 0;
    double totalHeard = 0;
    double totalSink = 0;
    double latencySum = 0;

    for (const auto& s : m_sent)
    {
        if (!inWindow(s.t))
        {
            continue;
        }
        sentBits[bucketOf(s.t)] += s.bits;
        totalSent += s.bits;
        report.perNode[s.node].sentBps += s.bits;
        ++report.global.packetsSent;
    }
    for (const auto& s : m_received)
    {
        if (!inWindow(s.t))
        {
            continue;
        }
        receivedBits[bucketOf(s.t)] += s.bits;
        totalReceived += s.bits;
        report.perNode[s.node].receivedBps += s.bits;
    }
    for (const auto& s : m_heard)
    {
        if (inWindow(s.t))
        {
            totalHeard += s.bits;
        }
    }
    for (const auto& s : m_sink)
    {
        if (!inWindow(s.t))
        {
            continue;
        }
        throughputBits[bucketOf(s.t)] += s.bits;
        totalSink += s.bits;
        latencySum += s.latency.Seconds();
        report.perNode[s.node].throughputBps += s.bits;
        ++report.global.packetsDelivered;
    }
    for (auto cause : kAllDropCauses)
    {
        report.dropCauses[cause] = 0;
    }
    for (const auto& d : m_dropped)
    {
        if (!inWindow(d.t))
        {
            continue;
        }
        ++drops[bucketOf(d.t)];
        ++report.dropCauses[d.cause];
        ++report.global.droppedTotal;
        ++report.perNode[d.node].droppedCount;
    }

    report.buckets.reserve(bucketCount);
    for (std::size_t i = 0; i < bucketCount; ++i)
    {
        BucketRow row;
        row.startSeconds = (warmup + bucketWidth * static_cast<int64_t>(i)).Seconds();
        row.throughputBps = throughputBits[i] / widthSec;
        row.sentBps = sentBits[i] / widthSec;
        row.receivedBps = receivedBits[i] / widthSec;
        row.droppedCount = drops[i];
        report.buckets.push_back(row);
    }

    report.global.throughputBps = totalSink / window;
    report.global.sentBps = totalSent / window;
    report.global.receivedBps = totalReceived / window;
    report.global.heardBps = totalHeard / window;
    report.global.droppedPerSec = static_cast<double>(report.global.droppedTotal) / window;
    report.global.meanLatency =
        report.global.packetsDelivered ? latencySum / static_cast<double>(report.global.packetsDelivered) : 0.0;

    for (auto& [node, m] : report.perNode)
    {
        m.throughputBps /= window;
        m.sentBps /= window;
        m.receivedBps /= window;
    }
    return report;
}

FrameLedger::FrameLedger(DropHandler onDrop)
    : m_onDrop(std::move(onDrop))
{
}

void
FrameLedger::Created(FrameId id)
{
    auto [it, inserted] = m_entries.try_emplace(id);
    if (!inserted)
    {
        throw EngineFault("frame id " + std::to_string(id) + " created twice");
    }
    it->second.live = 1;
    ++m_counts.created;
}

void
FrameLedger::CopySpawned(FrameId id)
{
    auto it = m_entries.find(id);
    if (it == m_entries.end())
    {
        throw EngineFault("copy of settled frame " + std::to_string(id));
    }
    ++it->second.live;
}

void
FrameLedger::CopyHandedOff(FrameId id, SimTime t)
{
    auto it = m_entries.find(id);
    if (it == m_entries.end() || it->second.live == 0)
    {
        throw EngineFault("hand-off of unknown frame " + std::to_string(id));
    }
    --it->second.live;
    Settle(id, it->second, t);
}

void
FrameLedger::CopyDropped(FrameId id, NodeId node, DropCause cause, SimTime t)
{
    auto it = m_entries.find(id);
    if (it == m_entries.end() || it->second.live == 0)
    {
        throw EngineFault("drop of unknown frame " + std::to_string(id));
    }
    auto& e = it->second;
    --e.live;
    e.hasCause = true;
    e.lastCause = cause;
    e.lastNode = node;
    Settle(id, e, t);
}

bool
FrameLedger::Delivered(FrameId id)
{
    auto it = m_entries.find(id);
    if (it == m_entries.end() || it->second.delivered)
    {
        ++m_counts.duplicates;
        return false;
    }
    it->second.delivered = true;
    ++m_counts.delivered;
    return true;
}

void
FrameLedger::Settle(FrameId id, Entry& entry, SimTime t)
{
    if (entry.live > 0)
    {
        return;
    }
    if (!entry.delivered)
    {
        if (!entry.hasCause)
        {
            throw EngineFault("frame " + std::to_string(id) + " vanished without delivery or drop");
        }
        ++m_counts.dropped;
        if (m_onDrop)
        {
            m_onDrop(id, entry.lastNode, entry.lastCause, t);
        }
    }
    m_entries.erase(id);
}

FrameAccounting
FrameLedger::Accounting() const
{
    FrameAccounting a = m_counts;
    a.inFlight = 0;
    for (const auto& [id, e] : m_entries)
    {
        if (!e.delivered)
        {
            ++a.inFlight;
        }
    }
    return a;
}

} // namespace wpansim
