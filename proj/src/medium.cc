#include "wpansim/medium.h"

#include "wpansim/errors.h"

#include <algorithm>
#include <cmath>

namespace wpansim
{

void
PhyParams::Validate() const
{
    if (!(dataRate > 0) || !std::isfinite(dataRate))
    {
        throw ConfigError("phy.data_rate must be > 0");
    }
    if (!(symbolRate > 0))
    {
        throw ConfigError("phy.symbol_rate must be > 0");
    }
    if (ackFrameBits == 0)
    {
        throw ConfigError("phy.ack_frame_bits must be > 0");
    }
}

SimTime
BitsDuration(uint64_t bits, const PhyParams& phy)
{
    // Rounded once from the exact quotient so that 250 kbit/s stays exact (4000 ns/bit).
    long double ns = static_cast<long double>(bits) * 1e9L / static_cast<long double>(phy.dataRate);
    return SimTime::FromNanoseconds(static_cast<int64_t>(std::llround(ns)));
}

SimTime
TransmissionDuration(const Frame& frame, const PhyParams& phy)
{
    if (frame.kind == FrameKind::Ack)
    {
        return BitsDuration(phy.ackFrameBits, phy);
    }
    return BitsDuration(static_cast<uint64_t>(frame.payloadBits) + phy.overheadBits, phy);
}

Medium::Medium(Simulator& sim, PhyParams phy)
    : m_sim(sim),
      m_phy(std::move(phy))
{
    m_phy.Validate();
}

void
Medium::Attach(ChannelId channel, NodeId node, PhyListener* listener)
{
    auto& data = m_channels[channel];
    for (const auto& a : data.attachments)
    {
        if (a.node == node)
        {
            throw EngineFault("node " + std::to_string(node) + " attached twice to channel " +
                              std::to_string(channel.index));
        }
    }
    data.attachments.push_back(Attachment{node, listener});
}

ChannelState
Medium::CarrierSense(ChannelId channel, SimTime t, SimTime duration) const
{
    if (duration <= SimTime::Zero())
    {
        throw EngineFault("carrier sense with non-positive duration");
    }
    auto it = m_channels.find(channel);
    if (it == m_channels.end())
    {
        return ChannelState::Idle;
    }
    const SimTime windowEnd = t + duration;
    for (const auto& r : it->second.records)
    {
        if (r.start >= windowEnd)
        {
            break;
        }
        if (r.end > t)
        {
            return ChannelState::Busy;
        }
    }
    return ChannelState::Idle;
}

const TransmissionRecord&
Medium::BeginTransmission(ChannelId channel, NodeId sender, Frame frame)
{
    if (!m_activeSenders.insert({channel, sender}).second)
    {
        throw EngineFault("node " + std::to_string(sender) +
                          " started a transmission while already transmitting on channel " +
                          std::to_string(channel.index));
    }
    auto& data = m_channels[channel];
    Prune(data);

    TransmissionRecord record;
    record.id = m_nextRecord++;
    record.channel = channel;
    record.sender = sender;
    record.start = m_sim.Now();
    record.end = record.start + TransmissionDuration(frame, m_phy);
    record.frame = std::move(frame);

    // Every earlier record started at or before now, so it overlaps iff it is still on the air.
    for (auto& other : data.records)
    {
        if (other.end > record.start)
        {
            other.collided = true;
            record.collided = true;
        }
    }
    ++m_stats.transmissions;
    data.records.push_back(std::move(record));
    const TransmissionRecord& stored = data.records.back();
    const uint64_t id = stored.id;
    m_sim.Schedule(stored.end, EventKind::TransmissionEnd, static_cast<int32_t>(sender), [this, channel, id]() {
        Finish(channel, id);
    });
    return stored;
}

bool
Medium::IsTransmitting(ChannelId channel, NodeId sender) const
{
    return m_activeSenders.contains({channel, sender});
}

std::vector<NodeId>
Medium::ResolveDelivery(const TransmissionRecord& record) const
{
    std::vector<NodeId> receivers;
    if (record.collided)
    {
        return receivers;
    }
    auto it = m_channels.find(record.channel);
    if (it == m_channels.end())
    {
        return receivers;
    }
    for (const auto& a : it->second.attachments)
    {
        if (a.node != record.sender)
        {
            receivers.push_back(a.node);
        }
    }
    return receivers;
}

std::vector<NodeId>
Medium::Listeners(ChannelId channel) const
{
    std::vector<NodeId> nodes;
    auto it = m_channels.find(channel);
    if (it != m_channels.end())
    {
        for (const auto& a : it->second.attachments)
        {
            nodes.push_back(a.node);
        }
    }
    return nodes;
}

TransmissionRecord*
Medium::FindRecord(ChannelData& data, uint64_t recordId)
{
    for (auto& r : data.records)
    {
        if (r.id == recordId)
        {
            return &r;
        }
    }
    return nullptr;
}

void
Medium::Finish(ChannelId channel, uint64_t recordId)
{
    auto& data = m_channels[channel];
    TransmissionRecord* found = FindRecord(data, recordId);
    if (found == nullptr)
    {
        throw EngineFault("transmission record vanished before its end");
    }
    // Copy: listener callbacks may start new transmissions and grow the deque.
    const TransmissionRecord record = *found;
    m_activeSenders.erase({channel, record.sender});
    if (record.collided)
    {
        ++m_stats.collidedTransmissions;
    }

    const auto receivers = ResolveDelivery(record);
    const auto attachments = data.attachments;
    for (const auto& a : attachments)
    {
        if (a.node == record.sender)
        {
            a.listener->PhyTransmitEnd(record);
        }
    }
    for (const auto& a : attachments)
    {
        if (std::find(receivers.begin(), receivers.end(), a.node) != receivers.end())
        {
            a.listener->PhyReceive(record.frame, channel);
        }
    }
}

void
Medium::Prune(ChannelData& data)
{
    const SimTime now = m_sim.Now();
    while (!data.records.empty())
    {
        const auto& front = data.records.front();
        if (front.end + m_horizon < now)
        {
            data.records.pop_front();
        }
        else
        {
            break;
        }
    }
}

} // namespace wpansim
