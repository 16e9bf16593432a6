#include "wpansim/traffic.h"

#include "wpansim/errors.h"

#include <algorithm>
#include <cmath>

namespace wpansim
{

const char*
ToString(DestinationRule rule)
{
    switch (rule)
    {
    case DestinationRule::PanCoord:
        return "pan_coord";
    case DestinationRule::AllCoordinators:
        return "all_coordinators";
    case DestinationRule::AllNodes:
        return "all_nodes";
    case DestinationRule::ImmediateNext:
        return "immediate_next";
    }
    return "unknown";
}

DestinationRule
ParseDestinationRule(const std::string& text)
{
    for (auto rule : {DestinationRule::PanCoord,
                      DestinationRule::AllCoordinators,
                      DestinationRule::AllNodes,
                      DestinationRule::ImmediateNext})
    {
        if (text == ToString(rule))
        {
            return rule;
        }
    }
    throw ConfigError("unknown destination rule '" + text +
                      "' (expected pan_coord, all_coordinators, all_nodes or immediate_next)");
}

void
TrafficProfile::Validate() const
{
    if (interarrival.Minimum() < 0 || packetSize.Minimum() < 0 || startTime.Minimum() < 0)
    {
        throw ConfigError("traffic distributions must not produce negative values");
    }
    if (interarrival.GetKind() == Distribution::Kind::Constant && interarrival.Mean() <= 0)
    {
        throw ConfigError("constant interarrival must be > 0");
    }
    if (stopTime <= SimTime::Zero())
    {
        throw ConfigError("stop_time must be > 0");
    }
}

uint32_t
SamplePayloadBits(const Distribution& size, RandomStream& stream, const SizePolicy& policy)
{
    double bits = std::round(size.Sample(stream));
    bits = std::max(bits, static_cast<double>(policy.minPayloadBits));
    if (!policy.strict)
    {
        bits = std::min(bits, static_cast<double>(policy.maxPayloadBits));
    }
    bits = std::min(bits, 4.0e9);
    return static_cast<uint32_t>(bits);
}

std::vector<NodeId>
EligibleDestinations(const Network& net, NodeId node, DestinationRule rule)
{
    std::vector<NodeId> out;
    switch (rule)
    {
    case DestinationRule::PanCoord:
        if (auto c = net.CoordinatorOf(node))
        {
            out.push_back(*c);
        }
        break;
    case DestinationRule::AllCoordinators:
        for (NodeId c : net.Coordinators())
        {
            if (c != node)
            {
                out.push_back(c);
            }
        }
        break;
    case DestinationRule::AllNodes:
        for (NodeId e : net.EndDevices())
        {
            if (e != node)
            {
                out.push_back(e);
            }
        }
        break;
    case DestinationRule::ImmediateNext:
        if (net.Kind() == TopologyKind::Ring)
        {
            out.push_back(net.Successor(node));
        }
        break;
    }
    return out;
}

NodeId
ChooseDestination(const Network& net, NodeId node, DestinationRule rule, RandomStream& stream)
{
    auto eligible = EligibleDestinations(net, node, rule);
    if (eligible.empty())
    {
        throw ConfigError(std::string("destination rule ") + ToString(rule) + " has no eligible node for " +
                          ToString(net.Node(node).role) + " " + std::to_string(node) + " in a " +
                          ToString(net.Kind()) + " topology");
    }
    if (eligible.size() == 1)
    {
        return eligible.front();
    }
    return eligible[stream.NextBelow(eligible.size())];
}

TrafficGenerator::TrafficGenerator(Simulator& sim,
                                   const Network& net,
                                   NodeId node,
                                   TrafficProfile profile,
                                   SizePolicy sizes,
                                   uint64_t seed,
                                   FrameIdAllocator& ids,
                                   Emit emit)
    : m_sim(sim),
      m_net(net),
      m_node(node),
      m_profile(std::move(profile)),
      m_sizes(sizes),
      m_interarrival(seed, RandomStream::StreamIdFor(node, StreamPurpose::Interarrival)),
      m_size(seed, RandomStream::StreamIdFor(node, StreamPurpose::Size)),
      m_start(seed, RandomStream::StreamIdFor(node, StreamPurpose::Start)),
      m_destination(seed, RandomStream::StreamIdFor(node, StreamPurpose::Destination)),
      m_ids(ids),
      m_emit(std::move(emit))
{
    m_profile.Validate();
    m_eligible = EligibleDestinations(m_net, m_node, m_profile.destination);
    if (m_eligible.empty())
    {
        // Reuse ChooseDestination's diagnostic.
        ChooseDestination(m_net, m_node, m_profile.destination, m_destination);
    }
}

void
TrafficGenerator::Start()
{
    m_firstAt = m_sim.Now() + SimTime::FromSeconds(m_profile.startTime.Sample(m_start));
    if (m_firstAt >= m_profile.stopTime)
    {
        return;
    }
    m_sim.Schedule(m_firstAt, EventKind::GeneratorTick, static_cast<int32_t>(m_node), [this]() { Generate(); });
}

void
TrafficGenerator::Generate()
{
    Frame frame;
    frame.id = m_ids.Next();
    frame.kind = FrameKind::Data;
    frame.source = m_node;
    frame.transmitter = m_node;
    frame.finalDestination = ChooseDestination(m_net, m_node, m_profile.destination, m_destination);
    frame.payloadBits = SamplePayloadBits(m_profile.packetSize, m_size, m_sizes);
    frame.createdAt = m_sim.Now();
    frame.hopTrace.push_back(m_node);
    ++m_created;

    const SimTime next = m_sim.Now() + SimTime::FromSeconds(m_profile.interarrival.Sample(m_interarrival));
    if (next < m_profile.stopTime)
    {
        m_sim.Schedule(next, EventKind::GeneratorTick, static_cast<int32_t>(m_node), [this]() { Generate(); });
    }
    m_emit(std::move(frame));
}

SinkResult
ApplicationSink::Receive(const Frame& frame)
{
    if (!m_seen.insert(frame.id).second)
    {
        ++m_duplicates;
        return SinkResult::Duplicate;
    }
    ++m_delivered;
    return SinkResult::Delivered;
}

} // namespace wpansim
