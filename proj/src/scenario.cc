#include "wpansim/scenario.h"

#include "wpansim/errors.h"

#include <sstream>

namespace wpansim
{

std::map<NodeRole, TrafficProfile>
DefaultProfiles(TopologyKind kind)
{
    TrafficProfile coordinator;
    coordinator.interarrival = Distribution::Constant(1.0);
    coordinator.packetSize = Distribution::Constant(1024.0);
    coordinator.startTime = Distribution::Uniform(20.0, 21.0);
    coordinator.stopTime = SimTime::Infinity();

    TrafficProfile endDevice;
    endDevice.interarrival = Distribution::Exponential(1.0);
    endDevice.packetSize = Distribution::Exponential(1024.0);
    endDevice.startTime = Distribution::Exponential(1.0);
    endDevice.stopTime = SimTime::Infinity();
    endDevice.destination = DestinationRule::PanCoord;

    std::map<NodeRole, TrafficProfile> profiles;
    switch (kind)
    {
    case TopologyKind::Cluster:
        coordinator.destination = DestinationRule::AllCoordinators;
        profiles[NodeRole::PanCoordinator] = coordinator;
        profiles[NodeRole::EndDevice] = endDevice;
        break;
    case TopologyKind::Star:
        coordinator.destination = DestinationRule::AllNodes;
        profiles[NodeRole::PanCoordinator] = coordinator;
        profiles[NodeRole::EndDevice] = endDevice;
        break;
    case TopologyKind::Ring:
        endDevice.destination = DestinationRule::ImmediateNext;
        profiles[NodeRole::EndDevice] = endDevice;
        break;
    }
    return profiles;
}

Scenario
Scenario::Defaults(TopologyKind kind)
{
    Scenario s;
    s.name = ToString(kind);
    s.topology.kind = kind;
    s.profiles = DefaultProfiles(kind);
    return s;
}

Network
Scenario::BuildNetwork() const
{
    switch (topology.kind)
    {
    case TopologyKind::Star:
        return Network::BuildStar(topology.endDevices);
    case TopologyKind::Cluster:
        return Network::BuildCluster(topology.coordinators, topology.endDevicesPerCluster, flags.sharedChannel);
    case TopologyKind::Ring:
        return Network::BuildRing(topology.ringDevices);
    }
    throw ConfigError("unknown topology kind");
}

SizePolicy
Scenario::Sizes() const
{
    SizePolicy p;
    p.maxPayloadBits = maxPayloadBits;
    p.strict = flags.strictSizes;
    return p;
}

void
Scenario::Validate() const
{
    if (name.empty())
    {
        throw ConfigError("name must not be empty");
    }
    phy.Validate();
    mac.Validate();
    if (duration <= SimTime::Zero() || duration.IsInfinite())
    {
        throw ConfigError("run.duration must be > 0 and finite");
    }
    if (warmup < SimTime::Zero() || warmup >= duration)
    {
        throw ConfigError("run.warmup must satisfy 0 <= warmup < duration");
    }
    if (bucketWidth <= SimTime::Zero())
    {
        throw ConfigError("run.bucket_width must be > 0");
    }
    if (maxPayloadBits < 8)
    {
        throw ConfigError("traffic.max_payload_bits must be >= 8");
    }
    if (ring.tokenHoldTimeout <= SimTime::Zero() || ring.tokenQueueTimeout <= SimTime::Zero())
    {
        throw ConfigError("ring timeouts must be > 0");
    }
    Network net = BuildNetwork();
    for (const auto& node : net.Nodes())
    {
        auto it = profiles.find(node.role);
        if (it == profiles.end())
        {
            throw ConfigError(std::string("no traffic profile for role ") + ToString(node.role));
        }
        it->second.Validate();
        if (EligibleDestinations(net, node.id, it->second.destination).empty())
        {
            throw ConfigError(std::string("traffic.") + ToString(node.role) + ".destination: rule " +
                              ToString(it->second.destination) + " has no eligible destination in a " +
                              ToString(net.Kind()) + " topology");
        }
    }
}

std::string
Scenario::Canonical() const
{
    std::ostringstream os;
    os.precision(17);
    os << "name=" << name << "\n";
    os << "topology.kind=" << ToString(topology.kind) << "\n";
    switch (topology.kind)
    {
    case TopologyKind::Star:
        os << "topology.end_devices=" << topology.endDevices << "\n";
        break;
    case TopologyKind::Cluster:
        os << "topology.coordinators=" << topology.coordinators << "\n";
        os << "topology.end_devices_per_cluster=" << topology.endDevicesPerCluster << "\n";
        break;
    case TopologyKind::Ring:
        os << "topology.devices=" << topology.ringDevices << "\n";
        break;
    }
    os << "phy.data_rate=" << phy.dataRate << "\n";
    os << "phy.frequency_band=" << phy.frequencyBand << "\n";
    os << "phy.symbol_rate=" << phy.symbolRate << "\n";
    os << "phy.overhead_bits=" << phy.overheadBits << "\n";
    os << "phy.ack_frame_bits=" << phy.ackFrameBits << "\n";
    os << "mac.ack_wait_duration=" << mac.ackWaitDuration << "\n";
    os << "mac.max_retransmissions=" << mac.maxRetransmissions << "\n";
    os << "mac.min_backoff_exponent=" << mac.minBackoffExponent << "\n";
    os << "mac.max_backoff_exponent=" << mac.maxBackoffExponent << "\n";
    os << "mac.max_csma_backoffs=" << mac.maxCsmaBackoffs << "\n";
    os << "mac.channel_sensing_duration=" << mac.channelSensingDuration << "\n";
    os << "mac.unit_backoff_period=" << mac.unitBackoffPeriod << "\n";
    os << "mac.queue_capacity=" << mac.queueCapacity << "\n";
    os << "mac.ack_turnaround=" << mac.ackTurnaround << "\n";
    os << "ring.token_hold_timeout=" << ring.tokenHoldTimeout << "\n";
    os << "ring.token_queue_timeout=" << ring.tokenQueueTimeout << "\n";
    os << "traffic.max_payload_bits=" << maxPayloadBits << "\n";
    for (const auto& [role, p] : profiles)
    {
        const std::string prefix = std::string("traffic.") + ToString(role) + ".";
        os << prefix << "interarrival=" << p.interarrival.ToString() << "\n";
        os << prefix << "packet_size=" << p.packetSize.ToString() << "\n";
        os << prefix << "start_time=" << p.startTime.ToString() << "\n";
        os << prefix << "stop_time=" << p.stopTime << "\n";
        os << prefix << "destination=" << ToString(p.destination) << "\n";
    }
    os << "run.duration=" << duration << "\n";
    os << "run.warmup=" << warmup << "\n";
    os << "run.bucket_width=" << bucketWidth << "\n";
    os << "run.seed=" << seed << "\n";
    os << "flags.shared_channel=" << flags.sharedChannel << "\n";
    os << "flags.strict_sizes=" << flags.strictSizes << "\n";
    os << "flags.double_cca=" << flags.doubleCca << "\n";
    return os.str();
}

uint64_t
Scenario::Hash() const
{
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : Canonical())
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace wpansim
