#include "wpansim/network.h"

#include "wpansim/errors.h"

#include <algorithm>
#include <set>
#include <sstream>

namespace wpansim
{

const char*
ToString(TopologyKind kind)
{
    switch (kind)
    {
    case TopologyKind::Cluster:
        return "cluster";
    case TopologyKind::Star:
        return "star";
    case TopologyKind::Ring:
        return "ring";
    }
    return "unknown";
}

const char*
ToString(NodeRole role)
{
    return role == NodeRole::PanCoordinator ? "pan_coordinator" : "end_device";
}

void
Network::AddEdge(NodeId a, NodeId b, ChannelId channel)
{
    auto key = std::minmax(a, b);
    m_edges.emplace_back(key.first, key.second);
    m_linkChannel[{key.first, key.second}] = channel;
}

Network
Network::BuildStar(uint32_t numEndDevices)
{
    if (numEndDevices == 0)
    {
        throw ConfigError("star topology needs at least one end device");
    }
    Network net;
    net.m_kind = TopologyKind::Star;
    const ChannelId ch{0};
    net.m_nodes.push_back(NodeSpec{0, NodeRole::PanCoordinator, -1, {ch}});
    for (NodeId i = 1; i <= numEndDevices; ++i)
    {
        net.m_nodes.push_back(NodeSpec{i, NodeRole::EndDevice, -1, {ch}});
        net.AddEdge(0, i, ch);
    }
    return net;
}

Network
Network::BuildCluster(uint32_t coordinators, uint32_t endDevicesPerCluster, bool sharedChannel)
{
    if (coordinators < 2)
    {
        throw ConfigError("cluster topology needs at least two coordinators");
    }
    if (endDevicesPerCluster == 0)
    {
        throw ConfigError("cluster topology needs at least one end device per cluster");
    }
    if (coordinators > 0xfffe)
    {
        throw ConfigError("too many clusters");
    }
    Network net;
    net.m_kind = TopologyKind::Cluster;
    const ChannelId backbone{static_cast<uint16_t>(sharedChannel ? 0 : coordinators)};
    auto intra = [&](uint32_t cluster) {
        return ChannelId{static_cast<uint16_t>(sharedChannel ? 0 : cluster)};
    };

    for (NodeId c = 0; c < coordinators; ++c)
    {
        NodeSpec spec{c, NodeRole::PanCoordinator, static_cast<int>(c), {intra(c)}};
        if (backbone != intra(c))
        {
            spec.channels.push_back(backbone);
        }
        net.m_nodes.push_back(spec);
    }
    NodeId next = coordinators;
    for (uint32_t c = 0; c < coordinators; ++c)
    {
        for (uint32_t k = 0; k < endDevicesPerCluster; ++k)
        {
            net.m_nodes.push_back(NodeSpec{next, NodeRole::EndDevice, static_cast<int>(c), {intra(c)}});
            net.AddEdge(c, next, intra(c));
            ++next;
        }
    }
    for (NodeId a = 0; a < coordinators; ++a)
    {
        for (NodeId b = a + 1; b < coordinators; ++b)
        {
            net.AddEdge(a, b, backbone);
        }
    }
    return net;
}

Network
Network::BuildRing(uint32_t numDevices)
{
    if (numDevices < 3)
    {
        throw ConfigError("ring topology needs at least three devices");
    }
    Network net;
    net.m_kind = TopologyKind::Ring;
    const ChannelId ch{0};
    for (NodeId i = 0; i < numDevices; ++i)
    {
        net.m_nodes.push_back(NodeSpec{i, NodeRole::EndDevice, -1, {ch}});
        net.m_ringOrder.push_back(i);
    }
    for (NodeId i = 0; i < numDevices; ++i)
    {
        net.AddEdge(i, (i + 1) % numDevices, ch);
    }
    return net;
}

const NodeSpec&
Network::Node(NodeId id) const
{
    if (!Contains(id))
    {
        throw EngineFault("unknown node " + std::to_string(id));
    }
    return m_nodes[id];
}

bool
Network::Contains(NodeId id) const
{
    return id < m_nodes.size();
}

bool
Network::Adjacent(NodeId a, NodeId b) const
{
    auto key = std::minmax(a, b);
    return m_linkChannel.contains({key.first, key.second});
}

ChannelId
Network::LinkChannel(NodeId a, NodeId b) const
{
    auto key = std::minmax(a, b);
    auto it = m_linkChannel.find({key.first, key.second});
    if (it == m_linkChannel.end())
    {
        throw EngineFault("no link between " + std::to_string(a) + " and " + std::to_string(b));
    }
    return it->second;
}

std::vector<ChannelId>
Network::Channels() const
{
    std::set<ChannelId> channels;
    for (const auto& n : m_nodes)
    {
        channels.insert(n.channels.begin(), n.channels.end());
    }
    return {channels.begin(), channels.end()};
}

std::optional<NodeId>
Network::NextHop(NodeId at, NodeId destination) const
{
    if (!Contains(at) || !Contains(destination) || at == destination)
    {
        return std::nullopt;
    }
    const NodeSpec& here = m_nodes[at];
    switch (m_kind)
    {
    case TopologyKind::Star:
        return here.role == NodeRole::EndDevice ? NodeId{0} : destination;
    case TopologyKind::Cluster: {
        if (here.role == NodeRole::EndDevice)
        {
            return static_cast<NodeId>(here.clusterId);
        }
        const NodeSpec& dest = m_nodes[destination];
        if (dest.role == NodeRole::PanCoordinator || dest.clusterId == here.clusterId)
        {
            return destination;
        }
        return static_cast<NodeId>(dest.clusterId);
    }
    case TopologyKind::Ring:
        return Successor(at);
    }
    return std::nullopt;
}

std::vector<NodeId>
Network::Path(NodeId source, NodeId destination) const
{
    std::vector<NodeId> path{source};
    NodeId at = source;
    while (at != destination)
    {
        auto next = NextHop(at, destination);
        if (!next || path.size() > m_nodes.size())
        {
            return {};
        }
        at = *next;
        path.push_back(at);
    }
    return path;
}

uint32_t
Network::MaxHops() const
{
    switch (m_kind)
    {
    case TopologyKind::Star:
        return m_nodes.size() > 2 ? 2 : 1;
    case TopologyKind::Cluster:
        return 3;
    case TopologyKind::Ring:
        return static_cast<uint32_t>(m_nodes.size() - 1);
    }
    return 0;
}

std::vector<NodeId>
Network::Coordinators() const
{
    std::vector<NodeId> out;
    for (const auto& n : m_nodes)
    {
        if (n.role == NodeRole::PanCoordinator)
        {
            out.push_back(n.id);
        }
    }
    return out;
}

std::vector<NodeId>
Network::EndDevices() const
{
    std::vector<NodeId> out;
    for (const auto& n : m_nodes)
    {
        if (n.role == NodeRole::EndDevice)
        {
            out.push_back(n.id);
        }
    }
    return out;
}

std::optional<NodeId>
Network::CoordinatorOf(NodeId endDevice) const
{
    const NodeSpec& n = Node(endDevice);
    if (n.role != NodeRole::EndDevice)
    {
        return std::nullopt;
    }
    switch (m_kind)
    {
    case TopologyKind::Star:
        return NodeId{0};
    case TopologyKind::Cluster:
        return static_cast<NodeId>(n.clusterId);
    case TopologyKind::Ring:
        return std::nullopt;
    }
    return std::nullopt;
}

NodeId
Network::Successor(NodeId node) const
{
    if (m_kind != TopologyKind::Ring)
    {
        throw EngineFault("successor is only defined on a ring");
    }
    return static_cast<NodeId>((node + 1) % m_nodes.size());
}

std::string
Network::Summary() const
{
    std::ostringstream os;
    os << "topology=" << ToString(m_kind) << " nodes=" << m_nodes.size()
       << " edges=" << m_edges.size() << " channels=" << Channels().size() << "\n";
    for (const auto& n : m_nodes)
    {
        os << "  node " << n.id << " role=" << ToString(n.role);
        if (n.clusterId >= 0)
        {
            os << " cluster=" << n.clusterId;
        }
        os << " channels=";
        for (std::size_t i = 0; i < n.channels.size(); ++i)
        {
            os << (i ? "," : "") << n.channels[i].index;
        }
        os << "\n";
    }
    for (const auto& [a, b] : m_edges)
    {
        os << "  link " << a << "-" << b << " ch=" << LinkChannel(a, b).index << "\n";
    }
    return os.str();
}

} // namespace wpansim
