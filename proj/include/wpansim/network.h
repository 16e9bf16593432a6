#ifndef WPANSIM_NETWORK_H
#define WPANSIM_NETWORK_H

#include "wpansim/types.h"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wpansim
{

enum class TopologyKind
{
    Cluster,
    Star,
    Ring,
};

enum class NodeRole
{
    PanCoordinator,
    EndDevice,
};

const char* ToString(TopologyKind kind);
const char* ToString(NodeRole role);

struct NodeSpec
{
    NodeId id{0};
    NodeRole role{NodeRole::EndDevice};
    /// Index of the owning cluster; -1 outside the cluster topology.
    int clusterId{-1};
    /// Radios: one per channel the node is attached to.
    std::vector<ChannelId> channels;
};

/**
 * Logical topology: node roles, links, channel assignment and the
 * next-hop rule.
 *
 * Node numbering: star puts the coordinator at 0 and end devices at
 * 1..N. Cluster puts coordinators at 0..C-1 followed by the end devices
 * of cluster 0, then cluster 1, and so on. Ring nodes are 0..N-1 in ring
 * order.
 */
class Network
{
  public:
    static Network BuildStar(uint32_t numEndDevices);
    /// Cluster c uses channel c; coordinators additionally share channel C (the backbone),
    /// unless `sharedChannel` puts everything on channel 0.
    static Network BuildCluster(uint32_t coordinators, uint32_t endDevicesPerCluster, bool sharedChannel = false);
    static Network BuildRing(uint32_t numDevices);

    TopologyKind Kind() const
    {
        return m_kind;
    }

    const std::vector<NodeSpec>& Nodes() const
    {
        return m_nodes;
    }

    const NodeSpec& Node(NodeId id) const;
    bool Contains(NodeId id) const;
    std::size_t Size() const
    {
        return m_nodes.size();
    }

    /// Undirected logical links, each listed once with first < second.
    const std::vector<std::pair<NodeId, NodeId>>& Edges() const
    {
        return m_edges;
    }

    bool Adjacent(NodeId a, NodeId b) const;

    /// Channel carrying the link a-b. Throws EngineFault if not adjacent.
    ChannelId LinkChannel(NodeId a, NodeId b) const;

    std::vector<ChannelId> Channels() const;

    /// Next node on the way from `at` to `destination`; nullopt when unreachable.
    std::optional<NodeId> NextHop(NodeId at, NodeId destination) const;

    /// Full path source..destination following NextHop.
    std::vector<NodeId> Path(NodeId source, NodeId destination) const;

    /// Longest path length in hops.
    uint32_t MaxHops() const;

    std::vector<NodeId> Coordinators() const;
    std::vector<NodeId> EndDevices() const;
    /// Coordinator an end device is attached to; nullopt in a ring.
    std::optional<NodeId> CoordinatorOf(NodeId endDevice) const;

    const std::vector<NodeId>& RingOrder() const
    {
        return m_ringOrder;
    }

    NodeId Successor(NodeId node) const;

    /// Multi-line listing of nodes, links and channels.
    std::string Summary() const;

  private:
    void AddEdge(NodeId a, NodeId b, ChannelId channel);

    TopologyKind m_kind{TopologyKind::Star};
    std::vector<NodeSpec> m_nodes;
    std::vector<std::pair<NodeId, NodeId>> m_edges;
    std::map<std::pair<NodeId, NodeId>, ChannelId> m_linkChannel;
    std::vector<NodeId> m_ringOrder;
};

} // namespace wpansim

#endif // WPANSIM_NETWORK_H
