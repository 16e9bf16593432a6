#ifndef WPANSIM_TRAFFIC_H
#define WPANSIM_TRAFFIC_H

#include "wpansim/distribution.h"
#include "wpansim/frame.h"
#include "wpansim/network.h"
#include "wpansim/random-stream.h"
#include "wpansim/simulator.h"

#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

namespace wpansim
{

enum class DestinationRule
{
    /// The node's own PAN coordinator.
    PanCoord,
    /// Uniform over every coordinator other than the node itself.
    AllCoordinators,
    /// Uniform over every end device other than the node itself.
    AllNodes,
    /// Cyclic successor on the ring.
    ImmediateNext,
};

const char* ToString(DestinationRule rule);
/// Accepts pan_coord, all_coordinators, all_nodes, immediate_next.
DestinationRule ParseDestinationRule(const std::string& text);

struct TrafficProfile
{
    /// Seconds between packets.
    Distribution interarrival{Distribution::Exponential(1.0)};
    /// Payload size in bits.
    Distribution packetSize{Distribution::Exponential(1024.0)};
    /// Time of the first packet, seconds.
    Distribution startTime{Distribution::Exponential(1.0)};
    SimTime stopTime{SimTime::Infinity()};
    DestinationRule destination{DestinationRule::PanCoord};

    void Validate() const;
};

struct SizePolicy
{
    uint32_t minPayloadBits{8};
    /// 127-byte PSDU.
    uint32_t maxPayloadBits{1016};
    /// When set only the lower bound applies.
    bool strict{false};
};

/// round(sample) clamped to the policy bounds.
uint32_t SamplePayloadBits(const Distribution& size, RandomStream& stream, const SizePolicy& policy);

/// Eligible destinations for `node` under `rule`; empty when none.
std::vector<NodeId> EligibleDestinations(const Network& net, NodeId node, DestinationRule rule);

/**
 * Picks a destination for one packet. A single eligible node is returned
 * without consuming randomness. Throws ConfigError for an empty set.
 */
NodeId ChooseDestination(const Network& net, NodeId node, DestinationRule rule, RandomStream& stream);

/**
 * Application source of one node.
 *
 * The first packet is created at a sample of startTime, later ones after
 * interarrival samples, until stopTime.
 */
class TrafficGenerator
{
  public:
    using Emit = std::function<void(Frame)>;

    TrafficGenerator(Simulator& sim,
                     const Network& net,
                     NodeId node,
                     TrafficProfile profile,
                     SizePolicy sizes,
                     uint64_t seed,
                     FrameIdAllocator& ids,
                     Emit emit);

    void Start();

    uint64_t FramesCreated() const
    {
        return m_created;
    }

    SimTime FirstPacketAt() const
    {
        return m_firstAt;
    }

  private:
    void Generate();

    Simulator& m_sim;
    const Network& m_net;
    NodeId m_node;
    TrafficProfile m_profile;
    SizePolicy m_sizes;
    RandomStream m_interarrival;
    RandomStream m_size;
    RandomStream m_start;
    RandomStream m_destination;
    std::vector<NodeId> m_eligible;
    FrameIdAllocator& m_ids;
    Emit m_emit;
    uint64_t m_created{0};
    SimTime m_firstAt;
};

enum class SinkResult
{
    Delivered,
    Duplicate,
};

/// Terminates frames at their final destination; each frame id counts once.
class ApplicationSink
{
  public:
    SinkResult Receive(const Frame& frame);

    uint64_t Delivered() const
    {
        return m_delivered;
    }

    uint64_t Duplicates() const
    {
        return m_duplicates;
    }

  private:
    std::unordered_set<FrameId> m_seen;
    uint64_t m_delivered{0};
    uint64_t m_duplicates{0};
};

} // namespace wpansim

#endif // WPANSIM_TRAFFIC_H
