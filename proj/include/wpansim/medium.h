#ifndef WPANSIM_MEDIUM_H
#define WPANSIM_MEDIUM_H

#include "wpansim/frame.h"
#include "wpansim/sim-time.h"
#include "wpansim/simulator.h"
#include "wpansim/types.h"

#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace wpansim
{

struct PhyParams
{
    double dataRate{250000.0};
    std::string frequencyBand{"2.4 GHz"};
    double symbolRate{62500.0};
    /// PHY and MAC framing bits added to every data payload.
    uint32_t overheadBits{152};
    /// Total on-air size of an acknowledgement.
    uint32_t ackFrameBits{88};

    void Validate() const;
};

/// Air time of a frame: (payload + overhead) / rate for data, ackFrameBits / rate for ACKs.
SimTime TransmissionDuration(const Frame& frame, const PhyParams& phy);
SimTime BitsDuration(uint64_t bits, const PhyParams& phy);

enum class ChannelState
{
    Idle,
    Busy,
};

struct TransmissionRecord
{
    uint64_t id{0};
    ChannelId channel;
    NodeId sender{0};
    Frame frame;
    SimTime start;
    SimTime end;
    bool collided{false};
};

/// Radio attached to one channel of the medium.
class PhyListener
{
  public:
    virtual ~PhyListener() = default;
    /// An intact frame from another radio on the same channel.
    virtual void PhyReceive(const Frame& frame, ChannelId channel) = 0;
    /// The listener's own transmission has left the air.
    virtual void PhyTransmitEnd(const TransmissionRecord& record) = 0;
};

struct MediumStats
{
    uint64_t transmissions{0};
    uint64_t collidedTransmissions{0};
};

/**
 * Shared logical radio medium.
 *
 * Propagation is instantaneous and sensing is perfect: every radio on a
 * channel hears every other. Transmissions on a channel that overlap in
 * time by any amount are all lost at every receiver (no capture). Channels
 * never interact.
 */
class Medium
{
  public:
    Medium(Simulator& sim, PhyParams phy);

    Medium(const Medium&) = delete;
    Medium& operator=(const Medium&) = delete;

    void Attach(ChannelId channel, NodeId node, PhyListener* listener);

    /// Busy iff a transmission on `channel` overlaps [t, t + duration).
    ChannelState CarrierSense(ChannelId channel, SimTime t, SimTime duration) const;

    /**
     * Puts `frame` on the air at Now(). The end of the record is delivered
     * through ResolveDelivery() by an engine event. Throws EngineFault if
     * `sender` is already transmitting on `channel`.
     */
    const TransmissionRecord& BeginTransmission(ChannelId channel, NodeId sender, Frame frame);

    bool IsTransmitting(ChannelId channel, NodeId sender) const;

    /// Nodes that receive `record` intact: every other listener unless it collided.
    std::vector<NodeId> ResolveDelivery(const TransmissionRecord& record) const;

    std::vector<NodeId> Listeners(ChannelId channel) const;

    /// Ended transmissions are kept this long for carrier-sense look-back.
    void SetHistoryHorizon(SimTime horizon)
    {
        m_horizon = horizon;
    }

    const PhyParams& Params() const
    {
        return m_phy;
    }

    const MediumStats& Stats() const
    {
        return m_stats;
    }

  private:
    struct Attachment
    {
        NodeId node;
        PhyListener* listener;
    };

    struct ChannelData
    {
        std::vector<Attachment> attachments;
        std::deque<TransmissionRecord> records; // ordered by start
    };

    void Finish(ChannelId channel, uint64_t recordId);
    void Prune(ChannelData& data);
    TransmissionRecord* FindRecord(ChannelData& data, uint64_t recordId);

    Simulator& m_sim;
    PhyParams m_phy;
    SimTime m_horizon{SimTime::FromSeconds(1.0)};
    uint64_t m_nextRecord{1};
    std::map<ChannelId, ChannelData> m_channels;
    std::set<std::pair<ChannelId, NodeId>> m_activeSenders;
    MediumStats m_stats;
};

} // namespace wpansim

#endif // WPANSIM_MEDIUM_H
