#ifndef WPANSIM_CSMA_MAC_H
#define WPANSIM_CSMA_MAC_H

#include "wpansim/frame.h"
#include "wpansim/medium.h"
#include "wpansim/random-stream.h"
#include "wpansim/sim-time.h"
#include "wpansim/simulator.h"
#include "wpansim/trace.h"

#include <deque>
#include <optional>

namespace wpansim
{

struct MacParams
{
    SimTime ackWaitDuration{SimTime::FromMicroseconds(50000)};
    uint32_t maxRetransmissions{5};
    uint32_t minBackoffExponent{3};
    uint32_t maxBackoffExponent{5};
    uint32_t maxCsmaBackoffs{4};
    SimTime channelSensingDuration{SimTime::FromMicroseconds(100000)};
    /// 20 symbols at 62.5 ksymbol/s.
    SimTime unitBackoffPeriod{SimTime::FromMicroseconds(320)};
    uint32_t queueCapacity{64};
    /// 12 symbols.
    SimTime ackTurnaround{SimTime::FromMicroseconds(192)};
    /// Two consecutive clear assessments before transmitting (contention window of 2).
    bool doubleCca{false};

    void Validate() const;
};

/// States of the data-exchange process. ACK replies are sent outside this machine.
enum class MacState : uint8_t
{
    Init,
    Idle,
    Scanning,
    Active,
};

const char* ToString(MacState state);
bool IsLegalTransition(MacState from, MacState to);

struct TxAttempt
{
    FrameId frame{0};
    uint32_t backoffExponent{0};
    uint32_t csmaBackoffs{0};
    uint32_t retransmissions{0};
};

enum class EnqueueResult
{
    Accepted,
    QueueOverflow,
};

enum class ExchangeOutcome
{
    Acked,
    ChannelAccessFailure,
    RetryExhausted,
};

/// Network-layer side of a MAC.
class MacUser
{
  public:
    virtual ~MacUser() = default;
    /// Every intact data frame heard on the channel, whoever it is addressed to.
    virtual void MacReceived(const Frame& frame, ChannelId channel) = 0;
    /// Intact data frame whose next hop is this node; the ACK is already scheduled.
    virtual void MacDataIndication(const Frame& frame, ChannelId channel) = 0;
    /// The head-of-line frame finished its exchange.
    virtual void MacExchangeComplete(const Frame& frame, ExchangeOutcome outcome) = 0;
    /// A queued frame expired before service.
    virtual void MacQueueDrop(const Frame& frame, DropCause cause) = 0;
    /// A token frame addressed to this node arrived intact.
    virtual void MacTokenIndication(const Frame&)
    {
    }
    /// The token frame this node sent has left the radio.
    virtual void MacTokenSent(const Frame&)
    {
    }
};

/// Permission to start a data exchange (used by the ring token).
class AccessGate
{
  public:
    virtual ~AccessGate() = default;
    virtual bool MayInitiate(NodeId node) const = 0;
    /// Called when `node` takes its head-of-line frame into service.
    virtual void ExchangeStarted(NodeId node) = 0;
};

struct MacCounters
{
    uint64_t dataTransmissions{0};
    uint64_t ackTransmissions{0};
    uint64_t tokenTransmissions{0};
    uint64_t acked{0};
    uint64_t strayAcks{0};
    uint64_t accessFailures{0};
    uint64_t retryExhausted{0};
    uint64_t queueOverflows{0};
    uint64_t queueTimeouts{0};
};

/**
 * Slotted CSMA/CA MAC for one radio on one channel.
 *
 * Per frame: BE = minBE, NB = 0; back off U{0..2^BE-1} unit periods from
 * the next slot boundary; sense for channelSensingDuration; if idle,
 * transmit at the next slot boundary, otherwise NB += 1, BE = min(BE+1,
 * maxBE) and retry until NB exceeds maxCsmaBackoffs. A transmitted frame
 * waits ackWaitDuration for its ACK; each timeout restarts the procedure
 * until maxRetransmissions is exceeded. Slot boundaries are multiples of
 * unitBackoffPeriod counted from t=0.
 *
 * A token frame goes through the same backoff and sensing ahead of any
 * queued data, ignores the access gate and expects no ACK; an access
 * failure restarts its procedure rather than losing it.
 */
class CsmaMac : public PhyListener
{
  public:
    CsmaMac(Simulator& sim,
            Medium& medium,
            NodeId node,
            ChannelId channel,
            MacParams params,
            RandomStream backoffStream,
            MacUser* user,
            Tracer* tracer = nullptr);

    CsmaMac(const CsmaMac&) = delete;
    CsmaMac& operator=(const CsmaMac&) = delete;

    /// Init -> Idle. Attaches the radio to the medium.
    void Start();

    /// The frame must already carry transmitter and nextHop.
    EnqueueResult Enqueue(Frame frame);

    /// Starts serving the head-of-line frame if idle and permitted.
    void Kick();

    /// Queues a token frame for transmission before any data.
    void SendToken(Frame token);

    void SetAccessGate(AccessGate* gate)
    {
        m_gate = gate;
    }

    /// Frames still queued (not in service) after `timeout` are dropped with `cause`.
    void SetQueueTimeout(SimTime timeout, DropCause cause);

    bool HasPendingData() const
    {
        return !m_queue.empty();
    }

    bool InService() const
    {
        return m_inService;
    }

    bool TokenPending() const
    {
        return m_token.has_value();
    }

    MacState State() const
    {
        return m_state;
    }

    std::size_t QueueLength() const
    {
        return m_queue.size();
    }

    std::optional<TxAttempt> CurrentAttempt() const;

    const MacCounters& Counters() const
    {
        return m_counters;
    }

    NodeId Node() const
    {
        return m_node;
    }

    ChannelId Channel() const
    {
        return m_channel;
    }

    void PhyReceive(const Frame& frame, ChannelId channel) override;
    void PhyTransmitEnd(const TransmissionRecord& record) override;

  private:
    struct QueuedFrame
    {
        Frame frame;
        SimTime enqueuedAt;
        uint64_t entry;
        EventId timeout;
    };

    void SetState(MacState next);
    void Backoff();
    void StartSensing();
    void EndSensing();
    void StartTransmission();
    void AckTimeout();
    void SendAck(Frame ack);
    void EndExchange(ExchangeOutcome outcome);
    void EndTokenPass();
    const Frame& ServiceFrame() const;
    void ExpireQueued(uint64_t entry);
    TraceRecord Record(TraceKind kind) const;
    void Trace(TraceRecord record);

    Simulator& m_sim;
    Medium& m_medium;
    NodeId m_node;
    ChannelId m_channel;
    MacParams m_params;
    RandomStream m_backoff;
    MacUser* m_user;
    Tracer* m_tracer;
    AccessGate* m_gate{nullptr};

    MacState m_state{MacState::Init};
    std::deque<QueuedFrame> m_queue;
    uint64_t m_nextEntry{1};
    bool m_inService{false};
    std::optional<Frame> m_token;
    bool m_tokenInService{false};
    TxAttempt m_attempt;
    uint32_t m_ccaRemaining{0};
    SimTime m_senseStart;
    bool m_awaitingAck{false};
    EventId m_ackTimer;
    SimTime m_radioFreeAt;

    std::optional<SimTime> m_queueTimeout;
    DropCause m_queueTimeoutCause{DropCause::TokenStarvation};

    MacCounters m_counters;
};

} // namespace wpansim

#endif // WPANSIM_CSMA_MAC_H
