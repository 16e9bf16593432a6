#include "wpansim/csma-mac.h"

#include "wpansim/errors.h"

#include <algorithm>

namespace wpansim
{

const char*
ToString(DropCause cause)
{
    switch (cause)
    {
    case DropCause::ChannelAccessFailure:
        return "ChannelAccessFailure";
    case DropCause::RetryExhausted:
        return "RetryExhausted";
    case DropCause::QueueOverflow:
        return "QueueOverflow";
    case DropCause::TokenStarvation:
        return "TokenStarvation";
    case DropCause::NoRoute:
        return "NoRoute";
    }
    return "Unknown";
}

void
MacParams::Validate() const
{
    if (minBackoffExponent == 0 || minBackoffExponent > maxBackoffExponent ||
        maxBackoffExponent > 8)
    {
        throw ConfigError("mac: require 0 < min_backoff_exponent <= max_backoff_exponent <= 8");
    }
    if (ackWaitDuration <= SimTime::Zero() || channelSensingDuration <= SimTime::Zero() ||
        unitBackoffPeriod <= SimTime::Zero() || ackTurnaround < SimTime::Zero())
    {
        throw ConfigError("mac: durations must be > 0");
    }
    if (queueCapacity == 0)
    {
        throw ConfigError("mac.queue_capacity must be >= 1");
    }
}

const char*
ToString(FrameKind kind)
{
    switch (kind)
    {
    case FrameKind::Data:
        return "data";
    case FrameKind::Ack:
        return "ack";
    case FrameKind::Token:
        return "token";
    }
    return "unknown";
}

const char*
ToString(MacState state)
{
    switch (state)
    {
    case MacState::Init:
        return "Init";
    case MacState::Idle:
        return "Idle";
    case MacState::Scanning:
        return "Scanning";
    case MacState::Active:
        return "Active";
    }
    return "Unknown";
}

bool
IsLegalTransition(MacState from, MacState to)
{
    switch (from)
    {
    case MacState::Init:
        return to == MacState::Idle;
    case MacState::Idle:
        return to == MacState::Scanning;
    case MacState::Scanning:
        return to == MacState::Active || to == MacState::Idle;
    case MacState::Active:
        return to == MacState::Idle;
    }
    return false;
}

CsmaMac::CsmaMac(Simulator& sim,
                 Medium& medium,
                 NodeId node,
                 ChannelId channel,
                 MacParams params,
                 RandomStream backoffStream,
                 MacUser* user,
                 Tracer* tracer)
    : m_sim(sim),
      m_medium(medium),
      m_node(node),
      m_channel(channel),
      m_params(params),
      m_backoff(backoffStream),
      m_user(user),
      m_tracer(tracer)
{
    m_params.Validate();
}

void
CsmaMac::Start()
{
    m_medium.Attach(m_channel, m_node, this);
    SetState(MacState::Idle);
}

void
CsmaMac::SetQueueTimeout(SimTime timeout, DropCause cause)
{
    m_queueTimeout = timeout;
    m_queueTimeoutCause = cause;
}

std::optional<TxAttempt>
CsmaMac::CurrentAttempt() const
{
    if (!m_inService)
    {
        return std::nullopt;
    }
    return m_attempt;
}

TraceRecord
CsmaMac::Record(TraceKind kind) const
{
    TraceRecord r;
    r.time = m_sim.Now();
    r.node = m_node;
    r.kind = kind;
    r.channel = m_channel.index;
    return r;
}

void
CsmaMac::Trace(TraceRecord record)
{
    if (m_tracer != nullptr)
    {
        m_tracer->Emit(std::move(record));
    }
}

void
CsmaMac::SetState(MacState next)
{
    if (!IsLegalTransition(m_state, next))
    {
        throw EngineFault(std::string("illegal MAC transition ") + ToString(m_state) + " -> " +
                          ToString(next) + " at node " + std::to_string(m_node));
    }
    auto r = Record(TraceKind::State);
    r.note = std::string(ToString(m_state)) + "->" + ToString(next);
    m_state = next;
    Trace(std::move(r));
}

EnqueueResult
CsmaMac::Enqueue(Frame frame)
{
    if (m_state == MacState::Init)
    {
        throw EngineFault("enqueue before MAC start at node " + std::to_string(m_node));
    }
    if (m_queue.size() >= m_params.queueCapacity)
    {
        ++m_counters.queueOverflows;
        return EnqueueResult::QueueOverflow;
    }
    QueuedFrame entry{std::move(frame), m_sim.Now(), m_nextEntry++, EventId{}};
    auto r = Record(TraceKind::Enqueue);
    r.frameId = entry.frame.id;
    r.value = static_cast<int64_t>(m_queue.size() + 1);
    Trace(std::move(r));
    if (m_queueTimeout)
    {
        const uint64_t id = entry.entry;
        entry.timeout = m_sim.ScheduleIn(*m_queueTimeout, EventKind::Timer, static_cast<int32_t>(m_node), [this, id]() {
            ExpireQueued(id);
        });
    }
    m_queue.push_back(std::move(entry));
    Kick();
    return EnqueueResult::Accepted;
}

void
CsmaMac::ExpireQueued(uint64_t entry)
{
    auto it = std::find_if(m_queue.begin(), m_queue.end(), [entry](const QueuedFrame& q) {
        return q.entry == entry;
    });
    if (it == m_queue.end())
    {
        return;
    }
    if (m_inService && !m_tokenInService && it == m_queue.begin())
    {
        return; // once in service the frame keeps its place
    }
    Frame frame = std::move(it->frame);
    m_queue.erase(it);
    ++m_counters.queueTimeouts;
    m_user->MacQueueDrop(frame, m_queueTimeoutCause);
}

void
CsmaMac::SendToken(Frame token)
{
    if (m_token)
    {
        throw EngineFault("node " + std::to_string(m_node) + " already has a token to send");
    }
    token.kind = FrameKind::Token;
    m_token = std::move(token);
    Kick();
}

const Frame&
CsmaMac::ServiceFrame() const
{
    return m_tokenInService ? *m_token : m_queue.front().frame;
}

void
CsmaMac::Kick()
{
    if (m_state != MacState::Idle || m_inService)
    {
        return;
    }
    if (m_token)
    {
        m_inService = true;
        m_tokenInService = true;
        m_attempt = TxAttempt{0, m_params.minBackoffExponent, 0, 0};
        Backoff();
        return;
    }
    if (m_queue.empty())
    {
        return;
    }
    if (m_gate != nullptr && !m_gate->MayInitiate(m_node))
    {
        return;
    }
    auto& head = m_queue.front();
    m_sim.Cancel(head.timeout);
    m_inService = true;
    if (m_gate != nullptr)
    {
        m_gate->ExchangeStarted(m_node);
    }
    m_attempt = TxAttempt{head.frame.id, m_params.minBackoffExponent, 0, 0};
    Backoff();
}

void
CsmaMac::Backoff()
{
    const uint64_t window = uint64_t{1} << m_attempt.backoffExponent;
    const auto slots = static_cast<int64_t>(m_backoff.NextBelow(window));
    const SimTime senseAt =
        AlignUp(m_sim.Now(), m_params.unitBackoffPeriod) + m_params.unitBackoffPeriod * slots;

    auto r = Record(TraceKind::Backoff);
    r.frameId = m_attempt.frame;
    r.backoffExponent = static_cast<int>(m_attempt.backoffExponent);
    r.csmaBackoffs = static_cast<int>(m_attempt.csmaBackoffs);
    r.retransmissions = static_cast<int>(m_attempt.retransmissions);
    r.value = slots;
    r.start = senseAt;
    Trace(std::move(r));

    m_ccaRemaining = m_params.doubleCca ? 2 : 1;
    m_sim.Schedule(senseAt, EventKind::Timer, static_cast<int32_t>(m_node), [this]() {
        SetState(MacState::Scanning);
        StartSensing();
    });
}

void
CsmaMac::StartSensing()
{
    m_senseStart = m_sim.Now();
    auto r = Record(TraceKind::SenseStart);
    r.frameId = m_attempt.frame;
    r.backoffExponent = static_cast<int>(m_attempt.backoffExponent);
    r.csmaBackoffs = static_cast<int>(m_attempt.csmaBackoffs);
    Trace(std::move(r));
    m_sim.ScheduleIn(m_params.channelSensingDuration, EventKind::Timer, static_cast<int32_t>(m_node), [this]() {
        EndSensing();
    });
}

void
CsmaMac::EndSensing()
{
    const bool busy = m_medium.CarrierSense(m_channel, m_senseStart, m_params.channelSensingDuration) ==
                      ChannelState::Busy;
    auto r = Record(TraceKind::SenseEnd);
    r.frameId = m_attempt.frame;
    r.backoffExponent = static_cast<int>(m_attempt.backoffExponent);
    r.csmaBackoffs = static_cast<int>(m_attempt.csmaBackoffs);
    r.flag = busy;
    Trace(std::move(r));

    const SimTime nextSlot = AlignUp(m_sim.Now(), m_params.unitBackoffPeriod);
    if (busy)
    {
        ++m_attempt.csmaBackoffs;
        m_attempt.backoffExponent =
            std::min(m_attempt.backoffExponent + 1, m_params.maxBackoffExponent);
        SetState(MacState::Idle);
        if (m_attempt.csmaBackoffs > m_params.maxCsmaBackoffs)
        {
            if (m_tokenInService)
            {
                m_attempt.backoffExponent = m_params.minBackoffExponent;
                m_attempt.csmaBackoffs = 0;
                Backoff();
                return;
            }
            EndExchange(ExchangeOutcome::ChannelAccessFailure);
            return;
        }
        Backoff();
        return;
    }
    if (--m_ccaRemaining > 0)
    {
        m_sim.Schedule(nextSlot, EventKind::Timer, static_cast<int32_t>(m_node), [this]() {
            StartSensing();
        });
        return;
    }
    SetState(MacState::Active);
    m_sim.Schedule(nextSlot, EventKind::TransmissionStart, static_cast<int32_t>(m_node), [this]() {
        StartTransmission();
    });
}

void
CsmaMac::StartTransmission()
{
    if (m_medium.IsTransmitting(m_channel, m_node))
    {
        // An ACK reply is still on the air; go at the first boundary after it.
        m_sim.Schedule(AlignUp(m_radioFreeAt, m_params.unitBackoffPeriod),
                       EventKind::TransmissionStart,
                       static_cast<int32_t>(m_node),
                       [this]() { StartTransmission(); });
        return;
    }
    const Frame& frame = ServiceFrame();
    const auto& record = m_medium.BeginTransmission(m_channel, m_node, frame);
    m_radioFreeAt = record.end;
    if (frame.kind == FrameKind::Token)
    {
        ++m_counters.tokenTransmissions;
    }
    else
    {
        ++m_counters.dataTransmissions;
    }

    auto r = Record(TraceKind::TxStart);
    r.frameId = frame.id;
    r.backoffExponent = static_cast<int>(m_attempt.backoffExponent);
    r.csmaBackoffs = static_cast<int>(m_attempt.csmaBackoffs);
    r.retransmissions = static_cast<int>(m_attempt.retransmissions);
    r.value = frame.payloadBits;
    r.start = record.start;
    r.end = record.end;
    r.note = frame.kind == FrameKind::Token ? "token" : "data";
    Trace(std::move(r));
}

void
CsmaMac::PhyTransmitEnd(const TransmissionRecord& record)
{
    auto r = Record(TraceKind::TxEnd);
    r.frameId = record.frame.kind == FrameKind::Ack ? record.frame.ackFor : record.frame.id;
    r.flag = !record.collided;
    r.start = record.start;
    r.end = record.end;
    r.note = ToString(record.frame.kind);
    Trace(std::move(r));

    if (record.frame.kind == FrameKind::Token)
    {
        EndTokenPass();
        return;
    }
    if (record.frame.kind != FrameKind::Data)
    {
        return;
    }
    m_awaitingAck = true;
    m_ackTimer = m_sim.ScheduleIn(m_params.ackWaitDuration, EventKind::Timer, static_cast<int32_t>(m_node), [this]() {
        AckTimeout();
    });
}

void
CsmaMac::AckTimeout()
{
    m_ackTimer = EventId{};
    m_awaitingAck = false;
    ++m_attempt.retransmissions;

    auto r = Record(TraceKind::AckTimeout);
    r.frameId = m_attempt.frame;
    r.retransmissions = static_cast<int>(m_attempt.retransmissions);
    Trace(std::move(r));

    if (m_attempt.retransmissions > m_params.maxRetransmissions)
    {
        EndExchange(ExchangeOutcome::RetryExhausted);
        return;
    }
    SetState(MacState::Idle);
    m_attempt.backoffExponent = m_params.minBackoffExponent;
    m_attempt.csmaBackoffs = 0;
    Backoff();
}

void
CsmaMac::PhyReceive(const Frame& frame, ChannelId channel)
{
    if (frame.kind == FrameKind::Data)
    {
        m_user->MacReceived(frame, channel);
        if (frame.nextHop != m_node)
        {
            return;
        }
        auto r = Record(TraceKind::Receive);
        r.frameId = frame.id;
        r.value = frame.transmitter;
        r.note = "data";
        Trace(std::move(r));

        Frame ack;
        ack.kind = FrameKind::Ack;
        ack.id = 0;
        ack.ackFor = frame.id;
        ack.source = m_node;
        ack.transmitter = m_node;
        ack.finalDestination = frame.transmitter;
        ack.nextHop = frame.transmitter;
        ack.createdAt = m_sim.Now();
        const SimTime at =
            AlignUp(m_sim.Now() + m_params.ackTurnaround, m_params.unitBackoffPeriod);
        m_sim.Schedule(at, EventKind::TransmissionStart, static_cast<int32_t>(m_node), [this, ack]() {
            SendAck(ack);
        });
        m_user->MacDataIndication(frame, channel);
        return;
    }

    if (frame.nextHop != m_node)
    {
        return;
    }
    if (frame.kind == FrameKind::Token)
    {
        auto r = Record(TraceKind::Receive);
        r.value = frame.transmitter;
        r.note = "token";
        Trace(std::move(r));
        m_user->MacTokenIndication(frame);
        return;
    }
    if (m_awaitingAck && m_inService && frame.ackFor == m_attempt.frame &&
        frame.transmitter == m_queue.front().frame.nextHop)
    {
        m_sim.Cancel(m_ackTimer);
        m_awaitingAck = false;
        ++m_counters.acked;
        EndExchange(ExchangeOutcome::Acked);
    }
    else
    {
        ++m_counters.strayAcks;
    }
}

void
CsmaMac::SendAck(Frame ack)
{
    if (m_medium.IsTransmitting(m_channel, m_node))
    {
        m_sim.Schedule(AlignUp(m_radioFreeAt, m_params.unitBackoffPeriod),
                       EventKind::TransmissionStart,
                       static_cast<int32_t>(m_node),
                       [this, ack]() { SendAck(ack); });
        return;
    }
    const auto& record = m_medium.BeginTransmission(m_channel, m_node, ack);
    m_radioFreeAt = record.end;
    ++m_counters.ackTransmissions;

    auto r = Record(TraceKind::TxStart);
    r.frameId = ack.ackFor;
    r.value = 0;
    r.start = record.start;
    r.end = record.end;
    r.note = "ack";
    Trace(std::move(r));
}

void
CsmaMac::EndExchange(ExchangeOutcome outcome)
{
    if (m_state != MacState::Idle)
    {
        SetState(MacState::Idle);
    }
    Frame frame = std::move(m_queue.front().frame);
    m_queue.pop_front();
    m_inService = false;

    if (outcome == ExchangeOutcome::ChannelAccessFailure)
    {
        ++m_counters.accessFailures;
    }
    else if (outcome == ExchangeOutcome::RetryExhausted)
    {
        ++m_counters.retryExhausted;
    }
    auto r = Record(outcome == ExchangeOutcome::Acked ? TraceKind::Acked : TraceKind::GiveUp);
    r.frameId = frame.id;
    r.retransmissions = static_cast<int>(m_attempt.retransmissions);
    r.csmaBackoffs = static_cast<int>(m_attempt.csmaBackoffs);
    if (outcome == ExchangeOutcome::ChannelAccessFailure)
    {
        r.note = ToString(DropCause::ChannelAccessFailure);
    }
    else if (outcome == ExchangeOutcome::RetryExhausted)
    {
        r.note = ToString(DropCause::RetryExhausted);
    }
    Trace(std::move(r));

    m_user->MacExchangeComplete(frame, outcome);
    m_sim.ScheduleIn(SimTime::Zero(), EventKind::Control, static_cast<int32_t>(m_node), [this]() {
        Kick();
    });
}

void
CsmaMac::EndTokenPass()
{
    SetState(MacState::Idle);
    Frame token = std::move(*m_token);
    m_token.reset();
    m_tokenInService = false;
    m_inService = false;
    m_user->MacTokenSent(token);
    m_sim.ScheduleIn(SimTime::Zero(), EventKind::Control, static_cast<int32_t>(m_node), [this]() {
        Kick();
    });
}

} // namespace wpansim
