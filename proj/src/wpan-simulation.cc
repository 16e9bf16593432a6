#include "wpansim/wpan-simulation.h"

#include "wpansim/errors.h"
#include "wpansim/traffic.h"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace wpansim
{

/// Network and application layers of one node.
class WpanSimulation::NodeAgent : public MacUser, public TokenClient
{
  public:
    NodeAgent(WpanSimulation& owner, const NodeSpec& spec)
        : m_owner(owner),
          m_spec(spec)
    {
        const Scenario& sc = owner.m_scenario;
        MacParams params = sc.mac;
        params.doubleCca = sc.flags.doubleCca;
        uint32_t radio = 0;
        for (ChannelId ch : spec.channels)
        {
            RandomStream backoff(sc.seed, RandomStream::StreamIdFor(spec.id, StreamPurpose::Backoff, radio++));
            auto mac = std::make_unique<CsmaMac>(owner.m_sim, owner.m_medium, spec.id, ch, params, backoff, this,
                                                 &owner.m_tracer);
            m_macs.emplace(ch, std::move(mac));
        }

        const TrafficProfile& profile = sc.profiles.at(spec.role);
        m_generator = std::make_unique<TrafficGenerator>(owner.m_sim,
                                                         owner.m_network,
                                                         spec.id,
                                                         profile,
                                                         sc.Sizes(),
                                                         sc.seed,
                                                         owner.m_ids,
                                                         [this](Frame f) { SendFromApplication(std::move(f)); });
    }

    void Start()
    {
        for (auto& [ch, mac] : m_macs)
        {
            mac->Start();
            if (m_owner.m_token)
            {
                mac->SetAccessGate(m_owner.m_token.get());
                mac->SetQueueTimeout(m_owner.m_scenario.ring.tokenQueueTimeout, DropCause::TokenStarvation);
            }
        }
        m_generator->Start();
    }

    const CsmaMac* Mac(ChannelId ch) const
    {
        auto it = m_macs.find(ch);
        return it == m_macs.end() ? nullptr : it->second.get();
    }

    void AddCounters(MacCounters& total) const
    {
        for (const auto& [ch, mac] : m_macs)
        {
            const auto& c = mac->Counters();
            total.dataTransmissions += c.dataTransmissions;
            total.ackTransmissions += c.ackTransmissions;
            total.tokenTransmissions += c.tokenTransmissions;
            total.acked += c.acked;
            total.strayAcks += c.strayAcks;
            total.accessFailures += c.accessFailures;
            total.retryExhausted += c.retryExhausted;
            total.queueOverflows += c.queueOverflows;
            total.queueTimeouts += c.queueTimeouts;
        }
    }

    // TokenClient
    void Kick() override
    {
        for (auto& [ch, mac] : m_macs)
        {
            mac->Kick();
        }
    }

    void PassToken(NodeId successor) override
    {
        const ChannelId ch = m_owner.m_network.LinkChannel(m_spec.id, successor);
        Frame token;
        token.kind = FrameKind::Token;
        token.source = m_spec.id;
        token.transmitter = m_spec.id;
        token.finalDestination = successor;
        token.nextHop = successor;
        token.createdAt = m_owner.m_sim.Now();
        m_macs.at(ch)->SendToken(std::move(token));
    }

    // MacUser
    void MacTokenIndication(const Frame&) override
    {
        if (m_owner.m_token)
        {
            m_owner.m_token->TokenArrived(m_spec.id);
        }
    }

    void MacReceived(const Frame& frame, ChannelId) override
    {
        m_owner.m_metrics.RecordHeard(m_spec.id, frame.payloadBits, m_owner.m_sim.Now());
    }

    void MacDataIndication(const Frame& frame, ChannelId) override
    {
        const SimTime now = m_owner.m_sim.Now();
        m_owner.m_metrics.RecordReceived(m_spec.id, frame.payloadBits, now);
        if (frame.finalDestination == m_spec.id)
        {
            if (m_sink.Receive(frame) == SinkResult::Delivered && m_owner.m_ledger.Delivered(frame.id))
            {
                m_owner.m_metrics.RecordSink(m_spec.id, frame.payloadBits, now, now - frame.createdAt);
                TraceRecord r;
                r.time = now;
                r.node = m_spec.id;
                r.kind = TraceKind::Deliver;
                r.frameId = frame.id;
                r.value = frame.payloadBits;
                r.note = HopTraceText(frame);
                m_owner.m_tracer.Emit(std::move(r));
            }
            return;
        }
        if (m_held.contains(frame.id))
        {
            return; // retransmission of a frame this node is already relaying
        }
        Frame copy = frame;
        copy.hopTrace.push_back(m_spec.id);
        m_owner.m_ledger.CopySpawned(copy.id);
        Route(std::move(copy));
    }

    void MacExchangeComplete(const Frame& frame, ExchangeOutcome outcome) override
    {
        m_held.erase(frame.id);
        const SimTime now = m_owner.m_sim.Now();
        switch (outcome)
        {
        case ExchangeOutcome::Acked:
            m_owner.m_ledger.CopyHandedOff(frame.id, now);
            break;
        case ExchangeOutcome::ChannelAccessFailure:
            m_owner.m_ledger.CopyDropped(frame.id, m_spec.id, DropCause::ChannelAccessFailure, now);
            break;
        case ExchangeOutcome::RetryExhausted:
            m_owner.m_ledger.CopyDropped(frame.id, m_spec.id, DropCause::RetryExhausted, now);
            break;
        }
        if (m_owner.m_token)
        {
            m_owner.m_token->OnExchangeComplete(m_spec.id);
        }
    }

    void MacQueueDrop(const Frame& frame, DropCause cause) override
    {
        m_held.erase(frame.id);
        m_owner.m_ledger.CopyDropped(frame.id, m_spec.id, cause, m_owner.m_sim.Now());
    }

  private:
    static std::string HopTraceText(const Frame& frame)
    {
        std::string out;
        for (NodeId n : frame.hopTrace)
        {
            out += (out.empty() ? "" : ">") + std::to_string(n);
        }
        return out + ">" + std::to_string(frame.finalDestination);
    }

    void SendFromApplication(Frame frame)
    {
        const SimTime now = m_owner.m_sim.Now();
        m_owner.m_metrics.RecordSent(m_spec.id, frame.payloadBits, now);
        m_owner.m_ledger.Created(frame.id);
        TraceRecord r;
        r.time = now;
        r.node = m_spec.id;
        r.kind = TraceKind::Generate;
        r.frameId = frame.id;
        r.value = frame.payloadBits;
        r.note = "dst=" + std::to_string(frame.finalDestination);
        m_owner.m_tracer.Emit(std::move(r));
        Route(std::move(frame));
    }

    void Route(Frame frame)
    {
        const SimTime now = m_owner.m_sim.Now();
        auto next = m_owner.m_network.NextHop(m_spec.id, frame.finalDestination);
        if (!next)
        {
            m_owner.m_ledger.CopyDropped(frame.id, m_spec.id, DropCause::NoRoute, now);
            return;
        }
        frame.transmitter = m_spec.id;
        frame.nextHop = *next;
        const ChannelId ch = m_owner.m_network.LinkChannel(m_spec.id, *next);
        auto it = m_macs.find(ch);
        if (it == m_macs.end())
        {
            throw EngineFault("node " + std::to_string(m_spec.id) + " has no radio on channel " +
                              std::to_string(ch.index));
        }
        const FrameId id = frame.id;
        // Mark before enqueueing: Enqueue may start the exchange synchronously.
        m_held.insert(id);
        if (it->second->Enqueue(std::move(frame)) == EnqueueResult::QueueOverflow)
        {
            m_held.erase(id);
            m_owner.m_ledger.CopyDropped(id, m_spec.id, DropCause::QueueOverflow, now);
        }
    }

    WpanSimulation& m_owner;
    NodeSpec m_spec;
    std::map<ChannelId, std::unique_ptr<CsmaMac>> m_macs;
    std::unique_ptr<TrafficGenerator> m_generator;
    ApplicationSink m_sink;
    std::unordered_set<FrameId> m_held;
};

WpanSimulation::WpanSimulation(const Scenario& scenario, Tracer::Sink traceSink)
    : m_scenario(scenario),
      m_network((scenario.Validate(), scenario.BuildNetwork())),
      m_tracer(std::move(traceSink)),
      m_medium(m_sim, scenario.phy),
      m_ledger([this](FrameId id, NodeId node, DropCause cause, SimTime t) {
          m_metrics.RecordDropped(node, cause, t);
          TraceRecord r;
          r.time = t;
          r.node = node;
          r.kind = TraceKind::Drop;
          r.frameId = id;
          r.note = ToString(cause);
          m_tracer.Emit(std::move(r));
      })
{
    SimTime horizon = m_scenario.mac.channelSensingDuration * 2 + SimTime::FromSeconds(0.1);
    m_medium.SetHistoryHorizon(horizon);
    if (m_network.Kind() == TopologyKind::Ring)
    {
        m_token = std::make_unique<TokenRing>(m_sim, m_network.RingOrder(), m_scenario.ring.tokenHoldTimeout,
                                              &m_tracer);
    }
    for (const auto& spec : m_network.Nodes())
    {
        m_nodes.push_back(std::make_unique<NodeAgent>(*this, spec));
        if (m_token)
        {
            m_token->SetClient(spec.id, m_nodes.back().get());
        }
    }
}

WpanSimulation::~WpanSimulation() = default;

const CsmaMac*
WpanSimulation::Mac(NodeId node, ChannelId channel) const
{
    if (node >= m_nodes.size())
    {
        return nullptr;
    }
    return m_nodes[node]->Mac(channel);
}

void
WpanSimulation::InjectFault(SimTime at)
{
    m_sim.Schedule(at, EventKind::Control, -1, []() { throw EngineFault("injected engine fault"); });
}

SimulationResult
WpanSimulation::Run()
{
    if (m_ran)
    {
        throw EngineFault("WpanSimulation::Run called twice");
    }
    m_ran = true;
    for (auto& node : m_nodes)
    {
        node->Start();
    }
    if (m_token)
    {
        m_token->Start();
    }
    SimulationResult result;
    result.engine = m_sim.RunUntil(m_scenario.duration);
    result.report = m_metrics.Report(m_scenario.duration, m_scenario.bucketWidth, m_scenario.warmup,
                                     m_ledger.Accounting());
    result.medium = m_medium.Stats();
    for (const auto& node : m_nodes)
    {
        node->AddCounters(result.mac);
    }
    result.tokenGrants = m_token ? m_token->Grants() : 0;
    return result;
}

} // namespace wpansim
