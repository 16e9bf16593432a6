#include "wpansim/token-ring.h"

#include "wpansim/errors.h"

#include <algorithm>

namespace wpansim
{

TokenRing::TokenRing(Simulator& sim, std::vector<NodeId> ringOrder, SimTime holdTimeout, Tracer* tracer)
    : m_sim(sim),
      m_ringOrder(std::move(ringOrder)),
      m_holdTimeout(holdTimeout),
      m_tracer(tracer)
{
    if (m_ringOrder.empty())
    {
        throw ConfigError("token ring needs at least one member");
    }
    if (holdTimeout <= SimTime::Zero())
    {
        throw ConfigError("ring.token_hold_timeout must be > 0");
    }
    NodeId maxId = *std::max_element(m_ringOrder.begin(), m_ringOrder.end());
    m_clients.assign(maxId + 1, nullptr);
}

void
TokenRing::SetClient(NodeId node, TokenClient* client)
{
    if (node >= m_clients.size())
    {
        throw EngineFault("token client for node outside the ring");
    }
    m_clients[node] = client;
}

void
TokenRing::Start()
{
    m_holderIndex = 0;
    Grant();
}

bool
TokenRing::MayInitiate(NodeId node) const
{
    return m_phase == Phase::Granted && node == Holder();
}

void
TokenRing::ExchangeStarted(NodeId node)
{
    if (!MayInitiate(node))
    {
        throw EngineFault("node " + std::to_string(node) + " started an exchange without the token");
    }
    m_phase = Phase::Busy;
    m_sim.Cancel(m_holdTimer);
}

void
TokenRing::Emit(NodeId node, const char* what)
{
    if (m_tracer == nullptr)
    {
        return;
    }
    TraceRecord r;
    r.time = m_sim.Now();
    r.node = node;
    r.kind = TraceKind::Token;
    r.note = what;
    m_tracer->Emit(std::move(r));
}

void
TokenRing::Grant()
{
    ++m_grants;
    m_phase = Phase::Granted;
    const NodeId holder = Holder();
    Emit(holder, "grant");
    if (TokenClient* client = m_clients[holder])
    {
        client->Kick();
    }
    if (m_phase == Phase::Granted)
    {
        m_holdTimer = m_sim.ScheduleIn(m_holdTimeout, EventKind::TokenGrant, static_cast<int32_t>(holder), [this]() {
            m_holdTimer = EventId{};
            Step();
        });
    }
}

void
TokenRing::OnExchangeComplete(NodeId node)
{
    if (node != Holder() || m_phase != Phase::Busy)
    {
        throw EngineFault("node " + std::to_string(node) + " completed an exchange without the token");
    }
    Step();
}

NodeId
TokenRing::Step()
{
    m_sim.Cancel(m_holdTimer);
    m_phase = Phase::Passing;
    const NodeId next = Successor();
    Emit(Holder(), "pass");
    TokenClient* client = m_clients[Holder()];
    if (client == nullptr)
    {
        throw EngineFault("token holder " + std::to_string(Holder()) + " has no client");
    }
    client->PassToken(next);
    return next;
}

void
TokenRing::TokenArrived(NodeId node)
{
    if (m_phase != Phase::Passing || node != Successor())
    {
        throw EngineFault("token arrived at node " + std::to_string(node) + " out of turn");
    }
    m_phase = Phase::Released;
    m_holderIndex = (m_holderIndex + 1) % m_ringOrder.size();
    Grant();
}

} // namespace wpansim
