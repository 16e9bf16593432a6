#ifndef WPANSIM_TOKEN_RING_H
#define WPANSIM_TOKEN_RING_H

#include "wpansim/csma-mac.h"
#include "wpansim/simulator.h"
#include "wpansim/trace.h"
#include "wpansim/types.h"

#include <vector>

namespace wpansim
{

/// MAC-side hooks the token needs from each ring member.
class TokenClient
{
  public:
    virtual ~TokenClient() = default;
    /// Try to start an exchange now; the client reports back through ExchangeStarted().
    virtual void Kick() = 0;
    /// Send the token to `successor`; the client reports arrival through TokenArrived().
    virtual void PassToken(NodeId successor) = 0;
};

/**
 * Token overlay for the ring: only the holder may start a data exchange.
 *
 * The holder keeps the token for one complete exchange (acked or dropped,
 * retransmissions included). A holder that starts nothing releases it after
 * the hold timeout; a frame queued during that window is served at once.
 * The token itself is a frame the holder sends to its successor, so each
 * pass costs a channel access.
 */
class TokenRing : public AccessGate
{
  public:
    TokenRing(Simulator& sim, std::vector<NodeId> ringOrder, SimTime holdTimeout, Tracer* tracer = nullptr);

    void SetClient(NodeId node, TokenClient* client);

    /// Grants the token to the first node in ring order at the current time.
    void Start();

    bool MayInitiate(NodeId node) const override;
    void ExchangeStarted(NodeId node) override;

    /// `node` finished the exchange it started under the token.
    void OnExchangeComplete(NodeId node);

    NodeId Holder() const
    {
        return m_ringOrder[m_holderIndex];
    }

    /// Releases the token towards the cyclic successor and returns that successor.
    NodeId Step();

    /// The token frame reached `node`.
    void TokenArrived(NodeId node);

    NodeId Successor() const
    {
        return m_ringOrder[(m_holderIndex + 1) % m_ringOrder.size()];
    }

    uint64_t Grants() const
    {
        return m_grants;
    }

  private:
    enum class Phase
    {
        Released,
        Granted,
        Busy,
        Passing,
    };

    void Grant();
    void Emit(NodeId node, const char* what);

    Simulator& m_sim;
    std::vector<NodeId> m_ringOrder;
    std::vector<TokenClient*> m_clients;
    SimTime m_holdTimeout;
    Tracer* m_tracer;
    std::size_t m_holderIndex{0};
    Phase m_phase{Phase::Released};
    EventId m_holdTimer;
    uint64_t m_grants{0};
};

} // namespace wpansim

#endif // WPANSIM_TOKEN_RING_H
