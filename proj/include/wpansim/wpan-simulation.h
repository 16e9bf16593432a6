#ifndef WPANSIM_WPAN_SIMULATION_H
#define WPANSIM_WPAN_SIMULATION_H

#include "wpansim/csma-mac.h"
#include "wpansim/medium.h"
#include "wpansim/metrics.h"
#include "wpansim/network.h"
#include "wpansim/scenario.h"
#include "wpansim/simulator.h"
#include "wpansim/token-ring.h"
#include "wpansim/trace.h"

#include <memory>
#include <optional>
#include <vector>

namespace wpansim
{

struct SimulationResult
{
    MetricsReport report;
    RunSummary engine;
    MediumStats medium;
    MacCounters mac;
    uint64_t tokenGrants{0};
};

/**
 * One simulation instance: topology, radios, MACs, traffic sources and
 * sinks wired from a Scenario. Instances share no state, so separate
 * instances may run on separate threads.
 */
class WpanSimulation
{
  public:
    explicit WpanSimulation(const Scenario& scenario, Tracer::Sink traceSink = {});
    ~WpanSimulation();

    WpanSimulation(const WpanSimulation&) = delete;
    WpanSimulation& operator=(const WpanSimulation&) = delete;

    /// Runs to scenario.duration and reports over [warmup, duration). Call once.
    SimulationResult Run();

    /// Test hook: an engine fault raised by an event at `at`.
    void InjectFault(SimTime at);

    const Network& GetNetwork() const
    {
        return m_network;
    }

    const Scenario& GetScenario() const
    {
        return m_scenario;
    }

    const MetricsCollector& Metrics() const
    {
        return m_metrics;
    }

    FrameAccounting Accounting() const
    {
        return m_ledger.Accounting();
    }

    std::vector<TraceRecord> TraceTail() const
    {
        return m_tracer.Tail();
    }

    /// MAC of `node` on `channel`, or nullptr.
    const CsmaMac* Mac(NodeId node, ChannelId channel) const;

  private:
    class NodeAgent;

    Scenario m_scenario;
    Network m_network;
    Simulator m_sim;
    Tracer m_tracer;
    Medium m_medium;
    MetricsCollector m_metrics;
    FrameLedger m_ledger;
    FrameIdAllocator m_ids;
    std::unique_ptr<TokenRing> m_token;
    std::vector<std::unique_ptr<NodeAgent>> m_nodes;
    bool m_ran{false};
};

} // namespace wpansim

#endif // WPANSIM_WPAN_SIMULATION_H
