#include "test-util.h"

#include "wpansim/errors.h"
#include "wpansim/metrics.h"
#include "wpansim/wpan-simulation.h"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace wpansim;

namespace
{

void
CheckConservation(const FrameAccounting& a)
{
    CHECK(a.created == a.delivered + a.dropped + a.inFlight);
}

void
CheckBucketSums(const MetricsReport& r)
{
    double thr = 0, sent = 0, recv = 0;
    uint64_t drops = 0;
    const double width = r.bucketWidth.Seconds();
    for (const auto& b : r.buckets)
    {
        thr += b.throughputBps * width;
        sent += b.sentBps * width;
        recv += b.receivedBps * width;
        drops += b.droppedCount;
    }
    const double window = r.WindowSeconds();
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)); };
    CHECK(close(thr, r.global.throughputBps * window));
    CHECK(close(sent, r.global.sentBps * window));
    CHECK(close(recv, r.global.receivedBps * window));
    CHECK(drops == r.global.droppedTotal);
}

} // namespace

TEST_CASE("single flow of 1024 bits per second delivers 1024 bps")
{
    Scenario sc = test::SingleFlowScenario();
    WpanSimulation sim(sc);
    const auto result = sim.Run();
    const auto& g = result.report.global;
    CHECK(std::abs(g.throughputBps / 1024.0 - 1.0) < 0.01);
    CHECK(std::abs(g.sentBps / 1024.0 - 1.0) < 0.01);
    CHECK(g.droppedTotal == 0);
    CheckConservation(result.report.accounting);
    CheckBucketSums(result.report);
}

TEST_CASE("zero traffic gives an all-zero report")
{
    Scenario sc = test::SingleFlowScenario();
    sc.profiles.at(NodeRole::PanCoordinator).stopTime = SimTime::FromSeconds(1.0);
    WpanSimulation sim(sc);
    const auto result = sim.Run();
    const auto& g = result.report.global;
    CHECK(g.throughputBps == 0.0);
    CHECK(g.sentBps == 0.0);
    CHECK(g.receivedBps == 0.0);
    CHECK(g.droppedTotal == 0);
    CHECK(result.report.buckets.size() == 60);
    for (const auto& b : result.report.buckets)
    {
        CHECK(b.throughputBps == 0.0);
        CHECK(b.droppedCount == 0);
    }
}

TEST_CASE("relayed frame counts once as sent and once per hop as received")
{
    // Each of two star end devices sends one 1024-bit frame to the other through the coordinator.
    Scenario sc = Scenario::Defaults(TopologyKind::Star);
    sc.topology.endDevices = 2;
    sc.flags.strictSizes = true;
    sc.duration = SimTime::FromSeconds(40.0);
    sc.warmup = SimTime::FromSeconds(10.0);
    auto& coord = sc.profiles.at(NodeRole::PanCoordinator);
    coord.startTime = Distribution::Constant(1.0);
    coord.stopTime = SimTime::FromSeconds(0.5);
    auto& ed = sc.profiles.at(NodeRole::EndDevice);
    ed.interarrival = Distribution::Constant(1000.0);
    ed.packetSize = Distribution::Constant(1024.0);
    ed.startTime = Distribution::Uniform(20.0, 30.0);
    ed.destination = DestinationRule::AllNodes;
    ed.stopTime = SimTime::FromSeconds(35.0);

    std::vector<TraceRecord> delivers;
    WpanSimulation sim(sc, [&](const TraceRecord& r) {
        if (r.kind == TraceKind::Deliver)
        {
            delivers.push_back(r);
        }
    });
    const auto result = sim.Run();
    const double window = result.report.WindowSeconds();
    CHECK(result.report.global.sentBps * window == doctest::Approx(2 * 1024.0));
    CHECK(result.report.global.receivedBps * window == doctest::Approx(2 * 2048.0));
    CHECK(result.report.global.throughputBps * window == doctest::Approx(2 * 1024.0));
    REQUIRE(delivers.size() == 2);
    for (const auto& d : delivers)
    {
        CHECK((d.note == "1>0>2" || d.note == "2>0>1"));
    }
    CheckConservation(result.report.accounting);
}

TEST_CASE("report rejects a window that does not exist")
{
    MetricsCollector m;
    CHECK_THROWS_AS(m.Report(SimTime::FromSeconds(10), SimTime::FromSeconds(1), SimTime::FromSeconds(10), {}),
                    ConfigError);
    CHECK_THROWS_AS(m.Report(SimTime::FromSeconds(10), SimTime::Zero(), SimTime::FromSeconds(1), {}), ConfigError);
}

TEST_CASE("samples outside the window are excluded and partial buckets keep sums")
{
    MetricsCollector m;
    m.RecordSent(1, 1000, SimTime::FromSeconds(5));
    m.RecordSent(1, 500, SimTime::FromSeconds(12));
    m.RecordSent(1, 300, SimTime::FromSeconds(24.5));
    m.RecordSink(2, 500, SimTime::FromSeconds(13), SimTime::FromSeconds(1));
    m.RecordDropped(1, DropCause::RetryExhausted, SimTime::FromSeconds(20));
    const auto r = m.Report(SimTime::FromSeconds(25), SimTime::FromSeconds(10), SimTime::FromSeconds(10), {});
    CHECK(r.buckets.size() == 2);
    CHECK(r.global.sentBps == doctest::Approx(800.0 / 15.0));
    CHECK(r.global.throughputBps == doctest::Approx(500.0 / 15.0));
    CHECK(r.global.droppedTotal == 1);
    CHECK(r.dropCauses.at(DropCause::RetryExhausted) == 1);
    CHECK(r.global.meanLatency == doctest::Approx(1.0));
    CheckBucketSums(r);
}

TEST_CASE("ledger settles relay copies exactly")
{
    std::vector<std::pair<FrameId, DropCause>> drops;
    FrameLedger ledger([&](FrameId id, NodeId, DropCause cause, SimTime) { drops.emplace_back(id, cause); });
    const SimTime t = SimTime::FromSeconds(1);

    // Delivered after one relay.
    ledger.Created(1);
    ledger.CopySpawned(1);
    ledger.CopyHandedOff(1, t);
    CHECK(ledger.Delivered(1));
    ledger.CopyHandedOff(1, t);

    // Upstream ACK lost: both copies alive, relay later fails, upstream gives up.
    ledger.Created(2);
    ledger.CopySpawned(2);
    ledger.CopyDropped(2, 0, DropCause::ChannelAccessFailure, t);
    CHECK(drops.empty());
    ledger.CopyDropped(2, 1, DropCause::RetryExhausted, t);
    REQUIRE(drops.size() == 1);
    CHECK(drops[0] == std::make_pair(FrameId{2}, DropCause::RetryExhausted));

    // Still travelling.
    ledger.Created(3);

    const auto a = ledger.Accounting();
    CHECK(a.created == 3);
    CHECK(a.delivered == 1);
    CHECK(a.dropped == 1);
    CHECK(a.inFlight == 1);
    CHECK_FALSE(ledger.Delivered(1));
    CHECK(ledger.Accounting().duplicates == 1);
}

TEST_CASE("conservation and bucket sums on every preset")
{
    for (auto kind : {TopologyKind::Cluster, TopologyKind::Star, TopologyKind::Ring})
    {
        Scenario sc = Scenario::Defaults(kind);
        sc.duration = SimTime::FromSeconds(120.0);
        WpanSimulation sim(sc);
        const auto result = sim.Run();
        CheckConservation(result.report.accounting);
        CheckBucketSums(result.report);
        const auto& g = result.report.global;
        CHECK(g.throughputBps <= g.receivedBps + 1e-9);
        CHECK(g.receivedBps <= sim.GetNetwork().MaxHops() * g.sentBps + 1e-9);
        uint64_t causes = 0;
        for (const auto& [cause, n] : result.report.dropCauses)
        {
            causes += n;
        }
        CHECK(causes == g.droppedTotal);
    }
}
