#include "wpansim/errors.h"
#include "wpansim/network.h"
#include "wpansim/simulator.h"
#include "wpansim/traffic.h"

#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

using namespace wpansim;

namespace
{

struct Capture
{
    Simulator sim;
    FrameIdAllocator ids;
    std::vector<Frame> frames;
    std::vector<SimTime> times;

    TrafficGenerator::Emit Sink()
    {
        return [this](Frame f) {
            frames.push_back(std::move(f));
            times.push_back(sim.Now());
        };
    }
};

TrafficProfile
CoordinatorProfile()
{
    TrafficProfile p;
    p.interarrival = Distribution::Constant(1.0);
    p.packetSize = Distribution::Constant(1024.0);
    p.startTime = Distribution::Uniform(20.0, 21.0);
    p.destination = DestinationRule::AllNodes;
    return p;
}

} // namespace

TEST_CASE("coordinator source: first packet in [20,21) then exactly every second")
{
    const Network net = Network::BuildStar(4);
    Capture cap;
    TrafficGenerator gen(cap.sim, net, 0, CoordinatorProfile(), SizePolicy{}, 1, cap.ids, cap.Sink());
    gen.Start();
    cap.sim.RunUntil(SimTime::FromSeconds(120.0));
    REQUIRE(cap.times.size() >= 99);
    CHECK(cap.times[0] >= SimTime::FromSeconds(20.0));
    CHECK(cap.times[0] < SimTime::FromSeconds(21.0));
    CHECK(cap.times[0] == gen.FirstPacketAt());
    for (std::size_t i = 1; i < cap.times.size(); ++i)
    {
        REQUIRE(cap.times[i] - cap.times[i - 1] == SimTime::FromSeconds(1.0));
    }
    for (const auto& f : cap.frames)
    {
        CHECK(f.payloadBits == 1016);
        CHECK(f.source == 0);
        CHECK(f.hopTrace == std::vector<NodeId>{0});
        CHECK(f.finalDestination != 0);
    }
}

TEST_CASE("strict sizes keep the full 1024 bits")
{
    const Network net = Network::BuildStar(4);
    Capture cap;
    SizePolicy strict;
    strict.strict = true;
    TrafficGenerator gen(cap.sim, net, 0, CoordinatorProfile(), strict, 1, cap.ids, cap.Sink());
    gen.Start();
    cap.sim.RunUntil(SimTime::FromSeconds(30.0));
    REQUIRE(!cap.frames.empty());
    CHECK(cap.frames[0].payloadBits == 1024);
}

TEST_CASE("end-device source: mean rate and size within 2 percent over 10^5 packets")
{
    const Network net = Network::BuildStar(1);
    Capture cap;
    TrafficProfile p;
    SizePolicy strict;
    strict.strict = true;
    TrafficGenerator gen(cap.sim, net, 1, p, strict, 3, cap.ids, cap.Sink());
    gen.Start();
    cap.frames.reserve(110000);
    cap.sim.RunUntil(SimTime::FromSeconds(100000.0));
    const double n = static_cast<double>(cap.frames.size());
    CHECK(std::abs(n / 100000.0 - 1.0) < 0.02);
    const double meanGap = (cap.times.back() - cap.times.front()).Seconds() / (n - 1);
    CHECK(std::abs(meanGap - 1.0) < 0.02);
    double bits = 0;
    for (const auto& f : cap.frames)
    {
        bits += f.payloadBits;
        REQUIRE(f.payloadBits >= 8);
        REQUIRE(f.finalDestination == 0);
    }
    CHECK(std::abs(bits / n / 1024.0 - 1.0) < 0.02);
}

TEST_CASE("packet sizes are rounded and clamped")
{
    RandomStream s(1, 2);
    SizePolicy policy;
    const auto big = Distribution::Exponential(1024.0);
    for (int i = 0; i < 20000; ++i)
    {
        const uint32_t bits = SamplePayloadBits(big, s, policy);
        REQUIRE(bits >= 8);
        REQUIRE(bits <= 1016);
    }
    CHECK(SamplePayloadBits(Distribution::Constant(3.4), s, policy) == 8);
    CHECK(SamplePayloadBits(Distribution::Constant(100.4), s, policy) == 100);
    CHECK(SamplePayloadBits(Distribution::Constant(100.6), s, policy) == 101);
    CHECK(SamplePayloadBits(Distribution::Constant(5000), s, policy) == 1016);
}

TEST_CASE("destination rules")
{
    SUBCASE("star end device always targets the coordinator")
    {
        const Network net = Network::BuildStar(5);
        RandomStream s(1, 1);
        for (int i = 0; i < 100; ++i)
        {
            CHECK(ChooseDestination(net, 3, DestinationRule::PanCoord, s) == 0);
        }
    }
    SUBCASE("ring node targets its successor")
    {
        const Network net = Network::BuildRing(6);
        RandomStream s(1, 1);
        CHECK(ChooseDestination(net, 2, DestinationRule::ImmediateNext, s) == 3);
        CHECK(ChooseDestination(net, 5, DestinationRule::ImmediateNext, s) == 0);
    }
    SUBCASE("cluster coordinator picks the other coordinators uniformly")
    {
        const Network net = Network::BuildCluster(3, 4);
        RandomStream s(5, 17);
        std::map<NodeId, int> counts;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
        {
            ++counts[ChooseDestination(net, 0, DestinationRule::AllCoordinators, s)];
        }
        CHECK(counts.size() == 2);
        CHECK(counts.count(0) == 0);
        CHECK(std::abs(counts[1] / double(n) - 0.5) < 0.02 * 0.5);
        CHECK(std::abs(counts[2] / double(n) - 0.5) < 0.02 * 0.5);
    }
    SUBCASE("star coordinator picks end devices uniformly")
    {
        const Network net = Network::BuildStar(4);
        RandomStream s(5, 18);
        std::map<NodeId, int> counts;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
        {
            ++counts[ChooseDestination(net, 0, DestinationRule::AllNodes, s)];
        }
        CHECK(counts.size() == 4);
        for (NodeId d = 1; d <= 4; ++d)
        {
            CHECK(std::abs(counts[d] / double(n) - 0.25) < 0.02 * 0.25);
        }
    }
    SUBCASE("empty eligible set is a configuration error")
    {
        const Network net = Network::BuildRing(4);
        RandomStream s(1, 1);
        CHECK_THROWS_AS(ChooseDestination(net, 0, DestinationRule::PanCoord, s), ConfigError);
    }
    CHECK(ParseDestinationRule("all_coordinators") == DestinationRule::AllCoordinators);
    CHECK_THROWS_AS(ParseDestinationRule("everyone"), ConfigError);
}

TEST_CASE("generators are reproducible and stop at the stop time")
{
    const Network net = Network::BuildStar(3);
    TrafficProfile p;
    p.stopTime = SimTime::FromSeconds(50.0);
    Capture a, b;
    TrafficGenerator ga(a.sim, net, 2, p, SizePolicy{}, 11, a.ids, a.Sink());
    TrafficGenerator gb(b.sim, net, 2, p, SizePolicy{}, 11, b.ids, b.Sink());
    ga.Start();
    gb.Start();
    a.sim.RunUntil(SimTime::FromSeconds(100.0));
    b.sim.RunUntil(SimTime::FromSeconds(100.0));
    REQUIRE(a.frames.size() == b.frames.size());
    for (std::size_t i = 0; i < a.frames.size(); ++i)
    {
        CHECK(a.times[i] == b.times[i]);
        CHECK(a.frames[i].payloadBits == b.frames[i].payloadBits);
        CHECK(a.times[i] < SimTime::FromSeconds(50.0));
    }
    CHECK(ga.FramesCreated() == a.frames.size());
}

TEST_CASE("sink counts each frame once")
{
    ApplicationSink sink;
    Frame f;
    f.id = 7;
    f.payloadBits = 1024;
    CHECK(sink.Receive(f) == SinkResult::Delivered);
    CHECK(sink.Receive(f) == SinkResult::Duplicate);
    f.id = 8;
    CHECK(sink.Receive(f) == SinkResult::Delivered);
    CHECK(sink.Delivered() == 2);
    CHECK(sink.Duplicates() == 1);
}
