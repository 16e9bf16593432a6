#include "wpansim/errors.h"
#include "wpansim/scenario.h"

#include <doctest.h>

#include <string>

using namespace wpansim;

namespace
{

std::string
Preset(const std::string& name)
{
    return std::string(WPANSIM_SOURCE_DIR) + "/scenarios/" + name + ".scn";
}

std::string
ErrorOf(const std::string& text)
{
    try
    {
        ParseScenario(text, "test.scn");
    }
    catch (const ConfigError& e)
    {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("shipped presets match the built-in defaults")
{
    for (auto kind : {TopologyKind::Cluster, TopologyKind::Star, TopologyKind::Ring})
    {
        const Scenario file = LoadScenario(Preset(ToString(kind)));
        Scenario defaults = Scenario::Defaults(kind);
        defaults.name = file.name;
        CHECK(file.Canonical() == defaults.Canonical());
        CHECK(file.Hash() == defaults.Hash());
    }
}

TEST_CASE("star preset carries the reference parameters")
{
    const Scenario sc = LoadScenario(Preset("star"));
    CHECK(sc.name == "star");
    CHECK(sc.topology.kind == TopologyKind::Star);
    CHECK(sc.topology.endDevices == 14);
    CHECK(sc.mac.ackWaitDuration == SimTime::FromSeconds(0.05));
    CHECK(sc.mac.maxRetransmissions == 5);
    CHECK(sc.mac.minBackoffExponent == 3);
    CHECK(sc.mac.maxCsmaBackoffs == 4);
    CHECK(sc.mac.channelSensingDuration == SimTime::FromSeconds(0.1));
    CHECK(sc.phy.dataRate == 250000.0);
    CHECK(sc.phy.frequencyBand == "2.4 GHz");
    const auto& coord = sc.profiles.at(NodeRole::PanCoordinator);
    CHECK(coord.interarrival == Distribution::Constant(1.0));
    CHECK(coord.packetSize == Distribution::Constant(1024));
    CHECK(coord.startTime == Distribution::Uniform(20, 21));
    CHECK(coord.stopTime.IsInfinite());
    CHECK(coord.destination == DestinationRule::AllNodes);
    const auto& ed = sc.profiles.at(NodeRole::EndDevice);
    CHECK(ed.interarrival == Distribution::Exponential(1.0));
    CHECK(ed.packetSize == Distribution::Exponential(1024));
    CHECK(ed.startTime == Distribution::Exponential(1.0));
    CHECK(ed.destination == DestinationRule::PanCoord);
    CHECK(sc.duration == SimTime::FromSeconds(620));
    CHECK(sc.warmup == SimTime::FromSeconds(20));
}

TEST_CASE("negative duration is rejected with its line")
{
    const std::string err = ErrorOf("name: x\ntopology:\n  kind: star\nrun:\n  duration: -5\n");
    CHECK(err.find("test.scn:5") != std::string::npos);
    CHECK(err.find("duration") != std::string::npos);
}

TEST_CASE("unknown keys are rejected by name")
{
    const std::string err = ErrorOf("name: x\ntopology:\n  kind: star\nfoo: 1\n");
    CHECK(err.find("test.scn:4") != std::string::npos);
    CHECK(err.find("foo") != std::string::npos);
    CHECK(ErrorOf("name: x\ntopology:\n  kind: star\nmac:\n  max_retries: 3\n").find("mac.max_retries") !=
          std::string::npos);
}

TEST_CASE("other malformed settings")
{
    CHECK(!ErrorOf("topology:\n  kind: star\n").empty());
    CHECK(!ErrorOf("name: x\ntopology:\n  kind: mesh\n").empty());
    CHECK(!ErrorOf("name: x\ntopology:\n  kind: ring\n  devices: 2\n").empty());
    CHECK(!ErrorOf("name: x\ntopology:\n  kind: star\ntraffic:\n  end_device:\n    interarrival: normal(1)\n").empty());
    CHECK(!ErrorOf("name: x\ntopology:\n  kind: star\nrun:\n  warmup: 700\n").empty());
    CHECK(!ErrorOf("name: x\ntopology:\n  kind: star\nmac:\n  min_backoff_exponent: 6\n").empty());
    CHECK(!ErrorOf("name: x\ntopology:\n  kind: star\nflags:\n  strict_sizes: maybe\n").empty());
    CHECK(!ErrorOf("name: [x\n").empty());
}

TEST_CASE("omitted sections take the defaults of the topology")
{
    const Scenario sc = ParseScenario("name: tiny\ntopology:\n  kind: ring\n  devices: 4\nrun:\n  seed: 9\n");
    CHECK(sc.topology.ringDevices == 4);
    CHECK(sc.seed == 9);
    CHECK(sc.profiles.at(NodeRole::EndDevice).destination == DestinationRule::ImmediateNext);
    CHECK(sc.ring.tokenHoldTimeout == SimTime::FromSeconds(0.01));
}

TEST_CASE("missing files raise an I/O failure")
{
    CHECK_THROWS_AS(LoadScenario("/nonexistent/x.scn"), std::ios_base::failure);
}
