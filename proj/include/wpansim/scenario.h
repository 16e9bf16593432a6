#ifndef WPANSIM_SCENARIO_H
#define WPANSIM_SCENARIO_H

#include "wpansim/csma-mac.h"
#include "wpansim/medium.h"
#include "wpansim/network.h"
#include "wpansim/sim-time.h"
#include "wpansim/traffic.h"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace wpansim
{

struct TopologySpec
{
    TopologyKind kind{TopologyKind::Star};
    /// Star: end devices around the single coordinator.
    uint32_t endDevices{14};
    /// Cluster: number of coordinators and end devices attached to each.
    uint32_t coordinators{3};
    uint32_t endDevicesPerCluster{4};
    /// Ring: member count.
    uint32_t ringDevices{15};
};

struct RingParams
{
    SimTime tokenHoldTimeout{SimTime::FromMicroseconds(10000)};
    SimTime tokenQueueTimeout{SimTime::FromSeconds(2.0)};
};

struct ScenarioFlags
{
    /// Cluster only: put every cluster and the backbone on one channel.
    bool sharedChannel{false};
    /// Lift the maximum payload clamp.
    bool strictSizes{false};
    bool doubleCca{false};
};

struct Scenario
{
    std::string name;
    TopologySpec topology;
    PhyParams phy;
    MacParams mac;
    RingParams ring;
    std::map<NodeRole, TrafficProfile> profiles;
    uint32_t maxPayloadBits{1016};
    SimTime duration{SimTime::FromSeconds(620.0)};
    SimTime warmup{SimTime::FromSeconds(20.0)};
    SimTime bucketWidth{SimTime::FromSeconds(10.0)};
    uint64_t seed{1};
    ScenarioFlags flags;

    /// Scenario with the per-role traffic of the reference parameter table for `kind`.
    static Scenario Defaults(TopologyKind kind);

    /// Throws ConfigError naming the offending setting.
    void Validate() const;

    Network BuildNetwork() const;

    SizePolicy Sizes() const;

    /// Stable text rendering of every resolved setting.
    std::string Canonical() const;

    /// FNV-1a 64 of Canonical().
    uint64_t Hash() const;
};

/// Table-1 traffic for each role in a topology of the given kind.
std::map<NodeRole, TrafficProfile> DefaultProfiles(TopologyKind kind);

/// Parse a YAML scenario document; `origin` prefixes diagnostics.
Scenario ParseScenario(const std::string& text, const std::string& origin = "<scenario>");

/// Throws std::ios_base::failure if unreadable, ConfigError if invalid.
Scenario LoadScenario(const std::filesystem::path& path);

} // namespace wpansim

#endif // WPANSIM_SCENARIO_H
