#include "wpansim/errors.h"
#include "wpansim/scenario.h"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace wpansim
{

namespace
{

class Parser
{
  public:
    explicit Parser(std::string origin)
        : m_origin(std::move(origin))
    {
    }

    [[noreturn]] void Fail(const YAML::Node& node, const std::string& key, const std::string& message) const
    {
        std::ostringstream os;
        os << m_origin;
        if (node.IsDefined() && node.Mark().line >= 0)
        {
            os << ":" << node.Mark().line + 1;
        }
        os << ": " << key << ": " << message;
        throw ConfigError(os.str());
    }

    void RequireMap(const YAML::Node& node, const std::string& key) const
    {
        if (!node.IsMap())
        {
            Fail(node, key, "expected a mapping");
        }
    }

    /// Rejects keys of `node` outside `allowed`.
    void CheckKeys(const YAML::Node& node, const std::string& prefix, const std::set<std::string>& allowed) const
    {
        for (const auto& kv : node)
        {
            const std::string key = kv.first.as<std::string>();
            if (!allowed.contains(key))
            {
                Fail(kv.first, prefix.empty() ? key : prefix + "." + key, "unknown key");
            }
        }
    }

    std::string Scalar(const YAML::Node& node, const std::string& key) const
    {
        if (!node.IsScalar())
        {
            Fail(node, key, "expected a scalar value");
        }
        return node.Scalar();
    }

    double Real(const YAML::Node& node, const std::string& key) const
    {
        const std::string text = Scalar(node, key);
        try
        {
            std::size_t used = 0;
            double v = std::stod(text, &used);
            if (used != text.size() || !std::isfinite(v))
            {
                throw std::invalid_argument(text);
            }
            return v;
        }
        catch (const std::exception&)
        {
            Fail(node, key, "expected a number, got '" + text + "'");
        }
    }

    double PositiveReal(const YAML::Node& node, const std::string& key) const
    {
        double v = Real(node, key);
        if (!(v > 0))
        {
            Fail(node, key, "must be > 0, got " + Scalar(node, key));
        }
        return v;
    }

    uint64_t Unsigned(const YAML::Node& node, const std::string& key, uint64_t max) const
    {
        const std::string text = Scalar(node, key);
        if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        {
            Fail(node, key, "expected a non-negative integer, got '" + text + "'");
        }
        try
        {
            uint64_t v = std::stoull(text);
            if (v > max)
            {
                Fail(node, key, "value " + text + " exceeds " + std::to_string(max));
            }
            return v;
        }
        catch (const std::out_of_range&)
        {
            Fail(node, key, "integer out of range");
        }
    }

    uint32_t U32(const YAML::Node& node, const std::string& key) const
    {
        return static_cast<uint32_t>(Unsigned(node, key, std::numeric_limits<uint32_t>::max()));
    }

    bool Bool(const YAML::Node& node, const std::string& key) const
    {
        const std::string text = Scalar(node, key);
        if (text == "true" || text == "yes" || text == "on")
        {
            return true;
        }
        if (text == "false" || text == "no" || text == "off")
        {
            return false;
        }
        Fail(node, key, "expected true or false, got '" + text + "'");
    }

    SimTime Seconds(const YAML::Node& node, const std::string& key) const
    {
        return SimTime::FromSeconds(PositiveReal(node, key));
    }

    SimTime SecondsOrInfinity(const YAML::Node& node, const std::string& key) const
    {
        const std::string text = Scalar(node, key);
        if (text == "infinity" || text == "inf" || text == ".inf")
        {
            return SimTime::Infinity();
        }
        return Seconds(node, key);
    }

    Distribution Dist(const YAML::Node& node, const std::string& key) const
    {
        try
        {
            return Distribution::Parse(Scalar(node, key));
        }
        catch (const ConfigError& e)
        {
            Fail(node, key, e.what());
        }
    }

    /// Calls `apply` for `key` when present under `map`.
    void Opt(const YAML::Node& map,
             const std::string& prefix,
             const char* key,
             const std::function<void(const YAML::Node&, const std::string&)>& apply) const
    {
        YAML::Node child = map[key];
        if (child.IsDefined() && !child.IsNull())
        {
            apply(child, prefix + "." + key);
        }
        else if (child.IsDefined())
        {
            Fail(child, prefix + "." + key, "missing value");
        }
    }

    Scenario Parse(const std::string& text) const;

  private:
    void ParseTopology(const YAML::Node& node, Scenario& s) const;
    void ParseProfile(const YAML::Node& node, const std::string& prefix, TrafficProfile& p) const;

    std::string m_origin;
};

void
Parser::ParseTopology(const YAML::Node& node, Scenario& s) const
{
    RequireMap(node, "topology");
    CheckKeys(node, "topology", {"kind", "end_devices", "coordinators", "end_devices_per_cluster", "devices"});
    YAML::Node kind = node["kind"];
    if (!kind.IsDefined())
    {
        Fail(node, "topology.kind", "missing required key");
    }
    const std::string k = Scalar(kind, "topology.kind");
    if (k == "cluster")
    {
        s.topology.kind = TopologyKind::Cluster;
    }
    else if (k == "star")
    {
        s.topology.kind = TopologyKind::Star;
    }
    else if (k == "ring")
    {
        s.topology.kind = TopologyKind::Ring;
    }
    else
    {
        Fail(kind, "topology.kind", "expected cluster, star or ring, got '" + k + "'");
    }
    Opt(node, "topology", "end_devices", [&](auto& n, auto& key) { s.topology.endDevices = U32(n, key); });
    Opt(node, "topology", "coordinators", [&](auto& n, auto& key) { s.topology.coordinators = U32(n, key); });
    Opt(node, "topology", "end_devices_per_cluster", [&](auto& n, auto& key) {
        s.topology.endDevicesPerCluster = U32(n, key);
    });
    Opt(node, "topology", "devices", [&](auto& n, auto& key) { s.topology.ringDevices = U32(n, key); });
}

void
Parser::ParseProfile(const YAML::Node& node, const std::string& prefix, TrafficProfile& p) const
{
    RequireMap(node, prefix);
    CheckKeys(node, prefix, {"interarrival", "packet_size", "start_time", "stop_time", "destination"});
    Opt(node, prefix, "interarrival", [&](auto& n, auto& key) { p.interarrival = Dist(n, key); });
    Opt(node, prefix, "packet_size", [&](auto& n, auto& key) { p.packetSize = Dist(n, key); });
    Opt(node, prefix, "start_time", [&](auto& n, auto& key) { p.startTime = Dist(n, key); });
    Opt(node, prefix, "stop_time", [&](auto& n, auto& key) { p.stopTime = SecondsOrInfinity(n, key); });
    Opt(node, prefix, "destination", [&](auto& n, auto& key) {
        try
        {
            p.destination = ParseDestinationRule(Scalar(n, key));
        }
        catch (const ConfigError& e)
        {
            Fail(n, key, e.what());
        }
    });
    try
    {
        p.Validate();
    }
    catch (const ConfigError& e)
    {
        Fail(node, prefix, e.what());
    }
}

Scenario
Parser::Parse(const std::string& text) const
{
    YAML::Node root;
    try
    {
        root = YAML::Load(text);
    }
    catch (const YAML::Exception& e)
    {
        std::ostringstream os;
        os << m_origin << ":" << e.mark.line + 1 << ": syntax error: " << e.msg;
        throw ConfigError(os.str());
    }
    if (!root.IsMap())
    {
        throw ConfigError(m_origin + ": scenario must be a mapping of sections");
    }
    CheckKeys(root, "", {"name", "topology", "phy", "mac", "ring", "traffic", "run", "flags"});

    if (!root["name"].IsDefined())
    {
        Fail(root, "name", "missing required key");
    }
    if (!root["topology"].IsDefined())
    {
        Fail(root, "topology", "missing required key");
    }

    Scenario s;
    ParseTopology(root["topology"], s);
    s.profiles = DefaultProfiles(s.topology.kind);
    s.name = Scalar(root["name"], "name");
    if (s.name.empty() || s.name.find_first_of("/\\ \t") != std::string::npos)
    {
        Fail(root["name"], "name", "must be non-empty and contain no spaces or path separators");
    }

    if (YAML::Node phy = root["phy"])
    {
        RequireMap(phy, "phy");
        CheckKeys(phy, "phy", {"data_rate", "frequency_band", "symbol_rate", "overhead_bits", "ack_frame_bits"});
        Opt(phy, "phy", "data_rate", [&](auto& n, auto& key) { s.phy.dataRate = PositiveReal(n, key); });
        Opt(phy, "phy", "frequency_band", [&](auto& n, auto& key) { s.phy.frequencyBand = Scalar(n, key); });
        Opt(phy, "phy", "symbol_rate", [&](auto& n, auto& key) { s.phy.symbolRate = PositiveReal(n, key); });
        Opt(phy, "phy", "overhead_bits", [&](auto& n, auto& key) { s.phy.overheadBits = U32(n, key); });
        Opt(phy, "phy", "ack_frame_bits", [&](auto& n, auto& key) {
            s.phy.ackFrameBits = U32(n, key);
            if (s.phy.ackFrameBits == 0)
            {
                Fail(n, key, "must be > 0");
            }
        });
    }

    if (YAML::Node mac = root["mac"])
    {
        RequireMap(mac, "mac");
        CheckKeys(mac,
                  "mac",
                  {"ack_wait_duration",
                   "max_retransmissions",
                   "min_backoff_exponent",
                   "max_backoff_exponent",
                   "max_csma_backoffs",
                   "channel_sensing_duration",
                   "unit_backoff_period",
                   "queue_capacity",
                   "ack_turnaround"});
        Opt(mac, "mac", "ack_wait_duration", [&](auto& n, auto& key) { s.mac.ackWaitDuration = Seconds(n, key); });
        Opt(mac, "mac", "max_retransmissions", [&](auto& n, auto& key) { s.mac.maxRetransmissions = U32(n, key); });
        Opt(mac, "mac", "min_backoff_exponent", [&](auto& n, auto& key) {
            s.mac.minBackoffExponent = U32(n, key);
        });
        Opt(mac, "mac", "max_backoff_exponent", [&](auto& n, auto& key) {
            s.mac.maxBackoffExponent = U32(n, key);
        });
        Opt(mac, "mac", "max_csma_backoffs", [&](auto& n, auto& key) { s.mac.maxCsmaBackoffs = U32(n, key); });
        Opt(mac, "mac", "channel_sensing_duration", [&](auto& n, auto& key) {
            s.mac.channelSensingDuration = Seconds(n, key);
        });
        Opt(mac, "mac", "unit_backoff_period", [&](auto& n, auto& key) {
            s.mac.unitBackoffPeriod = Seconds(n, key);
        });
        Opt(mac, "mac", "queue_capacity", [&](auto& n, auto& key) { s.mac.queueCapacity = U32(n, key); });
        Opt(mac, "mac", "ack_turnaround", [&](auto& n, auto& key) { s.mac.ackTurnaround = Seconds(n, key); });
        try
        {
            s.mac.Validate();
        }
        catch (const ConfigError& e)
        {
            Fail(mac, "mac", e.what());
        }
    }

    if (YAML::Node ring = root["ring"])
    {
        RequireMap(ring, "ring");
        CheckKeys(ring, "ring", {"token_hold_timeout", "token_queue_timeout"});
        Opt(ring, "ring", "token_hold_timeout", [&](auto& n, auto& key) {
            s.ring.tokenHoldTimeout = Seconds(n, key);
        });
        Opt(ring, "ring", "token_queue_timeout", [&](auto& n, auto& key) {
            s.ring.tokenQueueTimeout = Seconds(n, key);
        });
    }

    if (YAML::Node traffic = root["traffic"])
    {
        RequireMap(traffic, "traffic");
        CheckKeys(traffic, "traffic", {"max_payload_bits", "pan_coordinator", "end_device"});
        Opt(traffic, "traffic", "max_payload_bits", [&](auto& n, auto& key) {
            s.maxPayloadBits = U32(n, key);
            if (s.maxPayloadBits < 8)
            {
                Fail(n, key, "must be >= 8");
            }
        });
        if (YAML::Node c = traffic["pan_coordinator"])
        {
            ParseProfile(c, "traffic.pan_coordinator", s.profiles[NodeRole::PanCoordinator]);
        }
        if (YAML::Node e = traffic["end_device"])
        {
            ParseProfile(e, "traffic.end_device", s.profiles[NodeRole::EndDevice]);
        }
    }

    if (YAML::Node run = root["run"])
    {
        RequireMap(run, "run");
        CheckKeys(run, "run", {"duration", "warmup", "bucket_width", "seed"});
        Opt(run, "run", "duration", [&](auto& n, auto& key) { s.duration = Seconds(n, key); });
        Opt(run, "run", "warmup", [&](auto& n, auto& key) {
            double w = Real(n, key);
            if (w < 0)
            {
                Fail(n, key, "must be >= 0");
            }
            s.warmup = SimTime::FromSeconds(w);
        });
        Opt(run, "run", "bucket_width", [&](auto& n, auto& key) { s.bucketWidth = Seconds(n, key); });
        Opt(run, "run", "seed", [&](auto& n, auto& key) {
            s.seed = Unsigned(n, key, std::numeric_limits<uint64_t>::max());
        });
        if (s.warmup >= s.duration)
        {
            Fail(run, "run.warmup", "must be smaller than run.duration");
        }
    }

    if (YAML::Node flags = root["flags"])
    {
        RequireMap(flags, "flags");
        CheckKeys(flags, "flags", {"shared_channel", "strict_sizes", "double_cca"});
        Opt(flags, "flags", "shared_channel", [&](auto& n, auto& key) { s.flags.sharedChannel = Bool(n, key); });
        Opt(flags, "flags", "strict_sizes", [&](auto& n, auto& key) { s.flags.strictSizes = Bool(n, key); });
        Opt(flags, "flags", "double_cca", [&](auto& n, auto& key) { s.flags.doubleCca = Bool(n, key); });
    }

    try
    {
        s.Validate();
    }
    catch (const ConfigError& e)
    {
        throw ConfigError(m_origin + ": " + e.what());
    }
    return s;
}

} // namespace

Scenario
ParseScenario(const std::string& text, const std::string& origin)
{
    return Parser(origin).Parse(text);
}

Scenario
LoadScenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw std::ios_base::failure("cannot read scenario file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return ParseScenario(buffer.str(), path.string());
}

} // namespace wpansim
