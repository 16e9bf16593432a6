#ifndef WPANSIM_RUNNER_H
#define WPANSIM_RUNNER_H

#include "wpansim/output.h"
#include "wpansim/scenario.h"
#include "wpansim/wpan-simulation.h"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpansim
{

struct OutputFormats
{
    bool csv{true};
    bool summary{true};
    bool svg{true};

    /// csv, summary, svg or all.
    static OutputFormats Parse(const std::string& text);
};

struct RunOptions
{
    std::filesystem::path outDir{"out"};
    bool trace{false};
    OutputFormats formats;
    std::optional<SimTime> injectFaultAt;
};

/// Output could not be written.
class OutputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// The engine faulted; carries the last trace lines before the fault.
class RunFault : public std::runtime_error
{
  public:
    RunFault(const std::string& what, std::vector<std::string> tail)
        : std::runtime_error(what),
          m_tail(std::move(tail))
    {
    }

    const std::vector<std::string>& Tail() const
    {
        return m_tail;
    }

  private:
    std::vector<std::string> m_tail;
};

struct RunArtifacts
{
    SimulationResult result;
    RunMetadata meta;
    std::vector<std::filesystem::path> files;
};

/// `<out>/<name>-<seed>.csv`, `-summary.txt`, `.svg` and `-trace.log` as requested.
RunArtifacts RunScenario(const Scenario& scenario, const RunOptions& options);

/// Runs the simulation in memory only.
SimulationResult Simulate(const Scenario& scenario);

enum class Metric
{
    Throughput,
    Sent,
    Received,
    DroppedRate,
};

inline constexpr Metric kAllMetrics[] = {Metric::Throughput, Metric::Sent, Metric::Received, Metric::DroppedRate};

const char* MetricName(Metric metric);
const char* MetricUnit(Metric metric);
double MetricValue(const GlobalMetrics& global, Metric metric);

struct MetricStats
{
    double mean{0};
    double stddev{0};
};

struct ScenarioStats
{
    std::string name;
    std::vector<uint64_t> seeds;
    std::vector<GlobalMetrics> perSeed;
    std::vector<FrameAccounting> accounting;
    std::map<Metric, MetricStats> stats;
};

struct ComparisonResult
{
    std::vector<ScenarioStats> scenarios;
    SimTime commonDuration;
    std::vector<std::string> warnings;

    /// e.g. "throughput_bps: cluster > star > ring"
    std::string Ranking(Metric metric) const;
};

/// Every (scenario, seed) pair, on up to `threads` workers; results sorted by scenario then seed.
ComparisonResult Compare(std::vector<Scenario> scenarios, const std::vector<uint64_t>& seeds, unsigned threads = 0);

void WriteComparisonTable(std::ostream& os, const ComparisonResult& result);

} // namespace wpansim

#endif // WPANSIM_RUNNER_H
