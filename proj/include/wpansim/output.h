#ifndef WPANSIM_OUTPUT_H
#define WPANSIM_OUTPUT_H

#include "wpansim/metrics.h"
#include "wpansim/scenario.h"
#include "wpansim/wpan-simulation.h"

#include <ostream>
#include <string>
#include <vector>

namespace wpansim
{

struct RunMetadata
{
    std::string scenarioName;
    uint64_t seed{0};
    uint64_t scenarioHash{0};
    std::string generator;
    std::string version;
    std::string topologySummary;
};

RunMetadata MakeMetadata(const Scenario& scenario, const Network& network);

/// Hash as 16 lowercase hex digits.
std::string HashHex(uint64_t hash);

inline constexpr const char* kCsvHeader = "bucket_start_s,throughput_bps,sent_bps,received_bps,dropped_count";

/// Header, one row per bucket, the GLOBAL row, then `#` metadata lines.
void WriteCsv(std::ostream& os, const MetricsReport& report, const RunMetadata& meta);

void WriteSummary(std::ostream& os, const Scenario& scenario, const SimulationResult& result, const RunMetadata& meta);

/// Per-bucket time series, one panel per metric.
void WriteRunSvg(std::ostream& os, const MetricsReport& report, const RunMetadata& meta);

struct BarGroup
{
    std::string label;
    double mean{0};
    double stddev{0};
    bool hasStddev{false};
};

/// Bar chart of one metric across scenarios, with stddev whiskers.
void WriteBarSvg(std::ostream& os, const std::string& title, const std::string& unit, const std::vector<BarGroup>& bars);

} // namespace wpansim

#endif // WPANSIM_OUTPUT_H
