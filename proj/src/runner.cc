#include "wpansim/runner.h"

#include "wpansim/errors.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace wpansim
{

OutputFormats
OutputFormats::Parse(const std::string& text)
{
    OutputFormats f{false, false, false};
    if (text == "all")
    {
        return OutputFormats{};
    }
    if (text == "csv")
    {
        f.csv = true;
    }
    else if (text == "summary")
    {
        f.summary = true;
    }
    else if (text == "svg")
    {
        f.svg = true;
    }
    else
    {
        throw ConfigError("--format must be one of csv, summary, svg, all");
    }
    return f;
}

SimulationResult
Simulate(const Scenario& scenario)
{
    WpanSimulation sim(scenario);
    return sim.Run();
}

namespace
{

void
WriteFile(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw OutputError("cannot write " + path.string());
    }
    out << content;
    out.flush();
    if (!out)
    {
        throw OutputError("write failed for " + path.string());
    }
}

} // namespace

RunArtifacts
RunScenario(const Scenario& scenario, const RunOptions& options)
{
    std::error_code ec;
    std::filesystem::create_directories(options.outDir, ec);
    if (ec || !std::filesystem::is_directory(options.outDir))
    {
        throw OutputError("cannot create output directory " + options.outDir.string());
    }
    const std::string stem = scenario.name + "-" + std::to_string(scenario.seed);

    std::unique_ptr<std::ofstream> traceOut;
    Tracer::Sink sink;
    if (options.trace)
    {
        const auto path = options.outDir / (stem + "-trace.log");
        traceOut = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*traceOut)
        {
            throw OutputError("cannot write " + path.string());
        }
        sink = [out = traceOut.get()](const TraceRecord& r) { *out << FormatTrace(r) << "\n"; };
    }

    WpanSimulation sim(scenario, sink);
    if (options.injectFaultAt)
    {
        sim.InjectFault(*options.injectFaultAt);
    }

    RunArtifacts artifacts;
    try
    {
        artifacts.result = sim.Run();
    }
    catch (const EngineFault& e)
    {
        std::vector<std::string> tail;
        for (const auto& r : sim.TraceTail())
        {
            tail.push_back(FormatTrace(r));
        }
        throw RunFault(e.what(), std::move(tail));
    }
    artifacts.meta = MakeMetadata(scenario, sim.GetNetwork());

    if (traceOut)
    {
        traceOut->flush();
        artifacts.files.push_back(options.outDir / (stem + "-trace.log"));
        if (!*traceOut)
        {
            throw OutputError("trace write failed");
        }
    }
    if (options.formats.csv)
    {
        std::ostringstream os;
        WriteCsv(os, artifacts.result.report, artifacts.meta);
        auto path = options.outDir / (stem + ".csv");
        WriteFile(path, os.str());
        artifacts.files.push_back(path);
    }
    if (options.formats.summary)
    {
        std::ostringstream os;
        WriteSummary(os, scenario, artifacts.result, artifacts.meta);
        auto path = options.outDir / (stem + "-summary.txt");
        WriteFile(path, os.str());
        artifacts.files.push_back(path);
    }
    if (options.formats.svg)
    {
        std::ostringstream os;
        WriteRunSvg(os, artifacts.result.report, artifacts.meta);
        auto path = options.outDir / (stem + ".svg");
        WriteFile(path, os.str());
        artifacts.files.push_back(path);
    }
    return artifacts;
}

const char*
MetricName(Metric metric)
{
    switch (metric)
    {
    case Metric::Throughput:
        return "throughput_bps";
    case Metric::Sent:
        return "sent_bps";
    case Metric::Received:
        return "received_bps";
    case Metric::DroppedRate:
        return "dropped_per_s";
    }
    return "unknown";
}

const char*
MetricUnit(Metric metric)
{
    return metric == Metric::DroppedRate ? "packets/s" : "bit/s";
}

double
MetricValue(const GlobalMetrics& g, Metric metric)
{
    switch (metric)
    {
    case Metric::Throughput:
        return g.throughputBps;
    case Metric::Sent:
        return g.sentBps;
    case Metric::Received:
        return g.receivedBps;
    case Metric::DroppedRate:
        return g.droppedPerSec;
    }
    return 0;
}

std::string
ComparisonResult::Ranking(Metric metric) const
{
    std::vector<const ScenarioStats*> order;
    for (const auto& s : scenarios)
    {
        order.push_back(&s);
    }
    std::stable_sort(order.begin(), order.end(), [metric](const ScenarioStats* a, const ScenarioStats* b) {
        return a->stats.at(metric).mean > b->stats.at(metric).mean;
    });
    std::string out = std::string(MetricName(metric)) + ": ";
    for (std::size_t i = 0; i < order.size(); ++i)
    {
        if (i > 0)
        {
            out += order[i - 1]->stats.at(metric).mean == order[i]->stats.at(metric).mean ? " = " : " > ";
        }
        out += order[i]->name;
    }
    return out;
}

ComparisonResult
Compare(std::vector<Scenario> scenarios, const std::vector<uint64_t>& seeds, unsigned threads)
{
    if (scenarios.empty() || seeds.empty())
    {
        throw ConfigError("compare needs at least one scenario and one seed");
    }
    ComparisonResult result;
    SimTime common = scenarios.front().duration;
    for (const auto& s : scenarios)
    {
        common = std::min(common, s.duration);
    }
    for (auto& s : scenarios)
    {
        if (s.duration != common)
        {
            result.warnings.push_back("scenario " + s.name + " duration " + s.duration.ToString() +
                                      " s shortened to the common window " + common.ToString() + " s");
            s.duration = common;
            if (s.warmup >= s.duration)
            {
                throw ConfigError("scenario " + s.name + ": warmup does not fit the common duration");
            }
        }
    }
    result.commonDuration = common;

    struct Job
    {
        std::size_t scenario;
        uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < scenarios.size(); ++i)
    {
        for (uint64_t seed : seeds)
        {
            jobs.push_back(Job{i, seed});
        }
    }
    std::vector<MetricsReport> reports(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex errorMutex;
    std::exception_ptr error;

    auto worker = [&]() {
        for (;;)
        {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size())
            {
                return;
            }
            try
            {
                Scenario sc = scenarios[jobs[k].scenario];
                sc.seed = jobs[k].seed;
                reports[k] = Simulate(sc).report;
            }
            catch (...)
            {
                std::lock_guard lock(errorMutex);
                if (!error)
                {
                    error = std::current_exception();
                }
            }
        }
    };
    if (threads == 0)
    {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
    {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool)
    {
        t.join();
    }
    if (error)
    {
        std::rethrow_exception(error);
    }

    for (std::size_t i = 0; i < scenarios.size(); ++i)
    {
        ScenarioStats stats;
        stats.name = scenarios[i].name;
        for (std::size_t k = 0; k < jobs.size(); ++k)
        {
            if (jobs[k].scenario == i)
            {
                stats.seeds.push_back(jobs[k].seed);
                stats.perSeed.push_back(reports[k].global);
                stats.accounting.push_back(reports[k].accounting);
            }
        }
        for (Metric m : kAllMetrics)
        {
            double sum = 0;
            for (const auto& g : stats.perSeed)
            {
                sum += MetricValue(g, m);
            }
            const double n = static_cast<double>(stats.perSeed.size());
            const double mean = sum / n;
            double sq = 0;
            for (const auto& g : stats.perSeed)
            {
                sq += (MetricValue(g, m) - mean) * (MetricValue(g, m) - mean);
            }
            stats.stats[m] = MetricStats{mean, n > 1 ? std::sqrt(sq / (n - 1)) : 0.0};
        }
        result.scenarios.push_back(std::move(stats));
    }
    return result;
}

void
WriteComparisonTable(std::ostream& os, const ComparisonResult& result)
{
    const bool withStddev = !result.scenarios.empty() && result.scenarios.front().seeds.size() > 1;
    os << "duration: " << result.commonDuration.Seconds() << " s, seeds:";
    if (!result.scenarios.empty())
    {
        for (auto s : result.scenarios.front().seeds)
        {
            os << " " << s;
        }
    }
    os << "\n\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%-16s", "scenario");
    os << line;
    for (Metric m : kAllMetrics)
    {
        std::snprintf(line, sizeof(line), " %24s", MetricName(m));
        os << line;
    }
    os << "\n";
    for (const auto& s : result.scenarios)
    {
        std::snprintf(line, sizeof(line), "%-16s", s.name.c_str());
        os << line;
        for (Metric m : kAllMetrics)
        {
            const auto& st = s.stats.at(m);
            const int decimals = m == Metric::DroppedRate ? 4 : 1;
            if (withStddev)
            {
                std::snprintf(line, sizeof(line), " %13.*f +- %8.*f", decimals, st.mean, decimals, st.stddev);
            }
            else
            {
                std::snprintf(line, sizeof(line), " %24.*f", decimals, st.mean);
            }
            os << line;
        }
        os << "\n";
    }
    os << "\n";
    for (Metric m : kAllMetrics)
    {
        os << result.Ranking(m) << "\n";
    }
}

} // namespace wpansim
