#include "wpansim/errors.h"
#include "wpansim/output.h"
#include "wpansim/runner.h"
#include "wpansim/scenario.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace wpansim;

namespace
{

enum ExitCode
{
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kFault = 3,
};

struct Overrides
{
    std::optional<uint64_t> seed;
    std::optional<double> duration;
    std::optional<double> warmup;
    std::optional<double> bucket;

    void Apply(Scenario& scenario) const
    {
        if (seed)
        {
            scenario.seed = *seed;
        }
        if (duration)
        {
            scenario.duration = SimTime::FromSeconds(*duration);
        }
        if (warmup)
        {
            scenario.warmup = SimTime::FromSeconds(*warmup);
        }
        if (bucket)
        {
            scenario.bucketWidth = SimTime::FromSeconds(*bucket);
        }
        scenario.Validate();
    }
};

std::string
DefaultOutDir()
{
    const char* env = std::getenv("WPANSIM_OUT");
    return env && *env ? env : "out";
}

void
PrintTail(const std::vector<std::string>& tail)
{
    std::cerr << "last trace records:\n";
    for (const auto& line : tail)
    {
        std::cerr << "  " << line << "\n";
    }
}

int
DoRun(const std::string& path, const Overrides& overrides, const RunOptions& options)
{
    Scenario scenario = LoadScenario(path);
    overrides.Apply(scenario);
    RunArtifacts artifacts = RunScenario(scenario, options);
    WriteSummary(std::cout, scenario, artifacts.result, artifacts.meta);
    for (const auto& file : artifacts.files)
    {
        std::cout << "wrote " << file.string() << "\n";
    }
    return kOk;
}

int
DoCompare(const std::vector<std::string>& paths,
          const Overrides& overrides,
          const std::vector<uint64_t>& seeds,
          unsigned threads,
          const std::filesystem::path& outDir)
{
    std::vector<Scenario> scenarios;
    for (const auto& path : paths)
    {
        Scenario scenario = LoadScenario(path);
        overrides.Apply(scenario);
        scenarios.push_back(std::move(scenario));
    }
    ComparisonResult result = Compare(std::move(scenarios), seeds, threads);
    for (const auto& warning : result.warnings)
    {
        std::cerr << "warning: " << warning << "\n";
    }
    WriteComparisonTable(std::cout, result);

    std::error_code ec;
    std::filesystem::create_directories(outDir, ec);
    if (ec)
    {
        throw OutputError("cannot create " + outDir.string() + ": " + ec.message());
    }
    auto open = [](const std::filesystem::path& file) {
        std::ofstream os(file);
        if (!os)
        {
            throw OutputError("cannot write " + file.string());
        }
        return os;
    };
    {
        auto file = outDir / "comparison.txt";
        auto os = open(file);
        WriteComparisonTable(os, result);
        std::cout << "wrote " << file.string() << "\n";
    }
    for (Metric metric : kAllMetrics)
    {
        std::vector<BarGroup> bars;
        for (const auto& s : result.scenarios)
        {
            const auto& st = s.stats.at(metric);
            bars.push_back({s.name, st.mean, st.stddev, s.seeds.size() > 1});
        }
        auto file = outDir / (std::string("comparison-") + MetricName(metric) + ".svg");
        auto os = open(file);
        WriteBarSvg(os, MetricName(metric), MetricUnit(metric), bars);
        std::cout << "wrote " << file.string() << "\n";
    }
    return kOk;
}

int
DoValidate(const std::string& path, const Overrides& overrides)
{
    Scenario scenario = LoadScenario(path);
    overrides.Apply(scenario);
    Network network = scenario.BuildNetwork();
    std::cout << path << ": ok\n"
              << "name: " << scenario.name << "\n"
              << "topology: " << network.Summary() << "\n"
              << "hash: " << HashHex(scenario.Hash()) << "\n";
    return kOk;
}

} // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"Discrete-event simulator for IEEE 802.15.4 networks under slotted CSMA/CA", "wpansim"};
    app.set_version_flag("--version", WPANSIM_VERSION);
    app.require_subcommand(1);

    Overrides overrides;
    std::string outDir = DefaultOutDir();

    auto addOverrides = [&](CLI::App* sub) {
        sub->add_option("--seed", overrides.seed, "Base random seed");
        sub->add_option("--duration", overrides.duration, "Simulated seconds");
        sub->add_option("--warmup", overrides.warmup, "Seconds excluded from metrics");
        sub->add_option("--bucket", overrides.bucket, "Metric bucket width in seconds");
    };

    std::string runPath;
    bool trace = false;
    std::string format = "all";
    std::optional<double> injectFault;
    auto* run = app.add_subcommand("run", "Run one scenario");
    run->add_option("scenario", runPath, "Scenario file")->required();
    addOverrides(run);
    run->add_option("--out-dir", outDir, "Output directory (default $WPANSIM_OUT or ./out)");
    run->add_flag("--trace", trace, "Write the per-event trace log");
    run->add_option("--format", format, "csv, summary, svg or all")
        ->check(CLI::IsMember({"csv", "summary", "svg", "all"}));
    run->add_option("--inject-fault", injectFault)->group("");

    std::vector<std::string> comparePaths;
    std::vector<uint64_t> seeds;
    unsigned threads = 0;
    auto* compare = app.add_subcommand("compare", "Run scenarios over several seeds and rank them");
    compare->add_option("scenarios", comparePaths, "Scenario files")->required();
    addOverrides(compare);
    compare->add_option("--seeds", seeds, "Seeds to run (default 1..10)")->delimiter(',');
    compare->add_option("--threads", threads, "Worker threads (default: hardware concurrency)");
    compare->add_option("--out-dir", outDir, "Output directory (default $WPANSIM_OUT or ./out)");

    std::string validatePath;
    auto* validate = app.add_subcommand("validate", "Check a scenario file without running it");
    validate->add_option("scenario", validatePath, "Scenario file")->required();
    addOverrides(validate);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try
    {
        if (*run)
        {
            RunOptions options;
            options.outDir = outDir;
            options.trace = trace;
            options.formats = OutputFormats::Parse(format);
            if (injectFault)
            {
                options.injectFaultAt = SimTime::FromSeconds(*injectFault);
            }
            return DoRun(runPath, overrides, options);
        }
        if (*compare)
        {
            if (seeds.empty())
            {
                for (uint64_t s = 1; s <= 10; ++s)
                {
                    seeds.push_back(s);
                }
            }
            return DoCompare(comparePaths, overrides, seeds, threads, outDir);
        }
        return DoValidate(validatePath, overrides);
    }
    catch (const ConfigError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const std::ios_base::failure& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    catch (const OutputError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    catch (const RunFault& e)
    {
        std::cerr << "engine fault: " << e.what() << "\n";
        PrintTail(e.Tail());
        return kFault;
    }
    catch (const EngineFault& e)
    {
        std::cerr << "engine fault: " << e.what() << "\n";
        return kFault;
    }
}
