#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace
{

const std::string kCli = WPANSIM_CLI;
const std::string kScenarios = std::string(WPANSIM_SOURCE_DIR) + "/scenarios/";

std::string
Slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int
Run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " '" + kCli + "' " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string
Capture(const std::string& args, int& code)
{
    const fs::path out = fs::temp_directory_path() / "wpansim-cli-capture.txt";
    const std::string cmd = "'" + kCli + "' " + args + " >'" + out.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return Slurp(out);
}

fs::path
FreshDir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("wpansim-cli-" + name);
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("usage errors exit with 1")
{
    CHECK(Run("") == 1);
    CHECK(Run("run") == 1);
    CHECK(Run("frobnicate x") == 1);
    CHECK(Run("run " + kScenarios + "star.scn --format pdf") == 1);
    CHECK(Run("run " + kScenarios + "star.scn --duration -5") == 1);
    const fs::path bad = FreshDir("bad") / "bad.scn";
    fs::create_directories(bad.parent_path());
    std::ofstream(bad) << "name: bad\ntopology:\n  kind: star\nfoo: 1\n";
    CHECK(Run("validate " + bad.string()) == 1);
    CHECK(Run("--help") == 0);
}

TEST_CASE("I/O errors exit with 2")
{
    CHECK(Run("run /nonexistent/none.scn") == 2);
    const fs::path dir = FreshDir("io");
    fs::create_directories(dir);
    std::ofstream(dir / "blocker") << "x";
    CHECK(Run("run " + kScenarios + "star.scn --duration 30 --out-dir " + (dir / "blocker" / "sub").string()) == 2);
}

TEST_CASE("engine faults exit with 3 and print the trace tail")
{
    const fs::path dir = FreshDir("fault");
    int code = 0;
    const std::string out =
        Capture("run " + kScenarios + "star.scn --duration 60 --inject-fault 30 --out-dir " + dir.string(), code);
    CHECK(code == 3);
    CHECK(out.find("engine fault") != std::string::npos);
    CHECK(out.find("t=") != std::string::npos);
    CHECK(out.find("kind=") != std::string::npos);
}

TEST_CASE("identical runs write byte-identical CSV")
{
    const fs::path a = FreshDir("det-a");
    const fs::path b = FreshDir("det-b");
    REQUIRE(Run("run " + kScenarios + "star.scn --seed 7 --format csv --out-dir " + a.string()) == 0);
    REQUIRE(Run("run " + kScenarios + "star.scn --seed 7 --format csv --out-dir " + b.string()) == 0);
    const std::string csvA = Slurp(a / "star-7.csv");
    CHECK(!csvA.empty());
    CHECK(csvA == Slurp(b / "star-7.csv"));
    CHECK(csvA.rfind("bucket_start_s,throughput_bps,sent_bps,received_bps,dropped_count\n", 0) == 0);
    CHECK(csvA.find("\nGLOBAL,") != std::string::npos);
    CHECK(csvA.find("seed") != std::string::npos);
    CHECK(csvA.find("hash") != std::string::npos);
}

TEST_CASE("command-line duration overrides the file")
{
    const fs::path dir = FreshDir("dur");
    REQUIRE(Run("run " + kScenarios + "cluster.scn --duration 60 --out-dir " + dir.string()) == 0);
    const std::string csv = Slurp(dir / "cluster-1.csv");
    std::istringstream in(csv);
    std::string line;
    int buckets = 0;
    std::getline(in, line);
    while (std::getline(in, line) && line.rfind("GLOBAL", 0) != 0)
    {
        ++buckets;
    }
    // (60 - 20) / 10 buckets.
    CHECK(buckets == 4);
    CHECK(fs::exists(dir / "cluster-1-summary.txt"));
    CHECK(fs::exists(dir / "cluster-1.svg"));
    CHECK(Slurp(dir / "cluster-1-summary.txt").find("60.000 s") != std::string::npos);
}

TEST_CASE("trace flag writes the per-event log")
{
    const fs::path dir = FreshDir("trace");
    REQUIRE(Run("run " + kScenarios + "ring.scn --duration 30 --trace --format summary --out-dir " + dir.string()) == 0);
    const std::string log = Slurp(dir / "ring-1-trace.log");
    CHECK(log.rfind("t=", 0) == 0);
    CHECK(log.find(" node=") != std::string::npos);
    CHECK(log.find(" kind=") != std::string::npos);
    CHECK(log.find(" detail=") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "ring-1.csv"));

    const fs::path quiet = FreshDir("notrace");
    REQUIRE(Run("run " + kScenarios + "ring.scn --duration 30 --out-dir " + quiet.string()) == 0);
    CHECK_FALSE(fs::exists(quiet / "ring-1-trace.log"));
}

TEST_CASE("output directory defaults to the environment setting")
{
    const fs::path dir = FreshDir("env");
    REQUIRE(Run("run " + kScenarios + "star.scn --duration 30 --format csv", "WPANSIM_OUT='" + dir.string() + "'") == 0);
    CHECK(fs::exists(dir / "star-1.csv"));
}

TEST_CASE("validate and compare")
{
    CHECK(Run("validate " + kScenarios + "ring.scn") == 0);
    const fs::path dir = FreshDir("cmp");
    int code = 0;
    const std::string out = Capture("compare " + kScenarios + "cluster.scn " + kScenarios + "star.scn " + kScenarios +
                                        "ring.scn --seeds 1,2 --duration 60 --out-dir " + dir.string(),
                                    code);
    CHECK(code == 0);
    CHECK(out.find("throughput_bps:") != std::string::npos);
    CHECK(fs::exists(dir / "comparison.txt"));
    for (const char* metric : {"throughput_bps", "sent_bps", "received_bps", "dropped_per_s"})
    {
        CHECK(fs::exists(dir / (std::string("comparison-") + metric + ".svg")));
    }
    CHECK(Run("compare " + kScenarios + "star.scn --seeds 3 --duration 40 --out-dir " + dir.string()) == 0);
}
