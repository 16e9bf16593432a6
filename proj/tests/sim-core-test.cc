#include "test-util.h"

#include "wpansim/distribution.h"
#include "wpansim/errors.h"
#include "wpansim/random-stream.h"
#include "wpansim/sim-time.h"
#include "wpansim/simulator.h"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace wpansim;

TEST_CASE("sim time arithmetic is exact in nanoseconds")
{
    const SimTime slot = SimTime::FromMicroseconds(320);
    CHECK(slot.Nanoseconds() == 320000);
    CHECK(SimTime::FromSeconds(0.1).Nanoseconds() == 100000000);
    CHECK(SimTime::FromSeconds(0.00032) == slot);
    CHECK((slot * 3).Nanoseconds() == 960000);
    CHECK(AlignUp(SimTime::FromNanoseconds(1), slot) == slot);
    CHECK(AlignUp(slot, slot) == slot);
    CHECK(AlignUp(SimTime::Zero(), slot) == SimTime::Zero());
    CHECK(IsAligned(slot * 7, slot));
    CHECK_FALSE(IsAligned(slot * 7 + SimTime::FromNanoseconds(1), slot));
    CHECK(SimTime::Infinity().IsInfinite());
    CHECK(SimTime::FromSeconds(INFINITY).IsInfinite());
    CHECK(SimTime::FromSeconds(1.5).ToString() == "1.500000000");
}

TEST_CASE("simultaneous events fire in scheduling order")
{
    Simulator sim;
    std::vector<int> order;
    const SimTime t = SimTime::FromSeconds(1.0);
    sim.Schedule(t, EventKind::Timer, 5, [&]() { order.push_back(1); });
    sim.Schedule(t, EventKind::Timer, 2, [&]() { order.push_back(2); });
    sim.Schedule(SimTime::FromSeconds(0.5), EventKind::Timer, 9, [&]() { order.push_back(0); });
    sim.Schedule(t, EventKind::Timer, 0, [&]() { order.push_back(3); });
    sim.RunUntil(SimTime::FromSeconds(2.0));
    CHECK(order == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("events scheduled at the current time from a handler run after earlier ones")
{
    Simulator sim;
    std::vector<int> order;
    sim.Schedule(SimTime::FromSeconds(1.0), EventKind::Timer, 0, [&]() {
        order.push_back(1);
        sim.ScheduleIn(SimTime::Zero(), EventKind::Timer, 0, [&]() { order.push_back(3); });
    });
    sim.Schedule(SimTime::FromSeconds(1.0), EventKind::Timer, 0, [&]() { order.push_back(2); });
    sim.RunUntil(SimTime::FromSeconds(1.0));
    CHECK(order == std::vector<int>{1, 2, 3});
}

TEST_CASE("scheduling in the past is an engine fault")
{
    Simulator sim;
    sim.RunUntil(SimTime::FromSeconds(5.0));
    CHECK(sim.Now() == SimTime::FromSeconds(5.0));
    CHECK_THROWS_AS(sim.Schedule(SimTime::FromSeconds(4.0), EventKind::Timer, 0, []() {}), EngineFault);
    CHECK_THROWS_AS(sim.ScheduleIn(SimTime::FromNanoseconds(-1), EventKind::Timer, 0, []() {}), EngineFault);
}

TEST_CASE("run until includes events at the end time and stops the clock there")
{
    Simulator sim;
    int fired = 0;
    sim.Schedule(SimTime::FromSeconds(10.0), EventKind::Timer, 0, [&]() { ++fired; });
    sim.Schedule(SimTime::FromSeconds(10.0) + SimTime::FromNanoseconds(1), EventKind::Timer, 0, [&]() { ++fired; });
    const auto summary = sim.RunUntil(SimTime::FromSeconds(10.0));
    CHECK(fired == 1);
    CHECK(summary.dispatched == 1);
    CHECK(sim.Now() == SimTime::FromSeconds(10.0));
    CHECK(sim.PendingCount() == 1);
}

TEST_CASE("cancelled events never fire")
{
    Simulator sim;
    int fired = 0;
    EventId a = sim.Schedule(SimTime::FromSeconds(1.0), EventKind::Timer, 0, [&]() { fired += 1; });
    sim.Schedule(SimTime::FromSeconds(2.0), EventKind::Timer, 0, [&]() { fired += 10; });
    CHECK(sim.IsPending(a));
    sim.Cancel(a);
    CHECK_FALSE(a.IsValid());
    sim.Cancel(a);
    sim.RunUntil(SimTime::FromSeconds(3.0));
    CHECK(fired == 10);
}

TEST_CASE("a million unit-slot ticks end exactly on the slot grid")
{
    Simulator sim;
    const SimTime slot = SimTime::FromMicroseconds(320);
    uint64_t ticks = 0;
    SimTime last;
    std::function<void()> tick = [&]() {
        last = sim.Now();
        if (++ticks < 1000000)
        {
            sim.ScheduleIn(slot, EventKind::Timer, 0, tick);
        }
    };
    sim.Schedule(slot, EventKind::Timer, 0, tick);
    sim.RunUntil(SimTime::FromSeconds(400.0));
    CHECK(ticks == 1000000);
    CHECK(last.Nanoseconds() == int64_t{320000} * 1000000);
    CHECK(last.Seconds() == 320.0);
}

TEST_CASE("random streams are reproducible and distinct")
{
    RandomStream a(42, RandomStream::StreamIdFor(3, StreamPurpose::Backoff));
    RandomStream b(42, RandomStream::StreamIdFor(3, StreamPurpose::Backoff));
    RandomStream c(42, RandomStream::StreamIdFor(3, StreamPurpose::Size));
    RandomStream d(43, RandomStream::StreamIdFor(3, StreamPurpose::Backoff));
    bool allSame = true;
    bool differC = false;
    bool differD = false;
    for (int i = 0; i < 100; ++i)
    {
        const double x = a.NextUniform();
        allSame &= x == b.NextUniform();
        differC |= x != c.NextUniform();
        differD |= x != d.NextUniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(allSame);
    CHECK(differC);
    CHECK(differD);
    std::set<uint64_t> ids;
    for (uint32_t node = 0; node < 20; ++node)
    {
        for (auto p : {StreamPurpose::Interarrival, StreamPurpose::Size, StreamPurpose::Start, StreamPurpose::Backoff,
                       StreamPurpose::Destination})
        {
            for (uint32_t sub = 0; sub < 2; ++sub)
            {
                ids.insert(RandomStream::StreamIdFor(node, p, sub));
            }
        }
    }
    CHECK(ids.size() == 200);
}

TEST_CASE("bounded integers are uniform")
{
    RandomStream s(7, 99);
    std::vector<int> counts(8, 0);
    const int n = 80000;
    for (int i = 0; i < n; ++i)
    {
        const uint64_t v = s.NextBelow(8);
        REQUIRE(v < 8);
        ++counts[v];
    }
    double chi2 = 0;
    for (int c : counts)
    {
        chi2 += (c - n / 8.0) * (c - n / 8.0) / (n / 8.0);
    }
    // chi-square 0.999 quantile with 7 degrees of freedom.
    CHECK(chi2 < 24.32);
}

TEST_CASE("streams of different nodes are independent")
{
    // Joint 4x4 contingency table of paired draws from two streams.
    RandomStream a(1, RandomStream::StreamIdFor(0, StreamPurpose::Interarrival));
    RandomStream b(1, RandomStream::StreamIdFor(1, StreamPurpose::Interarrival));
    const int n = 160000;
    int table[4][4] = {};
    for (int i = 0; i < n; ++i)
    {
        ++table[a.NextBelow(4)][b.NextBelow(4)];
    }
    double chi2 = 0;
    for (auto& row : table)
    {
        for (int c : row)
        {
            chi2 += (c - n / 16.0) * (c - n / 16.0) / (n / 16.0);
        }
    }
    // chi-square 0.999 quantile with 15 degrees of freedom.
    CHECK(chi2 < 37.70);
}

TEST_CASE("distribution parsing and validation")
{
    CHECK(Distribution::Parse("constant(1.0)") == Distribution::Constant(1.0));
    CHECK(Distribution::Parse("Exponential (1024)") == Distribution::Exponential(1024));
    CHECK(Distribution::Parse("uniform(20, 21)") == Distribution::Uniform(20, 21));
    CHECK_THROWS_AS(Distribution::Parse("normal(1)"), ConfigError);
    CHECK_THROWS_AS(Distribution::Parse("uniform(3, 2)"), ConfigError);
    CHECK_THROWS_AS(Distribution::Parse("exponential(0)"), ConfigError);
    CHECK_THROWS_AS(Distribution::Parse("exponential(-1)"), ConfigError);
    CHECK_THROWS_AS(Distribution::Parse("constant"), ConfigError);
    CHECK(Distribution::Uniform(20, 21).Mean() == doctest::Approx(20.5));
    CHECK(Distribution::Exponential(2.0).Minimum() == 0.0);
}

TEST_CASE("constant distribution returns its value exactly")
{
    RandomStream s(1, 1);
    const auto d = Distribution::Constant(1024.0);
    for (int i = 0; i < 1000; ++i)
    {
        REQUIRE(d.Sample(s) == 1024.0);
    }
}

TEST_CASE("exponential samples match their mean")
{
    RandomStream s(3, 11);
    const auto d = Distribution::Exponential(1.0);
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
    {
        const double x = d.Sample(s);
        REQUIRE(x >= 0.0);
        sum += x;
    }
    CHECK(std::abs(sum / n - 1.0) < 0.01);
}

TEST_CASE("uniform samples stay in range")
{
    RandomStream s(5, 6);
    const auto d = Distribution::Uniform(20.0, 21.0);
    for (int i = 0; i < 100000; ++i)
    {
        const double x = d.Sample(s);
        REQUIRE(x >= 20.0);
        REQUIRE(x < 21.0);
    }
}

TEST_CASE("exponential and uniform pass a Kolmogorov-Smirnov test")
{
    const std::size_t n = 100000;
    const double critical = test::KsCritical(0.001, n);
    RandomStream s(9, 1234);
    std::vector<double> exp(n);
    std::vector<double> uni(n);
    const auto e = Distribution::Exponential(1.0);
    const auto u = Distribution::Uniform(20.0, 21.0);
    for (std::size_t i = 0; i < n; ++i)
    {
        exp[i] = e.Sample(s);
        uni[i] = u.Sample(s);
    }
    CHECK(test::KsStatistic(exp, [](double x) { return 1.0 - std::exp(-x); }) < critical);
    CHECK(test::KsStatistic(uni, [](double x) { return std::clamp(x - 20.0, 0.0, 1.0); }) < critical);
}
