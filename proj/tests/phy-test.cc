#include "wpansim/errors.h"
#include "wpansim/medium.h"
#include "wpansim/simulator.h"

#include <doctest.h>

#include <vector>

using namespace wpansim;

namespace
{

struct Radio : PhyListener
{
    std::vector<FrameId> received;
    std::vector<TransmissionRecord> ended;

    void PhyReceive(const Frame& frame, ChannelId) override
    {
        received.push_back(frame.id);
    }

    void PhyTransmitEnd(const TransmissionRecord& record) override
    {
        ended.push_back(record);
    }
};

Frame
DataFrame(FrameId id, uint32_t bits)
{
    Frame f;
    f.id = id;
    f.payloadBits = bits;
    return f;
}

} // namespace

TEST_CASE("transmission durations at 250 kbit/s")
{
    PhyParams phy;
    CHECK(TransmissionDuration(DataFrame(1, 1024), phy) == SimTime::FromMicroseconds(4704));
    Frame ack;
    ack.kind = FrameKind::Ack;
    CHECK(TransmissionDuration(ack, phy) == SimTime::FromMicroseconds(352));
    CHECK(BitsDuration(1, phy) == SimTime::FromNanoseconds(4000));
}

TEST_CASE("phy parameters are validated")
{
    PhyParams phy;
    phy.dataRate = 0;
    CHECK_THROWS_AS(phy.Validate(), ConfigError);
}

TEST_CASE("carrier sense covers any overlap of the window")
{
    Simulator sim;
    Medium medium(sim, PhyParams{});
    Radio a;
    medium.Attach(ChannelId{0}, 1, &a);
    const ChannelId ch{0};
    // A 1 ms burst: 250 bits minus overhead.
    sim.Schedule(SimTime::FromSeconds(1.0), EventKind::TransmissionStart, 1, [&]() {
        medium.BeginTransmission(ch, 1, DataFrame(1, 98));
    });
    sim.RunUntil(SimTime::FromSeconds(2.0));

    const SimTime start = SimTime::FromSeconds(1.0);
    const SimTime end = start + SimTime::FromMicroseconds(1000);
    const SimTime window = SimTime::FromSeconds(0.1);
    CHECK(medium.CarrierSense(ch, start - SimTime::FromSeconds(0.05), window) == ChannelState::Busy);
    CHECK(medium.CarrierSense(ch, start, window) == ChannelState::Busy);
    CHECK(medium.CarrierSense(ch, end - SimTime::FromNanoseconds(1), window) == ChannelState::Busy);
    // Half-open intervals: touching at an endpoint is not an overlap.
    CHECK(medium.CarrierSense(ch, end, window) == ChannelState::Idle);
    CHECK(medium.CarrierSense(ch, start - window, window) == ChannelState::Idle);
    CHECK(medium.CarrierSense(ChannelId{1}, start, window) == ChannelState::Idle);
}

TEST_CASE("overlapping frames are lost at every receiver")
{
    Simulator sim;
    Medium medium(sim, PhyParams{});
    Radio r1, r2, r3;
    const ChannelId ch{0};
    medium.Attach(ch, 1, &r1);
    medium.Attach(ch, 2, &r2);
    medium.Attach(ch, 3, &r3);
    sim.Schedule(SimTime::FromSeconds(1.0), EventKind::TransmissionStart, 1, [&]() {
        medium.BeginTransmission(ch, 1, DataFrame(10, 1024));
    });
    sim.Schedule(SimTime::FromSeconds(1.004), EventKind::TransmissionStart, 2, [&]() {
        medium.BeginTransmission(ch, 2, DataFrame(20, 1024));
    });
    sim.Schedule(SimTime::FromSeconds(2.0), EventKind::TransmissionStart, 1, [&]() {
        medium.BeginTransmission(ch, 1, DataFrame(30, 1024));
    });
    sim.RunUntil(SimTime::FromSeconds(3.0));
    CHECK(r3.received == std::vector<FrameId>{30});
    CHECK(r2.received == std::vector<FrameId>{30});
    CHECK(r1.received.empty());
    REQUIRE(r1.ended.size() == 2);
    CHECK(r1.ended[0].collided);
    CHECK_FALSE(r1.ended[1].collided);
    CHECK(medium.Stats().transmissions == 3);
    CHECK(medium.Stats().collidedTransmissions == 2);
}

TEST_CASE("back-to-back frames do not collide")
{
    Simulator sim;
    Medium medium(sim, PhyParams{});
    Radio r1, r2, r3;
    const ChannelId ch{0};
    medium.Attach(ch, 1, &r1);
    medium.Attach(ch, 2, &r2);
    medium.Attach(ch, 3, &r3);
    const SimTime t = SimTime::FromSeconds(1.0);
    sim.Schedule(t, EventKind::TransmissionStart, 1, [&]() { medium.BeginTransmission(ch, 1, DataFrame(1, 1024)); });
    sim.Schedule(t + SimTime::FromMicroseconds(4704), EventKind::TransmissionStart, 2, [&]() {
        medium.BeginTransmission(ch, 2, DataFrame(2, 1024));
    });
    sim.RunUntil(SimTime::FromSeconds(2.0));
    CHECK(r3.received == std::vector<FrameId>{1, 2});
}

TEST_CASE("channels are isolated")
{
    Simulator sim;
    Medium medium(sim, PhyParams{});
    Radio a0, b0, a1, b1;
    medium.Attach(ChannelId{0}, 1, &a0);
    medium.Attach(ChannelId{0}, 2, &b0);
    medium.Attach(ChannelId{1}, 3, &a1);
    medium.Attach(ChannelId{1}, 4, &b1);
    const SimTime t = SimTime::FromSeconds(1.0);
    sim.Schedule(t, EventKind::TransmissionStart, 1, [&]() { medium.BeginTransmission(ChannelId{0}, 1, DataFrame(1, 500)); });
    sim.Schedule(t, EventKind::TransmissionStart, 3, [&]() { medium.BeginTransmission(ChannelId{1}, 3, DataFrame(2, 500)); });
    sim.RunUntil(SimTime::FromSeconds(2.0));
    CHECK(b0.received == std::vector<FrameId>{1});
    CHECK(b1.received == std::vector<FrameId>{2});
}

TEST_CASE("a radio cannot transmit twice at once")
{
    Simulator sim;
    Medium medium(sim, PhyParams{});
    Radio a;
    medium.Attach(ChannelId{0}, 1, &a);
    bool threw = false;
    sim.Schedule(SimTime::FromSeconds(1.0), EventKind::TransmissionStart, 1, [&]() {
        medium.BeginTransmission(ChannelId{0}, 1, DataFrame(1, 500));
        CHECK(medium.IsTransmitting(ChannelId{0}, 1));
        try
        {
            medium.BeginTransmission(ChannelId{0}, 1, DataFrame(2, 500));
        }
        catch (const EngineFault&)
        {
            threw = true;
        }
    });
    sim.RunUntil(SimTime::FromSeconds(2.0));
    CHECK(threw);
    CHECK_FALSE(medium.IsTransmitting(ChannelId{0}, 1));
}
