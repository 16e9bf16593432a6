#ifndef WPANSIM_SIMULATOR_H
#define WPANSIM_SIMULATOR_H

#include "wpansim/sim-time.h"

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace wpansim
{

enum class EventKind : uint8_t
{
    TransmissionStart,
    TransmissionEnd,
    Timer,
    GeneratorTick,
    TokenGrant,
    Control,
};

const char* ToString(EventKind kind);

/// Handle returned by Schedule(); a default-constructed id refers to nothing.
struct EventId
{
    uint64_t seq{0};

    bool IsValid() const
    {
        return seq != 0;
    }
};

struct DispatchedEvent
{
    SimTime time;
    uint64_t seq;
    EventKind kind;
    int32_t target;
};

struct RunSummary
{
    uint64_t dispatched{0};
    SimTime clock;
};

/**
 * Single-threaded discrete-event engine.
 *
 * Events fire in (time, seq) order where seq is issued at scheduling, so
 * simultaneous events run in the order they were scheduled.
 */
class Simulator
{
  public:
    using Handler = std::function<void()>;
    using Observer = std::function<void(const DispatchedEvent&)>;

    /// Throws EngineFault if `at` lies before Now().
    EventId Schedule(SimTime at, EventKind kind, int32_t target, Handler handler);
    EventId ScheduleIn(SimTime delay, EventKind kind, int32_t target, Handler handler);

    /// Cancelling an already fired or cancelled event is a no-op.
    void Cancel(EventId& id);
    bool IsPending(EventId id) const;

    /// Dispatches every pending event with time <= end, then sets the clock to end.
    RunSummary RunUntil(SimTime end);

    SimTime Now() const
    {
        return m_now;
    }

    std::size_t PendingCount() const
    {
        return m_handlers.size();
    }

    void SetObserver(Observer observer)
    {
        m_observer = std::move(observer);
    }

  private:
    struct Entry
    {
        SimTime time;
        uint64_t seq;
        EventKind kind;
        int32_t target;

        bool operator>(const Entry& other) const
        {
            if (time != other.time)
            {
                return time > other.time;
            }
            return seq > other.seq;
        }
    };

    SimTime m_now;
    uint64_t m_nextSeq{1};
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> m_queue;
    std::unordered_map<uint64_t, Handler> m_handlers;
    Observer m_observer;
};

} // namespace wpansim

#endif // WPANSIM_SIMULATOR_H
