#include "wpansim/simulator.h"

#include "wpansim/errors.h"

namespace wpansim
{

const char*
ToString(EventKind kind)
{
    switch (kind)
    {
    case EventKind::TransmissionStart:
        return "tx_start";
    case EventKind::TransmissionEnd:
        return "tx_end";
    case EventKind::Timer:
        return "timer";
    case EventKind::GeneratorTick:
        return "generator";
    case EventKind::TokenGrant:
        return "token";
    case EventKind::Control:
        return "control";
    }
    return "unknown";
}

EventId
Simulator::Schedule(SimTime at, EventKind kind, int32_t target, Handler handler)
{
    if (at < m_now)
    {
        throw EngineFault("event scheduled in the past: at=" + at.ToString() +
                          " now=" + m_now.ToString());
    }
    if (at.IsInfinite())
    {
        return EventId{};
    }
    uint64_t seq = m_nextSeq++;
    m_queue.push(Entry{at, seq, kind, target});
    m_handlers.emplace(seq, std::move(handler));
    return EventId{seq};
}

EventId
Simulator::ScheduleIn(SimTime delay, EventKind kind, int32_t target, Handler handler)
{
    if (delay.IsInfinite())
    {
        return EventId{};
    }
    return Schedule(m_now + delay, kind, target, std::move(handler));
}

void
Simulator::Cancel(EventId& id)
{
    if (id.IsValid())
    {
        m_handlers.erase(id.seq);
        id = EventId{};
    }
}

bool
Simulator::IsPending(EventId id) const
{
    return id.IsValid() && m_handlers.contains(id.seq);
}

RunSummary
Simulator::RunUntil(SimTime end)
{
    if (end < m_now)
    {
        throw EngineFault("RunUntil target lies before the current clock");
    }
    RunSummary summary;
    while (!m_queue.empty() && m_queue.top().time <= end)
    {
        Entry entry = m_queue.top();
        m_queue.pop();
        auto it = m_handlers.find(entry.seq);
        if (it == m_handlers.end())
        {
            continue; // cancelled
        }
        Handler handler = std::move(it->second);
        m_handlers.erase(it);
        m_now = entry.time;
        if (m_observer)
        {
            m_observer(DispatchedEvent{entry.time, entry.seq, entry.kind, entry.target});
        }
        handler();
        ++summary.dispatched;
    }
    m_now = end;
    summary.clock = m_now;
    return summary;
}

} // namespace wpansim
