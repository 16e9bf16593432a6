#include "wpansim/trace.h"

#include <sstream>

namespace wpansim
{

const char*
ToString(TraceKind kind)
{
    switch (kind)
    {
    case TraceKind::State:
        return "state";
    case TraceKind::Backoff:
        return "backoff";
    case TraceKind::SenseStart:
        return "sense_start";
    case TraceKind::SenseEnd:
        return "sense_end";
    case TraceKind::TxStart:
        return "tx_start";
    case TraceKind::TxEnd:
        return "tx_end";
    case TraceKind::Receive:
        return "rx";
    case TraceKind::AckTimeout:
        return "ack_timeout";
    case TraceKind::Acked:
        return "acked";
    case TraceKind::GiveUp:
        return "give_up";
    case TraceKind::Drop:
        return "drop";
    case TraceKind::Enqueue:
        return "enqueue";
    case TraceKind::Token:
        return "token";
    case TraceKind::Generate:
        return "generate";
    case TraceKind::Deliver:
        return "deliver";
    }
    return "unknown";
}

std::string
FormatTrace(const TraceRecord& r)
{
    std::ostringstream os;
    os << "t=" << r.time.ToString() << " node=" << r.node << " kind=" << ToString(r.kind)
       << " detail=";
    bool first = true;
    auto field = [&](const char* name, auto value) {
        os << (first ? "" : ",") << name << "=" << value;
        first = false;
    };
    if (r.channel >= 0)
    {
        field("ch", r.channel);
    }
    if (r.frameId != 0)
    {
        field("frame", r.frameId);
    }
    if (r.backoffExponent >= 0)
    {
        field("be", r.backoffExponent);
    }
    if (r.csmaBackoffs >= 0)
    {
        field("nb", r.csmaBackoffs);
    }
    if (r.retransmissions >= 0)
    {
        field("retx", r.retransmissions);
    }
    switch (r.kind)
    {
    case TraceKind::Backoff:
        field("slots", r.value);
        field("sense_at", r.start.ToString());
        break;
    case TraceKind::SenseEnd:
        field("busy", r.flag ? 1 : 0);
        break;
    case TraceKind::TxStart:
        field("bits", r.value);
        field("end", r.end.ToString());
        break;
    case TraceKind::TxEnd:
        field("intact", r.flag ? 1 : 0);
        break;
    case TraceKind::Generate:
    case TraceKind::Deliver:
        field("bits", r.value);
        break;
    default:
        break;
    }
    if (!r.note.empty())
    {
        field("info", r.note);
    }
    if (first)
    {
        os << "-";
    }
    return os.str();
}

Tracer::Tracer(Sink sink, std::size_t tailLength)
    : m_sink(std::move(sink)),
      m_tailLength(tailLength)
{
}

void
Tracer::Emit(TraceRecord record)
{
    if (m_sink)
    {
        m_sink(record);
    }
    if (m_tailLength == 0)
    {
        return;
    }
    if (m_tail.size() == m_tailLength)
    {
        m_tail.pop_front();
    }
    m_tail.push_back(std::move(record));
}

std::vector<TraceRecord>
Tracer::Tail() const
{
    return {m_tail.begin(), m_tail.end()};
}

} // namespace wpansim
