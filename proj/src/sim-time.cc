#include "wpansim/sim-time.h"

#include "wpansim/errors.h"

#include <cmath>
#include <cstdio>

namespace wpansim
{

SimTime
SimTime::FromSeconds(double seconds)
{
    if (std::isinf(seconds) && seconds > 0)
    {
        return Infinity();
    }
    if (!std::isfinite(seconds))
    {
        throw ConfigError("time value is not finite");
    }
    double ns = std::round(seconds * 1e9);
    if (ns >= 9.2e18 || ns <= -9.2e18)
    {
        throw ConfigError("time value out of range: " + std::to_string(seconds));
    }
    return SimTime(static_cast<int64_t>(ns));
}

std::string
SimTime::ToString() const
{
    if (IsInfinite())
    {
        return "inf";
    }
    char buf[48];
    int64_t ns = m_ns;
    const char* sign = "";
    if (ns < 0)
    {
        sign = "-";
        ns = -ns;
    }
    std::snprintf(buf,
                  sizeof(buf),
                  "%s%lld.%09lld",
                  sign,
                  static_cast<long long>(ns / 1000000000),
                  static_cast<long long>(ns % 1000000000));
    return buf;
}

SimTime
AlignUp(SimTime t, SimTime slot)
{
    int64_t s = slot.Nanoseconds();
    int64_t ns = t.Nanoseconds();
    int64_t rem = ns % s;
    if (rem == 0)
    {
        return t;
    }
    return SimTime::FromNanoseconds(ns - rem + s);
}

bool
IsAligned(SimTime t, SimTime slot)
{
    return t.Nanoseconds() % slot.Nanoseconds() == 0;
}

std::ostream&
operator<<(std::ostream& os, SimTime t)
{
    return os << t.ToString();
}

} // namespace wpansim
