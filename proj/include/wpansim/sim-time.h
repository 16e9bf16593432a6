#ifndef WPANSIM_SIM_TIME_H
#define WPANSIM_SIM_TIME_H

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace wpansim
{

/**
 * Simulated time held as an integer count of nanoseconds.
 *
 * Integer ticks keep slot arithmetic exact: a 320 us unit backoff period,
 * the 4 us bit time at 250 kbit/s and every duration from the traffic
 * tables are whole nanoseconds, so summing them never drifts. The same type
 * is used for instants and for durations.
 */
class SimTime
{
  public:
    constexpr SimTime() = default;

    static constexpr SimTime FromNanoseconds(int64_t ns)
    {
        return SimTime(ns);
    }

    static constexpr SimTime FromMicroseconds(int64_t us)
    {
        return SimTime(us * 1000);
    }

    /// Rounds to the nearest nanosecond; +inf maps to Infinity().
    static SimTime FromSeconds(double seconds);

    static constexpr SimTime Zero()
    {
        return SimTime(0);
    }

    static constexpr SimTime Infinity()
    {
        return SimTime(std::numeric_limits<int64_t>::max());
    }

    constexpr int64_t Nanoseconds() const
    {
        return m_ns;
    }

    constexpr double Seconds() const
    {
        return static_cast<double>(m_ns) * 1e-9;
    }

    constexpr bool IsInfinite() const
    {
        return m_ns == std::numeric_limits<int64_t>::max();
    }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime other) const
    {
        return SimTime(m_ns + other.m_ns);
    }

    constexpr SimTime operator-(SimTime other) const
    {
        return SimTime(m_ns - other.m_ns);
    }

    constexpr SimTime& operator+=(SimTime other)
    {
        m_ns += other.m_ns;
        return *this;
    }

    constexpr SimTime operator*(int64_t factor) const
    {
        return SimTime(m_ns * factor);
    }

    /// Seconds with nine decimals, e.g. "20.000320000".
    std::string ToString() const;

  private:
    constexpr explicit SimTime(int64_t ns)
        : m_ns(ns)
    {
    }

    int64_t m_ns{0};
};

/// Smallest multiple of `slot` (counted from t=0) that is >= t.
SimTime AlignUp(SimTime t, SimTime slot);

/// True when t is an exact multiple of `slot`.
bool IsAligned(SimTime t, SimTime slot);

std::ostream& operator<<(std::ostream& os, SimTime t);

} // namespace wpansim

#endif // WPANSIM_SIM_TIME_H
