#include "wpansim/distribution.h"

#include "wpansim/errors.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace wpansim
{

namespace
{

std::string
Trim(std::string_view s)
{
    auto begin = s.find_first_not_of(" \t");
    if (begin == std::string_view::npos)
    {
        return {};
    }
    auto end = s.find_last_not_of(" \t");
    return std::string(s.substr(begin, end - begin + 1));
}

double
ParseNumber(const std::string& text, std::string_view whole)
{
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
    {
        throw ConfigError("bad number '" + text + "' in distribution '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

Distribution
Distribution::Constant(double value)
{
    if (!std::isfinite(value))
    {
        throw ConfigError("constant distribution value must be finite");
    }
    return Distribution(ConstantParams{value});
}

Distribution
Distribution::Exponential(double mean)
{
    if (!(mean > 0) || !std::isfinite(mean))
    {
        throw ConfigError("exponential distribution mean must be > 0");
    }
    return Distribution(ExponentialParams{mean});
}

Distribution
Distribution::Uniform(double low, double high)
{
    if (!std::isfinite(low) || !std::isfinite(high) || !(low < high))
    {
        throw ConfigError("uniform distribution requires low < high");
    }
    return Distribution(UniformParams{low, high});
}

Distribution
Distribution::Parse(std::string_view text)
{
    std::string lower;
    lower.reserve(text.size());
    for (char c : text)
    {
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    auto open = lower.find('(');
    auto close = lower.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open ||
        !Trim(std::string_view(lower).substr(close + 1)).empty())
    {
        throw ConfigError("malformed distribution '" + std::string(text) +
                          "', expected e.g. exponential(1.0)");
    }
    std::string name = Trim(std::string_view(lower).substr(0, open));
    std::vector<double> args;
    std::string inner = lower.substr(open + 1, close - open - 1);
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        args.push_back(ParseNumber(Trim(item), text));
    }
    auto expect = [&](std::size_t n) {
        if (args.size() != n)
        {
            throw ConfigError("distribution '" + std::string(text) + "' takes " +
                              std::to_string(n) + " argument(s)");
        }
    };
    if (name == "constant")
    {
        expect(1);
        return Constant(args[0]);
    }
    if (name == "exponential")
    {
        expect(1);
        return Exponential(args[0]);
    }
    if (name == "uniform")
    {
        expect(2);
        return Uniform(args[0], args[1]);
    }
    throw ConfigError("unknown distribution family '" + name + "'");
}

double
Distribution::Sample(RandomStream& stream) const
{
    struct Visitor
    {
        RandomStream& stream;

        double operator()(const ConstantParams& p) const
        {
            return p.value;
        }

        double operator()(const ExponentialParams& p) const
        {
            // 1 - u lies in (0, 1], so the log is finite and the sample >= 0.
            return -p.mean * std::log1p(-stream.NextUniform());
        }

        double operator()(const UniformParams& p) const
        {
            double x = p.low + (p.high - p.low) * stream.NextUniform();
            // Rounding can land exactly on `high` for some ranges.
            return std::min(x, std::nextafter(p.high, p.low));
        }
    };
    return std::visit(Visitor{stream}, m_params);
}

Distribution::Kind
Distribution::GetKind() const
{
    return static_cast<Kind>(m_params.index());
}

double
Distribution::Mean() const
{
    struct Visitor
    {
        double operator()(const ConstantParams& p) const
        {
            return p.value;
        }

        double operator()(const ExponentialParams& p) const
        {
            return p.mean;
        }

        double operator()(const UniformParams& p) const
        {
            return 0.5 * (p.low + p.high);
        }
    };
    return std::visit(Visitor{}, m_params);
}

double
Distribution::Minimum() const
{
    struct Visitor
    {
        double operator()(const ConstantParams& p) const
        {
            return p.value;
        }

        double operator()(const ExponentialParams&) const
        {
            return 0.0;
        }

        double operator()(const UniformParams& p) const
        {
            return p.low;
        }
    };
    return std::visit(Visitor{}, m_params);
}

std::string
Distribution::ToString() const
{
    std::ostringstream os;
    os.precision(17);
    struct Visitor
    {
        std::ostringstream& os;

        void operator()(const ConstantParams& p) const
        {
            os << "constant(" << p.value << ")";
        }

        void operator()(const ExponentialParams& p) const
        {
            os << "exponential(" << p.mean << ")";
        }

        void operator()(const UniformParams& p) const
        {
            os << "uniform(" << p.low << ", " << p.high << ")";
        }
    };
    std::visit(Visitor{os}, m_params);
    return os.str();
}

} // namespace wpansim
