#ifndef WPANSIM_DISTRIBUTION_H
#define WPANSIM_DISTRIBUTION_H

#include "wpansim/random-stream.h"

#include <string>
#include <string_view>
#include <variant>

namespace wpansim
{

/**
 * Stochastic parameter: constant, exponential or uniform.
 *
 * Parameters are validated at construction, so Sample() never fails.
 * Text form is `constant(1.0)`, `exponential(1024)` or `uniform(20, 21)`
 * (case-insensitive).
 */
class Distribution
{
  public:
    enum class Kind
    {
        Constant,
        Exponential,
        Uniform,
    };

    static Distribution Constant(double value);
    static Distribution Exponential(double mean);
    static Distribution Uniform(double low, double high);

    /// Throws ConfigError on malformed text or invalid parameters.
    static Distribution Parse(std::string_view text);

    double Sample(RandomStream& stream) const;

    Kind GetKind() const;
    double Mean() const;
    /// Smallest value Sample() can return.
    double Minimum() const;
    std::string ToString() const;

    bool operator==(const Distribution&) const = default;

  private:
    struct ConstantParams
    {
        double value;
        bool operator==(const ConstantParams&) const = default;
    };

    struct ExponentialParams
    {
        double mean;
        bool operator==(const ExponentialParams&) const = default;
    };

    struct UniformParams
    {
        double low;
        double high;
        bool operator==(const UniformParams&) const = default;
    };

    using Params = std::variant<ConstantParams, ExponentialParams, UniformParams>;

    explicit Distribution(Params params)
        : m_params(params)
    {
    }

    Params m_params;
};

} // namespace wpansim

#endif // WPANSIM_DISTRIBUTION_H
