#ifndef WPANSIM_ERRORS_H
#define WPANSIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace wpansim
{

/// Invalid scenario, parameter or topology. Reported to the user as a usage error.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Violated engine or protocol precondition. Reported as an engine fault.
class EngineFault : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

} // namespace wpansim

#endif // WPANSIM_ERRORS_H
