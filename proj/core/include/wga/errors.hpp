#pragma once

#include <stdexcept>
#include <string>

namespace wga {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid input or contract violation by the caller (mismatched group
/// specs, malformed literals, out-of-domain evaluation).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Integer overflow in group element arithmetic.
class OverflowError : public Error {
  public:
    using Error::Error;
};

/// A configured resource cap was exceeded (enumeration size, convolution
/// power support, finite group order).
class ResourceError : public Error {
  public:
    ResourceError(const std::string& what, long long largest_feasible = -1)
        : Error(what), largest_feasible(largest_feasible) {}

    /// Largest parameter value that stayed within the cap, or -1 if unknown.
    long long largest_feasible;
};

/// Aliasing detected during coefficient recovery: the declared index window
/// does not hold all the energy of the sampled transform.
class AliasingError : public Error {
  public:
    AliasingError(const std::string& what, double leaked_energy_ratio)
        : Error(what), leaked_energy_ratio(leaked_energy_ratio) {}

    double leaked_energy_ratio;
};

/// An interpolation/solve was rejected because its condition estimate
/// exceeds the configured cap.
class ConditioningError : public Error {
  public:
    ConditioningError(const std::string& what, double condition_estimate)
        : Error(what), condition_estimate(condition_estimate) {}

    double condition_estimate;
};

} // namespace wga
