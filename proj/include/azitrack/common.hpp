#ifndef AZITRACK_COMMON_HPP
#define AZITRACK_COMMON_HPP

#include <stdexcept>
#include <string>

namespace azitrack {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

inline constexpr double deg2rad(double d) { return d * kPi / 180.0; }
inline constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

// Bad user input (out-of-range field, unsorted stream, size mismatch).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Circular mean of perfectly opposed angles: resultant vector is zero.
class DegenerateMeanError : public std::runtime_error {
public:
    explicit DegenerateMeanError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

class InitializationError : public std::runtime_error {
public:
    explicit InitializationError(const std::string& msg) : std::runtime_error(msg) {}
};

class MetricUndefinedError : public std::runtime_error {
public:
    explicit MetricUndefinedError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace azitrack

#endif
