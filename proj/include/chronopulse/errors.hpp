#ifndef CHRONOPULSE_ERRORS_HPP
#define CHRONOPULSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chronopulse {

/// Two series do not share a sample grid (rate, length, or timestamps differ).
class GridMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Least-squares design matrix is singular (e.g. all predictor values equal).
class SingularDesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A data file violates its schema; message carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration file or key/value problem.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace chronopulse

#endif
