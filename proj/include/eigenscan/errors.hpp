#ifndef EIGENSCAN_ERRORS_HPP
#define EIGENSCAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eigenscan {

/// Malformed or inconsistent input: bad files, header mismatches,
/// dimension mismatches, unsupported document versions.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& message) : std::runtime_error(message) {}
};

/// Numerically degenerate input: zero covariance, nonpositive spectrum,
/// eigensolver non-convergence.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace eigenscan

#endif
