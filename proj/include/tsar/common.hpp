#ifndef TSAR_COMMON_HPP
#define TSAR_COMMON_HPP

#include <stdexcept>
#include <string>

namespace tsar {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameter or input outside its documented domain (bad beta, negative
/// lambda, rho out of range, undefined moments, degenerate series, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// A numerical routine failed to converge or produced an unusable result.
/// The message carries the residual/diagnostic information.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

/// Estimation failed (no feasible root, impossible moments, too few
/// tail exceedances, too many bootstrap failures).
class EstimationError : public Error {
public:
    explicit EstimationError(const std::string& msg) : Error(msg) {}
};

/// File system / CSV / JSON input-output failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace tsar

#endif
