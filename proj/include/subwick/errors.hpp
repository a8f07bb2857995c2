#pragma once

#include <stdexcept>
#include <string>

namespace subwick {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent input: bad dimensions, broken invariants,
/// unparsable data. CLI maps this to exit code 2.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// A configured size cap was exceeded (matrix order, term count,
/// brute-force budget). CLI maps this to exit code 3.
class CapError : public Error {
public:
    explicit CapError(const std::string& msg) : Error(msg) {}
};

/// The method does not apply to this instance: focus certificate failed
/// (min cosine <= 0), degenerate restriction, matrix not PSD.
/// CLI maps this to exit code 3.
class NotApplicableError : public Error {
public:
    explicit NotApplicableError(const std::string& msg) : Error(msg) {}
};

}  // namespace subwick
