#pragma once

#include <stdexcept>
#include <string>

namespace lquot {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument within tolerance of a pole of Gamma / psi^(m).
struct PoleError : Error {
    using Error::Error;
};

// Input violates a documented precondition or type invariant.
struct DomainError : Error {
    using Error::Error;
};

// Coefficient range insufficient for the requested certified accuracy.
struct TruncationError : Error {
    using Error::Error;
};

// |L(s)| numerically indistinguishable from zero where a quotient is needed.
struct ZeroValueError : Error {
    using Error::Error;
};

// A theorem hypothesis (weight/degree/range condition) is not met.
struct HypothesisError : Error {
    using Error::Error;
};

// An integer set fails the pairwise private-prime condition.
struct PropertyAError : Error {
    using Error::Error;
};

// Numeric evaluation is out of scope for the given family shape.
struct UnsupportedFamilyError : Error {
    using Error::Error;
};

// Malformed input file; carries a 1-based line number when known.
struct FileFormatError : Error {
    explicit FileFormatError(const std::string& msg, long line = 0)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_number(line) {}
    long line_number;
};

struct InternalError : Error {
    using Error::Error;
};

} // namespace lquot
