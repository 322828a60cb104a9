#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace critline {

enum class ErrorKind {
    Domain,       // argument outside the supported domain
    Pole,         // evaluation at a pole
    Precision,    // requested accuracy not attainable in double precision
    Numeric,      // iteration failed to converge
    Consistency,  // internal cross-check failed
    Coverage,     // zero cache does not cover the requested range
    MissedZero,   // scan count disagrees with N(T)
    Proximity,    // too close to a zero ordinate or boundary zero
    Resolution,   // winding number not near an integer
    Quadrature,   // panel refinement did not converge
    Fit,          // ill-conditioned least-squares design
    Size,         // problem size guard
    Format,       // malformed input file
    Data,         // input data failed validation
    Parameter,    // invalid user parameter
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exit status the CLI reports for an error of this kind.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

}  // namespace critline
