#include "critline/error.hpp"

namespace critline {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::Precision: return "precision";
        case ErrorKind::Numeric: return "numeric";
        case ErrorKind::Consistency: return "consistency";
        case ErrorKind::Coverage: return "coverage";
        case ErrorKind::MissedZero: return "missed-zero";
        case ErrorKind::Proximity: return "proximity";
        case ErrorKind::Resolution: return "resolution";
        case ErrorKind::Quadrature: return "quadrature";
        case ErrorKind::Fit: return "fit";
        case ErrorKind::Size: return "size";
        case ErrorKind::Format: return "format";
        case ErrorKind::Data: return "data";
        case ErrorKind::Parameter: return "parameter";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parameter:
        case ErrorKind::Domain:
        case ErrorKind::Pole:
        case ErrorKind::Size:
        case ErrorKind::Format:
            return 2;
        case ErrorKind::Coverage:
            return 3;
        default:
            return 4;
    }
}

}  // namespace critline
