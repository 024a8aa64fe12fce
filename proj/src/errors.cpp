#include "nrange/errors.hpp"

namespace nrange {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidMatrix: return "InvalidMatrix";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::EigenFailure: return "EigenFailure";
        case ErrorKind::ZeroMatrix: return "ZeroMatrix";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::EmptySet: return "EmptySet";
        case ErrorKind::NotContained: return "NotContained";
        case ErrorKind::AmbiguousClassification: return "AmbiguousClassification";
        case ErrorKind::NotNormal: return "NotNormal";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace nrange
