#include "ghostfree/errors.hpp"

namespace ghostfree {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NonCanonicalMap: return "NonCanonicalMap";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::SingularExponent: return "SingularExponent";
    case ErrorKind::ChiSingular: return "ChiSingular";
    case ErrorKind::SigmaZero: return "SigmaZero";
    case ErrorKind::SingularChoice: return "SingularChoice";
    case ErrorKind::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorKind::OmegaInconsistent: return "OmegaInconsistent";
    case ErrorKind::LambdaZero: return "LambdaZero";
    case ErrorKind::DerivationMismatch: return "DerivationMismatch";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace ghostfree
