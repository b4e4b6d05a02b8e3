#include "ptopos/error.h"

namespace ptopos {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MissingIdentity: return "MissingIdentity";
        case ErrorKind::MissingComposite: return "MissingComposite";
        case ErrorKind::CompositionDomainMismatch: return "CompositionDomainMismatch";
        case ErrorKind::AssociativityViolation: return "AssociativityViolation";
        case ErrorKind::IdentityLawViolation: return "IdentityLawViolation";
        case ErrorKind::NotAPoset: return "NotAPoset";
        case ErrorKind::UnknownObject: return "UnknownObject";
        case ErrorKind::UnknownArrow: return "UnknownArrow";
        case ErrorKind::NotComposable: return "NotComposable";
        case ErrorKind::BaseMismatch: return "BaseMismatch";
        case ErrorKind::NotATopology: return "NotATopology";
        case ErrorKind::MalformedPresheaf: return "MalformedPresheaf";
        case ErrorKind::ComponentDomainMismatch: return "ComponentDomainMismatch";
        case ErrorKind::NotASubobject: return "NotASubobject";
        case ErrorKind::NotNatural: return "NotNatural";
        case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
        case ErrorKind::NotOrthogonal: return "NotOrthogonal";
        case ErrorKind::IncompleteBasis: return "IncompleteBasis";
        case ErrorKind::DuplicateEigenvalue: return "DuplicateEigenvalue";
        case ErrorKind::PartialFunction: return "PartialFunction";
        case ErrorKind::NotInSpectrum: return "NotInSpectrum";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NameCollision: return "NameCollision";
        case ErrorKind::IncompleteValuation: return "IncompleteValuation";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
        case ErrorKind::UnknownName: return "UnknownName";
    }
    return "Unknown";
}

ToposError::ToposError(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw ToposError(kind, message);
}

}  // namespace ptopos
