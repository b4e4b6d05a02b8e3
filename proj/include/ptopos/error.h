#ifndef PTOPOS_ERROR_H
#define PTOPOS_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptopos {

enum class ErrorKind {
    // fincat
    MissingIdentity,
    MissingComposite,
    CompositionDomainMismatch,
    AssociativityViolation,
    IdentityLawViolation,
    NotAPoset,
    UnknownObject,
    UnknownArrow,
    NotComposable,
    // heyting
    BaseMismatch,
    NotATopology,
    // presheaf
    MalformedPresheaf,
    ComponentDomainMismatch,
    NotASubobject,
    NotNatural,
    SizeLimitExceeded,
    // quantum
    NotOrthogonal,
    IncompleteBasis,
    DuplicateEigenvalue,
    PartialFunction,
    NotInSpectrum,
    DimensionMismatch,
    NameCollision,
    IncompleteValuation,
    // cli
    ParseError,
    InvariantViolation,
    UnknownName,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class ToposError : public std::runtime_error {
   public:
    ToposError(ErrorKind kind, const std::string &message);
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

}  // namespace ptopos

#endif
