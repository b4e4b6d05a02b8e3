#ifndef PTOPOS_SCENARIO_H
#define PTOPOS_SCENARIO_H

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ptopos/error.h"
#include "ptopos/exact.h"
#include "ptopos/fincat.h"
#include "ptopos/heyting.h"
#include "ptopos/quantum.h"

namespace ptopos {

/// ParseError carrying a 1-based source position.
class ParseFailure : public ToposError {
   public:
    ParseFailure(size_t line, size_t column, const std::string &message);
    size_t line() const {
        return line_;
    }
    size_t column() const {
        return column_;
    }

   private:
    size_t line_;
    size_t column_;
};

/// Number grammar. rational: ['-'] digits ['/' digits], nonzero
/// denominator; U+2212 is accepted as a minus sign. complex: rational,
/// optionally followed by '+' or '-' and an imaginary coefficient with
/// suffix 'i'; pure imaginary forms 'i', '-i', '2/3i'.  Throws ParseError.
Rational parse_rational(std::string_view text);
GaussianRational parse_complex(std::string_view text);

struct OperatorDecl {
    std::string name;
    size_t line = 0;
    std::vector<Eigenspace> eigendata;
};

struct StateDecl {
    std::string name;
    size_t line = 0;
    Vector vector;
};

struct QueryDecl {
    std::string state;
    std::string op;
    std::vector<Rational> delta;
    size_t line = 0;
};

struct Scenario {
    size_t dimension = 0;
    std::vector<OperatorDecl> operators;
    std::vector<StateDecl> states;
    bool close_under_questions = false;
    std::vector<QueryDecl> queries;
};

/// Line-oriented scenario text:
///
///     DIM <n>
///     OPERATOR <name>
///     EIGENVALUE <rational> : (<complex>, ...) [(...) ...]
///     STATE <name> (<complex>, ...)
///     CLOSE on|off
///     QUERY <state> <operator> {<rational>, ...}
///
/// '#' starts a comment. Throws ParseFailure.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string &path);

/// Spectral operators of the scenario, validated. Throws
/// InvariantViolation naming the operator and the failed law.
std::vector<SpectralOperator> scenario_operators(const Scenario &scenario);

/// Full validation: operators, states (dimension, nonzero), name
/// uniqueness and query references. Throws InvariantViolation or
/// UnknownName.
void validate_scenario(const Scenario &scenario);

/// A poset given by generating relations; closed reflexively and
/// transitively when turned into a category.
struct PosetDecl {
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> leq;
};

/// `.top` files declare either a finite topology
///
///     POINTS a b
///     OPEN {}
///     OPEN {a}
///     OPEN {a,b}
///
/// or a poset whose sieve algebras are wanted
///
///     ELEMENTS p q r
///     LEQ p q
///
using TopologyFile = std::variant<FiniteTopology, PosetDecl>;
TopologyFile parse_topology_file(std::string_view text);

std::string read_file(const std::string &path);

}  // namespace ptopos

#endif
