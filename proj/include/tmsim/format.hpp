#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tmsim/machine.hpp"

namespace tmsim {

/// Machine descriptions are line-oriented UTF-8 text:
///
///   blank <sym>                          exactly once
///   initial <state>                      exactly once
///   final <state>                        one or more times
///   rule <state> <sym> <state> <sym> <L|R|N>
///
/// `#` starts a comment running to end of line; tokens are arbitrary
/// non-whitespace strings; states and symbols are declared implicitly by
/// first use, which fixes their interned ids. Rule ids are assigned by
/// source order starting at 0. The parser accepts CRLF line endings.

struct ParseDiagnostic {
    enum class Kind {
        DuplicateRule,
        UnknownMove,
        BadArity,
        MissingDirective,
        DuplicateDirective,
        UnknownToken,
    };
    Kind kind;
    int line;  // 1-based; 0 for document-level diagnostics
    std::string message;
};

struct ParseResult {
    std::optional<Machine> machine;  // engaged iff diagnostics is empty
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return machine.has_value(); }
};

/// Parses a machine description. Never throws and never crashes on
/// malformed text; parsing continues past errors so that one pass reports
/// every diagnostic found.
ParseResult parse_machine(std::string_view source);

/// Canonical form: blank, initial, finals sorted by name, then rules in
/// rule_id order; single-space separators, LF endings.
/// parse_machine(serialize_machine(m)) is structurally equal to m.
std::string serialize_machine(const Machine& machine);

/// Name-based structural equality: same blank/initial/final names and the
/// same rule tuples in rule_id order, regardless of interned id values.
bool structurally_equal(const Machine& a, const Machine& b);

struct UnknownTokenError : std::runtime_error {
    UnknownTokenError(std::string token, std::size_t position)
        : std::runtime_error("unknown tape symbol \"" + token + "\" at position " +
                             std::to_string(position)),
          token(std::move(token)), position(position) {}
    std::string token;
    std::size_t position;  // 1-based token index
};

/// Splits whitespace-separated symbol tokens ("1 1 1") into ids.
/// Throws UnknownTokenError on a token the machine does not declare.
std::vector<SymbolId> parse_tape_input(std::string_view text, const Machine& machine);

/// The bundled 100-rule Fibonacci machine (4 symbols, 50 states), parsed
/// once from the embedded copy of machines/fibonacci.tm.
const Machine& fibonacci_machine();

const char* to_string(ParseDiagnostic::Kind k);

}  // namespace tmsim
