#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tmsim/engine.hpp"
#include "tmsim/machine.hpp"

namespace tmsim {

/// Static machine facts derived from the state graph (one edge per rule,
/// cur_state -> next_state). Reachability abstracts over symbols, so it is
/// a sound over-approximation of what a run can touch.
struct StaticReport {
    std::vector<StateId> reachable_states;    // ascending by id
    std::vector<StateId> unreachable_states;  // ascending by id
    std::vector<std::int32_t> statically_dead_rules;  // rules whose cur_state is unreachable
    /// (reachable non-final state, symbol) pairs with no rule; candidates
    /// for Stuck outcomes. Informational, not an error: partial tables are
    /// legal machines.
    std::vector<std::pair<StateId, SymbolId>> missing_transitions;
};

StaticReport reachability(const Machine& machine);

/// Which rules fired during one run, and what is left on the final tape.
struct CoverageReport {
    std::vector<std::int32_t> fired_rules;  // ascending rule ids with firing count > 0
    std::vector<std::int32_t> never_fired;  // complement
    /// Final-tape census: every declared non-blank symbol name -> cell
    /// count (zeros included, documenting which bookkeeping symbols
    /// survive a run).
    std::vector<std::pair<std::string, std::uint64_t>> residue;
};

CoverageReport coverage(const Machine& machine, const RunOutcome& outcome);

struct ValidationIssue {
    std::string message;
};

/// Re-checks machine invariants (determinism, id validity, non-empty
/// final set) and flags final states with outgoing rules. Empty result
/// means clean.
std::vector<ValidationIssue> validate(const Machine& machine);

// Report serialization: line-oriented key:value text plus a JSON document
// per report (the CLI's --metrics outputs).
std::string to_text(const StaticReport& report, const Machine& machine);
std::string to_text(const CoverageReport& report);
std::string to_text(const RunStats& stats, const Machine& machine);
nlohmann::json to_json(const StaticReport& report, const Machine& machine);
nlohmann::json to_json(const CoverageReport& report);
nlohmann::json to_json(const RunStats& stats, const Machine& machine);

}  // namespace tmsim
