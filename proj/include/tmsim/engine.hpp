#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "tmsim/machine.hpp"
#include "tmsim/tape.hpp"

namespace tmsim {

/// Default ceiling on rule applications per run; comfortably above
/// desk-scale unary computations while bounding runaway machines.
inline constexpr std::uint64_t kDefaultMaxSteps = 100'000'000;

struct Configuration {
    StateId state;
    Tape tape;
    std::uint64_t steps = 0;

    Configuration(StateId s, Tape t) : state(s), tape(std::move(t)) {}

    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.state == b.state && a.steps == b.steps && a.tape == b.tape;
    }
};

enum class StepStatus : std::uint8_t { Applied, AlreadyHalted, Stuck };

struct StepResult {
    StepStatus status;
    std::int32_t rule_id = -1;  // valid iff status == Applied
};

/// Advances `config` by one rule application.
///
/// A configuration already in a final state is left untouched
/// (AlreadyHalted). A non-final state with no matching rule is Stuck.
/// Otherwise the matched rule's write/move/state change is applied and
/// the step counter incremented.
StepResult step(const Machine& machine, Configuration& config);

enum class RunKind : std::uint8_t { Halted, Stuck, StepLimitExceeded };

struct RunStats {
    std::uint64_t steps = 0;
    std::int64_t min_offset = 0;  // min over visited head offsets and input cells
    std::int64_t max_offset = 0;
    std::vector<std::uint64_t> rule_firings;  // indexed by rule_id
    std::vector<std::uint64_t> state_visits;  // indexed by StateId

    std::uint64_t total_firings() const {
        std::uint64_t n = 0;
        for (auto c : rule_firings) n += c;
        return n;
    }
};

struct RunOutcome {
    RunKind kind;
    Configuration final_config;
    RunStats stats;
};

struct InputSymbolError : std::invalid_argument {
    InputSymbolError(std::size_t position, SymbolId symbol)
        : std::invalid_argument("input symbol at position " + std::to_string(position) +
                                " is outside the machine's alphabet"),
          position(position), symbol(symbol) {}
    std::size_t position;
    SymbolId symbol;
};

struct MissingUnarySymbolError : std::runtime_error {
    MissingUnarySymbolError() : std::runtime_error("machine declares no \"1\" symbol") {}
};

/// Called before each applied rule with the pre-step configuration.
using StepObserver = std::function<void(const Configuration& before, const Rule& rule)>;

/// Runs the machine on `input` laid out at offsets 0..n-1, head at 0,
/// from the initial state, until it halts, gets stuck, or hits
/// `max_steps`. Throws InputSymbolError if `input` contains an id the
/// machine does not declare. Identical inputs yield identical outcomes.
RunOutcome run(const Machine& machine, std::span<const SymbolId> input,
               std::uint64_t max_steps = kDefaultMaxSteps,
               const StepObserver& observer = nullptr);

/// n copies of the machine's "1" symbol. Throws MissingUnarySymbolError.
std::vector<SymbolId> encode_unary(std::uint64_t n, const Machine& machine);

/// Count of "1" cells anywhere on the tape. Throws MissingUnarySymbolError.
std::uint64_t decode_unary(const Tape& tape, const Machine& machine);

const char* to_string(RunKind k);

}  // namespace tmsim
