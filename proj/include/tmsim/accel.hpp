#pragma once

#include <cstdint>
#include <span>

#include "tmsim/engine.hpp"
#include "tmsim/rle_tape.hpp"

namespace tmsim {

/// Counters specific to the accelerated engine. dispatch_count is the
/// number of rule lookups performed; each macro application covers many
/// steps with a single dispatch, so dispatch_count <= stats.steps.
struct AccelMetrics {
    std::uint64_t dispatch_count = 0;
    std::uint64_t macro_applications = 0;  // dispatches that covered > 1 step
};

/// What one dispatch of the accelerated engine did.
struct AccelStep {
    StepStatus status;
    std::int32_t rule_id = -1;    // valid iff Applied
    std::uint64_t steps_taken = 0;
    std::int64_t head_before = 0;
};

/// Incremental accelerated execution over an RleTape. A rule whose next
/// state equals its current state with a directional move is applied
/// across the whole adjacent run of identical symbols in one dispatch
/// (the step counter still advances by the full run length). N-move
/// self-loops are executed one step at a time so the step budget catches
/// non-terminating spins.
class AccelRun {
public:
    AccelRun(const Machine& machine, std::span<const SymbolId> input);

    /// Performs at most one dispatch, consuming at most `step_budget`
    /// steps (macro applications truncate to land exactly on the budget).
    AccelStep advance(std::uint64_t step_budget);

    StateId state() const { return state_; }
    std::uint64_t steps() const { return steps_; }
    const RleTape& tape() const { return tape_; }
    const RunStats& stats() const { return stats_; }
    bool halted() const;

    /// Final snapshot as an ordinary configuration.
    Configuration configuration() const;

private:
    const Machine& machine_;
    RleTape tape_;
    StateId state_;
    std::uint64_t steps_ = 0;
    RunStats stats_;
};

/// Drop-in accelerated equivalent of run(): same outcome kind, final
/// state, final tape (after RLE expansion), step count, and stats.
/// `metrics`, when non-null, receives the dispatch counters.
RunOutcome run_accelerated(const Machine& machine, std::span<const SymbolId> input,
                           std::uint64_t max_steps = kDefaultMaxSteps,
                           AccelMetrics* metrics = nullptr);

}  // namespace tmsim
