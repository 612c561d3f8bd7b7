#include "tmsim/accel.hpp"

#include <algorithm>

namespace tmsim {

AccelRun::AccelRun(const Machine& machine, std::span<const SymbolId> input)
    : machine_(machine),
      tape_(RleTape::from_list(input, machine.blank())),
      state_(machine.initial()) {
    stats_.rule_firings.assign(machine.rules().size(), 0);
    stats_.state_visits.assign(machine.state_count(), 0);
    stats_.state_visits[state_.value] = 1;
    stats_.min_offset = 0;
    stats_.max_offset = input.empty() ? 0 : static_cast<std::int64_t>(input.size()) - 1;
}

bool AccelRun::halted() const { return machine_.is_final(state_); }

AccelStep AccelRun::advance(std::uint64_t step_budget) {
    if (halted()) return {StepStatus::AlreadyHalted};
    if (step_budget == 0) return {StepStatus::Applied, -1, 0, tape_.head()};

    const Rule* rule = machine_.find_rule(state_, tape_.current());
    if (rule == nullptr) return {StepStatus::Stuck};

    std::uint64_t count = 1;
    const bool self_loop = rule->next_state == state_ && rule->move != Move::None;
    if (self_loop) {
        // The whole adjacent run of the read symbol collapses into one
        // dispatch; an unbounded blank fringe consumes the entire budget.
        auto same = tape_.same_symbol_run(rule->move);
        std::uint64_t available = same ? *same + 1 : step_budget;
        count = std::min(available, step_budget);
    }

    const std::int64_t head_before = tape_.head();
    if (rule->move == Move::None)
        tape_.apply(rule->next_symbol, Move::None);
    else
        tape_.apply_run(rule->next_symbol, rule->move, count);

    state_ = rule->next_state;
    steps_ += count;
    stats_.rule_firings[static_cast<std::size_t>(rule->rule_id)] += count;
    stats_.state_visits[state_.value] += count;
    if (rule->move == Move::Right)
        stats_.max_offset = std::max(stats_.max_offset, head_before + static_cast<std::int64_t>(count));
    else if (rule->move == Move::Left)
        stats_.min_offset = std::min(stats_.min_offset, head_before - static_cast<std::int64_t>(count));

    return {StepStatus::Applied, rule->rule_id, count, head_before};
}

Configuration AccelRun::configuration() const {
    Configuration config{state_, tape_.expand()};
    config.steps = steps_;
    return config;
}

RunOutcome run_accelerated(const Machine& machine, std::span<const SymbolId> input,
                           std::uint64_t max_steps, AccelMetrics* metrics) {
    for (std::size_t i = 0; i < input.size(); ++i)
        if (input[i].value >= machine.symbol_count()) throw InputSymbolError(i, input[i]);

    AccelRun engine(machine, input);
    AccelMetrics counters;

    RunKind kind;
    for (;;) {
        if (engine.halted()) {
            kind = RunKind::Halted;
            break;
        }
        if (engine.steps() >= max_steps) {
            kind = RunKind::StepLimitExceeded;
            break;
        }
        AccelStep s = engine.advance(max_steps - engine.steps());
        if (s.status == StepStatus::Stuck) {
            kind = RunKind::Stuck;
            break;
        }
        ++counters.dispatch_count;
        if (s.steps_taken > 1) ++counters.macro_applications;
    }

    if (metrics != nullptr) *metrics = counters;

    RunStats stats = engine.stats();
    stats.steps = engine.steps();
    return RunOutcome{kind, engine.configuration(), std::move(stats)};
}

}  // namespace tmsim
