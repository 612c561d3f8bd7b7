#include "tmsim/engine.hpp"

#include <algorithm>

namespace tmsim {

StepResult step(const Machine& machine, Configuration& config) {
    if (machine.is_final(config.state)) return {StepStatus::AlreadyHalted};

    const Rule* rule = machine.find_rule(config.state, config.tape.read_head());
    if (rule == nullptr) return {StepStatus::Stuck};

    config.tape.write_head(rule->next_symbol);
    config.tape.move_head(rule->move);
    config.state = rule->next_state;
    ++config.steps;
    return {StepStatus::Applied, rule->rule_id};
}

RunOutcome run(const Machine& machine, std::span<const SymbolId> input,
               std::uint64_t max_steps, const StepObserver& observer) {
    for (std::size_t i = 0; i < input.size(); ++i)
        if (input[i].value >= machine.symbol_count()) throw InputSymbolError(i, input[i]);

    Configuration config{machine.initial(), Tape(input, machine.blank())};

    RunStats stats;
    stats.rule_firings.assign(machine.rules().size(), 0);
    stats.state_visits.assign(machine.state_count(), 0);
    stats.state_visits[config.state.value] = 1;
    stats.min_offset = 0;
    stats.max_offset = input.empty() ? 0 : static_cast<std::int64_t>(input.size()) - 1;

    RunKind kind;
    for (;;) {
        if (machine.is_final(config.state)) {
            kind = RunKind::Halted;
            break;
        }
        if (config.steps >= max_steps) {
            kind = RunKind::StepLimitExceeded;
            break;
        }
        if (observer) {
            const Rule* rule = machine.find_rule(config.state, config.tape.read_head());
            if (rule != nullptr) observer(config, *rule);
        }
        StepResult res = step(machine, config);
        if (res.status == StepStatus::Stuck) {
            kind = RunKind::Stuck;
            break;
        }
        stats.rule_firings[static_cast<std::size_t>(res.rule_id)] += 1;
        stats.state_visits[config.state.value] += 1;
        stats.min_offset = std::min(stats.min_offset, config.tape.head());
        stats.max_offset = std::max(stats.max_offset, config.tape.head());
    }

    stats.steps = config.steps;
    return RunOutcome{kind, std::move(config), std::move(stats)};
}

std::vector<SymbolId> encode_unary(std::uint64_t n, const Machine& machine) {
    auto one = machine.find_symbol("1");
    if (!one) throw MissingUnarySymbolError{};
    return std::vector<SymbolId>(n, *one);
}

std::uint64_t decode_unary(const Tape& tape, const Machine& machine) {
    auto one = machine.find_symbol("1");
    if (!one) throw MissingUnarySymbolError{};
    return tape.count(*one);
}

const char* to_string(RunKind k) {
    switch (k) {
        case RunKind::Halted: return "halted";
        case RunKind::Stuck: return "stuck";
        case RunKind::StepLimitExceeded: return "step-limit-exceeded";
    }
    return "?";
}

}  // namespace tmsim
