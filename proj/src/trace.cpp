#include "tmsim/trace.hpp"

#include <charconv>
#include <sstream>

#include "tmsim/accel.hpp"

namespace tmsim {

std::string format_trace_line(const TraceRecord& rec) {
    std::ostringstream os;
    os << "step=" << rec.step << " state=" << rec.state << " head=" << rec.head
       << " read=" << rec.read << " rule=" << rec.rule << " write=" << rec.write
       << " move=" << to_string(rec.move) << " next=" << rec.next_state;
    return os.str();
}

namespace {

bool take_field(std::string_view& rest, std::string_view key, std::string_view& value) {
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
    if (rest.substr(0, key.size()) != key || rest.size() <= key.size() ||
        rest[key.size()] != '=')
        return false;
    rest.remove_prefix(key.size() + 1);
    std::size_t end = rest.find(' ');
    value = rest.substr(0, end);
    rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
    return true;
}

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::optional<TraceRecord> parse_trace_line(std::string_view line) {
    TraceRecord rec;
    std::string_view v;
    if (!take_field(line, "step", v) || !parse_int(v, rec.step)) return std::nullopt;
    if (!take_field(line, "state", v)) return std::nullopt;
    rec.state = v;
    if (!take_field(line, "head", v) || !parse_int(v, rec.head)) return std::nullopt;
    if (!take_field(line, "read", v)) return std::nullopt;
    rec.read = v;
    if (!take_field(line, "rule", v) || !parse_int(v, rec.rule)) return std::nullopt;
    if (!take_field(line, "write", v)) return std::nullopt;
    rec.write = v;
    if (!take_field(line, "move", v)) return std::nullopt;
    if (v == "L") rec.move = Move::Left;
    else if (v == "R") rec.move = Move::Right;
    else if (v == "N") rec.move = Move::None;
    else return std::nullopt;
    if (!take_field(line, "next", v)) return std::nullopt;
    rec.next_state = v;
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (!line.empty()) return std::nullopt;
    return rec;
}

namespace {

TraceRecord make_record(const Machine& machine, std::uint64_t step, std::int64_t head,
                        const Rule& rule) {
    TraceRecord rec;
    rec.step = step;
    rec.state = machine.state_name(rule.cur_state);
    rec.head = head;
    rec.read = machine.symbol_name(rule.cur_symbol);
    rec.rule = rule.rule_id;
    rec.write = machine.symbol_name(rule.next_symbol);
    rec.move = rule.move;
    rec.next_state = machine.state_name(rule.next_state);
    return rec;
}

RunOutcome run_traced_accel(const Machine& machine, std::span<const SymbolId> input,
                            std::uint64_t max_steps, const TraceSink& sink) {
    for (std::size_t i = 0; i < input.size(); ++i)
        if (input[i].value >= machine.symbol_count()) throw InputSymbolError(i, input[i]);

    AccelRun engine(machine, input);
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
        const std::uint64_t base_step = engine.steps();
        AccelStep s = engine.advance(max_steps - engine.steps());
        if (s.status == StepStatus::Stuck) {
            kind = RunKind::Stuck;
            break;
        }
        if (sink && s.rule_id >= 0) {
            // A macro application is k identical rule firings over
            // consecutive cells; synthesize the per-step records so the
            // trace matches the naive engine's exactly.
            const Rule& rule = machine.rules()[static_cast<std::size_t>(s.rule_id)];
            const std::int64_t dir = rule.move == Move::Right ? 1 : rule.move == Move::Left ? -1 : 0;
            for (std::uint64_t i = 0; i < s.steps_taken; ++i)
                sink(make_record(machine, base_step + i,
                                 s.head_before + dir * static_cast<std::int64_t>(i), rule));
        }
    }

    RunStats stats = engine.stats();
    stats.steps = engine.steps();
    return RunOutcome{kind, engine.configuration(), std::move(stats)};
}

}  // namespace

RunOutcome run_traced(const Machine& machine, std::span<const SymbolId> input,
                      std::uint64_t max_steps, const TraceSink& sink, bool accelerated) {
    if (accelerated) return run_traced_accel(machine, input, max_steps, sink);
    StepObserver observer;
    if (sink)
        observer = [&machine, &sink](const Configuration& before, const Rule& rule) {
            sink(make_record(machine, before.steps, before.tape.head(), rule));
        };
    return run(machine, input, max_steps, observer);
}

Tape replay_trace(const Machine& machine, std::span<const SymbolId> input,
                  std::span<const TraceRecord> records) {
    Tape tape(input, machine.blank());
    StateId state = machine.initial();
    std::uint64_t step_no = 0;

    auto fail = [](std::uint64_t step, const std::string& what) -> void {
        throw TraceReplayError("trace replay: step " + std::to_string(step) + ": " + what);
    };

    for (const TraceRecord& rec : records) {
        if (rec.step != step_no) fail(step_no, "non-consecutive step number");
        if (rec.rule < 0 || static_cast<std::size_t>(rec.rule) >= machine.rules().size())
            fail(step_no, "rule id out of range");
        const Rule& rule = machine.rules()[static_cast<std::size_t>(rec.rule)];
        if (machine.state_name(state) != rec.state) fail(step_no, "state disagrees with replay");
        if (tape.head() != rec.head) fail(step_no, "head disagrees with replay");
        if (machine.symbol_name(tape.read_head()) != rec.read)
            fail(step_no, "read symbol disagrees with tape");
        if (rule.cur_state != state || machine.symbol_name(rule.cur_symbol) != rec.read)
            fail(step_no, "rule does not match (state, read)");
        if (machine.symbol_name(rule.next_symbol) != rec.write || rule.move != rec.move ||
            machine.state_name(rule.next_state) != rec.next_state)
            fail(step_no, "rule effect disagrees with record");

        tape.write_head(rule.next_symbol);
        tape.move_head(rule.move);
        state = rule.next_state;
        ++step_no;
    }
    return tape;
}

}  // namespace tmsim
