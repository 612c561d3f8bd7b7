#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "tmsim/engine.hpp"
#include "tmsim/machine.hpp"

namespace tmsim {

/// One executed step, in name form. Serialized as a single line of
/// key=value pairs in fixed order: step, state, head, read, rule, write,
/// move, next. Grep-friendly and diff-stable.
struct TraceRecord {
    std::uint64_t step = 0;
    std::string state;
    std::int64_t head = 0;
    std::string read;
    std::int32_t rule = -1;
    std::string write;
    Move move = Move::None;
    std::string next_state;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

std::string format_trace_line(const TraceRecord& rec);

/// Parses a line produced by format_trace_line; nullopt on malformed input.
std::optional<TraceRecord> parse_trace_line(std::string_view line);

using TraceSink = std::function<void(const TraceRecord&)>;

/// Runs the machine, emitting one record per step. The `accelerated`
/// variant executes macro-steps internally and synthesizes the identical
/// per-step records, so both engines emit the same trace.
RunOutcome run_traced(const Machine& machine, std::span<const SymbolId> input,
                      std::uint64_t max_steps, const TraceSink& sink,
                      bool accelerated = false);

struct TraceReplayError : std::runtime_error {
    explicit TraceReplayError(const std::string& what) : std::runtime_error(what) {}
};

/// Re-applies recorded steps to a fresh tape holding `input`, verifying
/// each record against the machine's table (state/read/rule agreement)
/// as it goes. Returns the resulting tape; throws TraceReplayError on any
/// disagreement. Replaying a run's trace reproduces its final tape.
Tape replay_trace(const Machine& machine, std::span<const SymbolId> input,
                  std::span<const TraceRecord> records);

}  // namespace tmsim
