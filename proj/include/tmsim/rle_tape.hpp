#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tmsim/machine.hpp"
#include "tmsim/tape.hpp"

namespace tmsim {

/// Run-length-encoded tape: the cell under the head plus (symbol, count)
/// runs on each side. In each side vector the run nearest the head is at
/// the back, so single-cell traffic is push_back/pop_back. Exhausted
/// sides read as infinite blanks.
///
/// Canonical form, maintained by every operation: no run has count 0,
/// adjacent runs in a side have distinct symbols, and the outermost
/// (front) run of a side is never blank. Expansion to a sparse Tape is
/// therefore a bijection up to blank-elision.
class RleTape {
public:
    struct Run {
        SymbolId sym;
        std::uint64_t count;
        friend bool operator==(const Run&, const Run&) = default;
    };

    explicit RleTape(SymbolId blank) : current_(blank), blank_(blank) {}

    /// Compresses `input` with the head over its first cell (offset 0).
    static RleTape from_list(std::span<const SymbolId> input, SymbolId blank);

    SymbolId current() const { return current_; }
    SymbolId blank() const { return blank_; }
    std::int64_t head() const { return head_; }

    /// Runs to the left of the head, nearest run last.
    const std::vector<Run>& left_runs() const { return left_; }
    /// Runs to the right of the head, nearest run last.
    const std::vector<Run>& right_runs() const { return right_; }

    /// One write-and-move: writes `w` at the head, then shifts it.
    void apply(SymbolId w, Move move);

    /// Cells adjacent to the head in `dir` holding the current symbol;
    /// nullopt when that side is an infinite blank fringe matching the
    /// current symbol (an unbounded run).
    std::optional<std::uint64_t> same_symbol_run(Move dir) const;

    /// Bulk write-and-move: `count` consecutive applications of
    /// (write w, move dir), where the first count-1 cells entered are
    /// known to hold the current symbol. Equivalent to calling
    /// apply(w, dir) `count` times.
    void apply_run(SymbolId w, Move dir, std::uint64_t count);

    /// Expands to the sparse representation (head position preserved).
    Tape expand() const;

    /// Canonical-form walker.
    bool check_canonical() const;

private:
    void push_behind(std::vector<Run>& side, SymbolId sym, std::uint64_t count);
    SymbolId pop_ahead(std::vector<Run>& side);

    std::vector<Run> left_;
    std::vector<Run> right_;
    SymbolId current_;
    SymbolId blank_;
    std::int64_t head_ = 0;
};

}  // namespace tmsim
