#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>

#include "tmsim/machine.hpp"

namespace tmsim {

/// Unbounded bidirectional tape: a sparse map from signed cell offset to
/// symbol plus a head position. Cells never store the blank symbol
/// (writing blank erases the cell), so the map is canonical: two tapes
/// with equal contents compare equal.
class Tape {
public:
    explicit Tape(SymbolId blank) : blank_(blank) {}

    /// Lays out `input` at offsets 0..n-1 with the head at 0.
    Tape(std::span<const SymbolId> input, SymbolId blank) : blank_(blank) {
        for (std::size_t i = 0; i < input.size(); ++i)
            write(static_cast<std::int64_t>(i), input[i]);
    }

    SymbolId blank() const { return blank_; }

    SymbolId read(std::int64_t offset) const {
        auto it = cells_.find(offset);
        return it == cells_.end() ? blank_ : it->second;
    }

    void write(std::int64_t offset, SymbolId sym) {
        if (sym == blank_)
            cells_.erase(offset);
        else
            cells_.insert_or_assign(offset, sym);
    }

    std::int64_t head() const { return head_; }
    void set_head(std::int64_t offset) { head_ = offset; }
    void move_head(Move m) {
        if (m == Move::Left) --head_;
        else if (m == Move::Right) ++head_;
    }

    SymbolId read_head() const { return read(head_); }
    void write_head(SymbolId sym) { write(head_, sym); }

    /// Number of stored (non-blank) cells.
    std::size_t populated_cells() const { return cells_.size(); }

    /// Count of cells holding `sym` (0 for the blank symbol).
    std::uint64_t count(SymbolId sym) const {
        if (sym == blank_) return 0;
        std::uint64_t n = 0;
        for (const auto& [off, s] : cells_)
            if (s == sym) ++n;
        return n;
    }

    /// Inclusive offset range of non-blank cells, or nullopt for an all-blank
    /// tape.
    struct Extent {
        std::int64_t min = 0;
        std::int64_t max = 0;
    };
    std::optional<Extent> non_blank_extent() const {
        if (cells_.empty()) return std::nullopt;
        Extent e{cells_.begin()->first, cells_.begin()->first};
        for (const auto& [off, s] : cells_) {
            e.min = std::min(e.min, off);
            e.max = std::max(e.max, off);
        }
        return e;
    }

    const std::unordered_map<std::int64_t, SymbolId>& cells() const { return cells_; }

    /// Canonical-form walker: true iff no stored cell holds blank.
    bool check_canonical() const {
        for (const auto& [off, s] : cells_)
            if (s == blank_) return false;
        return true;
    }

    friend bool operator==(const Tape& a, const Tape& b) {
        return a.blank_ == b.blank_ && a.head_ == b.head_ && a.cells_ == b.cells_;
    }

private:
    std::unordered_map<std::int64_t, SymbolId> cells_;
    std::int64_t head_ = 0;
    SymbolId blank_;
};

}  // namespace tmsim
