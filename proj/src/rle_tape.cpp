#include "tmsim/rle_tape.hpp"

#include <algorithm>

namespace tmsim {

RleTape RleTape::from_list(std::span<const SymbolId> input, SymbolId blank) {
    RleTape tape(blank);
    if (input.empty()) return tape;

    tape.current_ = input[0];
    // Compress input[1..] in cell order, then store reversed so the run
    // nearest the head sits at the back.
    std::vector<Run> runs;
    for (std::size_t i = 1; i < input.size(); ++i) {
        if (!runs.empty() && runs.back().sym == input[i])
            ++runs.back().count;
        else
            runs.push_back({input[i], 1});
    }
    while (!runs.empty() && runs.back().sym == blank) runs.pop_back();  // implicit fringe
    tape.right_.assign(runs.rbegin(), runs.rend());
    return tape;
}

void RleTape::push_behind(std::vector<Run>& side, SymbolId sym, std::uint64_t count) {
    if (side.empty()) {
        if (sym == blank_) return;  // stays implicit fringe
        side.push_back({sym, count});
        return;
    }
    if (side.back().sym == sym)
        side.back().count += count;
    else
        side.push_back({sym, count});
}

SymbolId RleTape::pop_ahead(std::vector<Run>& side) {
    if (side.empty()) return blank_;
    Run& run = side.back();
    SymbolId sym = run.sym;
    if (--run.count == 0) side.pop_back();
    return sym;
}

void RleTape::apply(SymbolId w, Move move) {
    switch (move) {
        case Move::None:
            current_ = w;
            break;
        case Move::Right:
            push_behind(left_, w, 1);
            current_ = pop_ahead(right_);
            ++head_;
            break;
        case Move::Left:
            push_behind(right_, w, 1);
            current_ = pop_ahead(left_);
            --head_;
            break;
    }
}

std::optional<std::uint64_t> RleTape::same_symbol_run(Move dir) const {
    const std::vector<Run>& side = dir == Move::Right ? right_ : left_;
    if (side.empty())
        return current_ == blank_ ? std::nullopt : std::optional<std::uint64_t>(0);
    return side.back().sym == current_ ? side.back().count : 0;
}

void RleTape::apply_run(SymbolId w, Move dir, std::uint64_t count) {
    if (count == 0) return;
    std::vector<Run>& ahead = dir == Move::Right ? right_ : left_;
    std::vector<Run>& behind = dir == Move::Right ? left_ : right_;

    push_behind(behind, w, count);

    // The count-1 cells crossed hold the current symbol; consume them from
    // the nearest run (or from the implicit blank fringe).
    std::uint64_t crossed = count - 1;
    if (crossed > 0 && !ahead.empty()) {
        Run& run = ahead.back();
        run.count -= crossed;  // precondition: run.sym == current_ and run.count >= crossed
        if (run.count == 0) ahead.pop_back();
    }
    current_ = pop_ahead(ahead);
    head_ += dir == Move::Right ? static_cast<std::int64_t>(count) : -static_cast<std::int64_t>(count);
}

Tape RleTape::expand() const {
    Tape tape(blank_);
    tape.set_head(head_);
    tape.write(head_, current_);
    std::int64_t off = head_;
    for (auto it = left_.rbegin(); it != left_.rend(); ++it)
        for (std::uint64_t i = 0; i < it->count; ++i) tape.write(--off, it->sym);
    off = head_;
    for (auto it = right_.rbegin(); it != right_.rend(); ++it)
        for (std::uint64_t i = 0; i < it->count; ++i) tape.write(++off, it->sym);
    return tape;
}

bool RleTape::check_canonical() const {
    for (const std::vector<Run>* side : {&left_, &right_}) {
        if (!side->empty() && side->front().sym == blank_) return false;
        for (std::size_t i = 0; i < side->size(); ++i) {
            if ((*side)[i].count == 0) return false;
            if (i > 0 && (*side)[i].sym == (*side)[i - 1].sym) return false;
        }
    }
    return true;
}

}  // namespace tmsim
