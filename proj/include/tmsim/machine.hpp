#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tmsim {

/// Index into a Machine's state name table.
struct StateId {
    std::uint32_t value = 0;
    friend constexpr bool operator==(StateId, StateId) = default;
    friend constexpr auto operator<=>(StateId, StateId) = default;
};

/// Index into a Machine's symbol name table.
struct SymbolId {
    std::uint32_t value = 0;
    friend constexpr bool operator==(SymbolId, SymbolId) = default;
    friend constexpr auto operator<=>(SymbolId, SymbolId) = default;
};

enum class Move : std::uint8_t { Left, Right, None };

/// Single transition-table row. rule_id is the row's ordinal position in
/// the source description (assigned 0,1,2,... in declaration order).
struct Rule {
    StateId cur_state;
    SymbolId cur_symbol;
    StateId next_state;
    SymbolId next_symbol;
    Move move = Move::None;
    std::int32_t rule_id = -1;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// Immutable deterministic single-tape machine description.
///
/// States and symbols are interned: ids are indices into the name tables.
/// Rule lookup is backed by a dense (state x symbol) dispatch table built
/// at construction. Instances are safe to share across threads.
class Machine {
public:
    /// Builds a machine and checks structural invariants: every id indexes
    /// validly into the name tables, names are distinct, and no two rules
    /// share (cur_state, cur_symbol). Throws std::invalid_argument on
    /// violation. Semantic defects that leave lookup well defined (empty
    /// final set, rules out of a final state) are deliberately allowed
    /// here so that analysis::validate can report them.
    static Machine from_parts(std::vector<std::string> state_names,
                              std::vector<std::string> symbol_names,
                              SymbolId blank, StateId initial,
                              std::vector<StateId> finals,
                              std::vector<Rule> rules);

    std::size_t state_count() const { return state_names_.size(); }
    std::size_t symbol_count() const { return symbol_names_.size(); }

    const std::string& state_name(StateId s) const { return state_names_[s.value]; }
    const std::string& symbol_name(SymbolId s) const { return symbol_names_[s.value]; }
    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::vector<std::string>& symbol_names() const { return symbol_names_; }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<SymbolId> find_symbol(std::string_view name) const;

    SymbolId blank() const { return blank_; }
    StateId initial() const { return initial_; }
    const std::vector<StateId>& finals() const { return finals_; }
    bool is_final(StateId s) const { return final_mask_[s.value] != 0; }

    /// Rules in rule_id order.
    const std::vector<Rule>& rules() const { return rules_; }

    /// Dense-table lookup; nullptr when no rule matches.
    const Rule* find_rule(StateId state, SymbolId symbol) const {
        std::int32_t idx = dispatch_[state.value * symbol_names_.size() + symbol.value];
        return idx < 0 ? nullptr : &rules_[static_cast<std::size_t>(idx)];
    }

private:
    Machine() = default;

    std::vector<std::string> state_names_;
    std::vector<std::string> symbol_names_;
    SymbolId blank_;
    StateId initial_;
    std::vector<StateId> finals_;
    std::vector<std::uint8_t> final_mask_;
    std::vector<Rule> rules_;
    std::vector<std::int32_t> dispatch_;  // state * symbol_count + symbol -> rule index or -1
};

const char* to_string(Move m);

}  // namespace tmsim
