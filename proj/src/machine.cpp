#include "tmsim/machine.hpp"

#include <stdexcept>
#include <unordered_set>

namespace tmsim {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

}  // namespace

Machine Machine::from_parts(std::vector<std::string> state_names,
                            std::vector<std::string> symbol_names,
                            SymbolId blank, StateId initial,
                            std::vector<StateId> finals,
                            std::vector<Rule> rules) {
    const auto ns = state_names.size();
    const auto nsym = symbol_names.size();
    require(ns > 0, "machine declares no states");
    require(nsym > 0, "machine declares no symbols");

    {
        std::unordered_set<std::string_view> seen;
        for (const auto& n : state_names)
            require(seen.insert(n).second, "duplicate state name");
        seen.clear();
        for (const auto& n : symbol_names)
            require(seen.insert(n).second, "duplicate symbol name");
    }

    auto state_ok = [ns](StateId s) { return s.value < ns; };
    auto symbol_ok = [nsym](SymbolId s) { return s.value < nsym; };

    require(symbol_ok(blank), "blank symbol id out of range");
    require(state_ok(initial), "initial state id out of range");
    for (StateId f : finals) require(state_ok(f), "final state id out of range");

    Machine m;
    m.dispatch_.assign(ns * nsym, -1);
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const Rule& r = rules[i];
        require(state_ok(r.cur_state) && state_ok(r.next_state), "rule state id out of range");
        require(symbol_ok(r.cur_symbol) && symbol_ok(r.next_symbol), "rule symbol id out of range");
        auto& slot = m.dispatch_[r.cur_state.value * nsym + r.cur_symbol.value];
        require(slot < 0, "two rules share (state, symbol)");
        slot = static_cast<std::int32_t>(i);
    }

    m.final_mask_.assign(ns, 0);
    for (StateId f : finals) m.final_mask_[f.value] = 1;

    m.state_names_ = std::move(state_names);
    m.symbol_names_ = std::move(symbol_names);
    m.blank_ = blank;
    m.initial_ = initial;
    m.finals_ = std::move(finals);
    m.rules_ = std::move(rules);
    return m;
}

std::optional<StateId> Machine::find_state(std::string_view name) const {
    for (std::uint32_t i = 0; i < state_names_.size(); ++i)
        if (state_names_[i] == name) return StateId{i};
    return std::nullopt;
}

std::optional<SymbolId> Machine::find_symbol(std::string_view name) const {
    for (std::uint32_t i = 0; i < symbol_names_.size(); ++i)
        if (symbol_names_[i] == name) return SymbolId{i};
    return std::nullopt;
}

const char* to_string(Move m) {
    switch (m) {
        case Move::Left: return "L";
        case Move::Right: return "R";
        case Move::None: return "N";
    }
    return "?";
}

}  // namespace tmsim
