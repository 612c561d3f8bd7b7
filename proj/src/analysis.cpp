#include "tmsim/analysis.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace tmsim {

StaticReport reachability(const Machine& machine) {
    const auto ns = machine.state_count();
    std::vector<std::uint8_t> reachable(ns, 0);

    // adjacency over the state graph: one edge per rule
    std::vector<std::vector<std::uint32_t>> adj(ns);
    for (const Rule& r : machine.rules()) adj[r.cur_state.value].push_back(r.next_state.value);

    std::deque<std::uint32_t> queue;
    queue.push_back(machine.initial().value);
    reachable[machine.initial().value] = 1;
    while (!queue.empty()) {
        std::uint32_t s = queue.front();
        queue.pop_front();
        for (std::uint32_t t : adj[s]) {
            if (!reachable[t]) {
                reachable[t] = 1;
                queue.push_back(t);
            }
        }
    }

    StaticReport report;
    for (std::uint32_t s = 0; s < ns; ++s)
        (reachable[s] ? report.reachable_states : report.unreachable_states).push_back(StateId{s});

    for (const Rule& r : machine.rules())
        if (!reachable[r.cur_state.value]) report.statically_dead_rules.push_back(r.rule_id);
    std::sort(report.statically_dead_rules.begin(), report.statically_dead_rules.end());

    for (StateId s : report.reachable_states) {
        if (machine.is_final(s)) continue;
        for (std::uint32_t sym = 0; sym < machine.symbol_count(); ++sym)
            if (machine.find_rule(s, SymbolId{sym}) == nullptr)
                report.missing_transitions.emplace_back(s, SymbolId{sym});
    }
    return report;
}

CoverageReport coverage(const Machine& machine, const RunOutcome& outcome) {
    CoverageReport report;
    for (const Rule& r : machine.rules()) {
        const auto id = static_cast<std::size_t>(r.rule_id);
        if (id < outcome.stats.rule_firings.size() && outcome.stats.rule_firings[id] > 0)
            report.fired_rules.push_back(r.rule_id);
        else
            report.never_fired.push_back(r.rule_id);
    }
    const Tape& tape = outcome.final_config.tape;
    for (std::uint32_t sym = 0; sym < machine.symbol_count(); ++sym) {
        if (SymbolId{sym} == machine.blank()) continue;
        report.residue.emplace_back(machine.symbol_name(SymbolId{sym}), tape.count(SymbolId{sym}));
    }
    return report;
}

std::vector<ValidationIssue> validate(const Machine& machine) {
    std::vector<ValidationIssue> issues;
    auto flag = [&issues](std::string msg) { issues.push_back({std::move(msg)}); };

    if (machine.finals().empty()) flag("machine has no final state");

    const auto ns = machine.state_count();
    const auto nsym = machine.symbol_count();
    std::vector<std::int64_t> seen(ns * nsym, -1);  // rule_id of first claimant
    for (const Rule& r : machine.rules()) {
        if (r.cur_state.value >= ns || r.next_state.value >= ns ||
            r.cur_symbol.value >= nsym || r.next_symbol.value >= nsym) {
            flag("rule " + std::to_string(r.rule_id) + " references an undeclared state or symbol");
            continue;
        }
        auto& slot = seen[r.cur_state.value * nsym + r.cur_symbol.value];
        if (slot >= 0)
            flag("rules " + std::to_string(slot) + " and " + std::to_string(r.rule_id) +
                 " share (" + machine.state_name(r.cur_state) + ", " +
                 machine.symbol_name(r.cur_symbol) + ")");
        else
            slot = r.rule_id;
        if (machine.is_final(r.cur_state))
            flag("final state " + machine.state_name(r.cur_state) + " has outgoing rule " +
                 std::to_string(r.rule_id));
    }
    if (machine.blank().value >= nsym) flag("blank symbol id out of range");
    if (machine.initial().value >= ns) flag("initial state id out of range");
    return issues;
}

namespace {

template <typename T, typename Fmt>
void write_list(std::ostream& os, const char* key, const std::vector<T>& items, Fmt fmt) {
    os << key << ':';
    for (const T& item : items) os << ' ' << fmt(item);
    os << '\n';
}

}  // namespace

std::string to_text(const StaticReport& report, const Machine& machine) {
    std::ostringstream os;
    auto state = [&machine](StateId s) { return machine.state_name(s); };
    write_list(os, "reachable_states", report.reachable_states, state);
    write_list(os, "unreachable_states", report.unreachable_states, state);
    write_list(os, "statically_dead_rules", report.statically_dead_rules,
               [](std::int32_t id) { return std::to_string(id); });
    write_list(os, "missing_transitions", report.missing_transitions,
               [&machine](const std::pair<StateId, SymbolId>& p) {
                   return machine.state_name(p.first) + "/" + machine.symbol_name(p.second);
               });
    return os.str();
}

std::string to_text(const CoverageReport& report) {
    std::ostringstream os;
    auto id = [](std::int32_t r) { return std::to_string(r); };
    write_list(os, "fired_rules", report.fired_rules, id);
    write_list(os, "never_fired", report.never_fired, id);
    write_list(os, "residue", report.residue, [](const std::pair<std::string, std::uint64_t>& p) {
        return p.first + ":" + std::to_string(p.second);
    });
    return os.str();
}

std::string to_text(const RunStats& stats, const Machine& machine) {
    std::ostringstream os;
    os << "steps: " << stats.steps << '\n';
    os << "min_offset: " << stats.min_offset << '\n';
    os << "max_offset: " << stats.max_offset << '\n';
    os << "rule_firings:";
    for (std::size_t i = 0; i < stats.rule_firings.size(); ++i)
        if (stats.rule_firings[i] > 0) os << ' ' << i << ':' << stats.rule_firings[i];
    os << '\n';
    os << "state_visits:";
    for (std::size_t i = 0; i < stats.state_visits.size(); ++i)
        if (stats.state_visits[i] > 0)
            os << ' ' << machine.state_name(StateId{static_cast<std::uint32_t>(i)}) << ':'
               << stats.state_visits[i];
    os << '\n';
    return os.str();
}

nlohmann::json to_json(const StaticReport& report, const Machine& machine) {
    nlohmann::json j;
    auto states = [&machine](const std::vector<StateId>& ids) {
        nlohmann::json arr = nlohmann::json::array();
        for (StateId s : ids) arr.push_back(machine.state_name(s));
        return arr;
    };
    j["reachable_states"] = states(report.reachable_states);
    j["unreachable_states"] = states(report.unreachable_states);
    j["statically_dead_rules"] = report.statically_dead_rules;
    nlohmann::json missing = nlohmann::json::array();
    for (const auto& [s, sym] : report.missing_transitions)
        missing.push_back({{"state", machine.state_name(s)}, {"symbol", machine.symbol_name(sym)}});
    j["missing_transitions"] = missing;
    return j;
}

nlohmann::json to_json(const CoverageReport& report) {
    nlohmann::json j;
    j["fired_rules"] = report.fired_rules;
    j["never_fired"] = report.never_fired;
    nlohmann::json residue = nlohmann::json::object();
    for (const auto& [name, count] : report.residue) residue[name] = count;
    j["residue"] = residue;
    return j;
}

nlohmann::json to_json(const RunStats& stats, const Machine& machine) {
    nlohmann::json j;
    j["steps"] = stats.steps;
    j["min_offset"] = stats.min_offset;
    j["max_offset"] = stats.max_offset;
    nlohmann::json firings = nlohmann::json::object();
    for (std::size_t i = 0; i < stats.rule_firings.size(); ++i)
        if (stats.rule_firings[i] > 0) firings[std::to_string(i)] = stats.rule_firings[i];
    j["rule_firings"] = firings;
    nlohmann::json visits = nlohmann::json::object();
    for (std::size_t i = 0; i < stats.state_visits.size(); ++i)
        if (stats.state_visits[i] > 0)
            visits[machine.state_name(StateId{static_cast<std::uint32_t>(i)})] = stats.state_visits[i];
    j["state_visits"] = visits;
    return j;
}

}  // namespace tmsim
