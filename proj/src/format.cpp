#include "tmsim/format.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace tmsim {

namespace detail {
const char* fibonacci_tm_text();  // generated from machines/fibonacci.tm
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) toks.push_back(line.substr(start, i - start));
    }
    return toks;
}

/// Interner assigning ids in first-appearance order.
class NameTable {
public:
    std::uint32_t intern(std::string_view name) {
        auto it = ids_.find(std::string(name));
        if (it != ids_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(names_.size());
        names_.emplace_back(name);
        ids_.emplace(names_.back(), id);
        return id;
    }
    std::vector<std::string> take() { return std::move(names_); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

}  // namespace

ParseResult parse_machine(std::string_view source) {
    ParseResult result;
    auto diag = [&result](ParseDiagnostic::Kind kind, int line, std::string msg) {
        result.diagnostics.push_back({kind, line, std::move(msg)});
    };

    NameTable states, symbols;
    std::optional<SymbolId> blank;
    std::optional<StateId> initial;
    std::vector<StateId> finals;
    std::vector<Rule> rules;
    // duplicate detection across already-accepted rules
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> rule_lines;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        std::size_t eol = source.find('\n', pos);
        std::string_view line = source.substr(pos, eol == std::string_view::npos ? source.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? source.size() + 1 : eol + 1;
        ++line_no;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        auto toks = split_tokens(line);
        if (toks.empty()) continue;

        std::string_view directive = toks[0];
        if (directive == "blank") {
            if (toks.size() != 2) {
                diag(ParseDiagnostic::Kind::BadArity, line_no, "blank takes exactly one symbol");
                continue;
            }
            if (blank) {
                diag(ParseDiagnostic::Kind::DuplicateDirective, line_no, "blank given twice");
                continue;
            }
            blank = SymbolId{symbols.intern(toks[1])};
        } else if (directive == "initial") {
            if (toks.size() != 2) {
                diag(ParseDiagnostic::Kind::BadArity, line_no, "initial takes exactly one state");
                continue;
            }
            if (initial) {
                diag(ParseDiagnostic::Kind::DuplicateDirective, line_no, "initial given twice");
                continue;
            }
            initial = StateId{states.intern(toks[1])};
        } else if (directive == "final") {
            if (toks.size() != 2) {
                diag(ParseDiagnostic::Kind::BadArity, line_no, "final takes exactly one state");
                continue;
            }
            StateId f{states.intern(toks[1])};
            if (std::find(finals.begin(), finals.end(), f) == finals.end()) finals.push_back(f);
        } else if (directive == "rule") {
            if (toks.size() != 6) {
                diag(ParseDiagnostic::Kind::BadArity, line_no,
                     "rule takes <state> <symbol> <state> <symbol> <L|R|N>");
                continue;
            }
            Move move;
            if (toks[5] == "L") move = Move::Left;
            else if (toks[5] == "R") move = Move::Right;
            else if (toks[5] == "N") move = Move::None;
            else {
                diag(ParseDiagnostic::Kind::UnknownMove, line_no,
                     "move must be L, R, or N, got \"" + std::string(toks[5]) + "\"");
                continue;
            }
            Rule r;
            r.cur_state = StateId{states.intern(toks[1])};
            r.cur_symbol = SymbolId{symbols.intern(toks[2])};
            r.next_state = StateId{states.intern(toks[3])};
            r.next_symbol = SymbolId{symbols.intern(toks[4])};
            r.move = move;
            auto key = std::make_pair(r.cur_state.value, r.cur_symbol.value);
            if (auto it = rule_lines.find(key); it != rule_lines.end()) {
                diag(ParseDiagnostic::Kind::DuplicateRule, line_no,
                     "second rule for (" + std::string(toks[1]) + ", " + std::string(toks[2]) +
                         "); first given on line " + std::to_string(it->second));
                continue;
            }
            rule_lines.emplace(key, line_no);
            r.rule_id = static_cast<std::int32_t>(rules.size());
            rules.push_back(r);
        } else {
            diag(ParseDiagnostic::Kind::UnknownToken, line_no,
                 "unknown directive \"" + std::string(directive) + "\"");
        }
    }

    if (!blank) diag(ParseDiagnostic::Kind::MissingDirective, 0, "no blank directive");
    if (!initial) diag(ParseDiagnostic::Kind::MissingDirective, 0, "no initial directive");
    if (finals.empty()) diag(ParseDiagnostic::Kind::MissingDirective, 0, "no final directive");

    if (result.diagnostics.empty())
        result.machine = Machine::from_parts(states.take(), symbols.take(), *blank, *initial,
                                             std::move(finals), std::move(rules));
    return result;
}

std::string serialize_machine(const Machine& machine) {
    std::ostringstream out;
    out << "blank " << machine.symbol_name(machine.blank()) << '\n';
    out << "initial " << machine.state_name(machine.initial()) << '\n';

    std::vector<std::string> final_names;
    final_names.reserve(machine.finals().size());
    for (StateId f : machine.finals()) final_names.push_back(machine.state_name(f));
    std::sort(final_names.begin(), final_names.end());
    for (const auto& name : final_names) out << "final " << name << '\n';

    for (const Rule& r : machine.rules())
        out << "rule " << machine.state_name(r.cur_state) << ' ' << machine.symbol_name(r.cur_symbol)
            << ' ' << machine.state_name(r.next_state) << ' ' << machine.symbol_name(r.next_symbol)
            << ' ' << to_string(r.move) << '\n';
    return out.str();
}

bool structurally_equal(const Machine& a, const Machine& b) {
    if (a.symbol_name(a.blank()) != b.symbol_name(b.blank())) return false;
    if (a.state_name(a.initial()) != b.state_name(b.initial())) return false;

    auto final_names = [](const Machine& m) {
        std::vector<std::string> names;
        for (StateId f : m.finals()) names.push_back(m.state_name(f));
        std::sort(names.begin(), names.end());
        return names;
    };
    if (final_names(a) != final_names(b)) return false;

    if (a.rules().size() != b.rules().size()) return false;
    for (std::size_t i = 0; i < a.rules().size(); ++i) {
        const Rule& ra = a.rules()[i];
        const Rule& rb = b.rules()[i];
        if (a.state_name(ra.cur_state) != b.state_name(rb.cur_state) ||
            a.symbol_name(ra.cur_symbol) != b.symbol_name(rb.cur_symbol) ||
            a.state_name(ra.next_state) != b.state_name(rb.next_state) ||
            a.symbol_name(ra.next_symbol) != b.symbol_name(rb.next_symbol) ||
            ra.move != rb.move)
            return false;
    }
    return true;
}

std::vector<SymbolId> parse_tape_input(std::string_view text, const Machine& machine) {
    std::vector<SymbolId> out;
    std::size_t i = 0, token_index = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) break;
        std::string_view tok = text.substr(start, i - start);
        ++token_index;
        auto sym = machine.find_symbol(tok);
        if (!sym) throw UnknownTokenError(std::string(tok), token_index);
        out.push_back(*sym);
    }
    return out;
}

const Machine& fibonacci_machine() {
    static const Machine machine = [] {
        ParseResult res = parse_machine(detail::fibonacci_tm_text());
        if (!res.ok()) throw std::logic_error("bundled fibonacci.tm does not parse");
        return std::move(*res.machine);
    }();
    return machine;
}

const char* to_string(ParseDiagnostic::Kind k) {
    using Kind = ParseDiagnostic::Kind;
    switch (k) {
        case Kind::DuplicateRule: return "DuplicateRule";
        case Kind::UnknownMove: return "UnknownMove";
        case Kind::BadArity: return "BadArity";
        case Kind::MissingDirective: return "MissingDirective";
        case Kind::DuplicateDirective: return "DuplicateDirective";
        case Kind::UnknownToken: return "UnknownToken";
    }
    return "?";
}

}  // namespace tmsim
