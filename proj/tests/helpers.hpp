#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tmsim/machine.hpp"

namespace tmsim::test {

/// Independent iterative Fibonacci oracle, F(1) = F(2) = 1.
inline std::uint64_t fib_oracle(std::uint64_t n) {
    std::uint64_t prev = 0, cur = 1;
    if (n == 0) return 0;
    for (std::uint64_t i = 1; i < n; ++i) {
        std::uint64_t next = prev + cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// A randomly generated machine description plus its source text. The
/// counts are upper bounds: states or symbols that end up unmentioned are
/// never interned.
struct RandomMachine {
    std::string source;
    std::size_t max_states;
    std::size_t max_symbols;
};

/// Generates a well-formed machine description: blank b, initial q0, a
/// random non-empty final set, and a random subset of (state, symbol)
/// slots filled with random transitions. May loop forever or get stuck
/// when run; always parses cleanly.
inline RandomMachine random_machine(std::mt19937& rng) {
    const char* symbol_names[] = {"b", "1", "x", "*"};
    std::uniform_int_distribution<std::size_t> state_dist(1, 8);
    std::uniform_int_distribution<std::size_t> symbol_dist(1, 4);
    const std::size_t ns = state_dist(rng);
    const std::size_t nsym = symbol_dist(rng);

    std::string src = "blank b\ninitial q0\n";
    std::uniform_int_distribution<std::size_t> any_state(0, ns - 1);
    std::uniform_int_distribution<std::size_t> any_symbol(0, nsym - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> move_dist(0, 2);

    std::size_t final_state = any_state(rng);
    src += "final q" + std::to_string(final_state) + "\n";
    if (coin(rng) == 1 && ns > 1) {
        std::size_t extra = any_state(rng);
        if (extra != final_state) src += "final q" + std::to_string(extra) + "\n";
    }

    const char* moves[] = {"L", "R", "N"};
    std::uniform_int_distribution<int> fill(0, 9);
    for (std::size_t s = 0; s < ns; ++s) {
        if (s == final_state) continue;
        for (std::size_t sym = 0; sym < nsym; ++sym) {
            if (fill(rng) < 7) {  // ~70% of slots get a rule
                src += "rule q" + std::to_string(s) + " " + symbol_names[sym] + " q" +
                       std::to_string(any_state(rng)) + " " +
                       std::string(symbol_names[any_symbol(rng)]) + " " +
                       moves[move_dist(rng)] + "\n";
            }
        }
    }
    return {src, ns, nsym};
}

/// Random input over the machine's alphabet, length <= max_len.
inline std::vector<SymbolId> random_input(std::mt19937& rng, const Machine& machine,
                                          std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
    std::uniform_int_distribution<std::uint32_t> sym_dist(
        0, static_cast<std::uint32_t>(machine.symbol_count()) - 1);
    std::vector<SymbolId> input(len_dist(rng));
    for (auto& s : input) s = SymbolId{sym_dist(rng)};
    return input;
}

}  // namespace tmsim::test
