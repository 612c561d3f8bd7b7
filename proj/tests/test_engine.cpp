#include <doctest.h>

#include <random>
#include <thread>

#include "helpers.hpp"
#include "tmsim/accel.hpp"
#include "tmsim/engine.hpp"
#include "tmsim/format.hpp"

using namespace tmsim;

namespace {

const Machine& fib() { return fibonacci_machine(); }

SymbolId sym(const Machine& m, const char* name) { return *m.find_symbol(name); }
StateId state(const Machine& m, const char* name) { return *m.find_state(name); }

}  // namespace

TEST_CASE("single step applies rule 0 from the start configuration") {
    const Machine& m = fib();
    std::vector<SymbolId> input{sym(m, "1")};
    Configuration config{m.initial(), Tape(input, m.blank())};

    StepResult res = step(m, config);

    CHECK(res.status == StepStatus::Applied);
    CHECK(res.rule_id == 0);
    CHECK(config.state == state(m, "q101"));
    CHECK(config.tape.read(0) == sym(m, "x"));
    CHECK(config.tape.head() == 1);
    CHECK(config.steps == 1);
}

TEST_CASE("step in a final state is AlreadyHalted and changes nothing") {
    const Machine& m = fib();
    Configuration config{state(m, "qf"), Tape(m.blank())};
    config.tape.write(0, sym(m, "1"));
    Configuration before = config;

    StepResult res = step(m, config);

    CHECK(res.status == StepStatus::AlreadyHalted);
    CHECK(config == before);
}

TEST_CASE("step with no matching rule is Stuck") {
    // the table has no (q0, b) rule: verified by scanning it
    const Machine& m = fib();
    int q0_rules = 0;
    for (const Rule& r : m.rules()) {
        if (r.cur_state == m.initial()) {
            ++q0_rules;
            CHECK(r.cur_symbol == sym(m, "1"));
        }
    }
    CHECK(q0_rules == 1);

    Configuration config{m.initial(), Tape(m.blank())};
    StepResult res = step(m, config);
    CHECK(res.status == StepStatus::Stuck);
    CHECK(config.steps == 0);
}

TEST_CASE("run computes the seventh Fibonacci number") {
    const Machine& m = fib();
    RunOutcome outcome = run(m, encode_unary(7, m));

    CHECK(outcome.kind == RunKind::Halted);
    CHECK(m.is_final(outcome.final_config.state));
    CHECK(decode_unary(outcome.final_config.tape, m) == 13);
}

TEST_CASE("runs are reproducible bit for bit") {
    // frozen step counts; any drift in the single-step semantics shows here
    const Machine& m = fib();
    const std::uint64_t expected_steps[] = {36, 65, 151, 264, 452, 791, 1456};
    const std::uint64_t expected_ones[] = {1, 1, 2, 3, 5, 8, 13};
    for (std::uint64_t n = 1; n <= 7; ++n) {
        RunOutcome outcome = run(m, encode_unary(n, m));
        REQUIRE(outcome.kind == RunKind::Halted);
        CHECK(outcome.stats.steps == expected_steps[n - 1]);
        CHECK(decode_unary(outcome.final_config.tape, m) == expected_ones[n - 1]);

        RunOutcome again = run(m, encode_unary(n, m));
        CHECK(again.final_config == outcome.final_config);
        CHECK(again.stats.rule_firings == outcome.stats.rule_firings);
    }
}

TEST_CASE("halted runs leave only ones on the tape") {
    const Machine& m = fib();
    for (std::uint64_t n : {1, 2, 5, 9}) {
        RunOutcome outcome = run(m, encode_unary(n, m));
        REQUIRE(outcome.kind == RunKind::Halted);
        const std::uint64_t ones = decode_unary(outcome.final_config.tape, m);
        CHECK(outcome.final_config.tape.populated_cells() == ones);
    }
}

TEST_CASE("run on an empty tape is Stuck at step 0 in the initial state") {
    const Machine& m = fib();
    RunOutcome outcome = run(m, {});

    CHECK(outcome.kind == RunKind::Stuck);
    CHECK(outcome.stats.steps == 0);
    CHECK(outcome.final_config.state == m.initial());
}

TEST_CASE("run stops exactly at the step limit") {
    const Machine& m = fib();
    RunOutcome outcome = run(m, encode_unary(7, m), 1);

    CHECK(outcome.kind == RunKind::StepLimitExceeded);
    CHECK(outcome.stats.steps == 1);
    CHECK(outcome.final_config.state == state(m, "q101"));
}

TEST_CASE("halting on the limit step still reports Halted") {
    auto res = parse_machine("blank b\ninitial q0\nfinal qf\nrule q0 b qf b N\n");
    REQUIRE(res.ok());
    RunOutcome outcome = run(*res.machine, {}, 1);
    CHECK(outcome.kind == RunKind::Halted);
    CHECK(outcome.stats.steps == 1);
}

TEST_CASE("halting absorbency") {
    const Machine& m = fib();
    RunOutcome outcome = run(m, encode_unary(3, m));
    REQUIRE(outcome.kind == RunKind::Halted);

    Configuration config = outcome.final_config;
    Configuration before = config;
    for (int i = 0; i < 3; ++i) {
        CHECK(step(m, config).status == StepStatus::AlreadyHalted);
        CHECK(config == before);
    }
}

TEST_CASE("run rejects input symbols outside the alphabet") {
    const Machine& m = fib();
    std::vector<SymbolId> input{SymbolId{99}};
    CHECK_THROWS_AS(run(m, input), InputSymbolError);
}

TEST_CASE("unary encoding") {
    const Machine& m = fib();
    CHECK(encode_unary(5, m) == std::vector<SymbolId>(5, sym(m, "1")));
    CHECK(encode_unary(0, m).empty());
    CHECK(encode_unary(3, m).size() == 3);
}

TEST_CASE("unary codec requires a \"1\" symbol") {
    auto res = parse_machine("blank e\ninitial q0\nfinal qf\nrule q0 e qf e N\n");
    REQUIRE(res.ok());
    CHECK_THROWS_AS(encode_unary(2, *res.machine), MissingUnarySymbolError);
    CHECK_THROWS_AS(decode_unary(Tape(res.machine->blank()), *res.machine),
                    MissingUnarySymbolError);
}

TEST_CASE("unary decoding counts ones anywhere on the tape") {
    const Machine& m = fib();
    Tape tape(m.blank());
    CHECK(decode_unary(tape, m) == 0);

    // b b 1 1 b 1
    tape.write(2, sym(m, "1"));
    tape.write(3, sym(m, "1"));
    tape.write(5, sym(m, "1"));
    CHECK(decode_unary(tape, m) == 3);

    Tape negative(m.blank());
    negative.write(-4, sym(m, "1"));
    negative.write(7, sym(m, "1"));
    CHECK(decode_unary(negative, m) == 2);
}

TEST_CASE("codec round trip for n in 0..1000") {
    const Machine& m = fib();
    for (std::uint64_t n = 0; n <= 1000; ++n) {
        Tape tape(encode_unary(n, m), m.blank());
        REQUIRE(decode_unary(tape, m) == n);
    }
}

TEST_CASE("step is a pure function of (machine, configuration)") {
    const Machine& m = fib();
    std::mt19937 rng(41);
    RunOutcome outcome = run(m, encode_unary(4, m), 50);
    Configuration a = outcome.final_config;
    Configuration b = outcome.final_config;
    for (int i = 0; i < 200; ++i) {
        StepResult ra = step(m, a);
        StepResult rb = step(m, b);
        CHECK(ra.status == rb.status);
        CHECK(ra.rule_id == rb.rule_id);
        CHECK(a == b);
    }
}

TEST_CASE("stats are consistent with the run") {
    const Machine& m = fib();
    for (std::uint64_t n : {1, 2, 5, 7}) {
        RunOutcome outcome = run(m, encode_unary(n, m));
        CHECK(outcome.stats.total_firings() == outcome.stats.steps);
        CHECK(outcome.stats.state_visits[m.initial().value] >= 1);
        CHECK(outcome.stats.min_offset <= 0);
        CHECK(outcome.stats.max_offset >= 0);
    }
}

TEST_CASE("tape growth bound and canonical form over random machines") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        auto desc = tmsim::test::random_machine(rng);
        auto res = parse_machine(desc.source);
        REQUIRE(res.ok());
        const Machine& m = *res.machine;
        auto input = tmsim::test::random_input(rng, m, 20);

        RunOutcome outcome = run(m, input, 500);
        const auto len = static_cast<std::int64_t>(input.size());
        CHECK(outcome.stats.max_offset - outcome.stats.min_offset <=
              std::max<std::int64_t>(len - 1, 0) + static_cast<std::int64_t>(outcome.stats.steps));
        CHECK(outcome.final_config.tape.check_canonical());
        CHECK(outcome.stats.total_firings() == outcome.stats.steps);
    }
}

TEST_CASE("a shared machine supports parallel independent runs") {
    const Machine& m = fib();
    const RunOutcome reference = run(m, encode_unary(7, m));

    std::vector<std::thread> workers;
    std::vector<int> ok(8, 0);
    for (int i = 0; i < 8; ++i) {
        workers.emplace_back([&m, &reference, &ok, i] {
            auto input = encode_unary(7, m);
            RunOutcome outcome = (i % 2 == 0) ? run(m, input) : run_accelerated(m, input);
            ok[static_cast<std::size_t>(i)] =
                outcome.kind == reference.kind &&
                outcome.final_config == reference.final_config &&
                outcome.stats.rule_firings == reference.stats.rule_firings;
        });
    }
    for (auto& w : workers) w.join();
    for (int flag : ok) CHECK(flag == 1);
}

TEST_CASE("tape writes keep the sparse form canonical") {
    const Machine& m = fib();
    Tape tape(m.blank());
    tape.write(5, sym(m, "1"));
    tape.write(5, m.blank());
    CHECK(tape.populated_cells() == 0);
    CHECK(tape.check_canonical());
    CHECK(tape == Tape(m.blank()));
}
