#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "tmsim/engine.hpp"
#include "tmsim/format.hpp"
#include "tmsim/trace.hpp"

using namespace tmsim;

TEST_CASE("trace records are consecutive and agree with the table") {
    const Machine& m = fibonacci_machine();
    auto input = encode_unary(5, m);

    std::vector<TraceRecord> records;
    RunOutcome outcome =
        run_traced(m, input, kDefaultMaxSteps, [&records](const TraceRecord& r) { records.push_back(r); });

    REQUIRE(outcome.kind == RunKind::Halted);
    REQUIRE(records.size() == outcome.stats.steps);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const TraceRecord& rec = records[i];
        CHECK(rec.step == i);
        REQUIRE(rec.rule >= 0);
        const Rule& rule = m.rules()[static_cast<std::size_t>(rec.rule)];
        CHECK(m.state_name(rule.cur_state) == rec.state);
        CHECK(m.symbol_name(rule.cur_symbol) == rec.read);
        CHECK(m.symbol_name(rule.next_symbol) == rec.write);
        CHECK(rule.move == rec.move);
        CHECK(m.state_name(rule.next_state) == rec.next_state);
    }
}

TEST_CASE("the first trace line of a fibonacci run is exact") {
    const Machine& m = fibonacci_machine();
    std::vector<TraceRecord> records;
    run_traced(m, encode_unary(2, m), kDefaultMaxSteps,
               [&records](const TraceRecord& r) { records.push_back(r); });
    REQUIRE(!records.empty());
    CHECK(format_trace_line(records[0]) ==
          "step=0 state=q0 head=0 read=1 rule=0 write=x move=R next=q101");
}

TEST_CASE("trace lines round trip through text") {
    const Machine& m = fibonacci_machine();
    std::vector<TraceRecord> records;
    run_traced(m, encode_unary(4, m), kDefaultMaxSteps,
               [&records](const TraceRecord& r) { records.push_back(r); });

    for (const TraceRecord& rec : records) {
        auto parsed = parse_trace_line(format_trace_line(rec));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == rec);
    }

    CHECK(!parse_trace_line("").has_value());
    CHECK(!parse_trace_line("step=0").has_value());
    CHECK(!parse_trace_line("step=x state=q0 head=0 read=1 rule=0 write=x move=R next=q101")
               .has_value());
    CHECK(!parse_trace_line("step=0 state=q0 head=0 read=1 rule=0 write=x move=Q next=q101")
               .has_value());
}

TEST_CASE("replaying a trace reproduces the final tape") {
    const Machine& m = fibonacci_machine();
    auto input = encode_unary(5, m);

    std::vector<TraceRecord> records;
    RunOutcome outcome = run_traced(m, input, kDefaultMaxSteps,
                                    [&records](const TraceRecord& r) { records.push_back(r); });

    Tape replayed = replay_trace(m, input, records);
    CHECK(replayed == outcome.final_config.tape);
}

TEST_CASE("replay rejects tampered traces") {
    const Machine& m = fibonacci_machine();
    auto input = encode_unary(3, m);
    std::vector<TraceRecord> records;
    run_traced(m, input, kDefaultMaxSteps,
               [&records](const TraceRecord& r) { records.push_back(r); });
    REQUIRE(records.size() > 2);

    SUBCASE("skipped step") {
        auto broken = records;
        broken.erase(broken.begin() + 1);
        CHECK_THROWS_AS(replay_trace(m, input, broken), TraceReplayError);
    }
    SUBCASE("wrong rule id") {
        auto broken = records;
        broken[1].rule = (broken[1].rule + 1) % 100;
        CHECK_THROWS_AS(replay_trace(m, input, broken), TraceReplayError);
    }
    SUBCASE("rule id out of range") {
        auto broken = records;
        broken[0].rule = 1000;
        CHECK_THROWS_AS(replay_trace(m, input, broken), TraceReplayError);
    }
}

TEST_CASE("both engines emit identical traces") {
    const Machine& m = fibonacci_machine();
    auto input = encode_unary(5, m);

    std::vector<TraceRecord> naive_records, accel_records;
    RunOutcome naive = run_traced(m, input, kDefaultMaxSteps,
                                  [&](const TraceRecord& r) { naive_records.push_back(r); }, false);
    RunOutcome accel = run_traced(m, input, kDefaultMaxSteps,
                                  [&](const TraceRecord& r) { accel_records.push_back(r); }, true);

    CHECK(naive.kind == accel.kind);
    CHECK(naive.final_config.tape == accel.final_config.tape);
    REQUIRE(naive_records.size() == accel_records.size());
    for (std::size_t i = 0; i < naive_records.size(); ++i)
        REQUIRE(naive_records[i] == accel_records[i]);
}

TEST_CASE("traced runs respect the step limit") {
    const Machine& m = fibonacci_machine();
    auto input = encode_unary(7, m);
    for (bool accel : {false, true}) {
        std::vector<TraceRecord> records;
        RunOutcome outcome = run_traced(
            m, input, 42, [&records](const TraceRecord& r) { records.push_back(r); }, accel);
        CHECK(outcome.kind == RunKind::StepLimitExceeded);
        CHECK(records.size() == 42);
    }
}
