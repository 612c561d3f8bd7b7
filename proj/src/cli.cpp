#include "tmsim/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmsim/accel.hpp"
#include "tmsim/analysis.hpp"
#include "tmsim/engine.hpp"
#include "tmsim/format.hpp"
#include "tmsim/trace.hpp"

namespace tmsim {

namespace {

constexpr const char* kFibonacciAlias = "@fibonacci";

void print_diagnostics(const std::vector<ParseDiagnostic>& diagnostics, std::ostream& err) {
    for (const auto& d : diagnostics) {
        if (d.line > 0) err << "line " << d.line << ": ";
        err << to_string(d.kind) << ": " << d.message << '\n';
    }
}

/// Loads a machine from a file path or the built-in @fibonacci alias.
std::optional<Machine> load_machine(const std::string& path_or_alias, std::ostream& err) {
    if (path_or_alias == kFibonacciAlias) return fibonacci_machine();

    std::ifstream in(path_or_alias, std::ios::binary);
    if (!in) {
        err << "cannot open machine file: " << path_or_alias << '\n';
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    ParseResult res = parse_machine(buf.str());
    if (!res.ok()) {
        err << path_or_alias << ":\n";
        print_diagnostics(res.diagnostics, err);
        return std::nullopt;
    }
    return std::move(*res.machine);
}

std::string render_tape(const Tape& tape, const Machine& machine) {
    auto extent = tape.non_blank_extent();
    if (!extent) return {};
    std::string out;
    for (std::int64_t off = extent->min; off <= extent->max; ++off) {
        if (!out.empty()) out += ' ';
        out += machine.symbol_name(tape.read(off));
    }
    return out;
}

int exit_code_for(RunKind kind) {
    switch (kind) {
        case RunKind::Halted: return kExitHalted;
        case RunKind::Stuck: return kExitStuck;
        case RunKind::StepLimitExceeded: return kExitStepLimit;
    }
    return kExitUsage;
}

std::uint64_t fib_oracle(std::uint64_t n) {
    // F(1) = F(2) = 1 convention.
    std::uint64_t prev = 0, cur = 1;
    if (n == 0) return 0;
    for (std::uint64_t i = 1; i < n; ++i) {
        std::uint64_t next = prev + cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

struct RunCmdOptions {
    std::string machine_file;
    std::vector<std::string> tape_tokens;
    std::int64_t unary = -1;
    std::string engine = "naive";
    std::uint64_t max_steps = kDefaultMaxSteps;
    bool trace = false;
    std::string trace_out;
    bool metrics = false;
    std::string metrics_json;
};

int cmd_run(const RunCmdOptions& opt, std::ostream& out, std::ostream& err) {
    auto machine = load_machine(opt.machine_file, err);
    if (!machine) return kExitUsage;

    if (opt.unary >= 0 && !opt.tape_tokens.empty()) {
        err << "--unary and positional tape tokens are mutually exclusive\n";
        return kExitUsage;
    }

    std::vector<SymbolId> input;
    try {
        if (opt.unary >= 0) {
            input = encode_unary(static_cast<std::uint64_t>(opt.unary), *machine);
        } else {
            std::string joined;
            for (const auto& tok : opt.tape_tokens) {
                if (!joined.empty()) joined += ' ';
                joined += tok;
            }
            input = parse_tape_input(joined, *machine);
        }
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    const bool accel = opt.engine == "accel";

    std::ofstream trace_file;
    std::ostream* trace_stream = nullptr;
    if (!opt.trace_out.empty()) {
        trace_file.open(opt.trace_out);
        if (!trace_file) {
            err << "cannot open trace output file: " << opt.trace_out << '\n';
            return kExitUsage;
        }
        trace_stream = &trace_file;
    } else if (opt.trace) {
        trace_stream = &err;
    }

    RunOutcome outcome = [&] {
        if (trace_stream != nullptr) {
            TraceSink sink = [trace_stream](const TraceRecord& rec) {
                *trace_stream << format_trace_line(rec) << '\n';
            };
            return run_traced(*machine, input, opt.max_steps, sink, accel);
        }
        return accel ? run_accelerated(*machine, input, opt.max_steps)
                     : run(*machine, input, opt.max_steps);
    }();

    out << "outcome: " << to_string(outcome.kind) << '\n';
    out << "steps: " << outcome.stats.steps << '\n';
    out << "final_tape: " << render_tape(outcome.final_config.tape, *machine) << '\n';
    out << "decoded_unary: " << decode_unary(outcome.final_config.tape, *machine) << '\n';

    if (opt.metrics) {
        out << to_text(outcome.stats, *machine);
        out << to_text(coverage(*machine, outcome));
    }
    if (!opt.metrics_json.empty()) {
        nlohmann::json doc;
        doc["run_stats"] = to_json(outcome.stats, *machine);
        doc["coverage"] = to_json(coverage(*machine, outcome));
        if (opt.metrics_json == "-") {
            out << doc.dump(2) << '\n';
        } else {
            std::ofstream jf(opt.metrics_json);
            if (!jf) {
                err << "cannot open metrics output file: " << opt.metrics_json << '\n';
                return kExitUsage;
            }
            jf << doc.dump(2) << '\n';
        }
    }
    return exit_code_for(outcome.kind);
}

struct FibCmdOptions {
    std::uint64_t n = 0;
    std::string engine = "naive";
    bool expect = false;
    std::string machine_file = kFibonacciAlias;
    std::uint64_t max_steps = kDefaultMaxSteps;
};

int cmd_fib(const FibCmdOptions& opt, std::ostream& out, std::ostream& err) {
    auto machine = load_machine(opt.machine_file, err);
    if (!machine) return kExitUsage;

    std::vector<SymbolId> input;
    try {
        input = encode_unary(opt.n, *machine);
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    RunOutcome outcome = opt.engine == "accel" ? run_accelerated(*machine, input, opt.max_steps)
                                               : run(*machine, input, opt.max_steps);
    const std::uint64_t decoded = decode_unary(outcome.final_config.tape, *machine);

    out << "n: " << opt.n << '\n';
    out << "fib: " << decoded << '\n';
    out << "steps: " << outcome.stats.steps << '\n';
    out << "tape_span: " << outcome.stats.min_offset << ".." << outcome.stats.max_offset << " ("
        << (outcome.stats.max_offset - outcome.stats.min_offset + 1) << " cells)\n";

    if (outcome.kind != RunKind::Halted) {
        err << "run did not halt: " << to_string(outcome.kind) << '\n';
        return exit_code_for(outcome.kind);
    }
    if (opt.expect) {
        const std::uint64_t expected = fib_oracle(opt.n);
        if (decoded != expected) {
            err << "mismatch: machine computed " << decoded << ", oracle expects " << expected
                << '\n';
            return kExitMismatch;
        }
        out << "expect: ok (" << expected << ")\n";
    }
    return kExitHalted;
}

int cmd_validate(const std::string& machine_file, std::ostream& out, std::ostream& err) {
    auto loaded = load_machine(machine_file, err);
    if (!loaded) return kExitUsage;
    const Machine& machine = *loaded;

    auto issues = validate(machine);
    for (const auto& issue : issues) err << "error: " << issue.message << '\n';

    out << "machine: " << machine.rules().size() << " rules, " << machine.state_count()
        << " states, " << machine.symbol_count() << " symbols, " << machine.finals().size()
        << " final\n";
    StaticReport report = reachability(machine);
    out << to_text(report, machine);
    if (!report.unreachable_states.empty())
        err << "warning: " << report.unreachable_states.size() << " unreachable state(s)\n";

    return issues.empty() ? kExitHalted : kExitUsage;
}

struct BenchCmdOptions {
    std::string machine_file;
    std::string range;
    std::string engine = "both";
    std::uint64_t max_steps = kDefaultMaxSteps;
    std::string json_out;
};

int cmd_bench(const BenchCmdOptions& opt, std::ostream& out, std::ostream& err) {
    auto machine = load_machine(opt.machine_file, err);
    if (!machine) return kExitUsage;

    std::uint64_t lo = 0, hi = 0;
    {
        std::size_t dots = opt.range.find("..");
        if (dots == std::string::npos) {
            err << "--unary-range expects A..B\n";
            return kExitUsage;
        }
        try {
            lo = std::stoull(opt.range.substr(0, dots));
            hi = std::stoull(opt.range.substr(dots + 2));
        } catch (const std::exception&) {
            err << "--unary-range expects A..B with non-negative integers\n";
            return kExitUsage;
        }
        if (lo > hi) {
            err << "--unary-range: A must not exceed B\n";
            return kExitUsage;
        }
    }

    std::vector<std::string> engines;
    if (opt.engine == "both") engines = {"naive", "accel"};
    else engines = {opt.engine};

    struct Row {
        std::uint64_t n;
        std::string engine;
        std::string kind;
        std::uint64_t steps;
        double millis;
        std::int64_t span;
        std::uint64_t decoded;
    };
    std::vector<Row> rows;

    for (std::uint64_t n = lo; n <= hi; ++n) {
        std::vector<SymbolId> input = encode_unary(n, *machine);
        std::optional<std::uint64_t> first_decoded;
        for (const auto& engine : engines) {
            auto t0 = std::chrono::steady_clock::now();
            RunOutcome outcome = engine == "accel"
                                     ? run_accelerated(*machine, input, opt.max_steps)
                                     : run(*machine, input, opt.max_steps);
            auto t1 = std::chrono::steady_clock::now();
            const std::uint64_t decoded = decode_unary(outcome.final_config.tape, *machine);
            if (first_decoded && *first_decoded != decoded) {
                err << "engine disagreement at n=" << n << ": naive decoded " << *first_decoded
                    << ", accel decoded " << decoded << '\n';
                return kExitMismatch;
            }
            first_decoded = decoded;
            rows.push_back({n, engine, to_string(outcome.kind), outcome.stats.steps,
                            std::chrono::duration<double, std::milli>(t1 - t0).count(),
                            outcome.stats.max_offset - outcome.stats.min_offset + 1, decoded});
        }
    }

    out << std::left << std::setw(6) << "n" << std::setw(8) << "engine" << std::setw(22) << "kind"
        << std::right << std::setw(12) << "steps" << std::setw(12) << "time_ms" << std::setw(8)
        << "span" << std::setw(10) << "decoded" << '\n';
    for (const Row& r : rows) {
        out << std::left << std::setw(6) << r.n << std::setw(8) << r.engine << std::setw(22)
            << r.kind << std::right << std::setw(12) << r.steps << std::setw(12) << std::fixed
            << std::setprecision(3) << r.millis << std::setw(8) << r.span << std::setw(10)
            << r.decoded << '\n';
    }

    if (!opt.json_out.empty()) {
        nlohmann::json doc = nlohmann::json::array();
        for (const Row& r : rows)
            doc.push_back({{"n", r.n},
                           {"engine", r.engine},
                           {"kind", r.kind},
                           {"steps", r.steps},
                           {"time_ms", r.millis},
                           {"span", r.span},
                           {"decoded", r.decoded}});
        if (opt.json_out == "-") {
            out << doc.dump(2) << '\n';
        } else {
            std::ofstream jf(opt.json_out);
            if (!jf) {
                err << "cannot open json output file: " << opt.json_out << '\n';
                return kExitUsage;
            }
            jf << doc.dump(2) << '\n';
        }
    }
    return kExitHalted;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deterministic single-tape Turing machine simulator", "tmsim"};
    app.require_subcommand(1);

    RunCmdOptions run_opt;
    CLI::App* run_cmd = app.add_subcommand("run", "Run a machine on a tape");
    run_cmd->add_option("machine", run_opt.machine_file, "Machine file (or @fibonacci)")
        ->required();
    run_cmd->add_option("tokens", run_opt.tape_tokens, "Input tape as symbol tokens");
    run_cmd->add_option("--unary", run_opt.unary, "Input tape as N ones")
        ->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--engine", run_opt.engine, "Execution engine")
        ->check(CLI::IsMember({"naive", "accel"}))
        ->capture_default_str();
    run_cmd->add_option("--max-steps", run_opt.max_steps, "Step limit")->capture_default_str();
    run_cmd->add_flag("--trace", run_opt.trace, "Stream one trace line per step to stderr");
    run_cmd->add_option("--trace-out", run_opt.trace_out, "Write the trace to a file instead");
    run_cmd->add_flag("--metrics", run_opt.metrics, "Print run statistics and rule coverage");
    run_cmd->add_option("--metrics-json", run_opt.metrics_json,
                        "Write metrics as JSON to a file ('-' for stdout)");

    FibCmdOptions fib_opt;
    CLI::App* fib_cmd = app.add_subcommand("fib", "Compute a Fibonacci number with the bundled machine");
    fib_cmd->add_option("n", fib_opt.n, "Index n (unary input of n ones)")->required();
    fib_cmd->add_option("--engine", fib_opt.engine, "Execution engine")
        ->check(CLI::IsMember({"naive", "accel"}))
        ->capture_default_str();
    fib_cmd->add_flag("--expect", fib_opt.expect, "Verify against the iterative oracle");
    fib_cmd->add_option("--machine", fib_opt.machine_file, "Override the machine under test")
        ->capture_default_str();
    fib_cmd->add_option("--max-steps", fib_opt.max_steps, "Step limit")->capture_default_str();

    std::string validate_file;
    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a machine description");
    validate_cmd->add_option("machine", validate_file, "Machine file (or @fibonacci)")->required();

    BenchCmdOptions bench_opt;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Compare engines over a range of unary inputs");
    bench_cmd->add_option("machine", bench_opt.machine_file, "Machine file (or @fibonacci)")
        ->required();
    bench_cmd->add_option("--unary-range", bench_opt.range, "Inclusive input range A..B")
        ->required();
    bench_cmd->add_option("--engine", bench_opt.engine, "naive, accel, or both")
        ->check(CLI::IsMember({"naive", "accel", "both"}))
        ->capture_default_str();
    bench_cmd->add_option("--max-steps", bench_opt.max_steps, "Step limit")->capture_default_str();
    bench_cmd->add_option("--json", bench_opt.json_out, "Write rows as JSON ('-' for stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_opt, out, err);
        if (fib_cmd->parsed()) return cmd_fib(fib_opt, out, err);
        if (validate_cmd->parsed()) return cmd_validate(validate_file, out, err);
        if (bench_cmd->parsed()) return cmd_bench(bench_opt, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace tmsim
