// noisylis: experiment front end.
//
//   noisylis gen        --n N [--kind K] [--seed S] [--format text|json] [--out F]
//   noisylis run        --n N --p P [--seed S] [--sorter ID] [--d POLICY] [--format csv|json]
//   noisylis sweep      --n N... --p P... [--sorter ID...] [--d POLICY...] --trials T [--out F]
//   noisylis lowerbound --n N --p P --trials T [--seed S] [--out F]
//   noisylis disl-curve --n N... --p P --trials T [--sorter ID] [--out F]
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "noisylis/adversarial.hpp"
#include "noisylis/approx_sort.hpp"
#include "noisylis/core_model.hpp"
#include "noisylis/distant_lis.hpp"
#include "noisylis/experiment.hpp"
#include "noisylis/io.hpp"

namespace {

using namespace noisylis;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

/// Raised for bad flag values discovered after parsing.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Seed resolve_seed(const std::optional<Seed>& given) {
    if (given) return *given;
    std::random_device rd;
    const Seed seed = (static_cast<Seed>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << seed << " (generated; pass --seed " << seed << " to reproduce)\n";
    return seed;
}

SorterSpec parse_sorter(const std::string& text, std::size_t window, std::size_t passes) {
    const auto id = parse_sorter_id(text);
    if (!id) throw ConfigError("unknown --sorter '" + text + "' (noisy-mergesort|windowed-refine|identity-oracle)");
    return SorterSpec{*id, window, passes};
}

DPolicy parse_d(const std::string& text) {
    const auto policy = parse_d_policy(text);
    if (!policy) throw ConfigError("bad --d '" + text + "' (auto:c=<float>|fixed:<int>|measured)");
    return *policy;
}

PermutationSpec parse_kind(const std::string& text) {
    const auto kind = parse_permutation_spec(text);
    if (!kind) throw ConfigError("bad --kind '" + text + "' (uniform|identity|reversed|planted:<l>)");
    return *kind;
}

/// Stream that is either stdout or an opened file.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct GenOptions {
    std::size_t n = 0;
    std::string kind = "uniform";
    std::optional<Seed> seed;
    std::string format = "text";
    std::string out;
};

struct RunOptions {
    std::size_t n = 1024;
    double p = 0.05;
    std::optional<Seed> seed;
    std::string mode = "persistent-bernoulli";
    std::int64_t tau = 0;
    std::string sorter = "windowed-refine";
    std::size_t window = 0;
    std::size_t passes = 3;
    std::string d = "auto:c=4";
    std::string kind = "uniform";
    std::string input;
    std::size_t oracle_cap = kDefaultOracleCap;
    std::string format = "json";
    std::string out;
    std::string timings;
};

struct SweepOptions {
    std::vector<std::size_t> n;
    std::vector<double> p;
    std::vector<std::string> sorters{"windowed-refine"};
    std::vector<std::string> d{"auto:c=4"};
    std::size_t window = 0;
    std::size_t passes = 3;
    std::size_t trials = 10;
    std::optional<Seed> seed;
    std::string kind = "uniform";
    std::size_t oracle_cap = kDefaultOracleCap;
    std::size_t threads = 1;
    std::string format = "csv";
    std::string out;
    std::string summary;
    std::string timings;
};

struct LowerboundOptions {
    std::size_t n = 1024;
    double p = 0.25;
    std::size_t trials = 1000;
    std::optional<Seed> seed;
    std::string sorter = "windowed-refine";
    std::size_t window = 0;
    std::size_t passes = 3;
    std::string d = "auto:c=4";
    double success_c = 1.0;
    bool no_head_rule = false;
    bool no_length_rule = false;
    std::string format = "json";
    std::string out;
    std::string rows;
};

struct CurveOptions {
    std::vector<std::size_t> n;
    double p = 0.1;
    std::size_t trials = 30;
    std::optional<Seed> seed;
    std::string sorter = "windowed-refine";
    std::size_t window = 0;
    std::size_t passes = 3;
    std::string format = "csv";
    std::string out;
    std::string summary;
};

int cmd_gen(const GenOptions& o) {
    const auto kind = parse_kind(o.kind);
    if (o.n < 1) throw ConfigError("--n must be at least 1");
    if (kind.kind == PermutationKind::planted_lis && (kind.planted_length < 1 || kind.planted_length > o.n)) {
        throw ConfigError("planted LIS length must lie in 1..n");
    }
    const auto s = generate_permutation(kind, o.n, resolve_seed(o.seed));
    Output out(o.out);
    io::write_permutation(out.stream(), s, o.format == "json" ? io::PermutationFormat::json : io::PermutationFormat::text);
    return 0;
}

int cmd_run(const RunOptions& o) {
    RunConfig config;
    config.n = o.n;
    config.p = o.p;
    const auto mode = parse_oracle_mode(o.mode);
    if (!mode) throw ConfigError("unknown --mode '" + o.mode + "' (persistent-bernoulli|error-free|threshold)");
    config.mode = *mode;
    config.tau = o.tau;
    config.sorter = parse_sorter(o.sorter, o.window, o.passes);
    config.d_policy = parse_d(o.d);
    config.input_kind = parse_kind(o.kind);
    config.oracle_cap = o.oracle_cap;
    if (!o.input.empty()) {
        try {
            config.input = io::read_permutation_file(o.input);
        } catch (const MalformedInput& e) {
            throw ConfigError(o.input + ": " + e.what());
        }
    }
    try {
        validate(config);
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
    }
    config.seed = resolve_seed(o.seed);

    const auto record = run_trial(config);
    Output out(o.out);
    if (o.format == "csv") {
        io::write_trial_csv_header(out.stream());
        io::write_trial_csv_row(out.stream(), record);
    } else {
        auto j = io::trial_to_json(record);
        j["oracle"] = io::oracle_to_json(
            ComparisonOracle(config.p, derive_seed(config.seed, stream::oracle), config.mode, config.tau));
        out.stream() << j.dump(2) << '\n';
    }
    if (!o.timings.empty()) {
        Output timing(o.timings);
        io::write_timing_csv(timing.stream(), {record});
    }
    return 0;
}

int cmd_sweep(const SweepOptions& o) {
    SweepConfig config;
    config.n_list = o.n;
    config.p_list = o.p;
    for (const auto& s : o.sorters) config.sorters.push_back(parse_sorter(s, o.window, o.passes));
    for (const auto& d : o.d) config.d_policies.push_back(parse_d(d));
    config.seeds = o.trials;
    config.input_kind = parse_kind(o.kind);
    config.oracle_cap = o.oracle_cap;
    config.threads = o.threads;
    try {
        validate(config);
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
    }
    config.base_seed = resolve_seed(o.seed);

    const auto rows = run_sweep(config);
    const auto cells = summarize(config, rows);

    Output out(o.out);
    if (o.format == "json") {
        auto arr = io::json::array();
        for (const auto& r : rows) arr.push_back(io::trial_to_json(r));
        out.stream() << arr.dump(2) << '\n';
    } else {
        io::write_trial_csv_header(out.stream());
        for (const auto& r : rows) io::write_trial_csv_row(out.stream(), r);
    }
    const auto summary = io::sweep_summary_to_json(config, cells);
    if (!o.summary.empty()) {
        Output s(o.summary);
        s.stream() << summary.dump(2) << '\n';
    } else if (!o.out.empty() && o.out != "-") {
        std::cout << summary.dump(2) << '\n';
    }
    if (!o.timings.empty()) {
        Output timing(o.timings);
        io::write_timing_csv(timing.stream(), rows);
        Output timing_summary(o.timings + ".summary.json");
        timing_summary.stream() << io::timing_summary_to_json(cells).dump(2) << '\n';
    }
    std::size_t errors = 0;
    for (const auto& r : rows) errors += r.error.empty() ? 0 : 1;
    if (errors > 0) std::cerr << "warning: " << errors << " of " << rows.size() << " trials failed\n";
    return 0;
}

int cmd_lowerbound(const LowerboundOptions& o) {
    if (!(o.p >= 0.0 && o.p < 0.5)) throw ConfigError("--p must lie in [0, 0.5)");
    if (o.n < 4) throw ConfigError("--n must be at least 4");
    const auto sorter = parse_sorter(o.sorter, o.window, o.passes);
    if (sorter.id == SorterId::identity_oracle) throw ConfigError("identity-oracle cannot run blind");
    const auto policy = parse_d(o.d);
    if (policy.kind == DPolicy::Kind::measured) throw ConfigError("--d measured is not available to a blind algorithm");
    if (!(o.success_c > 0.0)) throw ConfigError("--success-c must be positive");
    if (o.p > 0.0) {
        try {
            (void)build_family(o.n, o.p);
        } catch (const InvalidParameter& e) {
            throw ConfigError(e.what());
        }
    }
    const Seed seed = resolve_seed(o.seed);
    if (o.trials == 0) std::cerr << "warning: --trials 0, summary is empty\n";

    SuccessCriterion criterion;
    criterion.require_two_of_head = !o.no_head_rule;
    criterion.require_length_ratio = !o.no_length_rule;
    criterion.c = o.success_c;
    const auto stats = failure_experiment(make_approx_lis_algorithm(sorter, policy, o.p), o.n, o.p, o.trials,
                                          criterion, seed);
    Output out(o.out);
    if (o.format == "csv") {
        io::write_failure_csv(out.stream(), stats);
    } else {
        out.stream() << io::failure_summary_to_json(stats).dump(2) << '\n';
    }
    if (!o.rows.empty()) {
        Output rows(o.rows);
        io::write_failure_csv(rows.stream(), stats);
    }
    return 0;
}

int cmd_disl_curve(const CurveOptions& o) {
    if (o.n.empty()) throw ConfigError("disl-curve needs at least one --n");
    for (auto n : o.n) {
        if (n < 1 || n > (std::size_t{1} << 26)) throw ConfigError("every --n must lie in 1..2^26");
    }
    if (!(o.p >= 0.0 && o.p < 0.5)) throw ConfigError("--p must lie in [0, 0.5)");
    const auto spec = parse_sorter(o.sorter, o.window, o.passes);
    const Seed base = resolve_seed(o.seed);
    std::vector<Seed> seeds(o.trials);
    for (std::size_t i = 0; i < o.trials; ++i) seeds[i] = base + i;

    const auto curve = measure_dislocation_curve(spec, o.p, o.n, seeds);
    Output out(o.out);
    if (o.format == "json") {
        out.stream() << io::dislocation_summary_to_json(curve).dump(2) << '\n';
    } else {
        io::write_dislocation_csv(out.stream(), curve);
    }
    if (!o.summary.empty()) {
        Output s(o.summary);
        s.stream() << io::dislocation_summary_to_json(curve).dump(2) << '\n';
    }
    return 0;
}

void add_sorter_flags(CLI::App* cmd, std::string& sorter, std::size_t& window, std::size_t& passes) {
    cmd->add_option("--sorter", sorter, "noisy-mergesort|windowed-refine|identity-oracle")->capture_default_str();
    cmd->add_option("--window", window, "refinement window width (0 = 4*ceil(log2 n))")->capture_default_str();
    cmd->add_option("--passes", passes, "refinement passes")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Longest increasing subsequences under persistent comparison errors"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a permutation");
    gen_cmd->add_option("--n", gen.n, "size")->required();
    gen_cmd->add_option("--kind", gen.kind, "uniform|identity|reversed|planted:<l>")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "random seed");
    gen_cmd->add_option("--format", gen.format, "text|json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "output file (default stdout)");

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "one end-to-end trial");
    run_cmd->add_option("--n", run.n, "size")->capture_default_str();
    run_cmd->add_option("--p", run.p, "error probability in [0, 0.5)")->capture_default_str();
    run_cmd->add_option("--seed", run.seed, "random seed");
    run_cmd->add_option("--mode", run.mode, "persistent-bernoulli|error-free|threshold")->capture_default_str();
    run_cmd->add_option("--tau", run.tau, "threshold for --mode threshold")->capture_default_str();
    add_sorter_flags(run_cmd, run.sorter, run.window, run.passes);
    run_cmd->add_option("--d", run.d, "auto:c=<float>|fixed:<int>|measured")->capture_default_str();
    run_cmd->add_option("--kind", run.kind, "generated input kind")->capture_default_str();
    run_cmd->add_option("--input", run.input, "read the permutation from a file instead");
    run_cmd->add_option("--oracle-cap", run.oracle_cap, "largest n cross-checked by the quadratic DP")
        ->capture_default_str();
    run_cmd->add_option("--format", run.format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    run_cmd->add_option("--out", run.out, "output file (default stdout)");
    run_cmd->add_option("--timings", run.timings, "wall-clock sidecar CSV");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Cartesian parameter sweep");
    sweep_cmd->add_option("--n", sweep.n, "sizes")->required()->delimiter(',');
    sweep_cmd->add_option("--p", sweep.p, "error probabilities")->required()->delimiter(',');
    sweep_cmd->add_option("--sorter", sweep.sorters, "sorter ids")->delimiter(',')->capture_default_str();
    sweep_cmd->add_option("--window", sweep.window, "refinement window width (0 = auto)")->capture_default_str();
    sweep_cmd->add_option("--passes", sweep.passes, "refinement passes")->capture_default_str();
    sweep_cmd->add_option("--d", sweep.d, "d policies")->delimiter(',')->capture_default_str();
    sweep_cmd->add_option("--trials", sweep.trials, "seeds per cell")->capture_default_str();
    sweep_cmd->add_option("--seed", sweep.seed, "base seed; trial k uses seed + k");
    sweep_cmd->add_option("--kind", sweep.kind, "generated input kind")->capture_default_str();
    sweep_cmd->add_option("--oracle-cap", sweep.oracle_cap, "largest n cross-checked by the quadratic DP")
        ->capture_default_str();
    sweep_cmd->add_option("--threads", sweep.threads, "worker threads")->capture_default_str();
    sweep_cmd->add_option("--format", sweep.format, "csv|json")->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out, "row output (default stdout)");
    sweep_cmd->add_option("--summary", sweep.summary, "per-cell summary JSON");
    sweep_cmd->add_option("--timings", sweep.timings, "wall-clock sidecar CSV");

    LowerboundOptions lb;
    auto* lb_cmd = app.add_subcommand("lowerbound", "failure rate on the adversarial family");
    lb_cmd->add_option("--n", lb.n, "size")->capture_default_str();
    lb_cmd->add_option("--p", lb.p, "error probability")->capture_default_str();
    lb_cmd->add_option("--trials", lb.trials, "number of trials")->capture_default_str();
    lb_cmd->add_option("--seed", lb.seed, "base seed; trial t uses seed + t");
    add_sorter_flags(lb_cmd, lb.sorter, lb.window, lb.passes);
    lb_cmd->add_option("--d", lb.d, "auto:c=<float>|fixed:<int>")->capture_default_str();
    lb_cmd->add_option("--success-c", lb.success_c, "c in the length rule eta / (c log2 n)")->capture_default_str();
    lb_cmd->add_flag("--no-head-rule", lb.no_head_rule, "drop the two-of-the-head rule");
    lb_cmd->add_flag("--no-length-rule", lb.no_length_rule, "drop the length rule");
    lb_cmd->add_option("--format", lb.format, "json (summary) | csv (rows)")->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    lb_cmd->add_option("--out", lb.out, "output file (default stdout)");
    lb_cmd->add_option("--rows", lb.rows, "also write per-trial CSV here");

    CurveOptions curve;
    auto* curve_cmd = app.add_subcommand("disl-curve", "dislocation of a sorter across n");
    curve_cmd->add_option("--n", curve.n, "sizes")->required()->delimiter(',');
    curve_cmd->add_option("--p", curve.p, "error probability")->capture_default_str();
    curve_cmd->add_option("--trials", curve.trials, "seeds per n")->capture_default_str();
    curve_cmd->add_option("--seed", curve.seed, "base seed");
    add_sorter_flags(curve_cmd, curve.sorter, curve.window, curve.passes);
    curve_cmd->add_option("--format", curve.format, "csv (rows) | json (quantiles)")
        ->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    curve_cmd->add_option("--out", curve.out, "output file (default stdout)");
    curve_cmd->add_option("--summary", curve.summary, "quantile summary JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*run_cmd) return cmd_run(run);
        if (*sweep_cmd) return cmd_sweep(sweep);
        if (*lb_cmd) return cmd_lowerbound(lb);
        if (*curve_cmd) return cmd_disl_curve(curve);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitConfig;
}
