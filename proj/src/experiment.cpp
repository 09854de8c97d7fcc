#include "noisylis/experiment.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "noisylis/stats.hpp"

namespace noisylis {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void require(bool ok, const std::string& message) {
    if (!ok) throw InvalidParameter(message);
}

}  // namespace

void validate(const RunConfig& config) {
    const std::size_t n = config.input ? config.input->size() : config.n;
    require(n >= 1, "--n must be at least 1");
    require(n <= (std::size_t{1} << 26), "--n above 2^26 is not supported");
    require(config.p >= 0.0 && config.p < 0.5, "--p must lie in [0, 0.5)");
    require(config.mode != OracleMode::threshold || config.tau >= 0, "--tau must be non-negative");
    if (config.d_policy.kind == DPolicy::Kind::fixed) require(config.d_policy.d >= 0, "fixed d must be >= 0");
    if (config.d_policy.kind == DPolicy::Kind::auto_log) require(config.d_policy.c > 0.0, "auto d needs c > 0");
    if (!config.input && config.input_kind.kind == PermutationKind::planted_lis) {
        require(config.input_kind.planted_length >= 1 && config.input_kind.planted_length <= n,
                "planted LIS length must lie in 1..n");
    }
}

std::optional<double> TrialRecord::ratio() const {
    if (!error.empty() || approx_len == 0) return std::nullopt;
    return static_cast<double>(exact_lis_len) / static_cast<double>(approx_len);
}

TrialRecord run_trial(const RunConfig& config) {
    validate(config);

    const Permutation s = config.input ? *config.input
                                       : generate_permutation(config.input_kind, config.n,
                                                              derive_seed(config.seed, stream::permutation));
    const std::size_t n = s.size();
    const ComparisonOracle oracle(config.p, derive_seed(config.seed, stream::oracle), config.mode, config.tau);

    TrialRecord rec;
    rec.seed = config.seed;
    rec.n = n;
    rec.p = oracle.p();
    rec.input = config.input ? "file" : to_string(config.input_kind);
    rec.sorter = std::string(to_string(config.sorter.id));
    rec.window = config.sorter.id == SorterId::windowed_refine ? resolve_window(config.sorter, n) : 0;
    rec.passes = config.sorter.id == SorterId::windowed_refine ? config.sorter.passes : 0;
    rec.d_policy = to_string(config.d_policy);
    if (!config.input && config.input_kind.kind == PermutationKind::planted_lis) {
        rec.lis_lower_bound = config.input_kind.planted_length;
    }

    auto t0 = Clock::now();
    const ApproxOrder apx = approx_sort(s, oracle, config.sorter, rec.sort_comparisons);
    rec.times.sort_ms = elapsed_ms(t0);

    const auto disl = dislocation(apx.order());
    rec.max_disl = disl.max_disl;
    rec.total_disl = disl.total_disl;
    rec.d_used = resolve_d(config.d_policy, n, oracle.p(), disl.max_disl);
    rec.within_budget = disl.max_disl <= static_cast<std::uint64_t>(rec.d_used);

    t0 = Clock::now();
    rec.result = approx_lis(s, apx, rec.d_used);
    rec.times.lis_ms = elapsed_ms(t0);
    attach_validation(rec.result, s.elems(), apx);
    rec.approx_len = rec.result.length();
    rec.truly_increasing = rec.result.flags->is_truly_increasing;
    rec.valid = rec.result.flags->is_subsequence_of_input && rec.result.flags->is_2d_distant;

    t0 = Clock::now();
    rec.recipe_len = n <= 1 ? n : recipe_lis(s, apx, rec.d_used).length();
    rec.times.recipe_ms = elapsed_ms(t0);

    t0 = Clock::now();
    rec.exact_lis_len = exact_lis(s.elems()).length();
    if (n <= config.oracle_cap) {
        const std::size_t dp = lis_dp_oracle(s.elems(), config.oracle_cap);
        if (dp != rec.exact_lis_len) {
            throw std::logic_error("exact_lis (" + std::to_string(rec.exact_lis_len) + ") disagrees with DP oracle (" +
                                   std::to_string(dp) + ")");
        }
        rec.exact_checked = true;
    }
    rec.times.exact_ms = elapsed_ms(t0);
    return rec;
}

void validate(const SweepConfig& config) {
    require(!config.n_list.empty(), "sweep needs at least one --n");
    require(!config.p_list.empty(), "sweep needs at least one --p");
    require(!config.sorters.empty(), "sweep needs at least one --sorter");
    require(!config.d_policies.empty(), "sweep needs at least one --d");
    require(config.threads >= 1, "--threads must be at least 1");
    for (auto n : config.n_list) require(n >= 1 && n <= (std::size_t{1} << 26), "every --n must lie in 1..2^26");
    for (auto p : config.p_list) require(p >= 0.0 && p < 0.5, "every --p must lie in [0, 0.5)");
    for (const auto& policy : config.d_policies) {
        if (policy.kind == DPolicy::Kind::fixed) require(policy.d >= 0, "fixed d must be >= 0");
        if (policy.kind == DPolicy::Kind::auto_log) require(policy.c > 0.0, "auto d needs c > 0");
    }
    if (config.input_kind.kind == PermutationKind::planted_lis) {
        for (auto n : config.n_list) {
            require(config.input_kind.planted_length >= 1 && config.input_kind.planted_length <= n,
                    "planted LIS length must lie in 1..n for every --n");
        }
    }
}

std::vector<SweepCell> sweep_cells(const SweepConfig& config) {
    std::vector<SweepCell> cells;
    for (auto n : config.n_list) {
        for (auto p : config.p_list) {
            for (const auto& sorter : config.sorters) {
                for (const auto& policy : config.d_policies) {
                    cells.push_back({cells.size(), n, p, sorter, policy});
                }
            }
        }
    }
    return cells;
}

std::vector<TrialRecord> run_sweep(const SweepConfig& config) {
    validate(config);
    const auto cells = sweep_cells(config);
    const std::size_t jobs = cells.size() * config.seeds;
    std::vector<TrialRecord> rows(jobs);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const auto& cell = cells[job / config.seeds];
            RunConfig rc;
            rc.n = cell.n;
            rc.p = cell.p;
            rc.seed = config.base_seed + job % config.seeds;
            rc.sorter = cell.sorter;
            rc.d_policy = cell.d_policy;
            rc.input_kind = config.input_kind;
            rc.oracle_cap = config.oracle_cap;
            try {
                rows[job] = run_trial(rc);
            } catch (const std::exception& e) {
                TrialRecord failed;
                failed.seed = rc.seed;
                failed.n = rc.n;
                failed.p = rc.p;
                failed.input = to_string(rc.input_kind);
                failed.sorter = std::string(to_string(rc.sorter.id));
                failed.d_policy = to_string(rc.d_policy);
                failed.error = e.what();
                rows[job] = std::move(failed);
            }
        }
    };

    const std::size_t threads = std::min(config.threads, std::max<std::size_t>(jobs, 1));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    return rows;
}

std::vector<CellSummary> summarize(const SweepConfig& config, const std::vector<TrialRecord>& rows) {
    const auto cells = sweep_cells(config);
    std::vector<CellSummary> out;
    for (const auto& cell : cells) {
        CellSummary sum;
        sum.cell = cell;
        std::vector<double> approx, recipe, exact, d_used, max_disl, ratio, sort_ms, lis_ms;
        std::size_t increasing = 0;
        for (std::size_t k = 0; k < config.seeds; ++k) {
            const auto& r = rows.at(cell.index * config.seeds + k);
            ++sum.trials;
            if (!r.error.empty()) {
                ++sum.errors;
                continue;
            }
            approx.push_back(static_cast<double>(r.approx_len));
            recipe.push_back(static_cast<double>(r.recipe_len));
            exact.push_back(static_cast<double>(r.exact_lis_len));
            d_used.push_back(static_cast<double>(r.d_used));
            max_disl.push_back(static_cast<double>(r.max_disl));
            if (auto q = r.ratio()) ratio.push_back(*q);
            sort_ms.push_back(r.times.sort_ms);
            lis_ms.push_back(r.times.lis_ms);
            if (r.truly_increasing) ++increasing;
        }
        if (!approx.empty()) {
            sum.median_approx_len = stats::median(approx);
            sum.median_recipe_len = stats::median(recipe);
            sum.median_exact_lis_len = stats::median(exact);
            sum.median_d_used = stats::median(d_used);
            sum.median_max_disl = stats::median(max_disl);
            if (!ratio.empty()) sum.median_ratio = stats::median(ratio);
            sum.truly_increasing_fraction = static_cast<double>(increasing) / static_cast<double>(approx.size());
            sum.median_sort_ms = stats::median(sort_ms);
            sum.median_lis_ms = stats::median(lis_ms);
        }
        out.push_back(std::move(sum));
    }
    return out;
}

}  // namespace noisylis
