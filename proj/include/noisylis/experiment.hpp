#pragma once

// End-to-end trials and parameter sweeps.
//
// A trial is generate -> approx_sort -> approx_lis (+ recipe_lis) ->
// validate -> record. Every field of a TrialRecord except the phase timings
// is a pure function of the configuration and seed.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noisylis/approx_sort.hpp"
#include "noisylis/core_model.hpp"
#include "noisylis/distant_lis.hpp"
#include "noisylis/exact_lis.hpp"
#include "noisylis/lis_result.hpp"

namespace noisylis {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::size_t n = 1024;
    double p = 0.05;
    Seed seed = 1;
    OracleMode mode = OracleMode::persistent_bernoulli;
    std::int64_t tau = 0;
    SorterSpec sorter;
    DPolicy d_policy = DPolicy::auto_log(4.0);
    PermutationSpec input_kind;
    /// Used instead of generating one when set; n is taken from it.
    std::optional<Permutation> input;
    std::size_t oracle_cap = kDefaultOracleCap;
};

/// Throws InvalidParameter with an actionable message.
void validate(const RunConfig& config);

struct PhaseTimes {
    double sort_ms = 0.0;
    double lis_ms = 0.0;
    double recipe_ms = 0.0;
    double exact_ms = 0.0;
};

struct TrialRecord {
    Seed seed = 0;
    std::size_t n = 0;
    double p = 0.0;
    std::string input;
    std::string sorter;
    std::size_t window = 0;
    std::size_t passes = 0;
    std::string d_policy;
    std::int64_t d_used = 0;
    std::uint64_t max_disl = 0;
    std::uint64_t total_disl = 0;
    /// disl(S^apx) <= d_used.
    bool within_budget = false;
    std::size_t exact_lis_len = 0;
    /// exact_lis_len was cross-checked against the quadratic DP (n <= cap).
    bool exact_checked = false;
    std::optional<std::size_t> lis_lower_bound;  // planted inputs
    std::size_t approx_len = 0;
    std::size_t recipe_len = 0;
    bool truly_increasing = false;
    /// Subsequence of the input and 2d-distant, per the validator.
    bool valid = false;
    std::uint64_t sort_comparisons = 0;
    PhaseTimes times;
    LisResult result;
    std::string error;  // non-empty when the trial could not complete

    /// exact_lis_len / approx_len, absent when approx_len is 0 or the trial failed.
    std::optional<double> ratio() const;
};

/// Runs one trial. Throws on invalid configuration and on an internal
/// cross-check mismatch.
TrialRecord run_trial(const RunConfig& config);

struct SweepConfig {
    std::vector<std::size_t> n_list;
    std::vector<double> p_list;
    std::vector<SorterSpec> sorters;
    std::vector<DPolicy> d_policies;
    std::size_t seeds = 1;
    Seed base_seed = 1;
    PermutationSpec input_kind;
    std::size_t oracle_cap = kDefaultOracleCap;
    std::size_t threads = 1;
};

void validate(const SweepConfig& config);

struct SweepCell {
    std::size_t index = 0;
    std::size_t n = 0;
    double p = 0.0;
    SorterSpec sorter;
    DPolicy d_policy;
};

/// Cells in row-major (n, p, sorter, d_policy) order.
std::vector<SweepCell> sweep_cells(const SweepConfig& config);

/// Rows are ordered by cell index then seed index regardless of which worker
/// finished first. A failing trial is recorded with `error` set and the sweep
/// continues.
std::vector<TrialRecord> run_sweep(const SweepConfig& config);

struct CellSummary {
    SweepCell cell;
    std::size_t trials = 0;
    std::size_t errors = 0;
    double median_approx_len = 0.0;
    double median_recipe_len = 0.0;
    double median_exact_lis_len = 0.0;
    double median_d_used = 0.0;
    double median_max_disl = 0.0;
    std::optional<double> median_ratio;
    double truly_increasing_fraction = 0.0;
    double median_sort_ms = 0.0;
    double median_lis_ms = 0.0;
};

std::vector<CellSummary> summarize(const SweepConfig& config, const std::vector<TrialRecord>& rows);

}  // namespace noisylis
