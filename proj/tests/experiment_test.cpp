#include <gtest/gtest.h>

#include "noisylis/experiment.hpp"

using namespace noisylis;

namespace {

RunConfig config(std::size_t n, double p, Seed seed) {
    RunConfig c;
    c.n = n;
    c.p = p;
    c.seed = seed;
    return c;
}

bool same_record(const TrialRecord& a, const TrialRecord& b) {
    return a.seed == b.seed && a.n == b.n && a.d_used == b.d_used && a.max_disl == b.max_disl &&
           a.total_disl == b.total_disl && a.exact_lis_len == b.exact_lis_len && a.approx_len == b.approx_len &&
           a.recipe_len == b.recipe_len && a.sort_comparisons == b.sort_comparisons &&
           a.result.subseq == b.result.subseq && a.error == b.error;
}

}  // namespace

TEST(RunConfig, ValidationMessages) {
    auto c = config(0, 0.1, 1);
    EXPECT_THROW(validate(c), InvalidParameter);
    c = config(10, 0.5, 1);
    EXPECT_THROW(validate(c), InvalidParameter);
    c = config(10, 0.1, 1);
    c.d_policy = DPolicy::fixed(-2);
    EXPECT_THROW(validate(c), InvalidParameter);
    c = config(10, 0.1, 1);
    c.input_kind = {PermutationKind::planted_lis, 11};
    EXPECT_THROW(validate(c), InvalidParameter);
    c = config(10, 0.1, 1);
    EXPECT_NO_THROW(validate(c));
}

TEST(RunTrial, ErrorFreeReproducesExactLis) {
    for (std::size_t n : {1u, 2u, 16u, 500u}) {
        const auto r = run_trial(config(n, 0.0, 1));
        EXPECT_EQ(r.d_used, 0);
        EXPECT_EQ(r.max_disl, 0u);
        EXPECT_EQ(r.approx_len, r.exact_lis_len);
        EXPECT_TRUE(r.truly_increasing);
        EXPECT_TRUE(r.exact_checked);
        ASSERT_TRUE(r.ratio());
        EXPECT_EQ(*r.ratio(), 1.0);
    }
}

TEST(RunTrial, AllFieldsPopulated) {
    auto c = config(4096, 0.05, 7);
    const auto r = run_trial(c);
    EXPECT_EQ(r.n, 4096u);
    EXPECT_EQ(r.sorter, "windowed-refine");
    EXPECT_EQ(r.window, 48u);
    EXPECT_EQ(r.passes, 3u);
    EXPECT_EQ(r.d_policy, "auto:c=4");
    EXPECT_EQ(r.d_used, 48);
    EXPECT_TRUE(r.within_budget);
    EXPECT_TRUE(r.truly_increasing);
    EXPECT_TRUE(r.valid);
    EXPECT_FALSE(r.exact_checked);
    EXPECT_GT(r.exact_lis_len, 0u);
    EXPECT_GT(r.approx_len, 0u);
    EXPECT_GE(r.approx_len, r.recipe_len);
    EXPECT_GT(r.sort_comparisons, 0u);
    ASSERT_TRUE(r.result.flags);
    EXPECT_TRUE(r.ratio());
}

TEST(RunTrial, DeterministicPerSeed) {
    const auto a = run_trial(config(1500, 0.1, 3));
    const auto b = run_trial(config(1500, 0.1, 3));
    EXPECT_TRUE(same_record(a, b));
    const auto c = run_trial(config(1500, 0.1, 4));
    EXPECT_FALSE(same_record(a, c));
}

TEST(RunTrial, MeasuredPolicyUsesTrueDislocation) {
    auto c = config(1024, 0.1, 2);
    c.d_policy = DPolicy::measured();
    const auto r = run_trial(c);
    EXPECT_EQ(static_cast<std::uint64_t>(r.d_used), r.max_disl);
    EXPECT_TRUE(r.within_budget);
    EXPECT_TRUE(r.truly_increasing);
}

TEST(RunTrial, ExplicitInputAndPlantedBound) {
    auto c = config(0, 0.0, 1);
    c.input = Permutation({2, 5, 3, 6, 4, 1});
    const auto r = run_trial(c);
    EXPECT_EQ(r.n, 6u);
    EXPECT_EQ(r.input, "file");
    EXPECT_EQ(r.exact_lis_len, 3u);

    auto planted = config(300, 0.05, 1);
    planted.input_kind = {PermutationKind::planted_lis, 100};
    const auto q = run_trial(planted);
    ASSERT_TRUE(q.lis_lower_bound);
    EXPECT_EQ(*q.lis_lower_bound, 100u);
    EXPECT_GE(q.exact_lis_len, 100u);
}

TEST(RunTrial, ThresholdModeRuns) {
    auto c = config(512, 0.3, 5);
    c.mode = OracleMode::threshold;
    c.tau = 2;
    c.d_policy = DPolicy::fixed(2);
    const auto r = run_trial(c);
    EXPECT_LE(r.max_disl, 2u * 2u + 2u);
    EXPECT_TRUE(r.valid);
}

TEST(RunTrial, OracleCapOnlyGatesTheCrossCheck) {
    auto c = config(300, 0.05, 1);
    c.oracle_cap = 100;
    const auto r = run_trial(c);
    EXPECT_FALSE(r.exact_checked);
    EXPECT_GT(r.exact_lis_len, 0u);
}

TEST(RunTrial, DominatesRecipeAndRespectsBounds) {
    for (Seed seed = 0; seed < 40; ++seed) {
        for (double p : {0.0, 0.01, 0.1}) {
            const auto r = run_trial(config(1024, p, seed));
            ASSERT_GE(r.approx_len, r.recipe_len);
            if (r.within_budget) {
                ASSERT_TRUE(r.truly_increasing);
                ASSERT_GE(2.0 * static_cast<double>(std::max<std::int64_t>(r.d_used, 1)) * r.approx_len,
                          static_cast<double>(r.exact_lis_len));
            }
        }
    }
}

TEST(Sweep, CellsAreRowMajor) {
    SweepConfig s;
    s.n_list = {8, 16};
    s.p_list = {0.0, 0.1};
    s.sorters = {SorterSpec{}, SorterSpec{SorterId::noisy_mergesort, 0, 0}};
    s.d_policies = {DPolicy::auto_log(4.0)};
    const auto cells = sweep_cells(s);
    ASSERT_EQ(cells.size(), 8u);
    EXPECT_EQ(cells[0].n, 8u);
    EXPECT_EQ(cells[1].sorter.id, SorterId::noisy_mergesort);
    EXPECT_EQ(cells[2].p, 0.1);
    EXPECT_EQ(cells[4].n, 16u);
    EXPECT_EQ(cells[7].index, 7u);
}

TEST(Sweep, RowsMatchSingleRunsRegardlessOfThreads) {
    SweepConfig s;
    s.n_list = {64, 256};
    s.p_list = {0.0, 0.1};
    s.sorters = {SorterSpec{}};
    s.d_policies = {DPolicy::auto_log(4.0), DPolicy::fixed(2)};
    s.seeds = 3;
    s.base_seed = 10;
    s.threads = 1;
    const auto serial = run_sweep(s);
    s.threads = 4;
    const auto parallel = run_sweep(s);
    ASSERT_EQ(serial.size(), 24u);
    ASSERT_EQ(parallel.size(), 24u);
    const auto cells = sweep_cells(s);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_TRUE(same_record(serial[i], parallel[i])) << i;
        const auto& cell = cells[i / 3];
        RunConfig rc;
        rc.n = cell.n;
        rc.p = cell.p;
        rc.seed = 10 + i % 3;
        rc.sorter = cell.sorter;
        rc.d_policy = cell.d_policy;
        EXPECT_TRUE(same_record(serial[i], run_trial(rc))) << i;
    }
}

TEST(Sweep, ErrorFreeCellsHaveRatioOne) {
    SweepConfig s;
    s.n_list = {100, 1000};
    s.p_list = {0.0};
    s.sorters = {SorterSpec{}};
    s.d_policies = {DPolicy::auto_log(4.0)};
    s.seeds = 5;
    const auto rows = run_sweep(s);
    for (const auto& r : rows) {
        ASSERT_TRUE(r.ratio());
        EXPECT_EQ(*r.ratio(), 1.0);
    }
    const auto sums = summarize(s, rows);
    ASSERT_EQ(sums.size(), 2u);
    EXPECT_EQ(sums[0].median_ratio, 1.0);
    EXPECT_EQ(sums[1].truly_increasing_fraction, 1.0);
}

TEST(Sweep, ValidationRejectsBeforeWork) {
    SweepConfig s;
    s.n_list = {10};
    s.p_list = {0.1};
    s.sorters = {SorterSpec{}};
    s.d_policies = {DPolicy::fixed(-1)};
    EXPECT_THROW(run_sweep(s), InvalidParameter);
    s.d_policies = {};
    EXPECT_THROW(run_sweep(s), InvalidParameter);
    s.d_policies = {DPolicy::fixed(1)};
    s.threads = 0;
    EXPECT_THROW(run_sweep(s), InvalidParameter);
}

TEST(Summarize, CountsFailedRowsSeparately) {
    SweepConfig s;
    s.n_list = {32};
    s.p_list = {0.1};
    s.sorters = {SorterSpec{}};
    s.d_policies = {DPolicy::auto_log(4.0)};
    s.seeds = 3;
    auto rows = run_sweep(s);
    rows[1] = TrialRecord{};
    rows[1].error = "simulated";
    const auto sums = summarize(s, rows);
    ASSERT_EQ(sums.size(), 1u);
    EXPECT_EQ(sums[0].trials, 3u);
    EXPECT_EQ(sums[0].errors, 1u);
    EXPECT_FALSE(rows[1].ratio());
}
