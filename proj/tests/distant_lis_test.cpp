#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "noisylis/distant_lis.hpp"

using namespace noisylis;

namespace {

ApproxOrder true_order(std::size_t n) {
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), Element{1});
    return ApproxOrder(std::move(order));
}

ApproxOrder random_order(std::size_t n, std::mt19937_64& rng) {
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), Element{1});
    std::shuffle(order.begin(), order.end(), rng);
    return ApproxOrder(std::move(order));
}

// Every subset of s, kept when consecutive picks are 2d apart in apx.
std::size_t brute_force_distant(const std::vector<Element>& s, const ApproxOrder& apx, std::int64_t d) {
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << s.size()); ++mask) {
        std::int64_t last = -1;
        std::size_t len = 0;
        bool ok = true;
        for (std::size_t i = 0; i < s.size() && ok; ++i) {
            if (!(mask >> i & 1u)) continue;
            const auto here = static_cast<std::int64_t>(apx.pos(s[i]));
            ok = last < 0 || last + 2 * d <= here;
            last = here;
            ++len;
        }
        if (ok) best = std::max(best, len);
    }
    return best;
}

}  // namespace

TEST(DPolicy, ParseAndPrint) {
    const auto a = parse_d_policy("auto");
    ASSERT_TRUE(a);
    EXPECT_EQ(a->kind, DPolicy::Kind::auto_log);
    EXPECT_EQ(a->c, 4.0);
    const auto b = parse_d_policy("auto:c=2.5");
    ASSERT_TRUE(b);
    EXPECT_EQ(b->c, 2.5);
    const auto f = parse_d_policy("fixed:7");
    ASSERT_TRUE(f);
    EXPECT_EQ(f->d, 7);
    EXPECT_EQ(to_string(*f), "fixed:7");
    EXPECT_EQ(parse_d_policy("measured")->kind, DPolicy::Kind::measured);
    EXPECT_FALSE(parse_d_policy("fixed:"));
    EXPECT_FALSE(parse_d_policy("auto:c=x"));
    EXPECT_FALSE(parse_d_policy("sometimes"));
}

TEST(DPolicy, Resolve) {
    EXPECT_EQ(auto_d(4.0, 1024), 40);
    EXPECT_EQ(auto_d(1.5, 1000), 15);  // 1.5 * 9.966 = 14.95
    EXPECT_EQ(auto_d(4.0, 1), 0);
    EXPECT_EQ(resolve_d(DPolicy::auto_log(4.0), 1024, 0.1), 40);
    EXPECT_EQ(resolve_d(DPolicy::auto_log(4.0), 1024, 0.0), 0);
    EXPECT_EQ(resolve_d(DPolicy::fixed(3), 1024, 0.1), 3);
    EXPECT_EQ(resolve_d(DPolicy::measured(), 1024, 0.1, 12), 12);
    EXPECT_THROW(resolve_d(DPolicy::measured(), 1024, 0.1), InvalidParameter);
}

TEST(ApproxLis, ZeroBudgetUnderTrueOrderIsExactLis) {
    for (Seed seed = 0; seed < 100; ++seed) {
        const auto s = generate_permutation({PermutationKind::uniform, 0}, 150, seed);
        const auto r = approx_lis(s, true_order(150), 0);
        EXPECT_EQ(r.length(), exact_lis(s.elems()).length());
    }
}

// Keys 2,8,4,9,5,1 normalized to ranks.
const std::vector<Element> kWorked = [] {
    const std::vector<std::int64_t> keys{2, 8, 4, 9, 5, 1};
    const auto p = Permutation::from_keys(keys);
    return std::vector<Element>(p.elems().begin(), p.elems().end());
}();

TEST(ApproxLis, WorkedExampleWithBudgetOne) {
    const auto& s = kWorked;
    ASSERT_EQ(s, (std::vector<Element>{2, 5, 3, 6, 4, 1}));
    const auto apx = true_order(6);
    const std::size_t expected = brute_force_distant(s, apx, 1);
    // Positions in apx along s are 2,5,3,6,4,1; no three of them step by 2.
    EXPECT_EQ(expected, 2u);
    const auto r = approx_lis(s, apx, 1);
    EXPECT_EQ(r.length(), expected);
    EXPECT_EQ(longest_distant_oracle(s, apx, 1), expected);
    EXPECT_TRUE(validate(r, s, apx, 1).all());
}

TEST(ApproxLis, EdgeCases) {
    EXPECT_EQ(approx_lis(std::vector<Element>{}, ApproxOrder{}, 3).length(), 0u);
    EXPECT_EQ(approx_lis(std::vector<Element>{1}, true_order(1), 3).subseq, (std::vector<Element>{1}));
    EXPECT_THROW(approx_lis(std::vector<Element>{1, 2}, true_order(2), -1), InvalidParameter);
}

TEST(ApproxLis, RejectsMismatchedOrder) {
    const std::vector<Element> s{1, 2, 3};
    EXPECT_THROW(approx_lis(s, true_order(4), 1), InconsistentInput);
    EXPECT_THROW(approx_lis(s, true_order(2), 1), InconsistentInput);
    const std::vector<Element> dup{1, 1, 3};
    EXPECT_THROW(approx_lis(dup, true_order(3), 1), InconsistentInput);
}

TEST(ApproxLis, MatchesBruteForceOnTinyInputs) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 400; ++t) {
        const std::size_t n = 1 + rng() % 10;
        const auto s = generate_permutation({PermutationKind::uniform, 0}, n, rng());
        const auto apx = random_order(n, rng);
        const auto d = static_cast<std::int64_t>(rng() % 4);
        const std::vector<Element> sv(s.elems().begin(), s.elems().end());
        const std::size_t expected = brute_force_distant(sv, apx, d);
        ASSERT_EQ(longest_distant_oracle(sv, apx, d), expected);
        ASSERT_EQ(approx_lis(sv, apx, d, LisOptions{true}).length(), expected);
    }
}

TEST(ApproxLis, OptimalOnRandomTriples) {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng() % 200;
        const auto s = generate_permutation({PermutationKind::uniform, 0}, n, rng());
        const auto apx = random_order(n, rng);
        const auto d = static_cast<std::int64_t>(rng() % 21);
        const auto r = approx_lis(s, apx, d);
        ASSERT_EQ(r.length(), longest_distant_oracle(s.elems(), apx, d)) << "trial " << t;
        const auto flags = validate(r, s.elems(), apx, d);
        ASSERT_TRUE(flags.is_subsequence_of_input && flags.is_2d_distant) << "trial " << t;
    }
}

TEST(ApproxLis, InvariantCheckingModeRunsClean) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
        const auto s = generate_permutation({PermutationKind::uniform, 0}, 300, rng());
        const auto apx = approx_sort(s, ComparisonOracle(0.1, rng()), {});
        EXPECT_NO_THROW(approx_lis(s, apx, 1 + static_cast<std::int64_t>(t % 8), LisOptions{true}));
    }
}

TEST(ApproxLis, BudgetOfHalfNGivesOneElement) {
    for (std::size_t n : {2u, 5u, 40u}) {
        const auto s = generate_permutation({PermutationKind::identity, 0}, n, 0);
        const auto d = static_cast<std::int64_t>((n + 1) / 2);
        EXPECT_EQ(approx_lis(s, true_order(n), d).length(), 1u);
        EXPECT_EQ(longest_distant_oracle(s.elems(), true_order(n), d), 1u);
    }
}

TEST(ApproxLis, TrulyIncreasingWhenDislocationWithinBudget) {
    constexpr std::size_t n = 1u << 12;
    for (Seed seed = 0; seed < 5; ++seed) {
        const auto s = generate_permutation({PermutationKind::uniform, 0}, n, seed);
        const auto apx = approx_sort(s, ComparisonOracle(0.05, seed + 100), {});
        const auto d = static_cast<std::int64_t>(dislocation(apx.order()).max_disl);
        auto r = approx_lis(s, apx, d);
        attach_validation(r, s.elems(), apx);
        EXPECT_TRUE(r.flags->all()) << "seed " << seed;
        // Lower bound: at least LIS / 2d.
        EXPECT_GE(static_cast<double>(r.length()) * 2.0 * static_cast<double>(std::max<std::int64_t>(d, 1)),
                  static_cast<double>(exact_lis(s.elems()).length()));
    }
}

TEST(RecipeLis, IdentityWithBudgetTwo) {
    const auto s = generate_permutation({PermutationKind::identity, 0}, 16, 0);
    const auto r = recipe_lis(s, true_order(16), 2);
    EXPECT_EQ(r.length(), 4u);
    EXPECT_EQ(r.d_used, 2);
}

TEST(RecipeLis, ZeroBudgetIsExactLisUnderOrder) {
    std::mt19937_64 rng(2);
    const auto s = generate_permutation({PermutationKind::uniform, 0}, 200, 5);
    const auto apx = random_order(200, rng);
    const auto r = recipe_lis(s, apx, 0);
    EXPECT_EQ(r.length(), exact_lis(s.elems(), [&apx](Element x, Element y) { return apx.before(x, y); }).length());
}

TEST(RecipeLis, NeverBeatsApproxLisAndStaysDistant) {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + rng() % 300;
        const auto s = generate_permutation({PermutationKind::uniform, 0}, n, rng());
        const auto apx = random_order(n, rng);
        const auto d = static_cast<std::int64_t>(1 + rng() % 10);
        const auto recipe = recipe_lis(s, apx, d);
        ASSERT_LE(recipe.length(), approx_lis(s, apx, d).length());
        const auto flags = validate(recipe, s.elems(), apx, d);
        ASSERT_TRUE(flags.is_subsequence_of_input && flags.is_2d_distant);
    }
}

TEST(LongestDistantOracle, ZeroBudgetMatchesLisOracle) {
    for (Seed seed = 0; seed < 50; ++seed) {
        const auto s = generate_permutation({PermutationKind::uniform, 0}, 120, seed);
        EXPECT_EQ(longest_distant_oracle(s.elems(), true_order(120), 0), lis_dp_oracle(s.elems()));
    }
}

TEST(LongestDistantOracle, RefusesInputsAboveCap) {
    const auto s = generate_permutation({PermutationKind::identity, 0}, 10, 0);
    EXPECT_THROW(longest_distant_oracle(s.elems(), true_order(10), 1, 9), SizeCapExceeded);
}

TEST(Validate, EmptyResultIsVacuouslyValid) {
    const std::vector<Element> s{3, 1, 2};
    EXPECT_TRUE(validate(LisResult{}, s, true_order(3), 1).all());
}

TEST(Validate, WorkedExampleFlags) {
    const auto& s = kWorked;
    const auto apx = true_order(6);
    LisResult good;
    good.subseq = {2, 6};  // keys 2, 9
    EXPECT_TRUE(validate(good, s, apx, 1).all());

    LisResult out_of_order;
    out_of_order.subseq = {2, 4, 6};  // keys 2, 5, 9; 9 precedes 5 in s
    const auto flags = validate(out_of_order, s, apx, 1);
    EXPECT_FALSE(flags.is_subsequence_of_input);
    EXPECT_TRUE(flags.is_2d_distant);
    EXPECT_TRUE(flags.is_truly_increasing);
}

TEST(Validate, AdjacentPicksAreNotDistant) {
    const std::vector<Element> s{1, 2, 3, 4};
    LisResult corrupted;
    corrupted.subseq = {1, 2};
    const auto flags = validate(corrupted, s, true_order(4), 1);
    EXPECT_FALSE(flags.is_2d_distant);
    EXPECT_TRUE(flags.is_subsequence_of_input);
    EXPECT_TRUE(flags.is_truly_increasing);
}

TEST(Validate, DetectsFalseIncrease) {
    const std::vector<Element> s{2, 1};
    const ApproxOrder apx({2, 1});
    LisResult r;
    r.subseq = {2, 1};
    const auto flags = validate(r, s, apx, 0);
    EXPECT_TRUE(flags.is_subsequence_of_input);
    EXPECT_TRUE(flags.is_2d_distant);
    EXPECT_FALSE(flags.is_truly_increasing);
}

TEST(Validate, AttachUsesRecordedBudget) {
    const std::vector<Element> s{1, 2, 3, 4};
    LisResult r;
    r.subseq = {1, 3};
    r.d_used = 1;
    attach_validation(r, s, true_order(4));
    ASSERT_TRUE(r.flags);
    EXPECT_TRUE(r.flags->all());
    r.d_used = 2;
    attach_validation(r, s, true_order(4));
    EXPECT_FALSE(r.flags->is_2d_distant);
}
