#pragma once

// Longest subsequences that are 2d-distant in an approximate order.
//
// A subsequence s'_1..s'_m is 2d-distant in S^apx when
//     pos(s'_i, S^apx) + 2d <= pos(s'_{i+1}, S^apx)   for all i < m.
// If S^apx has maximum dislocation at most d, any such subsequence is truly
// increasing, and the longest one has length at least |LIS(S)| / (2d).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "noisylis/approx_sort.hpp"
#include "noisylis/core_model.hpp"
#include "noisylis/exact_lis.hpp"
#include "noisylis/lis_result.hpp"

namespace noisylis {

/// How the dislocation budget d is chosen.
struct DPolicy {
    enum class Kind { auto_log, fixed, measured };

    Kind kind = Kind::auto_log;
    double c = 4.0;          // auto_log
    std::int64_t d = 0;      // fixed

    static DPolicy auto_log(double c) { return {Kind::auto_log, c, 0}; }
    static DPolicy fixed(std::int64_t d) { return {Kind::fixed, 0.0, d}; }
    static DPolicy measured() { return {Kind::measured, 0.0, 0}; }
};

/// Parses "auto:c=<float>", "fixed:<int>" or "measured".
std::optional<DPolicy> parse_d_policy(std::string_view text);
std::string to_string(const DPolicy& policy);

/// ceil(c * log2 n); 0 for n <= 1.
std::int64_t auto_d(double c, std::size_t n);

/// Resolves a policy to a concrete d.
///
/// auto_log yields 0 when the comparisons are error-free (p == 0), since the
/// sorted order is then exact. measured needs the true dislocation of S^apx
/// and throws InvalidParameter without it.
std::int64_t resolve_d(const DPolicy& policy, std::size_t n, double p,
                       std::optional<std::uint64_t> measured_disl = std::nullopt);

/// Longest subsequence of `s` that is 2d-distant in `apx`.
///
/// Core-algorithm front maintenance where every comparison is a position
/// comparison in `apx` and an element is only appended behind L[j] when
/// pos(L[j]) + 2d <= pos(x). O(n log n). `apx` must cover exactly the
/// elements of `s`.
LisResult approx_lis(std::span<const Element> s, const ApproxOrder& apx, std::int64_t d,
                     const LisOptions& options = {});
inline LisResult approx_lis(const Permutation& s, const ApproxOrder& apx, std::int64_t d,
                            const LisOptions& options = {}) {
    return approx_lis(s.elems(), apx, d, options);
}

/// Splits S by pos(x, apx) mod 2d, runs exact_lis under apx-order on each
/// class and keeps the longest. d == 0 runs exact_lis on all of S.
LisResult recipe_lis(std::span<const Element> s, const ApproxOrder& apx, std::int64_t d);
inline LisResult recipe_lis(const Permutation& s, const ApproxOrder& apx, std::int64_t d) {
    return recipe_lis(s.elems(), apx, d);
}

/// O(n^2) DP: dp[i] = 1 + max dp[j] over j < i with pos(s[j]) + 2d <= pos(s[i]).
std::size_t longest_distant_oracle(std::span<const Element> s, const ApproxOrder& apx, std::int64_t d,
                                   std::size_t cap = kDefaultOracleCap);

/// Recomputes every validity flag of `result` from the definitions.
ValidityFlags validate(const LisResult& result, std::span<const Element> s, const ApproxOrder& apx,
                       std::int64_t d);

/// validate() and store the flags on the result.
void attach_validation(LisResult& result, std::span<const Element> s, const ApproxOrder& apx);

}  // namespace noisylis
