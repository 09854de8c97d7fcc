#pragma once

// Patience-front longest increasing subsequence for an error-free comparator,
// and the quadratic DP used to cross-check it.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "noisylis/core_model.hpp"
#include "noisylis/lis_result.hpp"

namespace noisylis {

inline constexpr std::size_t kDefaultOracleCap = 2000;

struct LisOptions {
    /// Re-check the front and the fresh predecessor chain after every element.
    /// O(n * k); meant for tests.
    bool check_invariants = false;
};

namespace detail {

inline std::vector<Element> recover_chain(Element last, std::span<const Element> prec, std::size_t length) {
    std::vector<Element> out(length);
    Element cur = last;
    for (std::size_t i = length; i-- > 0;) {
        out[i] = cur;
        cur = prec[static_cast<std::size_t>(cur)];
    }
    return out;
}

inline std::size_t chain_length(Element x, std::span<const Element> prec) {
    std::size_t len = 0;
    for (Element cur = x; cur != 0; cur = prec[static_cast<std::size_t>(cur)]) ++len;
    return len;
}

inline std::size_t max_element_value(std::span<const Element> s) {
    Element hi = 0;
    for (Element x : s) {
        if (x < 1) throw MalformedInput("elements must be positive, got " + std::to_string(x));
        hi = std::max(hi, x);
    }
    return static_cast<std::size_t>(hi);
}

}  // namespace detail

/// Longest subsequence of `s` that is increasing under `less`.
///
/// `s` holds distinct positive elements; `less` must be antisymmetric. Each
/// element costs one comparison against L[1] plus a binary search over the
/// rest of the front, so the total is at most n * (1 + ceil(log2 n)) calls.
template <class Less>
    requires std::predicate<Less&, Element, Element>
LisResult exact_lis(std::span<const Element> s, Less&& less, const LisOptions& options = {}) {
    LisResult result;
    if (s.empty()) return result;

    std::vector<Element> prec(detail::max_element_value(s) + 1, 0);
    std::vector<Element> front{s[0]};
    front.reserve(64);

    for (std::size_t i = 1; i < s.size(); ++i) {
        const Element x = s[i];
        const std::size_t k_before = front.size();
        if (less(x, front[0])) {
            front[0] = x;
            prec[static_cast<std::size_t>(x)] = 0;
        } else {
            // Largest j with L[j] < x; L[1] < x is already known.
            const auto tail = std::partition_point(front.begin() + 1, front.end(),
                                                   [&](Element y) { return less(y, x); });
            const auto j = static_cast<std::size_t>(tail - front.begin()) - 1;
            if (j + 1 == front.size()) {
                front.push_back(x);
            } else {
                front[j + 1] = x;
            }
            prec[static_cast<std::size_t>(x)] = front[j];
        }

        if (options.check_invariants) {
            if (front.size() < k_before) throw std::logic_error("patience front shrank");
            for (std::size_t j = 1; j < front.size(); ++j) {
                if (!less(front[j - 1], front[j])) throw std::logic_error("patience front not increasing");
            }
            for (std::size_t j = 0; j < front.size(); ++j) {
                if (detail::chain_length(front[j], prec) != j + 1) {
                    throw std::logic_error("implied sequence of L[" + std::to_string(j + 1) + "] has wrong length");
                }
            }
        }
    }

    result.subseq = detail::recover_chain(front.back(), prec, front.size());
    return result;
}

/// exact_lis under the true order of element values.
inline LisResult exact_lis(std::span<const Element> s, const LisOptions& options = {}) {
    return exact_lis(s, [](Element a, Element b) { return a < b; }, options);
}

/// O(n^2) LIS length by dp[i] = 1 + max dp[j] over j < i with s[j] < s[i].
/// Throws SizeCapExceeded above `cap`.
std::size_t lis_dp_oracle(std::span<const Element> s, std::size_t cap = kDefaultOracleCap);

}  // namespace noisylis
