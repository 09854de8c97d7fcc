#pragma once

// Approximate sorting under the noisy oracle.
//
// Two sorters are provided: plain merge sort run against the noisy
// comparator, and a rank-based merge sort followed by windowed win-count
// refinement passes. Both only ever see comparison outcomes. A third id,
// identity-oracle, returns the true order and exists as a reference.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "noisylis/core_model.hpp"

namespace noisylis {

/// S^apx with an inverse index for O(1) pos(x, S^apx).
class ApproxOrder {
public:
    ApproxOrder() = default;
    /// `order` must be a permutation of 1..n.
    explicit ApproxOrder(std::vector<Element> order);

    std::size_t size() const noexcept { return order_.size(); }
    std::span<const Element> order() const noexcept { return order_; }
    /// 1-based position of x, or 0 when x is not covered.
    std::size_t pos(Element x) const noexcept {
        const auto i = static_cast<std::size_t>(x);
        return (x >= 1 && i < pos_index_.size()) ? pos_index_[i] : 0;
    }
    bool contains(Element x) const noexcept { return pos(x) != 0; }
    /// Comparison redefined by S^apx.
    bool before(Element x, Element y) const noexcept { return pos(x) < pos(y); }

    friend bool operator==(const ApproxOrder& a, const ApproxOrder& b) { return a.order_ == b.order_; }

private:
    std::vector<Element> order_;
    std::vector<std::uint32_t> pos_index_;
};

enum class SorterId { noisy_mergesort, windowed_refine, identity_oracle };

std::string_view to_string(SorterId id) noexcept;
std::optional<SorterId> parse_sorter_id(std::string_view text) noexcept;

struct SorterSpec {
    SorterId id = SorterId::windowed_refine;
    /// Window width; 0 selects 4 * ceil(log2 n).
    std::size_t window = 0;
    std::size_t passes = 3;
};

/// ceil(log2 n) for n >= 1.
std::size_t ceil_log2(std::size_t n) noexcept;
/// The window width actually used for an input of size n.
std::size_t resolve_window(const SorterSpec& spec, std::size_t n);

namespace sorting {

/// Stable bottom-up merge sort driven only by `less`.
template <class Item, class Less>
void merge_sort(std::vector<Item>& items, Less&& less) {
    const std::size_t n = items.size();
    if (n < 2) return;
    std::vector<Item> buffer(n);
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo;
            std::size_t b = mid;
            std::size_t out = lo;
            while (a < mid && b < hi) {
                if (less(items[b], items[a])) {
                    buffer[out++] = items[b++];
                } else {
                    buffer[out++] = items[a++];
                }
            }
            while (a < mid) buffer[out++] = items[a++];
            while (b < hi) buffer[out++] = items[b++];
        }
        items.swap(buffer);
    }
}

/// One refinement pass: every item is scored by how many members of its
/// window of `width` neighbours it beats, its key is window start + wins,
/// and the sequence is stably re-sorted by key. No item moves `width` or
/// more positions.
template <class Item, class Less>
void refine_pass(std::vector<Item>& items, Less&& less, std::size_t width) {
    const std::size_t n = items.size();
    width = std::min(width, n);
    if (width < 2) return;
    const std::size_t half = width / 2;

    std::vector<std::pair<std::size_t, std::size_t>> keyed(n);  // (key, old index)
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = std::min(i > half ? i - half : 0, n - width);
        std::size_t wins = 0;
        for (std::size_t j = lo; j < lo + width; ++j) {
            if (j != i && less(items[j], items[i])) ++wins;
        }
        keyed[i] = {lo + wins, i};
    }
    std::sort(keyed.begin(), keyed.end());

    std::vector<Item> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = items[keyed[i].second];
    items.swap(next);
}

/// Estimated number of items in run[lo, hi) below x, for a run that is
/// already approximately sorted. Binary search where each step takes the
/// majority over a block of `block` neighbours of the midpoint, then a local
/// win count inside the final interval.
template <class Item, class Less>
std::size_t robust_rank(const Item& x, std::span<const Item> run, Less& less, std::size_t block) {
    const std::size_t len = run.size();
    if (len == 0) return 0;
    block = std::max<std::size_t>(1, std::min(block, len));
    std::size_t a = 0;
    std::size_t b = len;
    while (b - a > block) {
        const std::size_t mid = a + (b - a) / 2;
        const std::size_t start = std::min(mid > block / 2 ? mid - block / 2 : 0, len - block);
        // Stop as soon as the majority is decided.
        std::size_t wins = 0;
        std::size_t losses = 0;
        for (std::size_t j = start; j < start + block && 2 * wins <= block && 2 * losses < block; ++j) {
            if (less(run[j], x)) {
                ++wins;
            } else {
                ++losses;
            }
        }
        if (2 * wins > block) {
            a = mid;
        } else {
            b = mid;
        }
    }
    const std::size_t width = std::min(len, 2 * block);
    const std::size_t center = a + (b - a) / 2;
    const std::size_t start = std::min(center > width / 2 ? center - width / 2 : 0, len - width);
    std::size_t wins = 0;
    for (std::size_t j = start; j < start + width; ++j) {
        if (less(run[j], x)) ++wins;
    }
    return start + wins;
}

/// Merge sort in which each merge places every item at (its index in its own
/// run) + (its robust_rank in the other run). A single bad comparison moves
/// one item a bounded distance instead of stalling a whole run.
template <class Item, class Less>
void rank_merge_sort(std::vector<Item>& items, Less&& less, std::size_t block) {
    const std::size_t n = items.size();
    if (n < 2) return;
    std::vector<Item> buffer(n);
    // (key, side, index in side)
    std::vector<std::tuple<std::size_t, int, std::size_t>> keyed;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            const std::span<const Item> left(items.data() + lo, mid - lo);
            const std::span<const Item> right(items.data() + mid, hi - mid);
            keyed.clear();
            for (std::size_t i = 0; i < left.size(); ++i) {
                keyed.emplace_back(i + robust_rank(left[i], right, less, block), 0, i);
            }
            for (std::size_t j = 0; j < right.size(); ++j) {
                keyed.emplace_back(j + robust_rank(right[j], left, less, block), 1, j);
            }
            std::sort(keyed.begin(), keyed.end());
            std::size_t out = lo;
            for (const auto& [key, side, idx] : keyed) {
                buffer[out++] = side == 0 ? left[idx] : right[idx];
            }
        }
        items.swap(buffer);
    }
}

template <class Item, class Less>
void windowed_refine(std::vector<Item>& items, Less&& less, std::size_t width, std::size_t passes) {
    rank_merge_sort(items, less, width / 2 + 1);
    for (std::size_t r = 0; r < passes; ++r) refine_pass(items, less, width);
}

}  // namespace sorting

/// Approximately sorts `s` with `oracle`; the identity-oracle id ignores the
/// oracle and returns 1..n.
ApproxOrder approx_sort(const Permutation& s, const ComparisonOracle& oracle, const SorterSpec& spec);

/// Same as approx_sort but also reports the number of oracle queries.
ApproxOrder approx_sort(const Permutation& s, const ComparisonOracle& oracle, const SorterSpec& spec,
                        std::uint64_t& comparisons);

struct DislocationSample {
    std::size_t n = 0;
    Seed seed = 0;
    std::uint64_t max_disl = 0;
    std::uint64_t total_disl = 0;
};

struct DislocationSummary {
    std::size_t n = 0;
    double max_disl_median = 0.0;
    double max_disl_p95 = 0.0;
    double max_disl_max = 0.0;
    double total_disl_mean = 0.0;
};

struct DislocationCurve {
    SorterSpec spec;
    double p = 0.0;
    std::vector<DislocationSample> samples;    // ordered by (n, seed)
    std::vector<DislocationSummary> summary;  // one per n, in input order
};

/// Sorts a uniform permutation per (n, seed) and tabulates the dislocation of
/// the result. The permutation and oracle seeds are derived from `seed`.
DislocationCurve measure_dislocation_curve(const SorterSpec& spec, double p, std::span<const std::size_t> n_list,
                                           std::span<const Seed> seeds);

}  // namespace noisylis
