#include "noisylis/approx_sort.hpp"

#include <bit>
#include <numeric>

#include "noisylis/stats.hpp"

namespace noisylis {

ApproxOrder::ApproxOrder(std::vector<Element> order) : order_(std::move(order)) {
    require_permutation(order_);
    pos_index_.assign(order_.size() + 1, 0);
    for (std::size_t i = 0; i < order_.size(); ++i) {
        pos_index_[static_cast<std::size_t>(order_[i])] = static_cast<std::uint32_t>(i + 1);
    }
}

std::string_view to_string(SorterId id) noexcept {
    switch (id) {
        case SorterId::noisy_mergesort: return "noisy-mergesort";
        case SorterId::windowed_refine: return "windowed-refine";
        case SorterId::identity_oracle: return "identity-oracle";
    }
    return "unknown";
}

std::optional<SorterId> parse_sorter_id(std::string_view text) noexcept {
    if (text == "noisy-mergesort") return SorterId::noisy_mergesort;
    if (text == "windowed-refine") return SorterId::windowed_refine;
    if (text == "identity-oracle") return SorterId::identity_oracle;
    return std::nullopt;
}

std::size_t ceil_log2(std::size_t n) noexcept {
    return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

std::size_t resolve_window(const SorterSpec& spec, std::size_t n) {
    if (spec.window != 0) return spec.window;
    return std::max<std::size_t>(1, 4 * ceil_log2(n));
}

ApproxOrder approx_sort(const Permutation& s, const ComparisonOracle& oracle, const SorterSpec& spec,
                        std::uint64_t& comparisons) {
    std::vector<Element> items(s.elems().begin(), s.elems().end());
    CountingLess counted([&oracle](Element x, Element y) { return oracle.less(x, y); });

    switch (spec.id) {
        case SorterId::identity_oracle:
            std::iota(items.begin(), items.end(), Element{1});
            break;
        case SorterId::noisy_mergesort:
            sorting::merge_sort(items, counted);
            break;
        case SorterId::windowed_refine:
            sorting::windowed_refine(items, counted, resolve_window(spec, items.size()), spec.passes);
            break;
    }
    comparisons = counted.calls();
    return ApproxOrder(std::move(items));
}

ApproxOrder approx_sort(const Permutation& s, const ComparisonOracle& oracle, const SorterSpec& spec) {
    std::uint64_t ignored = 0;
    return approx_sort(s, oracle, spec, ignored);
}

DislocationCurve measure_dislocation_curve(const SorterSpec& spec, double p, std::span<const std::size_t> n_list,
                                           std::span<const Seed> seeds) {
    DislocationCurve curve;
    curve.spec = spec;
    curve.p = p;
    for (const std::size_t n : n_list) {
        std::vector<double> max_disl;
        std::vector<double> total_disl;
        for (const Seed seed : seeds) {
            const auto s = generate_permutation({PermutationKind::uniform, 0}, n, derive_seed(seed, stream::permutation));
            const ComparisonOracle oracle(p, derive_seed(seed, stream::oracle));
            const auto apx = approx_sort(s, oracle, spec);
            const auto report = dislocation(apx.order());
            curve.samples.push_back({n, seed, report.max_disl, report.total_disl});
            max_disl.push_back(static_cast<double>(report.max_disl));
            total_disl.push_back(static_cast<double>(report.total_disl));
        }
        if (seeds.empty()) continue;
        curve.summary.push_back({n, stats::median(max_disl), stats::quantile(max_disl, 0.95),
                                 *std::max_element(max_disl.begin(), max_disl.end()), stats::mean(total_disl)});
    }
    return curve;
}

}  // namespace noisylis
