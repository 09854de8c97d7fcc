#include "noisylis/core_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>

namespace noisylis {

void require_permutation(std::span<const Element> elems) {
    const auto n = elems.size();
    std::vector<bool> seen(n + 1, false);
    for (std::size_t i = 0; i < n; ++i) {
        const Element v = elems[i];
        if (v < 1 || static_cast<std::size_t>(v) > n) {
            throw MalformedInput("value " + std::to_string(v) + " at position " + std::to_string(i + 1) +
                                 " is outside 1.." + std::to_string(n));
        }
        if (seen[static_cast<std::size_t>(v)]) {
            throw MalformedInput("duplicate value " + std::to_string(v));
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation::Permutation(std::vector<Element> elems) : elems_(std::move(elems)) {
    require_permutation(elems_);
    positions_.assign(elems_.size() + 1, 0);
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        positions_[static_cast<std::size_t>(elems_[i])] = static_cast<std::uint32_t>(i + 1);
    }
}

Permutation Permutation::from_keys(std::span<const std::int64_t> keys) {
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (keys[order[i - 1]] == keys[order[i]]) {
            throw MalformedInput("duplicate key " + std::to_string(keys[order[i]]));
        }
    }
    std::vector<Element> elems(keys.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        elems[order[r]] = static_cast<Element>(r + 1);
    }
    return Permutation(std::move(elems));
}

Element Permutation::at(std::size_t position) const {
    if (position < 1 || position > elems_.size()) {
        throw std::out_of_range("position " + std::to_string(position) + " outside 1.." +
                                std::to_string(elems_.size()));
    }
    return elems_[position - 1];
}

std::size_t Permutation::pos(Element x) const {
    if (x < 1 || static_cast<std::size_t>(x) > elems_.size()) {
        throw std::out_of_range("element " + std::to_string(x) + " not in permutation");
    }
    return positions_[static_cast<std::size_t>(x)];
}

std::string_view to_string(OracleMode mode) noexcept {
    switch (mode) {
        case OracleMode::persistent_bernoulli: return "persistent-bernoulli";
        case OracleMode::error_free: return "error-free";
        case OracleMode::threshold: return "threshold";
    }
    return "unknown";
}

std::optional<OracleMode> parse_oracle_mode(std::string_view text) noexcept {
    if (text == "persistent-bernoulli" || text == "persistent") return OracleMode::persistent_bernoulli;
    if (text == "error-free") return OracleMode::error_free;
    if (text == "threshold") return OracleMode::threshold;
    return std::nullopt;
}

ComparisonOracle::ComparisonOracle(double p, Seed seed, OracleMode mode, std::int64_t tau)
    : p_(p), seed_(seed), mode_(mode), tau_(tau), threshold_(0) {
    if (!(p >= 0.0 && p < 0.5)) {
        throw InvalidParameter("error probability p must lie in [0, 1/2), got " + std::to_string(p));
    }
    if (mode == OracleMode::threshold && tau < 0) {
        throw InvalidParameter("threshold tau must be non-negative");
    }
    if (mode == OracleMode::error_free) {
        p_ = 0.0;
    }
    // p < 1/2 keeps the product below 2^63.
    threshold_ = static_cast<std::uint64_t>(std::ldexp(p_, 64));
}

bool ComparisonOracle::is_flipped(Element x, Element y) const {
    if (x == y) {
        throw std::domain_error("cannot compare element " + std::to_string(x) + " with itself");
    }
    if (mode_ == OracleMode::error_free || threshold_ == 0) return false;
    const auto lo = static_cast<std::uint64_t>(std::min(x, y));
    const auto hi = static_cast<std::uint64_t>(std::max(x, y));
    if (mode_ == OracleMode::threshold && static_cast<std::int64_t>(hi - lo) > tau_) return false;
    const std::uint64_t key = (lo << 32) | (hi & 0xffffffffULL);
    return mix64(mix64(key) ^ seed_) < threshold_;
}

Observed ComparisonOracle::compare(Element x, Element y) const {
    const bool truly_less = x < y;
    return (truly_less != is_flipped(x, y)) ? Observed::less : Observed::greater;
}

DislocationReport dislocation(std::span<const Element> sequence) {
    require_permutation(sequence);
    DislocationReport report;
    report.per_element.resize(sequence.size());
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        const auto position = static_cast<std::int64_t>(i + 1);
        const auto d = static_cast<std::uint64_t>(std::abs(position - static_cast<std::int64_t>(sequence[i])));
        report.per_element[i] = d;
        report.max_disl = std::max(report.max_disl, d);
        report.total_disl += d;
    }
    return report;
}

std::string to_string(const PermutationSpec& spec) {
    switch (spec.kind) {
        case PermutationKind::uniform: return "uniform";
        case PermutationKind::identity: return "identity";
        case PermutationKind::reversed: return "reversed";
        case PermutationKind::planted_lis: return "planted:" + std::to_string(spec.planted_length);
    }
    return "unknown";
}

std::optional<PermutationSpec> parse_permutation_spec(std::string_view text) {
    if (text == "uniform") return PermutationSpec{PermutationKind::uniform, 0};
    if (text == "identity") return PermutationSpec{PermutationKind::identity, 0};
    if (text == "reversed") return PermutationSpec{PermutationKind::reversed, 0};
    constexpr std::string_view prefix = "planted:";
    if (text.starts_with(prefix)) {
        const auto digits = text.substr(prefix.size());
        std::size_t l = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), l);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) return std::nullopt;
        return PermutationSpec{PermutationKind::planted_lis, l};
    }
    return std::nullopt;
}

Permutation generate_permutation(const PermutationSpec& spec, std::size_t n, Seed seed) {
    if (n < 1) throw InvalidParameter("permutation size must be at least 1");
    std::vector<Element> elems(n);
    std::iota(elems.begin(), elems.end(), Element{1});
    std::mt19937_64 rng(seed);

    switch (spec.kind) {
        case PermutationKind::identity:
            break;
        case PermutationKind::reversed:
            std::reverse(elems.begin(), elems.end());
            break;
        case PermutationKind::uniform:
            std::shuffle(elems.begin(), elems.end(), rng);
            break;
        case PermutationKind::planted_lis: {
            const std::size_t l = spec.planted_length;
            if (l < 1 || l > n) {
                throw InvalidParameter("planted LIS length " + std::to_string(l) + " must lie in 1.." +
                                       std::to_string(n));
            }
            // l sorted values are written, in order, to l sorted positions; the rest are shuffled around them.
            std::vector<Element> values(n);
            std::iota(values.begin(), values.end(), Element{1});
            std::shuffle(values.begin(), values.end(), rng);
            std::vector<Element> planted(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(l));
            std::vector<Element> rest(values.begin() + static_cast<std::ptrdiff_t>(l), values.end());
            std::sort(planted.begin(), planted.end());

            std::vector<std::size_t> slots(n);
            std::iota(slots.begin(), slots.end(), std::size_t{0});
            std::shuffle(slots.begin(), slots.end(), rng);
            std::vector<bool> is_planted(n, false);
            for (std::size_t i = 0; i < l; ++i) is_planted[slots[i]] = true;

            std::size_t next_planted = 0;
            std::size_t next_rest = 0;
            for (std::size_t i = 0; i < n; ++i) {
                elems[i] = is_planted[i] ? planted[next_planted++] : rest[next_rest++];
            }
            break;
        }
    }
    return Permutation(std::move(elems));
}

}  // namespace noisylis
