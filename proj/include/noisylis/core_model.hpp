#pragma once

// Elements, permutations, the persistent-error comparison oracle and
// dislocation metrics.
//
// Elements are the integers 1..n and an element's value is its true rank.
// Positions are 1-based throughout.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noisylis/errors.hpp"

namespace noisylis {

using Element = std::int32_t;
using Seed = std::uint64_t;

/// splitmix64 finalizer; also used to derive independent sub-seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr Seed derive_seed(Seed seed, std::uint64_t stream) noexcept {
    return mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

/// Independent random streams derived from one trial seed.
namespace stream {
inline constexpr std::uint64_t permutation = 1;
inline constexpr std::uint64_t oracle = 2;
inline constexpr std::uint64_t relabel = 3;
inline constexpr std::uint64_t family = 4;
}  // namespace stream

/// Throws MalformedInput unless `elems` holds every value of 1..size exactly once.
void require_permutation(std::span<const Element> elems);

class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<Element> elems);

    /// Replaces arbitrary distinct keys by their ranks (smallest key -> 1).
    static Permutation from_keys(std::span<const std::int64_t> keys);

    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }

    /// 1-based element access, s_i.
    Element at(std::size_t position) const;
    /// 1-based position of element x.
    std::size_t pos(Element x) const;
    /// True rank of x; equals its value.
    static constexpr std::size_t rank(Element x) noexcept { return static_cast<std::size_t>(x); }

    std::span<const Element> elems() const noexcept { return elems_; }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<Element> elems_;
    std::vector<std::uint32_t> positions_;  // indexed by element, 1-based
};

enum class OracleMode { persistent_bernoulli, error_free, threshold };

std::string_view to_string(OracleMode mode) noexcept;
std::optional<OracleMode> parse_oracle_mode(std::string_view text) noexcept;

enum class Observed { less, greater };

/// Persistent noisy comparator.
///
/// The error bit of the unordered pair {x, y} is a pseudorandom function of
/// (min, max, seed) thresholded at p, so the oracle carries no mutable state.
/// Repeated queries of a pair always agree and compare(x, y) is the mirror
/// image of compare(y, x). Safe to share between threads.
class ComparisonOracle {
public:
    ComparisonOracle(double p, Seed seed,
                     OracleMode mode = OracleMode::persistent_bernoulli,
                     std::int64_t tau = 0);

    static ComparisonOracle error_free() { return ComparisonOracle(0.0, 0, OracleMode::error_free); }

    Observed compare(Element x, Element y) const;
    /// Observed x < y.
    bool less(Element x, Element y) const { return compare(x, y) == Observed::less; }
    /// Whether the stored outcome of {x, y} disagrees with the true order.
    bool is_flipped(Element x, Element y) const;

    double p() const noexcept { return p_; }
    Seed seed() const noexcept { return seed_; }
    OracleMode mode() const noexcept { return mode_; }
    std::int64_t tau() const noexcept { return tau_; }

    friend bool operator==(const ComparisonOracle&, const ComparisonOracle&) = default;

private:
    double p_;
    Seed seed_;
    OracleMode mode_;
    std::int64_t tau_;
    std::uint64_t threshold_;  // flip iff hash < threshold_
};

/// Wraps a comparator and counts the calls made through it. Not thread-safe.
template <class Less>
class CountingLess {
public:
    explicit CountingLess(Less less) : less_(std::move(less)) {}

    bool operator()(Element x, Element y) {
        ++calls_;
        return less_(x, y);
    }

    std::uint64_t calls() const noexcept { return calls_; }

private:
    Less less_;
    std::uint64_t calls_ = 0;
};

struct DislocationReport {
    std::uint64_t max_disl = 0;
    std::uint64_t total_disl = 0;
    /// |pos - rank| in sequence order.
    std::vector<std::uint64_t> per_element;
};

DislocationReport dislocation(std::span<const Element> sequence);

enum class PermutationKind { uniform, identity, reversed, planted_lis };

struct PermutationSpec {
    PermutationKind kind = PermutationKind::uniform;
    std::size_t planted_length = 0;  // planted_lis only
};

std::string to_string(const PermutationSpec& spec);
/// Parses "uniform", "identity", "reversed" or "planted:<l>".
std::optional<PermutationSpec> parse_permutation_spec(std::string_view text);

Permutation generate_permutation(const PermutationSpec& spec, std::size_t n, Seed seed);

}  // namespace noisylis
