#pragma once

// Lower-bound family: sequences that look alike under persistent errors.
//
//   S*    = <n-eta+1, ..., n-1, n, n-eta, ..., 1>
//   S_(i) = S* with n moved to position i, 1 <= i < eta
//   eta   = ceil(log2 n / (2 log2((1-p)/p)))
//
// S_(i) and S* order exactly eta - i pairs differently, which bounds the
// likelihood ratio of any comparison outcome between them.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "noisylis/approx_sort.hpp"
#include "noisylis/core_model.hpp"
#include "noisylis/distant_lis.hpp"

namespace noisylis {

/// eta for 0 < p < 1/2 and n >= 2.
std::size_t family_eta(std::size_t n, double p);

/// eta used when comparisons are error-free and the closed form is undefined.
inline constexpr std::size_t kErrorFreeEta = 3;

struct AdversarialFamily {
    std::size_t n = 0;
    double p = 0.0;
    std::size_t eta = 0;
    /// members[i - 1] is S_(i) for i < eta; members[eta - 1] is S*.
    std::vector<Permutation> members;

    const Permutation& star() const { return members.back(); }
    /// 1-based; member(eta) is S*.
    const Permutation& member(std::size_t i) const { return members.at(i - 1); }
    /// Uniform draw over all members; returns the 1-based member index.
    std::size_t sample_index(std::mt19937_64& rng) const;
};

/// Builds the family for n >= 4 and 0 < p < 1/2; throws InvalidParameter when
/// eta > n.
AdversarialFamily build_family(std::size_t n, double p);
/// Same construction with eta given directly (1 <= eta <= n).
AdversarialFamily build_family_with_eta(std::size_t n, std::size_t eta, double p = 0.0);

/// Number of unordered pairs ordered differently in `a` and `b`. O(n log n).
/// Throws InconsistentInput when the element sets differ.
std::uint64_t wrong_pair_count(std::span<const Element> a, std::span<const Element> b);

// ---- blind algorithm interface -----------------------------------------

class BlindComparator;

/// Opaque element token. Labels are a fresh random relabelling per trial and
/// can only be decoded by the harness.
class BlindHandle {
public:
    friend bool operator==(BlindHandle, BlindHandle) = default;

private:
    explicit BlindHandle(std::uint32_t label) : label_(label) {}
    std::uint32_t label_ = 0;

    friend class BlindComparator;
    friend class BlindInstance;
};

/// Oracle access to a hidden sequence: the only operation is a comparison.
class BlindComparator {
public:
    bool less(BlindHandle a, BlindHandle b) const;

private:
    BlindComparator(const ComparisonOracle& oracle, std::span<const Element> label_to_value)
        : oracle_(&oracle), label_to_value_(label_to_value) {}

    const ComparisonOracle* oracle_;
    std::span<const Element> label_to_value_;

    friend class BlindInstance;
};

/// Holds the hidden sequence and the relabelling for one trial.
class BlindInstance {
public:
    BlindInstance(const Permutation& hidden, const ComparisonOracle& oracle, Seed relabel_seed);

    std::span<const BlindHandle> handles() const noexcept { return handles_; }
    BlindComparator comparator() const { return BlindComparator(*oracle_, label_to_value_); }

    /// Maps the algorithm's answer back to true values. Throws
    /// InvalidAlgorithmOutput for forged or repeated handles.
    std::vector<Element> decode(std::span<const BlindHandle> answer) const;

private:
    const ComparisonOracle* oracle_;
    std::vector<Element> label_to_value_;
    std::vector<BlindHandle> handles_;
};

class InvalidAlgorithmOutput : public std::runtime_error {
public:
    explicit InvalidAlgorithmOutput(const std::string& what) : std::runtime_error(what) {}
};

/// An LIS procedure that only sees tokens in input order and a comparator.
using BlindAlgorithm = std::function<std::vector<BlindHandle>(std::span<const BlindHandle>, const BlindComparator&)>;

/// approx_sort + approx_lis behind the blind interface. `p` is the model
/// parameter the algorithm is told; `policy` must not be measured.
BlindAlgorithm make_approx_lis_algorithm(const SorterSpec& sorter, const DPolicy& policy, double p);

struct SuccessCriterion {
    /// At least two of the eta largest elements (the head of S*) returned.
    bool require_two_of_head = true;
    /// Length at least eta / (c * log2 n).
    bool require_length_ratio = true;
    double c = 1.0;
};

struct FailureTrial {
    std::size_t trial = 0;
    Seed seed = 0;
    std::size_t member_index = 0;
    std::size_t returned_length = 0;
    bool truly_increasing = false;
    bool success = false;
};

struct FailureStats {
    std::size_t n = 0;
    double p = 0.0;
    std::size_t eta = 0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double failure_rate = 0.0;
    double ci_low = 0.0;   // 95% Wilson
    double ci_high = 0.0;
    std::vector<FailureTrial> rows;
};

bool score_success(std::span<const Element> returned, std::size_t n, std::size_t eta, const SuccessCriterion& criterion);

/// Per trial: draws a member uniformly, runs `algorithm` blind against a
/// fresh persistent oracle, and scores the answer. Trial t uses seed
/// base_seed + t. With p == 0 the family uses kErrorFreeEta.
FailureStats failure_experiment(const BlindAlgorithm& algorithm, std::size_t n, double p, std::size_t trials,
                                const SuccessCriterion& criterion, Seed base_seed);

}  // namespace noisylis
