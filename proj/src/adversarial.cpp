#include "noisylis/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "noisylis/stats.hpp"

namespace noisylis {

std::size_t family_eta(std::size_t n, double p) {
    if (!(p > 0.0 && p < 0.5)) throw InvalidParameter("eta needs 0 < p < 1/2, got " + std::to_string(p));
    if (n < 2) throw InvalidParameter("eta needs n >= 2");
    const double ratio = std::log2((1.0 - p) / p);
    return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)) / (2.0 * ratio)));
}

std::size_t AdversarialFamily::sample_index(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick(1, members.size());
    return pick(rng);
}

AdversarialFamily build_family_with_eta(std::size_t n, std::size_t eta, double p) {
    if (eta < 1 || eta > n) {
        throw InvalidParameter("eta = " + std::to_string(eta) + " must lie in 1.." + std::to_string(n) +
                               " (p too close to 1/2 for this n?)");
    }
    const auto top = static_cast<Element>(n);
    const auto head_first = static_cast<Element>(n - eta + 1);

    std::vector<Element> tail;
    tail.reserve(n - eta);
    for (auto v = static_cast<Element>(n - eta); v >= 1; --v) tail.push_back(v);

    AdversarialFamily family;
    family.n = n;
    family.p = p;
    family.eta = eta;
    family.members.reserve(eta);
    for (std::size_t i = 1; i <= eta; ++i) {
        // Head is n-eta+1..n-1 in increasing order with n inserted at slot i.
        std::vector<Element> elems;
        elems.reserve(n);
        for (Element v = head_first; v < top; ++v) {
            if (elems.size() == i - 1) elems.push_back(top);
            elems.push_back(v);
        }
        if (elems.size() == i - 1) elems.push_back(top);
        elems.insert(elems.end(), tail.begin(), tail.end());
        family.members.emplace_back(std::move(elems));
    }
    return family;
}

AdversarialFamily build_family(std::size_t n, double p) {
    if (n < 4) throw InvalidParameter("adversarial family needs n >= 4");
    return build_family_with_eta(n, family_eta(n, p), p);
}

namespace {

std::uint64_t count_inversions(std::vector<std::uint32_t>& v, std::vector<std::uint32_t>& buf, std::size_t lo,
                               std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
    std::size_t a = lo;
    std::size_t b = mid;
    std::size_t out = lo;
    while (a < mid && b < hi) {
        if (v[b] < v[a]) {
            inv += mid - a;
            buf[out++] = v[b++];
        } else {
            buf[out++] = v[a++];
        }
    }
    while (a < mid) buf[out++] = v[a++];
    while (b < hi) buf[out++] = v[b++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

}  // namespace

std::uint64_t wrong_pair_count(std::span<const Element> a, std::span<const Element> b) {
    if (a.size() != b.size()) throw InconsistentInput("sequences have different lengths");
    Element hi = 0;
    for (Element x : b) {
        if (x < 1) throw InconsistentInput("elements must be positive");
        hi = std::max(hi, x);
    }
    std::vector<std::uint32_t> pos_in_b(static_cast<std::size_t>(hi) + 1, 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        auto& slot = pos_in_b[static_cast<std::size_t>(b[i])];
        if (slot != 0) throw InconsistentInput("duplicate element " + std::to_string(b[i]));
        slot = static_cast<std::uint32_t>(i + 1);
    }
    std::vector<std::uint32_t> seq(a.size());
    std::vector<bool> seen(pos_in_b.size(), false);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Element x = a[i];
        const bool known = x >= 1 && x <= hi && pos_in_b[static_cast<std::size_t>(x)] != 0;
        if (!known || seen[static_cast<std::size_t>(x)]) {
            throw InconsistentInput("element sets differ at " + std::to_string(x));
        }
        seen[static_cast<std::size_t>(x)] = true;
        seq[i] = pos_in_b[static_cast<std::size_t>(x)];
    }
    std::vector<std::uint32_t> buf(seq.size());
    return count_inversions(seq, buf, 0, seq.size());
}

bool BlindComparator::less(BlindHandle a, BlindHandle b) const {
    if (a.label_ >= label_to_value_.size() || b.label_ >= label_to_value_.size()) {
        throw InvalidAlgorithmOutput("comparison on a forged handle");
    }
    return oracle_->less(label_to_value_[a.label_], label_to_value_[b.label_]);
}

BlindInstance::BlindInstance(const Permutation& hidden, const ComparisonOracle& oracle, Seed relabel_seed)
    : oracle_(&oracle) {
    const std::size_t n = hidden.size();
    std::vector<std::uint32_t> labels(n);
    std::iota(labels.begin(), labels.end(), std::uint32_t{0});
    std::mt19937_64 rng(relabel_seed);
    std::shuffle(labels.begin(), labels.end(), rng);

    label_to_value_.assign(n, 0);
    handles_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        label_to_value_[labels[i]] = hidden.elems()[i];
        handles_.push_back(BlindHandle(labels[i]));
    }
}

std::vector<Element> BlindInstance::decode(std::span<const BlindHandle> answer) const {
    std::vector<bool> used(label_to_value_.size(), false);
    std::vector<Element> values;
    values.reserve(answer.size());
    for (const BlindHandle h : answer) {
        if (h.label_ >= label_to_value_.size()) throw InvalidAlgorithmOutput("answer contains a forged handle");
        if (used[h.label_]) throw InvalidAlgorithmOutput("answer repeats a handle");
        used[h.label_] = true;
        values.push_back(label_to_value_[h.label_]);
    }
    return values;
}

BlindAlgorithm make_approx_lis_algorithm(const SorterSpec& sorter, const DPolicy& policy, double p) {
    if (policy.kind == DPolicy::Kind::measured) {
        throw InvalidParameter("a blind algorithm cannot use the measured dislocation");
    }
    return [sorter, policy, p](std::span<const BlindHandle> input, const BlindComparator& cmp) {
        // Work on input indices 1..n; the comparator is consulted through them.
        const std::size_t n = input.size();
        std::vector<Element> ids(n);
        std::iota(ids.begin(), ids.end(), Element{1});
        const auto less = [&](Element a, Element b) {
            return cmp.less(input[static_cast<std::size_t>(a - 1)], input[static_cast<std::size_t>(b - 1)]);
        };

        std::vector<Element> order = ids;
        switch (sorter.id) {
            case SorterId::noisy_mergesort: sorting::merge_sort(order, less); break;
            case SorterId::windowed_refine:
                sorting::windowed_refine(order, less, resolve_window(sorter, n), sorter.passes);
                break;
            case SorterId::identity_oracle:
                throw InvalidParameter("identity-oracle needs true values and cannot run blind");
        }
        const ApproxOrder apx(std::move(order));
        const auto result = approx_lis(ids, apx, resolve_d(policy, n, p));

        std::vector<BlindHandle> answer;
        answer.reserve(result.length());
        for (Element id : result.subseq) answer.push_back(input[static_cast<std::size_t>(id - 1)]);
        return answer;
    };
}

bool score_success(std::span<const Element> returned, std::size_t n, std::size_t eta,
                   const SuccessCriterion& criterion) {
    for (std::size_t i = 1; i < returned.size(); ++i) {
        if (!(returned[i - 1] < returned[i])) return false;
    }
    if (criterion.require_two_of_head) {
        const auto head_min = static_cast<Element>(n - eta + 1);
        const auto head_hits = std::count_if(returned.begin(), returned.end(), [&](Element v) { return v >= head_min; });
        if (head_hits < 2) return false;
    }
    if (criterion.require_length_ratio) {
        const double needed = static_cast<double>(eta) / (criterion.c * std::log2(static_cast<double>(n)));
        if (static_cast<double>(returned.size()) < needed) return false;
    }
    return true;
}

FailureStats failure_experiment(const BlindAlgorithm& algorithm, std::size_t n, double p, std::size_t trials,
                                const SuccessCriterion& criterion, Seed base_seed) {
    const AdversarialFamily family = p == 0.0 ? build_family_with_eta(n, kErrorFreeEta, 0.0) : build_family(n, p);

    FailureStats stats;
    stats.n = n;
    stats.p = p;
    stats.eta = family.eta;
    stats.trials = trials;
    stats.rows.reserve(trials);

    for (std::size_t t = 0; t < trials; ++t) {
        const Seed seed = base_seed + t;
        std::mt19937_64 rng(derive_seed(seed, stream::family));
        const std::size_t member = family.sample_index(rng);
        const ComparisonOracle oracle(p, derive_seed(seed, stream::oracle));
        const BlindInstance instance(family.member(member), oracle, derive_seed(seed, stream::relabel));

        const auto answer = algorithm(instance.handles(), instance.comparator());
        const auto values = instance.decode(answer);

        FailureTrial row;
        row.trial = t;
        row.seed = seed;
        row.member_index = member;
        row.returned_length = values.size();
        row.truly_increasing = std::adjacent_find(values.begin(), values.end(), std::greater_equal<>()) == values.end();
        row.success = score_success(values, n, family.eta, criterion);
        if (!row.success) ++stats.failures;
        stats.rows.push_back(row);
    }

    stats.failure_rate = trials == 0 ? 0.0 : static_cast<double>(stats.failures) / static_cast<double>(trials);
    const auto ci = stats::wilson_interval(stats.failures, trials);
    stats.ci_low = trials == 0 ? 0.0 : ci.low;
    stats.ci_high = trials == 0 ? 0.0 : ci.high;
    return stats;
}

}  // namespace noisylis
