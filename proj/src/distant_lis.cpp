#include "noisylis/distant_lis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace noisylis {

namespace {

void require_nonnegative(std::int64_t d) {
    if (d < 0) throw InvalidParameter("dislocation budget d must be non-negative, got " + std::to_string(d));
}

// Every element of s is distinct and placed by apx, and apx has no extras.
void require_covered(std::span<const Element> s, const ApproxOrder& apx) {
    if (s.size() != apx.size()) {
        throw InconsistentInput("approximate order has " + std::to_string(apx.size()) + " elements, sequence has " +
                                std::to_string(s.size()));
    }
    std::vector<bool> seen(apx.size() + 1, false);
    for (Element x : s) {
        if (!apx.contains(x)) {
            throw InconsistentInput("element " + std::to_string(x) + " is missing from the approximate order");
        }
        if (seen[static_cast<std::size_t>(x)]) throw InconsistentInput("duplicate element " + std::to_string(x));
        seen[static_cast<std::size_t>(x)] = true;
    }
}

}  // namespace

std::optional<DPolicy> parse_d_policy(std::string_view text) {
    if (text == "measured") return DPolicy::measured();
    if (text.starts_with("fixed:")) {
        const auto digits = text.substr(6);
        std::int64_t d = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
        if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || d < 0) return std::nullopt;
        return DPolicy::fixed(d);
    }
    if (text == "auto") return DPolicy::auto_log(4.0);
    if (text.starts_with("auto:c=")) {
        const std::string number(text.substr(7));
        try {
            std::size_t used = 0;
            const double c = std::stod(number, &used);
            if (used != number.size() || !(c > 0.0) || !std::isfinite(c)) return std::nullopt;
            return DPolicy::auto_log(c);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::string to_string(const DPolicy& policy) {
    switch (policy.kind) {
        case DPolicy::Kind::measured: return "measured";
        case DPolicy::Kind::fixed: return "fixed:" + std::to_string(policy.d);
        case DPolicy::Kind::auto_log: {
            std::ostringstream out;
            out << "auto:c=" << policy.c;
            return out.str();
        }
    }
    return "unknown";
}

std::int64_t auto_d(double c, std::size_t n) {
    if (n <= 1) return 0;
    return static_cast<std::int64_t>(std::ceil(c * std::log2(static_cast<double>(n))));
}

std::int64_t resolve_d(const DPolicy& policy, std::size_t n, double p, std::optional<std::uint64_t> measured_disl) {
    switch (policy.kind) {
        case DPolicy::Kind::fixed:
            require_nonnegative(policy.d);
            return policy.d;
        case DPolicy::Kind::auto_log:
            if (!(policy.c > 0.0)) throw InvalidParameter("auto d needs c > 0");
            return p == 0.0 ? 0 : auto_d(policy.c, n);
        case DPolicy::Kind::measured:
            if (!measured_disl) throw InvalidParameter("measured d requires the true dislocation of the order");
            return static_cast<std::int64_t>(*measured_disl);
    }
    return 0;
}

LisResult approx_lis(std::span<const Element> s, const ApproxOrder& apx, std::int64_t d, const LisOptions& options) {
    require_nonnegative(d);
    require_covered(s, apx);

    LisResult result;
    result.d_used = d;
    if (s.empty()) return result;
    if (s.size() == 1) {
        result.subseq = {s[0]};
        return result;
    }

    const auto gap = static_cast<std::size_t>(2 * d);
    std::vector<Element> prec(apx.size() + 1, 0);
    std::vector<Element> front{s[0]};
    std::vector<std::size_t> front_pos{apx.pos(s[0])};

    for (std::size_t i = 1; i < s.size(); ++i) {
        const Element x = s[i];
        const std::size_t px = apx.pos(x);
        const std::size_t k_before = front.size();

        if (px < front_pos[0]) {
            front[0] = x;
            front_pos[0] = px;
            prec[static_cast<std::size_t>(x)] = 0;
        } else {
            // Largest j with pos(L[j]) < pos(x); front positions are strictly increasing.
            const auto it = std::partition_point(front_pos.begin() + 1, front_pos.end(),
                                                 [px](std::size_t q) { return q < px; });
            const auto j = static_cast<std::size_t>(it - front_pos.begin()) - 1;
            if (front_pos[j] + gap <= px) {
                if (j + 1 == front.size()) {
                    front.push_back(x);
                    front_pos.push_back(px);
                } else {
                    front[j + 1] = x;
                    front_pos[j + 1] = px;
                }
                prec[static_cast<std::size_t>(x)] = front[j];
            }
        }

        if (options.check_invariants) {
            if (front.size() < k_before) throw std::logic_error("front shrank");
            for (std::size_t j = 1; j < front.size(); ++j) {
                if (front_pos[j - 1] + gap > front_pos[j] || front_pos[j - 1] >= front_pos[j]) {
                    throw std::logic_error("front is not 2d-distant at L[" + std::to_string(j + 1) + "]");
                }
            }
            for (std::size_t j = 0; j < front.size(); ++j) {
                std::size_t len = 0;
                std::size_t last_pos = 0;
                for (Element cur = front[j]; cur != 0; cur = prec[static_cast<std::size_t>(cur)]) {
                    const std::size_t p_cur = apx.pos(cur);
                    if (len > 0 && p_cur + gap > last_pos) {
                        throw std::logic_error("implied sequence of L[" + std::to_string(j + 1) + "] not 2d-distant");
                    }
                    last_pos = p_cur;
                    ++len;
                }
                if (len != j + 1) {
                    throw std::logic_error("implied sequence of L[" + std::to_string(j + 1) + "] has wrong length");
                }
            }
        }
    }

    result.subseq = detail::recover_chain(front.back(), prec, front.size());
    return result;
}

LisResult recipe_lis(std::span<const Element> s, const ApproxOrder& apx, std::int64_t d) {
    require_nonnegative(d);
    require_covered(s, apx);
    const auto by_apx = [&apx](Element a, Element b) { return apx.before(a, b); };

    if (d == 0) {
        auto result = exact_lis(s, by_apx);
        result.d_used = 0;
        return result;
    }

    const auto classes = static_cast<std::size_t>(2 * d);
    std::vector<std::vector<Element>> parts(std::min(classes, s.size()));
    for (Element x : s) {
        const std::size_t cls = (apx.pos(x) - 1) % classes;
        if (cls < parts.size()) parts[cls].push_back(x);
    }

    LisResult best;
    for (const auto& part : parts) {
        auto candidate = exact_lis(std::span<const Element>(part), by_apx);
        if (candidate.length() > best.length()) best = std::move(candidate);
    }
    best.d_used = d;
    return best;
}

std::size_t longest_distant_oracle(std::span<const Element> s, const ApproxOrder& apx, std::int64_t d,
                                   std::size_t cap) {
    if (s.size() > cap) {
        throw SizeCapExceeded("distant-subsequence oracle refuses n = " + std::to_string(s.size()) + " above cap " +
                              std::to_string(cap));
    }
    require_nonnegative(d);
    require_covered(s, apx);
    const auto gap = static_cast<std::size_t>(2 * d);
    std::vector<std::size_t> dp(s.size(), 1);
    std::size_t best = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::size_t pi = apx.pos(s[i]);
        for (std::size_t j = 0; j < i; ++j) {
            const std::size_t pj = apx.pos(s[j]);
            if (pj < pi && pj + gap <= pi) dp[i] = std::max(dp[i], dp[j] + 1);
        }
        best = std::max(best, dp[i]);
    }
    return best;
}

ValidityFlags validate(const LisResult& result, std::span<const Element> s, const ApproxOrder& apx, std::int64_t d) {
    ValidityFlags flags;
    const auto& sub = result.subseq;

    std::vector<std::size_t> index_in_s;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto v = static_cast<std::size_t>(std::max<Element>(s[i], 0));
        if (v >= index_in_s.size()) index_in_s.resize(v + 1, 0);
        index_in_s[v] = i + 1;
    }
    std::size_t prev_index = 0;
    for (Element x : sub) {
        const auto v = static_cast<std::size_t>(std::max<Element>(x, 0));
        const std::size_t idx = (x >= 1 && v < index_in_s.size()) ? index_in_s[v] : 0;
        if (idx == 0 || idx <= prev_index) {
            flags.is_subsequence_of_input = false;
            break;
        }
        prev_index = idx;
    }

    const std::int64_t gap = 2 * d;
    for (std::size_t i = 0; i + 1 < sub.size(); ++i) {
        const auto a = static_cast<std::int64_t>(apx.pos(sub[i]));
        const auto b = static_cast<std::int64_t>(apx.pos(sub[i + 1]));
        if (a == 0 || b == 0 || a + gap > b || a >= b) {
            flags.is_2d_distant = false;
        }
        if (!(sub[i] < sub[i + 1])) flags.is_truly_increasing = false;
    }
    for (Element x : sub) {
        if (!apx.contains(x)) flags.is_2d_distant = false;
    }
    return flags;
}

void attach_validation(LisResult& result, std::span<const Element> s, const ApproxOrder& apx) {
    result.flags = validate(result, s, apx, result.d_used);
}

}  // namespace noisylis
