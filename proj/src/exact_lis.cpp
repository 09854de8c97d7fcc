#include "noisylis/exact_lis.hpp"

namespace noisylis {

std::size_t lis_dp_oracle(std::span<const Element> s, std::size_t cap) {
    if (s.size() > cap) {
        throw SizeCapExceeded("LIS DP oracle refuses n = " + std::to_string(s.size()) + " above cap " +
                              std::to_string(cap));
    }
    std::vector<std::size_t> dp(s.size(), 1);
    std::size_t best = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (s[j] < s[i]) dp[i] = std::max(dp[i], dp[j] + 1);
        }
        best = std::max(best, dp[i]);
    }
    return best;
}

}  // namespace noisylis
