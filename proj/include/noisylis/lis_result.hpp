#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "noisylis/core_model.hpp"

namespace noisylis {

struct ValidityFlags {
    bool is_subsequence_of_input = true;
    bool is_2d_distant = true;
    bool is_truly_increasing = true;

    bool all() const noexcept { return is_subsequence_of_input && is_2d_distant && is_truly_increasing; }
    friend bool operator==(const ValidityFlags&, const ValidityFlags&) = default;
};

/// An extracted subsequence in forward order.
///
/// `flags` stays empty until an independent validator fills it in; producers
/// never set it themselves.
struct LisResult {
    std::vector<Element> subseq;
    std::int64_t d_used = 0;
    std::optional<ValidityFlags> flags;

    std::size_t length() const noexcept { return subseq.size(); }
};

}  // namespace noisylis
