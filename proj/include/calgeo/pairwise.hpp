#pragma once

#include <span>

namespace calgeo {

// Pairwise (fixed-tree) summation; deterministic regardless of how the terms
// were produced, and better conditioned than sequential accumulation.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() == 0) return 0.0;
    if (v.size() == 1) return v[0];
    if (v.size() == 2) return v[0] + v[1];
    const size_t h = v.size() / 2;
    return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

}  // namespace calgeo
