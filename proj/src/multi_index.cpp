#include "calgeo/multi_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace calgeo {

MultiIndex::MultiIndex(std::vector<int> indices) : indices_(std::move(indices)) {
    for (size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] < 1)
            throw std::invalid_argument("MultiIndex: indices are 1-based");
        if (i > 0 && indices_[i] <= indices_[i - 1])
            throw std::invalid_argument("MultiIndex: indices must be strictly increasing");
    }
}

std::optional<std::pair<MultiIndex, int>> MultiIndex::sorted(std::span<const int> raw) {
    std::vector<int> v(raw.begin(), raw.end());
    int sign = 1;
    // insertion sort, counting transpositions
    for (size_t i = 1; i < v.size(); ++i) {
        int x = v[i];
        size_t j = i;
        while (j > 0 && v[j - 1] > x) {
            v[j] = v[j - 1];
            --j;
            sign = -sign;
        }
        v[j] = x;
    }
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) return std::nullopt;
    return std::make_pair(MultiIndex(std::move(v)), sign);
}

bool MultiIndex::contains(int i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::optional<std::pair<MultiIndex, int>> wedge_merge(const MultiIndex& a,
                                                      const MultiIndex& b) {
    const auto& x = a.indices();
    const auto& y = b.indices();
    std::vector<int> out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    int sign = 1;
    while (i < x.size() && j < y.size()) {
        if (x[i] == y[j]) return std::nullopt;
        if (x[i] < y[j]) {
            out.push_back(x[i++]);
        } else {
            // y[j] jumps over the remaining elements of x
            if ((x.size() - i) % 2 == 1) sign = -sign;
            out.push_back(y[j++]);
        }
    }
    while (i < x.size()) out.push_back(x[i++]);
    while (j < y.size()) out.push_back(y[j++]);
    return std::make_pair(MultiIndex(std::move(out)), sign);
}

bool is_subset(const MultiIndex& sub, const MultiIndex& super) {
    return std::includes(super.indices().begin(), super.indices().end(),
                         sub.indices().begin(), sub.indices().end());
}

MultiIndex difference(const MultiIndex& super, const MultiIndex& sub) {
    std::vector<int> out;
    out.reserve(super.indices().size());
    std::set_difference(super.indices().begin(), super.indices().end(),
                        sub.indices().begin(), sub.indices().end(),
                        std::back_inserter(out));
    return MultiIndex(std::move(out));
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace calgeo
