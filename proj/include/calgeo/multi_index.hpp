#pragma once

#include <compare>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace calgeo {

// Strictly increasing list of 1-based coordinate indices. Identifies a basis
// covector e_I* or basis multivector e_I of degree |I|.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> indices);

    // Sorts arbitrary indices into increasing order, tracking the permutation
    // sign. Returns nullopt when an index repeats (degenerate wedge).
    static std::optional<std::pair<MultiIndex, int>> sorted(std::span<const int> raw);

    int degree() const { return static_cast<int>(indices_.size()); }
    int max_index() const { return indices_.empty() ? 0 : indices_.back(); }
    bool contains(int i) const;
    int at(int pos) const { return indices_[static_cast<size_t>(pos)]; }
    const std::vector<int>& indices() const { return indices_; }

    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<int> indices_;
};

// e_I ^ e_J = sign * e_{I u J}; nullopt when I and J intersect.
std::optional<std::pair<MultiIndex, int>> wedge_merge(const MultiIndex& a,
                                                      const MultiIndex& b);

bool is_subset(const MultiIndex& sub, const MultiIndex& super);
MultiIndex difference(const MultiIndex& super, const MultiIndex& sub);

// Visits every strictly increasing k-subset of {1..n} in lexicographic order.
template <class F>
void for_each_combination(int n, int k, F&& f) {
    if (k < 0 || k > n) return;
    std::vector<int> c(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = i + 1;
    while (true) {
        f(const_cast<const std::vector<int>&>(c));
        int i = k - 1;
        while (i >= 0 && c[static_cast<size_t>(i)] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++c[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
    }
}

long binomial(int n, int k);

}  // namespace calgeo
