#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "khg/error.hpp"

namespace khg {

// Binomial coefficient with overflow detection (throws Guard on overflow).
inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max())
            throw_guard("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

// Saturating variant: returns cap instead of throwing when C(n,k) >= cap.
inline std::uint64_t binom_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r >= cap) return cap;
    }
    return static_cast<std::uint64_t>(r);
}

// Visits all k-subsets of {0..n-1} in lexicographic order as sorted vectors.
// fn may return void, or bool (false stops the enumeration early).
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    for (;;) {
        if constexpr (std::is_same_v<decltype(fn(c)), bool>) {
            if (!fn(c)) return;
        } else {
            fn(c);
        }
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Rank of a sorted k-subset in colexicographic order: sum_i C(s_i, i+1).
inline std::uint64_t colex_rank(const std::vector<int>& subset) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < subset.size(); ++i)
        r += binom(static_cast<std::uint64_t>(subset[i]), i + 1);
    return r;
}

// Inverse of colex_rank for k-subsets (elements unbounded above).
inline std::vector<int> colex_unrank(std::uint64_t rank, int k) {
    std::vector<int> subset(static_cast<std::size_t>(k));
    for (int i = k; i >= 1; --i) {
        // largest c with C(c, i) <= rank
        int c = i - 1;
        while (binom(static_cast<std::uint64_t>(c + 1), static_cast<std::uint64_t>(i)) <= rank) ++c;
        subset[static_cast<std::size_t>(i - 1)] = c;
        rank -= binom(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(i));
    }
    return subset;
}

// All k-subsets of {0..n-1} in colex order.
inline std::vector<std::vector<int>> combinations_colex(int n, int k) {
    std::uint64_t total = binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(total));
    for (std::uint64_t r = 0; r < total; ++r) out.push_back(colex_unrank(r, k));
    return out;
}

// true iff a (sorted) comes before b in colex order.
inline bool colex_less(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

} // namespace khg
