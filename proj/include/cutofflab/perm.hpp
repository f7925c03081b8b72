#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cutofflab/types.hpp"

// Lexicographic ranking of permutation words. States of the card-shuffle
// chains are indexed by the rank of the deck word, which makes every output
// reproducible bit-for-bit.

namespace cutofflab::perm {

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// Lexicographic rank of a permutation word of {0,...,n-1} (Lehmer code).
inline std::uint64_t rank(std::span<const int> word) {
    const int n = static_cast<int>(word.size());
    std::uint64_t r = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (word[j] < word[i]) ++smaller;
        r += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
    }
    return r;
}

inline std::vector<int> unrank(int n, std::uint64_t r) {
    if (r >= factorial(n)) throw ParameterError("permutation rank out of range");
    std::vector<int> pool;
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.push_back(i);
    std::vector<int> word;
    word.reserve(n);
    for (int i = n - 1; i >= 0; --i) {
        std::uint64_t f = factorial(i);
        std::uint64_t idx = r / f;
        r %= f;
        word.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return word;
}

}  // namespace cutofflab::perm
