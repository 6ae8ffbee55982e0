#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pmlab {

inline constexpr std::uint64_t kBinomialOverflow = UINT64_MAX;

// Exact C(n, k); returns kBinomialOverflow when the value does not fit.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Same, but throws FamilyTooLarge instead of saturating.
std::uint64_t binomial_checked(std::uint64_t n, std::uint64_t k);

// log2 C(x, k) for real x >= k >= 0 (lgamma based).
double log2_binomial(double x, double k);

// Smallest r with r^e >= value, i.e. ceil(value^(1/e)) computed exactly.
std::uint64_t ceil_root(std::uint64_t value, unsigned e);

// Colex ranking of k-subsets of {0,1,...}.  `subset` must be strictly
// increasing.  rank(S) = sum_i C(s_i, i+1).
std::uint64_t colex_rank(std::span<const std::uint32_t> subset);
std::vector<std::uint32_t> colex_unrank(std::uint64_t rank, std::uint32_t k);

// Advances `subset` (strictly increasing, values < n) to the next subset in
// lexicographic order.  Returns false after the last one.
bool next_combination(std::vector<std::uint32_t>& subset, std::uint32_t n);

// Iterates all k-subsets of [0, n) in lexicographic order.
template <class F>
void for_each_combination(std::uint32_t n, std::uint32_t k, F&& fn) {
    if (k > n) return;
    std::vector<std::uint32_t> s(k);
    for (std::uint32_t i = 0; i < k; ++i) s[i] = i;
    do {
        fn(static_cast<const std::vector<std::uint32_t>&>(s));
    } while (next_combination(s, n));
}

}  // namespace pmlab
