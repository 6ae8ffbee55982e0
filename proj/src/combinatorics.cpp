#include "pmlab/combinatorics.hpp"

#include <cmath>
#include <numbers>

#include "pmlab/errors.hpp"

namespace pmlab {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // acc * (n - k + i) / i is exact at every step.
        acc = acc * (n - k + i) / i;
        if (acc > UINT64_MAX) return kBinomialOverflow;
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t binomial_checked(std::uint64_t n, std::uint64_t k) {
    const std::uint64_t v = binomial(n, k);
    if (v == kBinomialOverflow)
        throw FamilyTooLarge("C(" + std::to_string(n) + "," + std::to_string(k) +
                             ") exceeds 64 bits");
    return v;
}

double log2_binomial(double x, double k) {
    if (k < 0 || k > x) return -INFINITY;
    const double ln = std::lgamma(x + 1) - std::lgamma(k + 1) - std::lgamma(x - k + 1);
    return ln / std::numbers::ln2;
}

std::uint64_t ceil_root(std::uint64_t value, unsigned e) {
    if (e == 0) throw ParameterError("ceil_root: exponent must be positive");
    if (value <= 1) return value;
    auto pow_at_least = [&](std::uint64_t r) {
        unsigned __int128 acc = 1;
        for (unsigned i = 0; i < e; ++i) {
            acc *= r;
            if (acc >= value) return true;
        }
        return acc >= value;
    };
    std::uint64_t lo = 1, hi = value;  // !pow_at_least(lo) && pow_at_least(hi)
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (pow_at_least(mid) ? hi : lo) = mid;
    }
    return hi;
}

std::uint64_t colex_rank(std::span<const std::uint32_t> subset) {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i > 0 && subset[i] <= subset[i - 1])
            throw ParameterError("colex_rank: subset not strictly increasing");
        rank += binomial_checked(subset[i], i + 1);
    }
    return rank;
}

std::vector<std::uint32_t> colex_unrank(std::uint64_t rank, std::uint32_t k) {
    std::vector<std::uint32_t> out(k);
    for (std::uint32_t i = k; i > 0; --i) {
        // Largest c with C(c, i) <= rank: gallop, then bisect.
        auto fits = [&](std::uint64_t c) {
            const std::uint64_t v = binomial(c, i);
            return v != kBinomialOverflow && v <= rank;
        };
        std::uint64_t lo = i - 1, step = 1;
        while (fits(lo + step)) {
            lo += step;
            step *= 2;
        }
        std::uint64_t hi = lo + step;  // fits(lo) && !fits(hi)
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            (fits(mid) ? lo : hi) = mid;
        }
        const auto c = static_cast<std::uint32_t>(lo);
        out[i - 1] = c;
        rank -= binomial(c, i);
    }
    return out;
}

bool next_combination(std::vector<std::uint32_t>& s, std::uint32_t n) {
    const std::size_t k = s.size();
    if (k == 0) return false;
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (s[i] < n - k + i) {
            ++s[i];
            for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace pmlab
