#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmlab/core.hpp"

namespace pmlab {

struct ParamsGpi {
    unsigned p = 2;             // subpattern / block bit length
    unsigned kappa = 1;         // kappa + 1 subpatterns per pattern
    std::uint32_t gamma = 3;    // gap bound in characters
    std::uint32_t blocks = 4;   // blocks per text

    std::uint32_t text_length() const { return blocks * (p + 1); }  // D

    // Rejects D not divisible by p + 1.
    static ParamsGpi from_length(unsigned p, unsigned kappa, std::uint32_t gamma, std::uint32_t D);

    // Throws ParameterError.  With `count_regime`, also requires D >= 2 kappa gamma.
    void validate(bool count_regime = false) const;
};

// All C(2^p, kappa + 1) standard gapped patterns, indexed by colex rank of
// their subpattern set.
class GpiDictionary {
public:
    explicit GpiDictionary(ParamsGpi params);

    const ParamsGpi& params() const noexcept { return params_; }
    std::uint64_t size() const noexcept { return size_; }
    GappedPattern at(std::uint64_t rank) const;
    std::uint64_t rank(const GappedPattern& pat) const;

    // Visits patterns in rank order.
    template <class F>
    void for_each(F&& fn) const {
        for (std::uint64_t r = 0; r < size_; ++r) fn(r, at(r));
    }

    // Character size of the dictionary: (kappa + 1) p subpattern characters
    // per pattern.
    std::uint64_t total_characters() const;

private:
    ParamsGpi params_;
    std::uint64_t size_;
};

// The C(2^p, blocks) query texts, indexed by colex rank of their block set.
class GpiTextFamily {
public:
    explicit GpiTextFamily(ParamsGpi params);

    const ParamsGpi& params() const noexcept { return params_; }
    std::uint64_t size() const noexcept { return size_; }
    GpiText at(std::uint64_t rank) const;
    std::uint64_t rank(const GpiText& text) const;

private:
    ParamsGpi params_;
    std::uint64_t size_;
};

GpiDictionary build_dictionary(const ParamsGpi& params);
GpiTextFamily enumerate_texts(const ParamsGpi& params);

// Largest block-index difference d with block_gap(a, a + d) <= gamma:
// floor((gamma - 1) / (p + 1)) + 1, and 0 when gamma = 0.
std::uint32_t adjacency_window(unsigned p, std::uint32_t gamma);

// Number of dictionary patterns matching `text`: chains of kappa + 1 block
// indices whose consecutive differences are at most the adjacency window.
std::uint64_t count_matches_exact(const GpiText& text, const ParamsGpi& params);

// D gamma^kappa / (p + 1)^(kappa + 1)
double output_scale(const ParamsGpi& params);

struct SpreadCheck {
    bool ok = false;
    std::size_t union_size = 0;
    std::uint64_t required = 0;  // ceil(beta^(1/(kappa+1)))
};

// Union of subpatterns across `patterns` has at least ceil(beta^(1/(kappa+1)))
// members.
SpreadCheck check_subpattern_spread(std::span<const GappedPattern> patterns, std::uint64_t beta,
                                    unsigned kappa);

// C(2^p - r, blocks - r) with r = ceil(beta^(1/(kappa+1))); 0 if r > blocks.
std::uint64_t common_text_bound(const ParamsGpi& params, std::uint64_t beta);

}  // namespace pmlab
