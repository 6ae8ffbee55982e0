#pragma once

// Random hard instances for two-pattern document indexing (2P), forbidden
// pattern (FP), two forbidden patterns (2FP), and the reduction to set
// intersection.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pmlab/core.hpp"
#include "pmlab/random.hpp"

namespace pmlab {

struct Params2P {
    unsigned sigma_bits = 6;
    unsigned trailing_bits = 3;  // p
    std::uint32_t doc_count = 4096;
    unsigned ell = 8;            // intersection arity
    std::uint32_t beta = 6;      // intersection cap
    std::uint64_t seed = 0;
    std::uint32_t max_attempts = 16;

    void validate() const;
};

// Size of each document's negative part: round(|Sigma_2| (1 - 2^-p)).
std::uint32_t negative_part_size(unsigned sigma_bits, unsigned p);

// Exact size of the implicit query family.
std::uint64_t query_count(Family family, unsigned sigma_bits, unsigned p);

// Rank <-> query bijection over the implicit family.  2P queries are
// unordered and returned with first.initial < second.initial.
Query2P query_at(Family family, unsigned sigma_bits, unsigned p, std::uint64_t rank);
std::uint64_t query_rank(Family family, unsigned sigma_bits, unsigned p, const Query2P& q);

struct Instance2P {
    Params2P params;
    Family family = Family::two_pattern;
    std::uint32_t m_neg = 0;
    std::vector<Doc2P> docs;
    std::uint32_t attempt = 0;  // index of the accepted draw

    std::uint64_t query_count() const {
        return pmlab::query_count(family, params.sigma_bits, params.trailing_bits);
    }
    Query2P query_at(std::uint64_t rank) const {
        return pmlab::query_at(family, params.sigma_bits, params.trailing_bits, rank);
    }
    // Stored cells: one per payload plus one per negative symbol.
    std::uint64_t size_cells() const;
};

// Validates q against the instance's family, then evaluates by brute force.
DocSet eval_query(const Instance2P& inst, const Query2P& q);

// One document drawn from the family's distribution.
Doc2P sample_document(Family family, unsigned sigma_bits, std::uint32_t m_neg, Rng& rng);

// A single draw, no acceptance checks.
Instance2P draw_instance(Family family, const Params2P& params, std::uint64_t draw_seed);

// Accept/retry generators.  Attempt k draws with derive_seed(seed, k) and is
// accepted once check_acceptance passes; GenerationFailure otherwise.
Instance2P generate(Family family, const Params2P& params);
Instance2P generate_2p(const Params2P& params);
Instance2P generate_fp(const Params2P& params);
Instance2P generate_2fp(const Params2P& params);

// Set intersection image of a 2P instance: one set per (initial character,
// p-bit string), indexed (c - 1) * 2^p + bits.
struct SIReduction {
    SIInstance si;
    unsigned sigma_bits = 0;
    unsigned p = 0;

    std::size_t set_index(const Pattern2P& pat) const;
    std::pair<std::size_t, std::size_t> image(const Query2P& q) const;
};

SIReduction reduce_to_si(const Instance2P& inst);

// Derived quantities printed by `gen <family> --describe`.
struct ParamSummary {
    std::uint64_t n = 0;                // D * 2^sigma
    std::uint64_t query_count = 0;      // exact enumerated family size
    double query_count_nominal = 0;     // closed form quoted for the family
    std::uint32_t m_neg = 0;
    double expected_output = 0;         // D * Pr[fixed query matches]
    double min_output_threshold = 0;    // half of expected_output
};

ParamSummary describe(Family family, const Params2P& params);

// Probability that a fixed query of the family matches a random document.
double query_match_probability(Family family, unsigned sigma_bits, unsigned p,
                               std::uint32_t m_neg);

}  // namespace pmlab
