#pragma once

// Semi-group (arithmetic) model: schemes of precomputed sums, exact-cover
// query answering, and the crowded-sum audit.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmlab/core.hpp"
#include "pmlab/two_pattern.hpp"
#include "pmlab/verify.hpp"

namespace pmlab {

// Naturals under addition and under maximum.  Neither has inverses.
struct AddNat {
    using value_type = std::uint64_t;
    static value_type combine(value_type a, value_type b) { return a + b; }
    static constexpr bool idempotent = false;
};

struct MaxNat {
    using value_type = std::uint64_t;
    static value_type combine(value_type a, value_type b) { return a < b ? b : a; }
    static constexpr bool idempotent = true;
};

struct PrecomputedSum {
    std::uint64_t id = 0;
    DocSet docs;                        // sorted, nonempty
    std::vector<std::uint32_t> coeffs;  // parallel to docs, all positive
};

struct SumScheme {
    std::vector<PrecomputedSum> sums;
    std::vector<std::uint64_t> weights;  // by document id

    // Throws ParameterError on an empty sum, a zero coefficient or an
    // unsorted index set.
    void validate() const;

    // One coefficient-1 sum per document.
    static SumScheme singletons(std::size_t doc_count);
};

enum class AnswerStatus { answered, no_cover, cap_exceeded };

struct SumAnswer {
    AnswerStatus status = AnswerStatus::no_cover;
    std::vector<std::size_t> selected;  // indices into scheme.sums
    std::vector<std::uint32_t> coefficients;
    std::uint64_t explored = 0;
};

// Exact cover of `target` (each document with multiplicity one) by sums of
// the scheme.  Combinations above `cap` sums are not explored.
SumAnswer answer_with_sums(const SumScheme& scheme, const DocSet& target, std::size_t cap = 1024);
SumAnswer answer_with_sums(const SumScheme& scheme, const Instance2P& inst, const Query2P& q,
                           std::size_t cap = 1024);

// Formal sum of a selection: document id -> total coefficient.
std::vector<std::pair<DocId, std::uint64_t>> formal_sum(const SumScheme& scheme,
                                                        std::span<const std::size_t> selected);

template <class S>
typename S::value_type evaluate(const SumScheme& scheme, std::span<const std::size_t> selected) {
    typename S::value_type acc{};
    bool first = true;
    for (auto [doc, coeff] : formal_sum(scheme, selected)) {
        for (std::uint64_t k = 0; k < coeff; ++k) {
            acc = first ? scheme.weights.at(doc) : S::combine(acc, scheme.weights.at(doc));
            first = false;
        }
    }
    return acc;
}

struct CrowdedEntry {
    std::uint64_t sum_id = 0;
    std::size_t size = 0;
    bool crowded = false;
    std::uint64_t usable = 0;  // queries whose output contains every document of the sum
    bool flagged = false;      // crowded and usable > ell^2
};

struct CrowdedAudit {
    std::uint64_t beta = 0;
    unsigned ell = 0;
    std::vector<CrowdedEntry> entries;
    std::uint64_t max_usable = 0;  // over crowded sums
    std::vector<std::uint64_t> flagged;
    // Whether the sharing precondition was supplied and holds; without it
    // the counts are reported but not certified.
    bool certified = false;
};

CrowdedAudit audit_crowded(const SumScheme& scheme, const Instance2P& inst, std::uint64_t beta,
                           unsigned ell, const std::optional<IntersectionReport>& precondition);

void write_audit_csv(std::ostream& out, const CrowdedAudit& audit);

struct CountInequalities {
    bool eq_count_ok = false;   // 2 sigma <= p beta
    bool eq_count2_ok = false;  // q_time * 2 * 4^p * beta < D
};

CountInequalities check_count_inequalities(unsigned sigma_bits, unsigned p, std::uint64_t beta,
                                           unsigned ell, std::uint64_t D, std::uint64_t q_time);

// Least D with q_time * 2 * 4^p * beta < D.
std::uint64_t least_doc_count(unsigned p, std::uint64_t beta, std::uint64_t q_time);

// Line format: "sum <id> docs <id>,<id>,...".
SumScheme read_scheme(std::istream& in, std::size_t doc_count);
void write_scheme(std::ostream& out, const SumScheme& scheme);

}  // namespace pmlab
