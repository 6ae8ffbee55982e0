#pragma once

// Exact combinatorial checks and Monte-Carlo estimators for the hard
// instances.  Every check has an exact variant at desk scale; sampled
// variants are labeled non-exhaustive.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmlab/core.hpp"
#include "pmlab/gapped.hpp"
#include "pmlab/two_pattern.hpp"
#include "pmlab/wildcard.hpp"

namespace pmlab {

// ---------------------------------------------------------------------------
// Monte-Carlo
// ---------------------------------------------------------------------------

struct McReport {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    double estimate = 0;
    double std_error = 0;  // sqrt(estimate (1 - estimate) / trials)
    double analytic = 0;
    double z_score = 0;    // falls back to the analytic std error when estimate is 0 or 1
};

inline constexpr unsigned kMcShards = 8;

// Probability that a random document of `family` matches every pattern in
// `target` (one pattern, the two halves of a query, or an l-tuple).
double analytic_match_probability(Family family, unsigned sigma_bits, std::uint32_t m_neg,
                                  std::span<const Pattern2P> target);

// Fresh documents from the family's distribution, split into kMcShards
// shards seeded derive_seed(seed, shard).  trials >= 1000.
McReport mc_match_rate(Family family, unsigned sigma_bits, unsigned p,
                       std::span<const Pattern2P> target, std::uint64_t trials,
                       std::uint64_t seed);

// Uniform documents over [sigma]^m against one wild-card pattern.
McReport mc_wci_match_rate(std::uint32_t sigma, const WciPattern& pattern, std::uint64_t trials,
                           std::uint64_t seed);

McReport make_mc_report(std::uint64_t hits, std::uint64_t trials, double analytic);

// ---------------------------------------------------------------------------
// Minimum query output
// ---------------------------------------------------------------------------

struct MinOutputReport {
    std::uint64_t value = 0;
    std::uint64_t argmin_rank = 0;
    std::optional<Query2P> argmin;  // 2P-family instances only
    std::uint64_t evaluated = 0;
    bool exhaustive = true;
};

// Exact minimum of |eval_query| over the whole implicit family.
MinOutputReport min_query_output(const Instance2P& inst);
// Sampled ranks only; labeled non-exhaustive.
MinOutputReport min_query_output_sampled(const Instance2P& inst, std::uint64_t samples,
                                         std::uint64_t seed);
// Minimum of count_matches_exact over every text of the family.
MinOutputReport min_query_output(const ParamsGpi& params);

// D * Pr[fixed query matches] / 2
double min_output_threshold(const Instance2P& inst);

// ---------------------------------------------------------------------------
// l-wise sharing
// ---------------------------------------------------------------------------

struct IntersectionReport {
    unsigned arity = 0;
    std::uint64_t max_shared = 0;
    std::vector<Pattern2P> witness_patterns;  // pairwise-distinct initial characters
    DocSet witness_docs;
    bool bound_ok = false;                    // max_shared < beta
    bool stopped_early = false;               // hit stop_at before finishing
    std::uint64_t work = 0;                   // document-attribute visits
};

struct SharingOptions {
    // Stop as soon as a group of this size is found (0: compute the exact
    // maximum).  The reported max_shared is then only a lower bound.
    std::uint64_t stop_at = 0;
    std::uint64_t work_budget = 200'000'000'000ULL;
};

// Largest set of documents matched by one l-tuple of patterns with
// pairwise-distinct initial characters.  Throws ParameterError when l
// exceeds the number of initial characters, FamilyTooLarge when the work
// budget runs out.
IntersectionReport max_docs_sharing_patterns(const Instance2P& inst, unsigned ell,
                                             const SharingOptions& opts = {});

// ---------------------------------------------------------------------------
// Intersection inequality
// ---------------------------------------------------------------------------

struct EqIntReport {
    bool holds = false;
    double log2_lhs = 0;    // l (p + sigma) + beta log2(e D / (beta 2^(p l)))
    double log2_bound = 0;  // log2(1/3)
    double constant = 1;    // the suppressed O(.) constant
};

EqIntReport check_eq_int(unsigned sigma_bits, unsigned p, unsigned ell, std::uint64_t beta,
                         std::uint64_t D);

// ---------------------------------------------------------------------------
// Discrete intersection measure
// ---------------------------------------------------------------------------

struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return den ? static_cast<double>(num) / static_cast<double>(den) : 0; }
    friend bool operator==(const Ratio& a, const Ratio& b) {
        return static_cast<unsigned __int128>(a.num) * b.den ==
               static_cast<unsigned __int128>(b.num) * a.den;
    }
};

// Fraction of the query family matching every document of `docs`.
Ratio intersection_measure(const Instance2P& inst, std::span<const DocId> docs);
// Fraction of the text family matched by every pattern of `patterns`.
Ratio intersection_measure(const ParamsGpi& params, std::span<const GappedPattern> patterns);
// Fraction of the wild-card family (kappa stars) matching every document.
Ratio intersection_measure(const WciInstance& inst, std::span<const DocId> docs);

bool text_matches_all(const GpiText& text, std::span<const GappedPattern> patterns);

// ---------------------------------------------------------------------------
// Acceptance
// ---------------------------------------------------------------------------

struct AcceptanceResult {
    bool ok = false;
    std::string failed_check;  // "eq-int", "min-output", "max-sharing"
    EqIntReport eq_int;
    std::uint64_t min_output = 0;
    double min_threshold = 0;
    std::uint64_t max_shared = 0;
};

AcceptanceResult check_acceptance(const Instance2P& inst);

// ---------------------------------------------------------------------------
// Wild-card checks
// ---------------------------------------------------------------------------

struct WciSpreadReport {
    std::uint64_t max_window_load = 0;  // most supports inside one window
    Support worst_window = 0;
    std::uint64_t windows = 0;
    bool ok = false;                    // max_window_load < beta
};

// Exhaustive over all width-windows.
WciSpreadReport check_support_spread(const WciInstance& inst);

struct WciPatternLoadReport {
    std::uint64_t min_matches = 0;
    std::uint64_t max_matches = 0;
    std::uint64_t required = 0;  // ceil(C(kappa, l) / (2r))
    bool ok = false;
};

WciPatternLoadReport check_pattern_load(const WciInstance& inst);

struct WciCapReport {
    std::uint64_t samples = 0;
    std::uint64_t max_common = 0;  // patterns matching all docs of a sampled subset
    std::uint64_t cap = 0;         // C(m - l - l', kappa - l - l')
    bool ok = false;
    bool exhaustive = false;
};

// Random beta-subsets of the documents.
WciCapReport check_intersection_cap(const WciInstance& inst, std::uint64_t samples,
                                    std::uint64_t seed);

struct WciPairReport {
    std::uint64_t pairs = 0;
    std::uint64_t max_shared = 0;
    bool ok = false;  // max_shared < beta
};

// Every pair of surviving space-lb queries, by brute-force matching.
WciPairReport check_pair_sharing(const WciInstance& inst);

// ---------------------------------------------------------------------------

// "check=<name> mode=exact|mc value=<v> bound=<b> pass=true|false"
std::string report_line(const std::string& name, bool exact, double value, double bound, bool pass);

}  // namespace pmlab
