#pragma once

// Hard instances for wild-card indexing.
//
// query-lb: documents are sampled weight-l bit strings pruned so that no
// (l + l')-index window holds the supports of beta or more of them; queries
// are the all-zero patterns with kappa wild cards that still match enough
// documents.
//
// space-lb: documents are uniform strings over [sigma]^m; queries are all
// strings with kappa wild cards, and any pair sharing beta or more
// documents is dropped.
//
// Desk-scale parameters cannot reach the asymptotic regime the lower bounds
// need; these instances are structurally faithful and the verifiers check
// the exact combinatorial properties, not the asymptotics.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pmlab/core.hpp"

namespace pmlab {

struct ParamsWciQuery {
    std::uint32_t m = 14;
    std::uint32_t kappa = 6;          // even
    double beta_constant = 2.0;       // c in beta = ceil(c log_kappa m)
    std::uint32_t r_override = 0;     // 0: floor(2^(kappa/3))
    std::uint32_t beta_override = 0;  // 0: derived from beta_constant
    // Reject draws whose busiest pattern matches more than
    // upper_factor * C(kappa, l) / r documents; 0 disables the check.
    double upper_factor = 0;
    std::uint64_t seed = 0;
    std::uint32_t max_attempts = 16;

    std::uint32_t ell() const { return kappa / 2; }
    std::uint32_t r() const;
    std::uint32_t ell_prime() const;
    std::uint32_t beta() const;
    std::uint32_t width() const { return ell() + ell_prime(); }

    void validate() const;
};

struct ParamsWciSpace {
    std::uint32_t sigma = 4;
    std::uint32_t m = 4;
    std::uint32_t kappa = 1;
    std::uint32_t doc_count = 50;
    std::uint32_t beta = 2;
    double epsilon = 0.5;  // sigma = t^(1+epsilon); recorded, not enforced
    std::uint64_t seed = 0;

    // C(m, kappa) * sigma^(m - kappa)
    std::uint64_t query_count() const;
    // Pr[fixed query matches a uniform document] = sigma^(kappa - m)
    double match_probability() const;

    void validate() const;
};

enum class WciKind { query_lb, space_lb };

std::string_view wci_kind_name(WciKind k);  // "wci-query" / "wci-space"

struct WciInstance {
    WciKind kind = WciKind::query_lb;
    std::variant<ParamsWciQuery, ParamsWciSpace> params;
    std::vector<WciDoc> docs;
    // query-lb: surviving patterns; space-lb: surviving queries that match at
    // least one document (zero-match queries survive implicitly).
    std::vector<WciPattern> patterns;
    std::vector<std::pair<std::string, std::uint64_t>> stage_log;

    std::uint32_t m() const;
    std::uint32_t alphabet_size() const;
    std::uint64_t stage(std::string_view key) const;  // 0 when absent
};

// Bit i set <=> position i holds '1'.  m <= 32.
using Support = std::uint32_t;

Support support_of(const WciDoc& doc);
WciDoc doc_from_support(Support s, std::uint32_t m);
// Pattern with '*' at the positions of `wild` and '0' elsewhere.
WciPattern pattern_from_wild_mask(Support wild, std::uint32_t m);

// Removes every document whose support lies in some `width`-index window
// that holds the supports of at least `beta` documents.  Violating windows
// are found on the input and removed together, so the result is idempotent.
// Order of the survivors is preserved.  Throws ParameterError if
// width > m or a support has more than width ones.
std::vector<Support> prune_concentrated_supports(std::span<const Support> docs,
                                                 std::uint32_t m, std::uint32_t width,
                                                 std::uint32_t beta);
std::vector<WciDoc> prune_concentrated_supports(std::span<const WciDoc> docs,
                                                std::uint32_t width, std::uint32_t beta);

WciInstance generate_wci_query_hard(const ParamsWciQuery& params);
WciInstance generate_wci_space_hard(const ParamsWciSpace& params);

}  // namespace pmlab
