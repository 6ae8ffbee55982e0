#include "pmlab/wildcard.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <unordered_map>

#include "pmlab/combinatorics.hpp"
#include "pmlab/errors.hpp"
#include "pmlab/random.hpp"

namespace pmlab {

namespace {

// ceil() that tolerates floating noise just above an integer.
std::uint32_t ceil_tolerant(double x) {
    return static_cast<std::uint32_t>(std::ceil(x - 1e-9));
}

}  // namespace

std::uint32_t ParamsWciQuery::r() const {
    if (r_override) return r_override;
    return static_cast<std::uint32_t>(std::floor(std::exp2(kappa / 3.0) + 1e-9));
}

std::uint32_t ParamsWciQuery::ell_prime() const {
    const std::uint32_t rr = r();
    if (rr <= 1) return 0;
    if (ell() <= 1) throw ParameterError("l' = log_l(r)/2 is undefined for l = 1 and r > 1");
    return ceil_tolerant(std::log(static_cast<double>(rr)) / std::log(static_cast<double>(ell())) / 2);
}

std::uint32_t ParamsWciQuery::beta() const {
    if (beta_override) return beta_override;
    return std::max<std::uint32_t>(
        1, ceil_tolerant(beta_constant * std::log(static_cast<double>(m)) /
                         std::log(static_cast<double>(kappa))));
}

void ParamsWciQuery::validate() const {
    if (kappa < 2 || kappa % 2 != 0) throw ParameterError("kappa must be even and at least 2");
    if (m < kappa || m > 32) throw ParameterError("need kappa <= m <= 32");
    if (r() < 1) throw ParameterError("r must be at least 1");
    if (width() > m) throw ParameterError("l + l' must not exceed m");
    if (beta_constant <= 0 && beta_override == 0) throw ParameterError("beta constant must be positive");
    if (max_attempts < 1) throw ParameterError("max_attempts must be at least 1");
    if (binomial(m, ell()) < r()) throw ParameterError("C(m, l) / r must be at least 1");
}

std::uint64_t ParamsWciSpace::query_count() const {
    std::uint64_t n = binomial_checked(m, kappa);
    for (std::uint32_t i = kappa; i < m; ++i) {
        if (n > UINT64_MAX / sigma) throw FamilyTooLarge("WCI query family exceeds 64 bits");
        n *= sigma;
    }
    return n;
}

double ParamsWciSpace::match_probability() const {
    return std::pow(static_cast<double>(sigma), static_cast<double>(kappa) - static_cast<double>(m));
}

void ParamsWciSpace::validate() const {
    if (sigma < 2) throw ParameterError("sigma must be at least 2");
    if (kappa > m) throw ParameterError("kappa must not exceed m");
    if (m == 0 || m > 64) throw ParameterError("m must lie in [1, 64]");
    if (beta < 1) throw ParameterError("beta must be at least 1");
}

std::string_view wci_kind_name(WciKind k) {
    return k == WciKind::query_lb ? "wci-query" : "wci-space";
}

std::uint32_t WciInstance::m() const {
    return std::visit([](const auto& p) { return p.m; }, params);
}

std::uint32_t WciInstance::alphabet_size() const {
    if (const auto* s = std::get_if<ParamsWciSpace>(&params)) return s->sigma;
    return 2;
}

std::uint64_t WciInstance::stage(std::string_view key) const {
    for (const auto& [k, v] : stage_log)
        if (k == key) return v;
    return 0;
}

Support support_of(const WciDoc& doc) {
    if (doc.symbols.size() > 32) throw ParameterError("support masks need m <= 32");
    Support s = 0;
    for (std::size_t i = 0; i < doc.symbols.size(); ++i) {
        if (doc.symbols[i] > 1) throw ParameterError("support of a non-binary document");
        if (doc.symbols[i] == 1) s |= Support{1} << i;
    }
    return s;
}

WciDoc doc_from_support(Support s, std::uint32_t m) {
    WciDoc d;
    d.symbols.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) d.symbols[i] = (s >> i) & 1u;
    return d;
}

WciPattern pattern_from_wild_mask(Support wild, std::uint32_t m) {
    WciPattern p;
    p.cells.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) p.cells[i] = ((wild >> i) & 1u) ? kWildcard : 0;
    return p;
}

std::vector<Support> prune_concentrated_supports(std::span<const Support> docs, std::uint32_t m,
                                                 std::uint32_t width, std::uint32_t beta) {
    if (m > 32) throw ParameterError("support masks need m <= 32");
    if (width > m) throw ParameterError("window width exceeds m");
    const Support all = m == 32 ? ~Support{0} : (Support{1} << m) - 1;

    // Every width-window containing a support is the support plus
    // (width - |support|) further positions.
    std::unordered_map<Support, std::uint32_t> load;
    for (Support s : docs) {
        if (s & ~all) throw ParameterError("support outside [0, m)");
        const auto ones = static_cast<std::uint32_t>(std::popcount(s));
        if (ones > width) throw ParameterError("document has more ones than the window width");
        std::vector<std::uint32_t> free;
        for (std::uint32_t i = 0; i < m; ++i)
            if (!((s >> i) & 1u)) free.push_back(i);
        for_each_combination(static_cast<std::uint32_t>(free.size()), width - ones,
                             [&](const std::vector<std::uint32_t>& pick) {
                                 Support w = s;
                                 for (auto j : pick) w |= Support{1} << free[j];
                                 ++load[w];
                             });
    }

    std::vector<Support> violating;
    for (const auto& [w, count] : load)
        if (count >= beta) violating.push_back(w);

    std::vector<Support> out;
    out.reserve(docs.size());
    for (Support s : docs) {
        const bool removed = std::any_of(violating.begin(), violating.end(),
                                         [s](Support w) { return (s & ~w) == 0; });
        if (!removed) out.push_back(s);
    }
    return out;
}

std::vector<WciDoc> prune_concentrated_supports(std::span<const WciDoc> docs, std::uint32_t width,
                                                std::uint32_t beta) {
    if (docs.empty()) return {};
    const auto m = static_cast<std::uint32_t>(docs.front().symbols.size());
    std::vector<Support> masks;
    masks.reserve(docs.size());
    for (const auto& d : docs) {
        if (d.symbols.size() != m) throw ParameterError("documents of different lengths");
        masks.push_back(support_of(d));
    }
    std::vector<WciDoc> out;
    for (Support s : prune_concentrated_supports(masks, m, width, beta))
        out.push_back(doc_from_support(s, m));
    return out;
}

WciInstance generate_wci_query_hard(const ParamsWciQuery& params) {
    params.validate();
    const std::uint32_t m = params.m, kappa = params.kappa, ell = params.ell();
    const std::uint32_t r = params.r(), beta = params.beta(), width = params.width();
    const std::uint64_t per_pattern = binomial(kappa, ell);  // C(kappa, l)
    const std::uint64_t doc_target = binomial(m, ell);       // C(m, l)
    const std::uint64_t pattern_family = binomial_checked(m, kappa);

    std::string failure;
    for (std::uint32_t attempt = 0; attempt < params.max_attempts; ++attempt) {
        Rng rng(derive_seed(params.seed, attempt));

        std::vector<Support> sampled;
        for_each_combination(m, ell, [&](const std::vector<std::uint32_t>& ones) {
            Support s = 0;
            for (auto i : ones) s |= Support{1} << i;
            if (rng.one_in(r)) sampled.push_back(s);
        });
        const std::vector<Support> kept = prune_concentrated_supports(sampled, m, width, beta);

        std::vector<Support> patterns;
        std::uint64_t max_matches = 0;
        for_each_combination(m, kappa, [&](const std::vector<std::uint32_t>& wild) {
            Support w = 0;
            for (auto i : wild) w |= Support{1} << i;
            std::uint64_t matches = 0;
            for (Support s : kept) matches += (s & ~w) == 0;
            // matches >= C(kappa, l) / (2r)
            if (2 * r * matches >= per_pattern) {
                patterns.push_back(w);
                max_matches = std::max(max_matches, matches);
            }
        });

        if (2 * r * kept.size() < doc_target) {
            failure = "document count below C(m,l)/(2r)";
            continue;
        }
        if (2 * patterns.size() < pattern_family) {
            failure = "pattern count below C(m,kappa)/2";
            continue;
        }
        if (params.upper_factor > 0 &&
            static_cast<double>(max_matches) * r > params.upper_factor * static_cast<double>(per_pattern)) {
            failure = "pattern output above upper_factor*C(kappa,l)/r";
            continue;
        }

        WciInstance inst;
        inst.kind = WciKind::query_lb;
        inst.params = params;
        for (Support s : kept) inst.docs.push_back(doc_from_support(s, m));
        for (Support w : patterns) inst.patterns.push_back(pattern_from_wild_mask(w, m));
        inst.stage_log = {{"r", r},
                          {"ell", ell},
                          {"ell_prime", params.ell_prime()},
                          {"beta", beta},
                          {"attempt", attempt},
                          {"sampled", sampled.size()},
                          {"pruned_docs", sampled.size() - kept.size()},
                          {"docs", kept.size()},
                          {"pattern_family", pattern_family},
                          {"pruned_patterns", pattern_family - patterns.size()},
                          {"patterns", patterns.size()},
                          {"max_pattern_output", max_matches}};
        return inst;
    }
    throw GenerationFailure(failure, params.max_attempts);
}

WciInstance generate_wci_space_hard(const ParamsWciSpace& params) {
    params.validate();
    const std::uint32_t m = params.m, sigma = params.sigma;
    Rng rng(derive_seed(params.seed, 0));

    WciInstance inst;
    inst.kind = WciKind::space_lb;
    inst.params = params;
    inst.docs.resize(params.doc_count);
    for (auto& d : inst.docs) {
        d.symbols.resize(m);
        for (auto& x : d.symbols) x = static_cast<std::uint32_t>(rng.below(sigma));
    }

    // Materialize the queries that match at least one document.  std::map
    // keeps them in lexicographic order of their cell encodings.
    std::map<WciPattern, DocSet> matched;
    std::vector<std::vector<const WciPattern*>> per_doc(inst.docs.size());
    for (std::size_t id = 0; id < inst.docs.size(); ++id) {
        for_each_combination(m, params.kappa, [&](const std::vector<std::uint32_t>& wild) {
            WciPattern q;
            q.cells = inst.docs[id].symbols;
            for (auto i : wild) q.cells[i] = kWildcard;
            matched[q].push_back(static_cast<DocId>(id));
        });
    }
    std::map<const WciPattern*, std::size_t> index;
    std::vector<const WciPattern*> queries;
    for (const auto& [q, ids] : matched) {
        index[&q] = queries.size();
        queries.push_back(&q);
        for (DocId id : ids) per_doc[id].push_back(&q);
    }

    std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> shared;
    for (const auto& qs : per_doc) {
        std::vector<std::size_t> ids;
        for (const auto* q : qs) ids.push_back(index.at(q));
        std::sort(ids.begin(), ids.end());
        for (std::size_t a = 0; a < ids.size(); ++a)
            for (std::size_t b = a + 1; b < ids.size(); ++b) ++shared[{ids[a], ids[b]}];
    }

    std::vector<bool> alive(queries.size(), true);
    std::uint64_t heavy_pairs = 0;
    for (const auto& [pair, count] : shared) {
        if (count < params.beta) continue;
        ++heavy_pairs;
        if (alive[pair.first] && alive[pair.second]) alive[pair.first] = alive[pair.second] = false;
    }

    std::uint64_t removed = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        if (alive[i])
            inst.patterns.push_back(*queries[i]);
        else
            ++removed;
    }
    inst.stage_log = {{"query_family", params.query_count()},
                      {"materialized", queries.size()},
                      {"heavy_pairs", heavy_pairs},
                      {"removed_queries", removed},
                      {"surviving_materialized", inst.patterns.size()}};
    return inst;
}

}  // namespace pmlab
