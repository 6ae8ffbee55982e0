#include "pmlab/two_pattern.hpp"

#include <algorithm>
#include <cmath>

#include "pmlab/combinatorics.hpp"
#include "pmlab/errors.hpp"
#include "pmlab/verify.hpp"

namespace pmlab {

void Params2P::validate() const {
    if (sigma_bits < 1 || sigma_bits > 20) throw ParameterError("sigma must lie in [1, 20]");
    if (trailing_bits > sigma_bits) throw ParameterError("p must not exceed sigma");
    if (beta < 1) throw ParameterError("beta must be at least 1");
    if (ell < 2) throw ParameterError("ell must be at least 2");
    if (max_attempts < 1) throw ParameterError("max_attempts must be at least 1");
}

std::uint32_t negative_part_size(unsigned sigma_bits, unsigned p) {
    const double size = std::ldexp(1.0, static_cast<int>(sigma_bits));
    return static_cast<std::uint32_t>(std::llround(size * (1.0 - std::ldexp(1.0, -static_cast<int>(p)))));
}

std::uint64_t query_count(Family family, unsigned sigma_bits, unsigned p) {
    const Alphabet2P a(sigma_bits);
    const std::uint64_t patterns = std::uint64_t{1} << p;
    switch (family) {
        case Family::two_pattern:
            return binomial_checked(a.positive_count(), 2) * patterns * patterns;
        case Family::forbidden_pattern:
            return std::uint64_t{a.positive_count()} * patterns * a.negative_part_size();
        case Family::two_forbidden:
            return std::uint64_t{a.negative_part_size()} * a.negative_part_size();
    }
    return 0;
}

Query2P query_at(Family family, unsigned sigma_bits, unsigned p, std::uint64_t rank) {
    const Alphabet2P a(sigma_bits);
    if (rank >= query_count(family, sigma_bits, p)) throw std::out_of_range("query rank out of range");
    const std::uint64_t patterns = std::uint64_t{1} << p;
    switch (family) {
        case Family::two_pattern: {
            const auto b2 = static_cast<std::uint32_t>(rank % patterns);
            rank /= patterns;
            const auto b1 = static_cast<std::uint32_t>(rank % patterns);
            rank /= patterns;
            const auto chars = colex_unrank(rank, 2);
            return {Pattern2P::positive(chars[0] + 1, {b1, p}),
                    Pattern2P::positive(chars[1] + 1, {b2, p})};
        }
        case Family::forbidden_pattern: {
            const auto n = static_cast<std::uint32_t>(rank % a.negative_part_size());
            rank /= a.negative_part_size();
            const auto b = static_cast<std::uint32_t>(rank % patterns);
            const auto c = static_cast<std::uint32_t>(rank / patterns) + 1;
            return {Pattern2P::positive(c, {b, p}), Pattern2P::negative(a.negative_a_begin() + n)};
        }
        case Family::two_forbidden: {
            const auto y = static_cast<std::uint32_t>(rank % a.negative_part_size());
            const auto x = static_cast<std::uint32_t>(rank / a.negative_part_size());
            return {Pattern2P::negative(a.negative_a_begin() + x),
                    Pattern2P::negative(a.negative_b_begin() + y)};
        }
    }
    return {};
}

std::uint64_t query_rank(Family family, unsigned sigma_bits, unsigned p, const Query2P& q) {
    validate_query(family, sigma_bits, p, q);
    const Alphabet2P a(sigma_bits);
    const std::uint64_t patterns = std::uint64_t{1} << p;
    switch (family) {
        case Family::two_pattern: {
            Pattern2P lo = q.first, hi = q.second;
            if (lo.initial > hi.initial) std::swap(lo, hi);
            const std::uint32_t chars[2] = {lo.initial - 1, hi.initial - 1};
            return (colex_rank(chars) * patterns + lo.trailing.bits) * patterns + hi.trailing.bits;
        }
        case Family::forbidden_pattern:
            return ((std::uint64_t{q.first.initial} - 1) * patterns + q.first.trailing.bits) *
                       a.negative_part_size() +
                   (q.second.initial - a.negative_a_begin());
        case Family::two_forbidden:
            return std::uint64_t{q.first.initial - a.negative_a_begin()} * a.negative_part_size() +
                   (q.second.initial - a.negative_b_begin());
    }
    return 0;
}

std::uint64_t Instance2P::size_cells() const {
    std::uint64_t n = 0;
    for (const auto& d : docs) n += d.payloads.size() + (d.second_part ? d.second_part->size() : 0);
    return n;
}

DocSet eval_query(const Instance2P& inst, const Query2P& q) {
    validate_query(inst.family, inst.params.sigma_bits, inst.params.trailing_bits, q);
    return eval_query(std::span<const Doc2P>(inst.docs), q);
}

namespace {

// Uniform m-subset of [0, n), sorted (Floyd's algorithm).
std::vector<std::uint32_t> sample_subset(std::uint32_t n, std::uint32_t m, Rng& rng) {
    std::vector<std::uint32_t> chosen;
    chosen.reserve(m);
    for (std::uint32_t j = n - m; j < n; ++j) {
        const auto t = static_cast<std::uint32_t>(rng.below(std::uint64_t{j} + 1));
        if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
            chosen.push_back(t);
        else
            chosen.push_back(j);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace

Doc2P sample_document(Family family, unsigned sigma_bits, std::uint32_t m_neg, Rng& rng) {
    const Alphabet2P a(sigma_bits);
    Doc2P d;
    d.sigma_bits = sigma_bits;
    if (family != Family::two_forbidden) {
        d.payloads.resize(a.positive_count());
        for (auto& x : d.payloads) x = static_cast<std::uint32_t>(rng.bits(sigma_bits));
    }
    if (family != Family::two_pattern) {
        if (m_neg > a.negative_part_size()) throw ParameterError("negative part larger than its alphabet");
        std::vector<std::uint32_t> part = sample_subset(a.negative_part_size(), m_neg, rng);
        for (auto& s : part) s += a.negative_a_begin();
        if (family == Family::two_forbidden) {
            for (auto s : sample_subset(a.negative_part_size(), m_neg, rng))
                part.push_back(a.negative_b_begin() + s);
        }
        d.second_part = std::move(part);
    }
    return d;
}

Instance2P draw_instance(Family family, const Params2P& params, std::uint64_t draw_seed) {
    params.validate();
    Instance2P inst;
    inst.params = params;
    inst.family = family;
    inst.m_neg = family == Family::two_pattern
                     ? 0
                     : negative_part_size(params.sigma_bits, params.trailing_bits);
    Rng rng(draw_seed);
    inst.docs.reserve(params.doc_count);
    for (std::uint32_t i = 0; i < params.doc_count; ++i)
        inst.docs.push_back(sample_document(family, params.sigma_bits, inst.m_neg, rng));
    return inst;
}

Instance2P generate(Family family, const Params2P& params) {
    params.validate();
    std::string last_failure;
    for (std::uint32_t attempt = 0; attempt < params.max_attempts; ++attempt) {
        Instance2P inst = draw_instance(family, params, derive_seed(params.seed, attempt));
        inst.attempt = attempt;
        const AcceptanceResult res = check_acceptance(inst);
        if (res.ok) return inst;
        last_failure = res.failed_check;
    }
    throw GenerationFailure(last_failure, params.max_attempts);
}

Instance2P generate_2p(const Params2P& params) { return generate(Family::two_pattern, params); }
Instance2P generate_fp(const Params2P& params) { return generate(Family::forbidden_pattern, params); }
Instance2P generate_2fp(const Params2P& params) { return generate(Family::two_forbidden, params); }

std::size_t SIReduction::set_index(const Pattern2P& pat) const {
    if (pat.polarity != Polarity::positive || pat.trailing.length != p)
        throw ParameterError("SI image needs a positive pattern with p trailing bits");
    if (pat.initial < 1 || pat.initial >= (std::uint32_t{1} << sigma_bits))
        throw std::out_of_range("initial character out of range");
    return (static_cast<std::size_t>(pat.initial) - 1) * (std::size_t{1} << p) + pat.trailing.bits;
}

std::pair<std::size_t, std::size_t> SIReduction::image(const Query2P& q) const {
    return {set_index(q.first), set_index(q.second)};
}

SIReduction reduce_to_si(const Instance2P& inst) {
    if (inst.family != Family::two_pattern) throw ParameterError("reduce_to_si needs a 2P instance");
    const unsigned sigma = inst.params.sigma_bits, p = inst.params.trailing_bits;
    SIReduction red;
    red.sigma_bits = sigma;
    red.p = p;
    red.si.universe_size = static_cast<std::uint32_t>(inst.docs.size());
    const std::size_t per_char = std::size_t{1} << p;
    red.si.sets.assign(Alphabet2P(sigma).positive_count() * per_char, {});
    // Ids are visited in increasing order, so every set comes out sorted.
    for (std::size_t id = 0; id < inst.docs.size(); ++id) {
        const Doc2P& d = inst.docs[id];
        for (std::size_t c = 0; c < d.payloads.size(); ++c) {
            const std::uint32_t bits = p == 0 ? 0 : d.payloads[c] >> (sigma - p);
            red.si.sets[c * per_char + bits].push_back(static_cast<DocId>(id));
        }
    }
    return red;
}

double query_match_probability(Family family, unsigned sigma_bits, unsigned p,
                               std::uint32_t m_neg) {
    const double pos = std::ldexp(1.0, -static_cast<int>(p));
    const double neg = 1.0 - static_cast<double>(m_neg) / std::ldexp(1.0, static_cast<int>(sigma_bits));
    switch (family) {
        case Family::two_pattern: return pos * pos;
        case Family::forbidden_pattern: return pos * neg;
        case Family::two_forbidden: return neg * neg;
    }
    return 0;
}

ParamSummary describe(Family family, const Params2P& params) {
    params.validate();
    const unsigned s = params.sigma_bits, p = params.trailing_bits;
    ParamSummary out;
    out.n = std::uint64_t{params.doc_count} << s;
    out.query_count = query_count(family, s, p);
    switch (family) {
        case Family::two_pattern:
            out.query_count_nominal = static_cast<double>(out.query_count);
            break;
        case Family::forbidden_pattern:
            out.query_count_nominal = std::ldexp(1.0, static_cast<int>(2 * s + p));
            break;
        case Family::two_forbidden:
            out.query_count_nominal = std::ldexp(1.0, static_cast<int>(2 * s));
            break;
    }
    out.m_neg = family == Family::two_pattern ? 0 : negative_part_size(s, p);
    out.expected_output = params.doc_count * query_match_probability(family, s, p, out.m_neg);
    out.min_output_threshold = out.expected_output / 2;
    return out;
}

}  // namespace pmlab
