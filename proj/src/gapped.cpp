#include "pmlab/gapped.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pmlab/combinatorics.hpp"
#include "pmlab/errors.hpp"

namespace pmlab {

ParamsGpi ParamsGpi::from_length(unsigned p, unsigned kappa, std::uint32_t gamma, std::uint32_t D) {
    if (D % (p + 1) != 0) throw ParameterError("text length must be a multiple of p + 1");
    ParamsGpi out;
    out.p = p;
    out.kappa = kappa;
    out.gamma = gamma;
    out.blocks = D / (p + 1);
    return out;
}

void ParamsGpi::validate(bool count_regime) const {
    if (p < 1 || p > 30) throw ParameterError("p must lie in [1, 30]");
    if (kappa < 1) throw ParameterError("kappa must be at least 1");
    if (blocks > (std::uint64_t{1} << p)) throw ParameterError("more blocks than distinct p-bit strings");
    if (blocks < kappa + 1) throw ParameterError("need at least kappa + 1 blocks");
    if (count_regime && text_length() < 2ull * kappa * gamma) throw ParameterError("need D >= 2 kappa gamma");
}

GpiDictionary::GpiDictionary(ParamsGpi params) : params_(params) {
    if (params_.p < 1 || params_.p > 30 || params_.kappa < 1)
        throw ParameterError("dictionary needs p in [1, 30] and kappa >= 1");
    size_ = binomial_checked(std::uint64_t{1} << params_.p, params_.kappa + 1);
}

GappedPattern GpiDictionary::at(std::uint64_t rank) const {
    if (rank >= size_) throw std::out_of_range("dictionary rank out of range");
    return GappedPattern(colex_unrank(rank, params_.kappa + 1), params_.p, params_.gamma);
}

std::uint64_t GpiDictionary::rank(const GappedPattern& pat) const {
    if (pat.p() != params_.p || pat.kappa() != params_.kappa)
        throw ParameterError("pattern shape does not match the dictionary");
    return colex_rank(pat.subpatterns());
}

std::uint64_t GpiDictionary::total_characters() const {
    return size_ * (params_.kappa + 1) * params_.p;
}

GpiTextFamily::GpiTextFamily(ParamsGpi params) : params_(params) {
    params_.validate();
    size_ = binomial_checked(std::uint64_t{1} << params_.p, params_.blocks);
}

GpiText GpiTextFamily::at(std::uint64_t rank) const {
    if (rank >= size_) throw std::out_of_range("text rank out of range");
    return GpiText(colex_unrank(rank, params_.blocks), params_.p);
}

std::uint64_t GpiTextFamily::rank(const GpiText& text) const {
    if (text.p() != params_.p || text.blocks().size() != params_.blocks)
        throw ParameterError("text shape does not match the family");
    return colex_rank(text.blocks());
}

GpiDictionary build_dictionary(const ParamsGpi& params) { return GpiDictionary(params); }
GpiTextFamily enumerate_texts(const ParamsGpi& params) { return GpiTextFamily(params); }

std::uint32_t adjacency_window(unsigned p, std::uint32_t gamma) {
    if (gamma == 0) return 0;
    return (gamma - 1) / (p + 1) + 1;
}

std::uint64_t count_matches_exact(const GpiText& text, const ParamsGpi& params) {
    if (text.p() != params.p) throw ParameterError("text bit length differs from p");
    const std::size_t n = text.blocks().size();
    const std::uint32_t w = adjacency_window(params.p, params.gamma);
    // ways[i]: chains of the current length ending at block i.
    std::vector<std::uint64_t> ways(n, 1), next(n);
    for (unsigned len = 1; len <= params.kappa; ++len) {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t s = 0;
            for (std::size_t d = 1; d <= w && d <= i; ++d) s += ways[i - d];
            next[i] = s;
        }
        ways.swap(next);
    }
    std::uint64_t total = 0;
    for (auto v : ways) total += v;
    return total;
}

double output_scale(const ParamsGpi& params) {
    return params.text_length() * std::pow(static_cast<double>(params.gamma), params.kappa) /
           std::pow(static_cast<double>(params.p + 1), params.kappa + 1);
}

SpreadCheck check_subpattern_spread(std::span<const GappedPattern> patterns, std::uint64_t beta,
                                    unsigned kappa) {
    std::set<std::uint32_t> all;
    for (const auto& pat : patterns) all.insert(pat.subpatterns().begin(), pat.subpatterns().end());
    SpreadCheck out;
    out.union_size = all.size();
    out.required = ceil_root(beta, kappa + 1);
    out.ok = out.union_size >= out.required;
    return out;
}

std::uint64_t common_text_bound(const ParamsGpi& params, std::uint64_t beta) {
    const std::uint64_t r = ceil_root(beta, params.kappa + 1);
    if (r > params.blocks) return 0;
    return binomial((std::uint64_t{1} << params.p) - r, params.blocks - r);
}

}  // namespace pmlab
