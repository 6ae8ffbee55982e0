#include "pmlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numbers>
#include <sstream>

#include "pmlab/combinatorics.hpp"
#include "pmlab/errors.hpp"
#include "pmlab/random.hpp"

namespace pmlab {

namespace {

constexpr std::uint64_t kExhaustiveLimit = 500'000'000;

std::uint32_t prefix_of(std::uint32_t payload, unsigned sigma_bits, unsigned p) {
    return p == 0 ? 0 : payload >> (sigma_bits - p);
}

// Pr[k fixed symbols all absent from a uniform m-subset of an N-set].
double all_absent(std::uint32_t N, std::uint32_t m, std::uint32_t k) {
    double prob = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (N - i == 0 || N < m + i) return 0;
        prob *= static_cast<double>(N - m - i) / static_cast<double>(N - i);
    }
    return prob;
}

template <class Trial>
McReport run_sharded(std::uint64_t trials, std::uint64_t seed, double analytic, Trial trial) {
    if (trials < 1000) throw ParameterError("Monte-Carlo runs need at least 1000 trials");
    std::vector<std::future<std::uint64_t>> shards;
    for (unsigned s = 0; s < kMcShards; ++s) {
        const std::uint64_t n = trials / kMcShards + (s < trials % kMcShards ? 1 : 0);
        shards.push_back(std::async(std::launch::async, [n, s, seed, &trial] {
            Rng rng(derive_seed(seed, s));
            std::uint64_t hits = 0;
            for (std::uint64_t i = 0; i < n; ++i) hits += trial(rng) ? 1 : 0;
            return hits;
        }));
    }
    std::uint64_t hits = 0;
    for (auto& f : shards) hits += f.get();
    return make_mc_report(hits, trials, analytic);
}

}  // namespace

McReport make_mc_report(std::uint64_t hits, std::uint64_t trials, double analytic) {
    McReport r;
    r.hits = hits;
    r.trials = trials;
    r.analytic = analytic;
    if (trials == 0) return r;
    const double n = static_cast<double>(trials);
    r.estimate = static_cast<double>(hits) / n;
    r.std_error = std::sqrt(r.estimate * (1 - r.estimate) / n);
    double se = r.std_error;
    if (se == 0) se = std::sqrt(analytic * (1 - analytic) / n);
    const double diff = r.estimate - analytic;
    if (se > 0)
        r.z_score = diff / se;
    else
        r.z_score = diff == 0 ? 0 : std::copysign(1e9, diff);
    return r;
}

double analytic_match_probability(Family family, unsigned sigma_bits, std::uint32_t m_neg,
                                  std::span<const Pattern2P> target) {
    const Alphabet2P a(sigma_bits);
    std::map<std::uint32_t, BitString> longest;
    std::vector<std::uint32_t> neg_a, neg_b;
    for (const auto& pat : target) {
        if (pat.polarity == Polarity::positive) {
            if (family == Family::two_forbidden) throw ParameterError("2FP documents have no positive part");
            if (!a.is_positive_char(pat.initial)) throw ParameterError("bad initial character");
            if (pat.trailing.length > sigma_bits) throw ParameterError("trailing bits longer than a payload");
            auto [it, fresh] = longest.try_emplace(pat.initial, pat.trailing);
            if (fresh) continue;
            const BitString& have = it->second;
            const unsigned common = std::min(have.length, pat.trailing.length);
            if (have.prefix(common) != pat.trailing.prefix(common)) return 0;
            if (pat.trailing.length > have.length) it->second = pat.trailing;
        } else {
            if (family == Family::two_pattern) throw ParameterError("2P documents have no negative part");
            if (pat.initial >= a.negative_a_begin() && pat.initial < a.negative_b_begin())
                neg_a.push_back(pat.initial);
            else if (family == Family::two_forbidden && a.is_negative_char(pat.initial))
                neg_b.push_back(pat.initial);
            else
                throw ParameterError("negative symbol outside the family's alphabet");
        }
    }
    double prob = 1;
    for (const auto& [c, bits] : longest) prob *= std::ldexp(1.0, -static_cast<int>(bits.length));
    for (auto* part : {&neg_a, &neg_b}) {
        std::sort(part->begin(), part->end());
        part->erase(std::unique(part->begin(), part->end()), part->end());
        prob *= all_absent(a.negative_part_size(), m_neg, static_cast<std::uint32_t>(part->size()));
    }
    return prob;
}

McReport mc_match_rate(Family family, unsigned sigma_bits, unsigned p,
                       std::span<const Pattern2P> target, std::uint64_t trials,
                       std::uint64_t seed) {
    const std::uint32_t m_neg = family == Family::two_pattern ? 0 : negative_part_size(sigma_bits, p);
    const double analytic = analytic_match_probability(family, sigma_bits, m_neg, target);
    return run_sharded(trials, seed, analytic, [&](Rng& rng) {
        const Doc2P doc = sample_document(family, sigma_bits, m_neg, rng);
        return std::all_of(target.begin(), target.end(),
                           [&](const Pattern2P& pat) { return match_pattern(doc, pat); });
    });
}

McReport mc_wci_match_rate(std::uint32_t sigma, const WciPattern& pattern, std::uint64_t trials,
                           std::uint64_t seed) {
    if (sigma < 1) throw ParameterError("sigma must be positive");
    double analytic = 1;
    for (auto cell : pattern.cells)
        if (cell != kWildcard) analytic *= cell < sigma ? 1.0 / sigma : 0.0;
    return run_sharded(trials, seed, analytic, [&](Rng& rng) {
        WciDoc doc;
        doc.symbols.resize(pattern.cells.size());
        for (auto& x : doc.symbols) x = static_cast<std::uint32_t>(rng.below(sigma));
        return match_wildcard(doc, pattern);
    });
}

// ---------------------------------------------------------------------------

double min_output_threshold(const Instance2P& inst) {
    return static_cast<double>(inst.docs.size()) *
           query_match_probability(inst.family, inst.params.sigma_bits, inst.params.trailing_bits,
                                   inst.m_neg) /
           2;
}

MinOutputReport min_query_output(const Instance2P& inst) {
    const unsigned sigma = inst.params.sigma_bits, p = inst.params.trailing_bits;
    const Alphabet2P a(sigma);
    const std::uint64_t total = inst.query_count();
    if (total > kExhaustiveLimit) throw FamilyTooLarge("query family too large for exhaustive evaluation");
    const std::uint32_t P = std::uint32_t{1} << p;
    const std::uint32_t N = a.negative_part_size();
    const auto D = static_cast<std::uint64_t>(inst.docs.size());

    MinOutputReport out;
    out.value = UINT64_MAX;
    out.evaluated = total;
    auto offer = [&](std::uint64_t count, std::uint64_t rank) {
        if (count < out.value) {
            out.value = count;
            out.argmin_rank = rank;
        }
    };

    switch (inst.family) {
        case Family::two_pattern: {
            std::vector<std::uint64_t> table(std::size_t{P} * P);
            std::uint64_t pair_rank = 0;
            for (std::uint32_t hi = 1; hi < a.positive_count(); ++hi) {
                for (std::uint32_t lo = 0; lo < hi; ++lo, ++pair_rank) {
                    std::fill(table.begin(), table.end(), 0);
                    for (const auto& d : inst.docs)
                        ++table[prefix_of(d.payloads[lo], sigma, p) * P + prefix_of(d.payloads[hi], sigma, p)];
                    for (std::size_t i = 0; i < table.size(); ++i) offer(table[i], pair_rank * P * P + i);
                }
            }
            break;
        }
        case Family::forbidden_pattern: {
            std::vector<std::uint64_t> bucket(P), contains(std::size_t{P} * N);
            for (std::uint32_t c = 0; c < a.positive_count(); ++c) {
                std::fill(bucket.begin(), bucket.end(), 0);
                std::fill(contains.begin(), contains.end(), 0);
                for (const auto& d : inst.docs) {
                    const std::uint32_t b = prefix_of(d.payloads[c], sigma, p);
                    ++bucket[b];
                    for (auto s : *d.second_part) ++contains[std::size_t{b} * N + (s - a.negative_a_begin())];
                }
                for (std::uint32_t b = 0; b < P; ++b)
                    for (std::uint32_t n = 0; n < N; ++n)
                        offer(bucket[b] - contains[std::size_t{b} * N + n],
                              (std::uint64_t{c} * P + b) * N + n);
            }
            break;
        }
        case Family::two_forbidden: {
            std::vector<std::uint64_t> in_a(N), in_b(N), both(std::size_t{N} * N);
            std::vector<std::uint32_t> xs, ys;
            for (const auto& d : inst.docs) {
                xs.clear();
                ys.clear();
                for (auto s : *d.second_part) {
                    if (s < a.negative_b_begin())
                        xs.push_back(s - a.negative_a_begin());
                    else
                        ys.push_back(s - a.negative_b_begin());
                }
                for (auto x : xs) ++in_a[x];
                for (auto y : ys) ++in_b[y];
                for (auto x : xs)
                    for (auto y : ys) ++both[std::size_t{x} * N + y];
            }
            for (std::uint32_t x = 0; x < N; ++x)
                for (std::uint32_t y = 0; y < N; ++y)
                    offer(D - in_a[x] - in_b[y] + both[std::size_t{x} * N + y], std::uint64_t{x} * N + y);
            break;
        }
    }
    if (total == 0) out.value = 0;
    if (total > 0) out.argmin = inst.query_at(out.argmin_rank);
    return out;
}

MinOutputReport min_query_output_sampled(const Instance2P& inst, std::uint64_t samples,
                                         std::uint64_t seed) {
    MinOutputReport out;
    out.exhaustive = false;
    const std::uint64_t total = inst.query_count();
    if (total == 0 || samples == 0) return out;
    out.value = UINT64_MAX;
    Rng rng(derive_seed(seed, 0));
    for (std::uint64_t i = 0; i < samples; ++i) {
        const std::uint64_t rank = rng.below(total);
        const std::uint64_t size = eval_query(inst, inst.query_at(rank)).size();
        if (size < out.value || (size == out.value && rank < out.argmin_rank)) {
            out.value = size;
            out.argmin_rank = rank;
        }
    }
    out.evaluated = samples;
    out.argmin = inst.query_at(out.argmin_rank);
    return out;
}

MinOutputReport min_query_output(const ParamsGpi& params) {
    const GpiTextFamily texts(params);
    if (texts.size() > kExhaustiveLimit / 100) throw FamilyTooLarge("text family too large");
    MinOutputReport out;
    out.value = UINT64_MAX;
    for (std::uint64_t r = 0; r < texts.size(); ++r) {
        const std::uint64_t c = count_matches_exact(texts.at(r), params);
        if (c < out.value) {
            out.value = c;
            out.argmin_rank = r;
        }
    }
    out.evaluated = texts.size();
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Documents viewed as rows of attribute values.  A positive attribute is an
// initial character valued by its p-bit prefix; a negative attribute is a
// symbol valued 1 when present, and only value 0 is matchable.
class SharingSearch {
public:
    SharingSearch(const Instance2P& inst, unsigned ell, const SharingOptions& opts)
        : inst_(inst), ell_(ell), opts_(opts) {
        const unsigned sigma = inst.params.sigma_bits, p = inst.params.trailing_bits;
        const Alphabet2P a(sigma);
        const std::size_t D = inst.docs.size();
        if (inst.family != Family::two_forbidden) {
            for (std::uint32_t c = 1; c < a.size(); ++c) {
                attrs_.push_back({c, true});
                auto& col = values_.emplace_back(D);
                for (std::size_t i = 0; i < D; ++i)
                    col[i] = prefix_of(inst.docs[i].payloads[c - 1], sigma, p);
            }
            range_ = std::max<std::uint32_t>(range_, std::uint32_t{1} << p);
        }
        if (inst.family != Family::two_pattern) {
            const std::uint32_t end = inst.family == Family::two_forbidden
                                          ? a.negative_b_begin() + a.negative_part_size()
                                          : a.negative_b_begin();
            const std::size_t first = attrs_.size();
            for (std::uint32_t s = a.negative_a_begin(); s < end; ++s) {
                attrs_.push_back({s, false});
                values_.emplace_back(D, 0);
            }
            for (std::size_t i = 0; i < D; ++i)
                for (auto s : *inst.docs[i].second_part) values_[first + (s - a.negative_a_begin())][i] = 1;
        }
        if (ell_ < 2) throw ParameterError("arity must be at least 2");
        if (ell_ > attrs_.size()) throw ParameterError("arity exceeds the number of initial characters");
        counts_.assign(range_, 0);
        groups_.resize(ell_ + 1);
        good_.resize(ell_ + 1);
        path_.resize(ell_);
    }

    IntersectionReport run() {
        IntersectionReport rep;
        rep.arity = ell_;
        best_ = opts_.stop_at ? opts_.stop_at - 1 : 0;
        std::vector<std::uint32_t> all(inst_.docs.size());
        for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        std::vector<std::uint32_t> cand(attrs_.size());
        for (std::uint32_t i = 0; i < cand.size(); ++i) cand[i] = i;
        dfs(0, all, cand);
        rep.max_shared = found_ ? best_ : (opts_.stop_at ? 0 : best_);
        rep.stopped_early = stopped_;
        rep.work = work_;
        rep.bound_ok = rep.max_shared < inst_.params.beta;
        rep.witness_docs = witness_docs_;
        for (auto [attr, value] : witness_) {
            const Attr& at = attrs_[attr];
            rep.witness_patterns.push_back(
                at.positive ? Pattern2P::positive(at.symbol, {value, inst_.params.trailing_bits})
                            : Pattern2P::negative(at.symbol));
        }
        return rep;
    }

private:
    struct Attr {
        std::uint32_t symbol;
        bool positive;
    };
    struct Bucket {
        std::uint32_t value, begin, size;
    };

    bool matchable(std::uint32_t attr, std::uint32_t value) const {
        return attrs_[attr].positive || value == 0;
    }

    void charge(std::size_t n) {
        work_ += n;
        if (work_ > opts_.work_budget) throw FamilyTooLarge("sharing search exceeded its work budget");
    }

    // Largest matchable bucket of `group` under `attr`.
    std::uint32_t largest_bucket(std::span<const std::uint32_t> group, std::uint32_t attr) {
        charge(group.size());
        const auto& col = values_[attr];
        std::uint32_t top = 0;
        for (auto d : group) {
            const std::uint32_t v = col[d];
            if (matchable(attr, v)) top = std::max(top, ++counts_[v]);
        }
        for (auto d : group) counts_[col[d]] = 0;
        return top;
    }

    // Groups `group` by `attr` into groups_[depth]; returns matchable buckets.
    std::vector<Bucket> split(std::span<const std::uint32_t> group, std::uint32_t attr, unsigned depth) {
        charge(group.size());
        const auto& col = values_[attr];
        std::vector<Bucket> buckets;
        for (auto d : group)
            if (counts_[col[d]]++ == 0) buckets.push_back({col[d], 0, 0});
        std::sort(buckets.begin(), buckets.end(), [](const Bucket& x, const Bucket& y) { return x.value < y.value; });
        std::uint32_t at = 0;
        for (auto& b : buckets) {
            b.begin = at;
            b.size = counts_[b.value];
            at += b.size;
            counts_[b.value] = b.begin;
        }
        auto& out = groups_[depth];
        out.resize(group.size());
        for (auto d : group) out[counts_[col[d]]++] = d;
        for (auto& b : buckets) counts_[b.value] = 0;
        std::erase_if(buckets, [&](const Bucket& b) { return !matchable(attr, b.value); });
        return buckets;
    }

    void dfs(unsigned depth, std::span<const std::uint32_t> group, std::span<const std::uint32_t> cand) {
        if (stopped_) return;
        if (depth == ell_) {
            if (group.size() > best_) {
                best_ = group.size();
                found_ = true;
                witness_ = path_;
                witness_docs_.assign(group.begin(), group.end());
                std::sort(witness_docs_.begin(), witness_docs_.end());
                if (opts_.stop_at && best_ >= opts_.stop_at) stopped_ = true;
            }
            return;
        }
        const unsigned need = ell_ - depth;
        auto& good = good_[depth];
        good.clear();
        for (auto attr : cand)
            if (largest_bucket(group, attr) > best_) good.push_back(attr);
        if (good.size() < need) return;

        for (std::size_t i = 0; i + need <= good.size(); ++i) {
            const std::uint32_t attr = good[i];
            const auto buckets = split(group, attr, depth);
            for (const auto& b : buckets) {
                if (b.size <= best_) continue;
                path_[depth] = {attr, b.value};
                // Deeper levels use their own group and candidate buffers.
                const std::span<const std::uint32_t> sub(groups_[depth].data() + b.begin, b.size);
                const std::span<const std::uint32_t> rest(good.data() + i + 1, good.size() - i - 1);
                dfs(depth + 1, sub, rest);
                if (stopped_) return;
            }
        }
    }

    const Instance2P& inst_;
    unsigned ell_;
    SharingOptions opts_;
    std::vector<Attr> attrs_;
    std::vector<std::vector<std::uint32_t>> values_;
    std::uint32_t range_ = 2;
    std::vector<std::uint32_t> counts_;
    std::vector<std::vector<std::uint32_t>> groups_;
    std::vector<std::vector<std::uint32_t>> good_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> path_, witness_;
    DocSet witness_docs_;
    std::uint64_t best_ = 0;
    std::uint64_t work_ = 0;
    bool found_ = false;
    bool stopped_ = false;
};

}  // namespace

IntersectionReport max_docs_sharing_patterns(const Instance2P& inst, unsigned ell,
                                             const SharingOptions& opts) {
    return SharingSearch(inst, ell, opts).run();
}

// ---------------------------------------------------------------------------

EqIntReport check_eq_int(unsigned sigma_bits, unsigned p, unsigned ell, std::uint64_t beta,
                         std::uint64_t D) {
    EqIntReport r;
    r.log2_bound = -std::log2(3.0);
    r.log2_lhs = static_cast<double>(ell) * (p + sigma_bits);
    if (beta > 0) {
        const double b = static_cast<double>(beta);
        const double inner = D == 0 ? -INFINITY
                                    : std::log2(std::numbers::e) + std::log2(static_cast<double>(D)) -
                                          std::log2(b) - static_cast<double>(p) * ell;
        r.log2_lhs += b * inner;
    }
    r.holds = r.log2_lhs < r.log2_bound;
    return r;
}

// ---------------------------------------------------------------------------

Ratio intersection_measure(const Instance2P& inst, std::span<const DocId> docs) {
    if (docs.empty()) throw ParameterError("measure needs a nonempty document subset");
    for (auto id : docs)
        if (id >= inst.docs.size()) throw std::out_of_range("document id out of range");
    const unsigned sigma = inst.params.sigma_bits, p = inst.params.trailing_bits;
    const Alphabet2P a(sigma);
    const Doc2P& first = inst.docs[docs.front()];

    std::uint64_t agree = 0, absent_a = 0, absent_b = 0;
    if (inst.family != Family::two_forbidden) {
        for (std::uint32_t c = 0; c < a.positive_count(); ++c) {
            const auto v = prefix_of(first.payloads[c], sigma, p);
            agree += std::all_of(docs.begin(), docs.end(), [&](DocId id) {
                return prefix_of(inst.docs[id].payloads[c], sigma, p) == v;
            });
        }
    }
    if (inst.family != Family::two_pattern) {
        std::vector<bool> seen(3 * std::size_t{a.size()}, false);
        for (auto id : docs)
            for (auto s : *inst.docs[id].second_part) seen[s] = true;
        for (std::uint32_t i = 0; i < a.negative_part_size(); ++i) {
            absent_a += !seen[a.negative_a_begin() + i];
            absent_b += !seen[a.negative_b_begin() + i];
        }
    }
    Ratio r;
    r.den = inst.query_count();
    switch (inst.family) {
        case Family::two_pattern: r.num = binomial(agree, 2); break;
        case Family::forbidden_pattern: r.num = agree * absent_a; break;
        case Family::two_forbidden: r.num = absent_a * absent_b; break;
    }
    return r;
}

bool text_matches_all(const GpiText& text, std::span<const GappedPattern> patterns) {
    return std::all_of(patterns.begin(), patterns.end(),
                       [&](const GappedPattern& pat) { return match_gapped(text, pat); });
}

Ratio intersection_measure(const ParamsGpi& params, std::span<const GappedPattern> patterns) {
    const GpiTextFamily texts(params);
    if (texts.size() > kExhaustiveLimit / 100) throw FamilyTooLarge("text family too large");
    Ratio r;
    r.den = texts.size();
    for (std::uint64_t i = 0; i < texts.size(); ++i) r.num += text_matches_all(texts.at(i), patterns);
    return r;
}

Ratio intersection_measure(const WciInstance& inst, std::span<const DocId> docs) {
    if (docs.empty()) throw ParameterError("measure needs a nonempty document subset");
    for (auto id : docs)
        if (id >= inst.docs.size()) throw std::out_of_range("document id out of range");
    const std::uint32_t m = inst.m();
    std::uint32_t forced = 0;  // positions every matching pattern must wild-card
    if (inst.kind == WciKind::query_lb) {
        const auto kappa = std::get<ParamsWciQuery>(inst.params).kappa;
        for (std::uint32_t i = 0; i < m; ++i)
            forced += std::any_of(docs.begin(), docs.end(), [&](DocId id) { return inst.docs[id].symbols[i] != 0; });
        Ratio r;
        r.den = binomial(m, kappa);
        r.num = forced > kappa ? 0 : binomial(m - forced, kappa - forced);
        return r;
    }
    const auto& sp = std::get<ParamsWciSpace>(inst.params);
    const auto& first = inst.docs[docs.front()];
    for (std::uint32_t i = 0; i < m; ++i)
        forced += std::any_of(docs.begin(), docs.end(),
                              [&](DocId id) { return inst.docs[id].symbols[i] != first.symbols[i]; });
    Ratio r;
    r.den = sp.query_count();
    r.num = forced > sp.kappa ? 0 : binomial(m - forced, sp.kappa - forced);
    return r;
}

// ---------------------------------------------------------------------------

AcceptanceResult check_acceptance(const Instance2P& inst) {
    const Params2P& prm = inst.params;
    AcceptanceResult res;
    res.eq_int = check_eq_int(prm.sigma_bits, prm.trailing_bits, prm.ell, prm.beta, inst.docs.size());
    if (!res.eq_int.holds) {
        res.failed_check = "eq-int";
        return res;
    }
    res.min_threshold = min_output_threshold(inst);
    res.min_output = min_query_output(inst).value;
    if (static_cast<double>(res.min_output) < res.min_threshold) {
        res.failed_check = "min-output";
        return res;
    }
    SharingOptions opts;
    opts.stop_at = prm.beta;
    const IntersectionReport sharing = max_docs_sharing_patterns(inst, prm.ell, opts);
    res.max_shared = sharing.max_shared;
    if (sharing.stopped_early || sharing.max_shared >= prm.beta) {
        res.failed_check = "max-sharing";
        return res;
    }
    res.ok = true;
    return res;
}

// ---------------------------------------------------------------------------

namespace {

const ParamsWciQuery& query_params(const WciInstance& inst) {
    if (inst.kind != WciKind::query_lb) throw ParameterError("check applies to wci-query instances");
    return std::get<ParamsWciQuery>(inst.params);
}

}  // namespace

WciSpreadReport check_support_spread(const WciInstance& inst) {
    const auto& prm = query_params(inst);
    std::vector<Support> supports;
    for (const auto& d : inst.docs) supports.push_back(support_of(d));
    WciSpreadReport rep;
    for_each_combination(prm.m, prm.width(), [&](const std::vector<std::uint32_t>& idx) {
        Support w = 0;
        for (auto i : idx) w |= Support{1} << i;
        std::uint64_t load = 0;
        for (auto s : supports) load += (s & ~w) == 0;
        ++rep.windows;
        if (load > rep.max_window_load) {
            rep.max_window_load = load;
            rep.worst_window = w;
        }
    });
    rep.ok = rep.max_window_load < prm.beta();
    return rep;
}

WciPatternLoadReport check_pattern_load(const WciInstance& inst) {
    const auto& prm = query_params(inst);
    WciPatternLoadReport rep;
    const std::uint64_t twice_r = 2ull * prm.r();
    rep.required = (binomial(prm.kappa, prm.ell()) + twice_r - 1) / twice_r;
    rep.min_matches = inst.patterns.empty() ? 0 : UINT64_MAX;
    for (const auto& pat : inst.patterns) {
        std::uint64_t n = 0;
        for (const auto& d : inst.docs) n += match_wildcard(d, pat);
        rep.min_matches = std::min(rep.min_matches, n);
        rep.max_matches = std::max(rep.max_matches, n);
    }
    rep.ok = !inst.patterns.empty() && rep.min_matches >= rep.required;
    return rep;
}

WciCapReport check_intersection_cap(const WciInstance& inst, std::uint64_t samples,
                                    std::uint64_t seed) {
    const auto& prm = query_params(inst);
    const std::uint32_t beta = prm.beta(), w = prm.width();
    const auto n = static_cast<std::uint32_t>(inst.docs.size());
    WciCapReport rep;
    rep.cap = prm.kappa >= w ? binomial(prm.m - w, prm.kappa - w) : 0;

    auto common = [&](const std::vector<std::uint32_t>& subset) {
        std::uint64_t c = 0;
        for (const auto& pat : inst.patterns)
            c += std::all_of(subset.begin(), subset.end(),
                             [&](std::uint32_t id) { return match_wildcard(inst.docs[id], pat); });
        rep.max_common = std::max(rep.max_common, c);
        ++rep.samples;
    };

    if (beta > n) {
        rep.exhaustive = true;
    } else if (binomial(n, beta) <= samples) {
        rep.exhaustive = true;
        for_each_combination(n, beta, common);
    } else {
        Rng rng(derive_seed(seed, 0));
        std::vector<std::uint32_t> subset;
        for (std::uint64_t s = 0; s < samples; ++s) {
            subset.clear();
            for (std::uint32_t j = n - beta; j < n; ++j) {
                const auto t = static_cast<std::uint32_t>(rng.below(std::uint64_t{j} + 1));
                subset.push_back(std::find(subset.begin(), subset.end(), t) == subset.end() ? t : j);
            }
            common(subset);
        }
    }
    rep.ok = rep.max_common <= rep.cap;
    return rep;
}

WciPairReport check_pair_sharing(const WciInstance& inst) {
    if (inst.kind != WciKind::space_lb) throw ParameterError("check applies to wci-space instances");
    const auto& prm = std::get<ParamsWciSpace>(inst.params);
    std::vector<DocSet> matched;
    for (const auto& pat : inst.patterns) {
        DocSet ids;
        for (std::size_t i = 0; i < inst.docs.size(); ++i)
            if (match_wildcard(inst.docs[i], pat)) ids.push_back(static_cast<DocId>(i));
        matched.push_back(std::move(ids));
    }
    WciPairReport rep;
    DocSet both;
    for (std::size_t i = 0; i < matched.size(); ++i) {
        for (std::size_t j = i + 1; j < matched.size(); ++j) {
            both.clear();
            std::set_intersection(matched[i].begin(), matched[i].end(), matched[j].begin(),
                                  matched[j].end(), std::back_inserter(both));
            rep.max_shared = std::max<std::uint64_t>(rep.max_shared, both.size());
            ++rep.pairs;
        }
    }
    rep.ok = rep.max_shared < prm.beta;
    return rep;
}

std::string report_line(const std::string& name, bool exact, double value, double bound, bool pass) {
    std::ostringstream os;
    os.precision(10);
    os << "check=" << name << " mode=" << (exact ? "exact" : "mc") << " value=" << value
       << " bound=" << bound << " pass=" << (pass ? "true" : "false");
    return os.str();
}

}  // namespace pmlab
