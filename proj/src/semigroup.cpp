#include "pmlab/semigroup.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "pmlab/errors.hpp"

namespace pmlab {

void SumScheme::validate() const {
    for (const auto& s : sums) {
        if (s.docs.empty()) throw ParameterError("sum " + std::to_string(s.id) + " is empty");
        if (s.coeffs.size() != s.docs.size()) throw ParameterError("coefficient list length mismatch");
        if (!std::is_sorted(s.docs.begin(), s.docs.end()) ||
            std::adjacent_find(s.docs.begin(), s.docs.end()) != s.docs.end())
            throw ParameterError("sum index sets must be sorted and distinct");
        for (auto c : s.coeffs)
            if (c == 0) throw ParameterError("coefficients must be positive");
    }
}

SumScheme SumScheme::singletons(std::size_t doc_count) {
    SumScheme s;
    for (std::size_t i = 0; i < doc_count; ++i)
        s.sums.push_back({i, {static_cast<DocId>(i)}, {1}});
    s.weights.assign(doc_count, 1);
    return s;
}

namespace {

class CoverSearch {
public:
    CoverSearch(const SumScheme& scheme, const DocSet& target, std::size_t cap)
        : target_(target), cap_(cap) {
        // A sum is usable only when it lies inside the target with unit
        // coefficients: nothing can cancel an extra document or multiplicity.
        by_doc_.resize(target.size());
        for (std::size_t i = 0; i < scheme.sums.size(); ++i) {
            const auto& s = scheme.sums[i];
            if (std::any_of(s.coeffs.begin(), s.coeffs.end(), [](auto c) { return c != 1; })) continue;
            if (!std::includes(target.begin(), target.end(), s.docs.begin(), s.docs.end())) continue;
            std::vector<std::size_t> pos;
            for (auto d : s.docs)
                pos.push_back(static_cast<std::size_t>(std::lower_bound(target.begin(), target.end(), d) - target.begin()));
            const std::size_t k = cands_.size();
            cands_.push_back({i, std::move(pos)});
            by_doc_[cands_[k].pos.front()].push_back(k);
        }
        covered_.assign(target.size(), false);
    }

    SumAnswer run() {
        SumAnswer ans;
        const int r = dfs(0);
        ans.explored = explored_;
        if (r == kFound) {
            ans.status = AnswerStatus::answered;
            for (auto k : chosen_) ans.selected.push_back(cands_[k].sum);
            ans.coefficients.assign(ans.selected.size(), 1);
        } else {
            ans.status = r == kCapped ? AnswerStatus::cap_exceeded : AnswerStatus::no_cover;
        }
        return ans;
    }

private:
    static constexpr int kFound = 0, kNone = 1, kCapped = 2;

    struct Cand {
        std::size_t sum;
        std::vector<std::size_t> pos;  // positions in target, increasing
    };

    // Covers the smallest uncovered position first, so each candidate is
    // tried only at the position of its smallest document.
    int dfs(std::size_t from) {
        while (from < covered_.size() && covered_[from]) ++from;
        if (from == covered_.size()) return kFound;
        if (chosen_.size() >= cap_) return kCapped;
        if (failed_.count(covered_)) return kNone;
        ++explored_;
        bool capped = false;
        for (auto k : by_doc_[from]) {
            const auto& c = cands_[k];
            if (std::any_of(c.pos.begin(), c.pos.end(), [&](std::size_t p) { return covered_[p]; })) continue;
            for (auto p : c.pos) covered_[p] = true;
            chosen_.push_back(k);
            const int r = dfs(from);
            if (r == kFound) return kFound;
            chosen_.pop_back();
            for (auto p : c.pos) covered_[p] = false;
            capped |= r == kCapped;
        }
        if (capped) return kCapped;
        failed_.insert(covered_);
        return kNone;
    }

    const DocSet& target_;
    std::size_t cap_;
    std::vector<Cand> cands_;
    std::vector<std::vector<std::size_t>> by_doc_;
    std::vector<bool> covered_;
    std::vector<std::size_t> chosen_;
    std::set<std::vector<bool>> failed_;
    std::uint64_t explored_ = 0;
};

}  // namespace

SumAnswer answer_with_sums(const SumScheme& scheme, const DocSet& target, std::size_t cap) {
    scheme.validate();
    return CoverSearch(scheme, target, cap).run();
}

SumAnswer answer_with_sums(const SumScheme& scheme, const Instance2P& inst, const Query2P& q,
                           std::size_t cap) {
    return answer_with_sums(scheme, eval_query(inst, q), cap);
}

std::vector<std::pair<DocId, std::uint64_t>> formal_sum(const SumScheme& scheme,
                                                        std::span<const std::size_t> selected) {
    std::map<DocId, std::uint64_t> acc;
    for (auto i : selected) {
        const auto& s = scheme.sums.at(i);
        for (std::size_t j = 0; j < s.docs.size(); ++j) acc[s.docs[j]] += s.coeffs[j];
    }
    return {acc.begin(), acc.end()};
}

CrowdedAudit audit_crowded(const SumScheme& scheme, const Instance2P& inst, std::uint64_t beta,
                           unsigned ell, const std::optional<IntersectionReport>& precondition) {
    scheme.validate();
    CrowdedAudit audit;
    audit.beta = beta;
    audit.ell = ell;
    audit.certified = precondition && precondition->arity == ell && !precondition->stopped_early &&
                      precondition->max_shared < beta;
    const std::uint64_t limit = std::uint64_t{ell} * ell;
    for (const auto& s : scheme.sums) {
        CrowdedEntry e;
        e.sum_id = s.id;
        e.size = s.docs.size();
        e.crowded = e.size >= beta;
        e.usable = intersection_measure(inst, s.docs).num;
        if (e.crowded) {
            audit.max_usable = std::max(audit.max_usable, e.usable);
            e.flagged = e.usable > limit;
            if (e.flagged) audit.flagged.push_back(s.id);
        }
        audit.entries.push_back(e);
    }
    return audit;
}

void write_audit_csv(std::ostream& out, const CrowdedAudit& audit) {
    out << "sum_id,size,usable_queries,flagged\n";
    for (const auto& e : audit.entries)
        out << e.sum_id << ',' << e.size << ',' << e.usable << ',' << (e.flagged ? 1 : 0) << '\n';
}

CountInequalities check_count_inequalities(unsigned sigma_bits, unsigned p, std::uint64_t beta,
                                           unsigned /*ell*/, std::uint64_t D, std::uint64_t q_time) {
    CountInequalities r;
    r.eq_count_ok = 2ull * sigma_bits <= static_cast<unsigned __int128>(p) * beta;
    const unsigned __int128 lhs = static_cast<unsigned __int128>(q_time) * 2 *
                                  (static_cast<unsigned __int128>(1) << (2 * p)) * beta;
    r.eq_count2_ok = lhs < D;
    return r;
}

std::uint64_t least_doc_count(unsigned p, std::uint64_t beta, std::uint64_t q_time) {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(q_time) * 2 *
                                  (static_cast<unsigned __int128>(1) << (2 * p)) * beta;
    if (lhs >= UINT64_MAX) throw ParameterError("least document count exceeds 64 bits");
    return static_cast<std::uint64_t>(lhs) + 1;
}

SumScheme read_scheme(std::istream& in, std::size_t doc_count) {
    SumScheme s;
    s.weights.assign(doc_count, 1);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string word, docs_kw, list;
        if (!(ls >> word) || word[0] == '#') continue;
        PrecomputedSum sum;
        if (word != "sum" || !(ls >> sum.id >> docs_kw >> list) || docs_kw != "docs")
            throw FormatError(lineno, "expected 'sum <id> docs <ids>'");
        std::istringstream ids(list);
        std::string tok;
        while (std::getline(ids, tok, ',')) {
            try {
                const unsigned long d = std::stoul(tok);
                if (d >= doc_count) throw FormatError(lineno, "document id out of range");
                sum.docs.push_back(static_cast<DocId>(d));
            } catch (const std::logic_error&) {
                throw FormatError(lineno, "bad document id '" + tok + "'");
            }
        }
        std::sort(sum.docs.begin(), sum.docs.end());
        sum.docs.erase(std::unique(sum.docs.begin(), sum.docs.end()), sum.docs.end());
        if (sum.docs.empty()) throw FormatError(lineno, "empty sum");
        sum.coeffs.assign(sum.docs.size(), 1);
        s.sums.push_back(std::move(sum));
    }
    return s;
}

void write_scheme(std::ostream& out, const SumScheme& scheme) {
    for (const auto& s : scheme.sums) {
        out << "sum " << s.id << " docs ";
        for (std::size_t i = 0; i < s.docs.size(); ++i) out << (i ? "," : "") << s.docs[i];
        out << '\n';
    }
}

}  // namespace pmlab
