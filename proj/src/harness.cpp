#include "pmlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include "pmlab/errors.hpp"
#include "pmlab/random.hpp"

namespace pmlab {

std::string_view structure_name(StructureKind k) {
    switch (k) {
        case StructureKind::naive_scan: return "naive-scan";
        case StructureKind::inverted_lists: return "inverted-lists";
        case StructureKind::full_table: return "full-table";
    }
    return "?";
}

StructureKind parse_structure(std::string_view name) {
    if (name == "naive-scan" || name == "naive") return StructureKind::naive_scan;
    if (name == "inverted-lists" || name == "inverted") return StructureKind::inverted_lists;
    if (name == "full-table" || name == "full") return StructureKind::full_table;
    throw ParameterError("unknown structure " + std::string(name));
}

Answer ReferenceStructure::answer(std::uint64_t rank) const {
    Answer a = compute(rank);
    if (faults_.count(rank)) {
        if (a.ids.empty())
            a.ids.push_back(0);
        else
            a.ids.pop_back();
    }
    return a;
}

namespace {

std::vector<std::uint64_t> widen(const DocSet& d) { return {d.begin(), d.end()}; }

class TwoPatternStructure : public ReferenceStructure {
public:
    TwoPatternStructure(StructureKind kind, const Instance2P& inst, std::uint64_t budget)
        : ReferenceStructure(kind, 0), inst_(inst) {
        switch (kind) {
            case StructureKind::naive_scan: set_space(inst.size_cells()); break;
            case StructureKind::inverted_lists: build_lists(); break;
            case StructureKind::full_table: build_table(budget); break;
        }
    }

    std::uint64_t query_count() const override { return inst_.query_count(); }

    std::vector<std::uint64_t> oracle(std::uint64_t rank) const override {
        return widen(eval_query(inst_, inst_.query_at(rank)));
    }

protected:
    Answer compute(std::uint64_t rank) const override {
        switch (kind()) {
            case StructureKind::naive_scan: {
                Answer a;
                a.ids = oracle(rank);
                a.time = inst_.size_cells();
                return a;
            }
            case StructureKind::inverted_lists: return from_lists(inst_.query_at(rank));
            case StructureKind::full_table: {
                Answer a;
                a.ids = table_[rank];
                a.time = a.ids.size() + 1;
                return a;
            }
        }
        return {};
    }

private:
    std::size_t positive_list(const Pattern2P& pat) const {
        return (static_cast<std::size_t>(pat.initial) - 1) * (std::size_t{1} << inst_.params.trailing_bits) +
               pat.trailing.bits;
    }

    const DocSet& negative_list(std::uint32_t symbol) const {
        return neg_lists_[symbol - Alphabet2P(inst_.params.sigma_bits).negative_a_begin()];
    }

    void build_lists() {
        const unsigned sigma = inst_.params.sigma_bits, p = inst_.params.trailing_bits;
        const Alphabet2P a(sigma);
        std::uint64_t space = 0;
        if (inst_.family != Family::two_forbidden) {
            pos_lists_.assign(std::size_t{a.positive_count()} << p, {});
            for (std::size_t id = 0; id < inst_.docs.size(); ++id) {
                const auto& d = inst_.docs[id];
                for (std::uint32_t c = 0; c < d.payloads.size(); ++c) {
                    const std::uint32_t b = p == 0 ? 0 : d.payloads[c] >> (sigma - p);
                    pos_lists_[(std::size_t{c} << p) + b].push_back(static_cast<DocId>(id));
                    ++space;
                }
            }
        }
        if (inst_.family != Family::two_pattern) {
            neg_lists_.assign(2 * std::size_t{a.negative_part_size()}, {});
            for (std::size_t id = 0; id < inst_.docs.size(); ++id) {
                for (auto s : *inst_.docs[id].second_part) {
                    neg_lists_[s - a.negative_a_begin()].push_back(static_cast<DocId>(id));
                    ++space;
                }
            }
        }
        set_space(space);
    }

    Answer from_lists(const Query2P& q) const {
        Answer a;
        DocSet out;
        switch (inst_.family) {
            case Family::two_pattern: {
                const DocSet& l1 = pos_lists_[positive_list(q.first)];
                const DocSet& l2 = pos_lists_[positive_list(q.second)];
                std::set_intersection(l1.begin(), l1.end(), l2.begin(), l2.end(), std::back_inserter(out));
                a.time = l1.size() + l2.size();
                break;
            }
            case Family::forbidden_pattern: {
                const DocSet& l1 = pos_lists_[positive_list(q.first)];
                const DocSet& ln = negative_list(q.second.initial);
                std::set_difference(l1.begin(), l1.end(), ln.begin(), ln.end(), std::back_inserter(out));
                a.time = l1.size() + ln.size();
                break;
            }
            case Family::two_forbidden: {
                const DocSet& lx = negative_list(q.first.initial);
                const DocSet& ly = negative_list(q.second.initial);
                DocSet either;
                std::set_union(lx.begin(), lx.end(), ly.begin(), ly.end(), std::back_inserter(either));
                std::size_t j = 0;
                for (DocId id = 0; id < inst_.docs.size(); ++id) {
                    if (j < either.size() && either[j] == id)
                        ++j;
                    else
                        out.push_back(id);
                }
                a.time = inst_.docs.size() + lx.size() + ly.size();
                break;
            }
        }
        a.ids = widen(out);
        return a;
    }

    void build_table(std::uint64_t budget) {
        const std::uint64_t n = inst_.query_count();
        if (n > budget) throw FamilyTooLarge("full table exceeds the memory budget");
        std::uint64_t space = 0;
        table_.reserve(n);
        for (std::uint64_t r = 0; r < n; ++r) {
            table_.push_back(oracle(r));
            space += table_.back().size();
            if (space + table_.size() > budget) throw FamilyTooLarge("full table exceeds the memory budget");
        }
        set_space(space);
    }

    const Instance2P& inst_;
    std::vector<DocSet> pos_lists_, neg_lists_;
    std::vector<std::vector<std::uint64_t>> table_;
};

class GappedStructure : public ReferenceStructure {
public:
    GappedStructure(StructureKind kind, const ParamsGpi& params, std::uint64_t budget)
        : ReferenceStructure(kind, 0), dict_(params), texts_(params) {
        if (kind == StructureKind::inverted_lists)
            throw ParameterError("inverted lists are not offered for gapped dictionaries");
        if (kind == StructureKind::naive_scan) {
            set_space(dict_.total_characters());
        } else {
            if (texts_.size() > budget) throw FamilyTooLarge("full table exceeds the memory budget");
            std::uint64_t space = 0;
            for (std::uint64_t r = 0; r < texts_.size(); ++r) {
                table_.push_back(oracle(r));
                space += table_.back().size();
                if (space + table_.size() > budget) throw FamilyTooLarge("full table exceeds the memory budget");
            }
            set_space(space);
        }
    }

    std::uint64_t query_count() const override { return texts_.size(); }

    std::vector<std::uint64_t> oracle(std::uint64_t rank) const override {
        const GpiText text = texts_.at(rank);
        std::vector<std::uint64_t> out;
        dict_.for_each([&](std::uint64_t r, const GappedPattern& pat) {
            if (match_gapped(text, pat)) out.push_back(r);
        });
        return out;
    }

protected:
    Answer compute(std::uint64_t rank) const override {
        Answer a;
        if (kind() == StructureKind::naive_scan) {
            a.ids = oracle(rank);
            a.time = space_cells();
        } else {
            a.ids = table_[rank];
            a.time = a.ids.size() + 1;
        }
        return a;
    }

private:
    GpiDictionary dict_;
    GpiTextFamily texts_;
    std::vector<std::vector<std::uint64_t>> table_;
};

}  // namespace

std::unique_ptr<ReferenceStructure> build_structure(StructureKind kind, const Instance2P& inst,
                                                    std::uint64_t memory_budget) {
    return std::make_unique<TwoPatternStructure>(kind, inst, memory_budget);
}

std::unique_ptr<ReferenceStructure> build_structure(StructureKind kind, const ParamsGpi& params,
                                                    std::uint64_t memory_budget) {
    return std::make_unique<GappedStructure>(kind, params, memory_budget);
}

std::vector<std::uint64_t> sample_ranks(std::uint64_t n, std::uint64_t count, std::uint64_t seed) {
    std::vector<std::uint64_t> out;
    if (n <= count) {
        out.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) out[i] = i;
        return out;
    }
    Rng rng(derive_seed(seed, 0));
    std::set<std::uint64_t> chosen;
    while (chosen.size() < count) chosen.insert(rng.below(n));
    return {chosen.begin(), chosen.end()};
}

BenchResult run_benchmark(const ReferenceStructure& s, std::span<const std::uint64_t> ranks,
                          const BenchConfig& config, std::ostream* csv) {
    struct Outcome {
        BenchRow row;
        bool ok = true;
    };
    std::vector<Outcome> outcomes(ranks.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < ranks.size(); i += workers) {
                const Answer a = s.answer(ranks[i]);
                outcomes[i].ok = a.ids == s.oracle(ranks[i]);
                outcomes[i].row = {ranks[i], a.ids.size(), a.time, s.space_cells()};
            }
        }));
    }
    for (auto& j : jobs) j.get();

    BenchResult res;
    for (const auto& o : outcomes) {
        if (!o.ok) throw BenchMismatch(o.row.query_rank);
        res.rows.push_back(o.row);
    }
    std::sort(res.rows.begin(), res.rows.end(),
              [](const BenchRow& a, const BenchRow& b) { return a.query_rank < b.query_rank; });

    res.min_output = res.rows.empty() ? 0 : UINT64_MAX;
    res.min_space_overhead = res.rows.empty() ? 0 : INFINITY;
    for (const auto& r : res.rows) {
        res.min_output = std::min(res.min_output, r.output_size);
        const std::uint64_t over = r.time_units > r.output_size ? r.time_units - r.output_size : 1;
        res.min_space_overhead = std::min(res.min_space_overhead,
                                          static_cast<double>(r.space_cells) * static_cast<double>(std::max<std::uint64_t>(over, 1)));
    }
    res.chazelle = chazelle_bound(static_cast<double>(s.query_count()),
                                  static_cast<double>(std::max<std::uint64_t>(res.min_output, 1)), config.ell,
                                  config.beta, config.alpha, config.constants);
    res.dominates = !res.rows.empty() && res.min_space_overhead >= res.chazelle.value();

    if (csv) {
        std::ostringstream os;
        os.precision(17);
        os << "query_rank,output_size,time_units,space_cells\n";
        for (const auto& r : res.rows)
            os << r.query_rank << ',' << r.output_size << ',' << r.time_units << ',' << r.space_cells << '\n';
        os << "#footer structure=" << structure_name(s.kind()) << '\n'
           << "#footer queries=" << res.rows.size() << '\n'
           << "#footer query_count=" << s.query_count() << '\n'
           << "#footer min_output=" << res.min_output << '\n'
           << "#footer ell=" << config.ell << '\n'
           << "#footer beta=" << config.beta << '\n'
           << "#footer alpha=" << config.alpha << '\n'
           << "#footer chazelle_log2=" << res.chazelle.log2_value << '\n'
           << "#footer chazelle_value=" << res.chazelle.value() << '\n'
           << "#footer min_space_overhead=" << res.min_space_overhead << '\n'
           << "#footer dominates=" << (res.dominates ? 1 : 0) << '\n';
        *csv << os.str();
    }
    return res;
}

}  // namespace pmlab
