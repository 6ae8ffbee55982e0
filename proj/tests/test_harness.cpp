#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "pmlab/errors.hpp"
#include "pmlab/harness.hpp"

using namespace pmlab;

namespace {

Instance2P small(Family f, unsigned sigma, unsigned p, std::uint32_t D, std::uint64_t seed) {
    Params2P prm;
    prm.sigma_bits = sigma;
    prm.trailing_bits = p;
    prm.doc_count = D;
    return draw_instance(f, prm, seed);
}

std::vector<std::uint64_t> all_ranks(const ReferenceStructure& s) { return sample_ranks(s.query_count(), s.query_count(), 0); }

constexpr StructureKind kKinds[] = {StructureKind::naive_scan, StructureKind::inverted_lists, StructureKind::full_table};

}  // namespace

TEST(Structures, Names) {
    for (auto k : kKinds) EXPECT_EQ(parse_structure(structure_name(k)), k);
    EXPECT_EQ(parse_structure("naive"), StructureKind::naive_scan);
    EXPECT_EQ(parse_structure("inverted"), StructureKind::inverted_lists);
    EXPECT_EQ(parse_structure("full"), StructureKind::full_table);
    EXPECT_THROW(parse_structure("btree"), ParameterError);
}

TEST(Structures, SpaceAccounting) {
    const auto inst = small(Family::two_pattern, 2, 1, 8, 5);
    EXPECT_EQ(build_structure(StructureKind::naive_scan, inst)->space_cells(), inst.size_cells());
    // Every document sits in one positive list per character.
    EXPECT_EQ(build_structure(StructureKind::inverted_lists, inst)->space_cells(), 24u);
    const auto full = build_structure(StructureKind::full_table, inst);
    std::uint64_t total = 0;
    for (std::uint64_t r = 0; r < full->query_count(); ++r) total += full->oracle(r).size();
    EXPECT_EQ(full->space_cells(), total);
}

TEST(Structures, AnswersMatchOracleOnEveryFamily) {
    for (auto f : {Family::two_pattern, Family::forbidden_pattern, Family::two_forbidden}) {
        const auto inst = small(f, 3, 1, 40, 9);
        for (auto k : kKinds) {
            SCOPED_TRACE(std::string(structure_name(k)) + " " + std::string(family_name(f)));
            const auto s = build_structure(k, inst);
            ASSERT_EQ(s->query_count(), inst.query_count());
            for (std::uint64_t r = 0; r < s->query_count(); ++r) {
                const Answer a = s->answer(r);
                const DocSet truth = eval_query(inst, inst.query_at(r));
                ASSERT_EQ(a.ids, std::vector<std::uint64_t>(truth.begin(), truth.end())) << "rank " << r;
                switch (k) {
                    case StructureKind::naive_scan: EXPECT_EQ(a.time, inst.size_cells()); break;
                    case StructureKind::full_table: EXPECT_EQ(a.time, a.ids.size() + 1); break;
                    case StructureKind::inverted_lists: EXPECT_GE(a.time, a.ids.size()); break;
                }
            }
        }
    }
}

TEST(Structures, GappedDictionary) {
    ParamsGpi prm;
    prm.p = 2;
    prm.kappa = 1;
    prm.gamma = 3;
    prm.blocks = 3;
    const auto naive = build_structure(StructureKind::naive_scan, prm);
    const auto full = build_structure(StructureKind::full_table, prm);
    EXPECT_EQ(naive->space_cells(), GpiDictionary(prm).total_characters());
    EXPECT_EQ(naive->query_count(), GpiTextFamily(prm).size());
    for (std::uint64_t r = 0; r < naive->query_count(); ++r) {
        EXPECT_EQ(naive->answer(r).ids, full->answer(r).ids);
        EXPECT_EQ(full->answer(r).ids.size(), count_matches_exact(GpiTextFamily(prm).at(r), prm));
    }
    EXPECT_THROW(build_structure(StructureKind::inverted_lists, prm), ParameterError);
}

TEST(Structures, FullTableBudget) {
    const auto inst = small(Family::two_pattern, 3, 1, 40, 2);
    EXPECT_THROW(build_structure(StructureKind::full_table, inst, 10), FamilyTooLarge);
}

TEST(SampleRanks, AllOrSeededSample) {
    EXPECT_EQ(sample_ranks(4, 10, 1), (std::vector<std::uint64_t>{0, 1, 2, 3}));
    const auto a = sample_ranks(1000, 50, 3);
    ASSERT_EQ(a.size(), 50u);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    EXPECT_EQ(std::adjacent_find(a.begin(), a.end()), a.end());
    EXPECT_LT(a.back(), 1000u);
    EXPECT_EQ(a, sample_ranks(1000, 50, 3));
    EXPECT_NE(a, sample_ranks(1000, 50, 4));
}

TEST(Benchmark, RowsFooterAndDominance) {
    const auto inst = small(Family::two_pattern, 2, 1, 16, 4);
    const auto s = build_structure(StructureKind::inverted_lists, inst);
    const auto ranks = all_ranks(*s);
    BenchConfig cfg;
    cfg.ell = 3;
    cfg.beta = 4;
    std::ostringstream csv;
    const BenchResult res = run_benchmark(*s, ranks, cfg, &csv);
    ASSERT_EQ(res.rows.size(), s->query_count());

    std::uint64_t min_out = UINT64_MAX;
    double overhead = INFINITY;
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const auto& row = res.rows[i];
        EXPECT_EQ(row.query_rank, i);
        EXPECT_EQ(row.output_size, eval_query(inst, inst.query_at(i)).size());
        EXPECT_EQ(row.space_cells, s->space_cells());
        min_out = std::min(min_out, row.output_size);
        const std::uint64_t over = row.time_units > row.output_size ? row.time_units - row.output_size : 1;
        overhead = std::min(overhead, double(row.space_cells) * double(over));
    }
    EXPECT_EQ(res.min_output, min_out);
    EXPECT_DOUBLE_EQ(res.min_space_overhead, overhead);
    EXPECT_EQ(res.dominates, res.min_space_overhead >= res.chazelle.value());
    EXPECT_EQ(res.chazelle.ell, 3u);

    const std::string text = csv.str();
    EXPECT_EQ(text.rfind("query_rank,output_size,time_units,space_cells\n0,", 0), 0u);
    EXPECT_NE(text.find("#footer structure=inverted-lists\n"), std::string::npos);
    EXPECT_NE(text.find("#footer queries=" + std::to_string(ranks.size()) + "\n"), std::string::npos);
    EXPECT_NE(text.find("#footer dominates="), std::string::npos);
    std::istringstream lines(text);
    std::string line;
    std::size_t data = 0;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#') ++data;
    EXPECT_EQ(data, ranks.size() + 1);
}

TEST(Benchmark, FaultInjectionIsCaught) {
    const auto inst = small(Family::forbidden_pattern, 2, 1, 16, 4);
    for (auto k : kKinds) {
        auto s = build_structure(k, inst);
        s->inject_fault(5);
        const auto ranks = all_ranks(*s);
        try {
            run_benchmark(*s, ranks, {});
            FAIL() << structure_name(k);
        } catch (const BenchMismatch& e) {
            EXPECT_EQ(e.rank(), 5u);
        }
        const std::vector<std::uint64_t> others = {0, 1, 2};
        EXPECT_NO_THROW(run_benchmark(*s, others, {}));
    }
}

TEST(Benchmark, EmptyRankList) {
    const auto inst = small(Family::two_pattern, 2, 1, 8, 1);
    const auto s = build_structure(StructureKind::naive_scan, inst);
    const BenchResult res = run_benchmark(*s, {}, {});
    EXPECT_TRUE(res.rows.empty());
    EXPECT_EQ(res.min_output, 0u);
    EXPECT_FALSE(res.dominates);
}
