#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>

#include "pmlab/errors.hpp"
#include "pmlab/random.hpp"
#include "pmlab/semigroup.hpp"

using namespace pmlab;

namespace {

// 2P instance over sigma = 3, p = 1 whose documents are given by their
// per-character prefix bits (the low sigma - p payload bits are zero).
Instance2P crafted(const std::vector<std::vector<std::uint32_t>>& prefixes, unsigned ell, std::uint32_t beta) {
    Instance2P inst;
    inst.params.sigma_bits = 3;
    inst.params.trailing_bits = 1;
    inst.params.ell = ell;
    inst.params.beta = beta;
    inst.params.doc_count = static_cast<std::uint32_t>(prefixes.size());
    for (const auto& pre : prefixes) {
        Doc2P d;
        d.sigma_bits = 3;
        for (auto b : pre) d.payloads.push_back(b << 2);
        inst.docs.push_back(d);
    }
    return inst;
}

SumScheme scheme_of(std::size_t n, std::vector<DocSet> sums) {
    SumScheme s;
    s.weights.assign(n, 1);
    std::uint64_t id = 0;
    for (auto& d : sums) {
        PrecomputedSum p{id++, d, std::vector<std::uint32_t>(d.size(), 1)};
        s.sums.push_back(p);
    }
    return s;
}

}  // namespace

TEST(SemiGroup, AxiomsOnSamples) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const auto a = rng.below(1000), b = rng.below(1000), c = rng.below(1000);
        EXPECT_EQ(AddNat::combine(AddNat::combine(a, b), c), AddNat::combine(a, AddNat::combine(b, c)));
        EXPECT_EQ(AddNat::combine(a, b), AddNat::combine(b, a));
        EXPECT_EQ(MaxNat::combine(MaxNat::combine(a, b), c), MaxNat::combine(a, MaxNat::combine(b, c)));
        EXPECT_EQ(MaxNat::combine(a, b), MaxNat::combine(b, a));
        // No inverses: combining never returns to the identity 0 from a > 0.
        if (a > 0) {
            EXPECT_NE(AddNat::combine(a, b), 0u);
            EXPECT_NE(MaxNat::combine(a, b), 0u);
        }
    }
    EXPECT_FALSE(AddNat::idempotent);
    EXPECT_TRUE(MaxNat::idempotent);
}

TEST(SumScheme, Validation) {
    auto s = SumScheme::singletons(3);
    EXPECT_NO_THROW(s.validate());
    s.sums[1].coeffs[0] = 0;
    EXPECT_THROW(s.validate(), ParameterError);
    s = scheme_of(3, {{2, 1}});
    EXPECT_THROW(s.validate(), ParameterError);
    s = scheme_of(3, {{}});
    EXPECT_THROW(s.validate(), ParameterError);
}

TEST(Answer, SingletonsAnswerEverything) {
    Params2P prm;
    prm.sigma_bits = 3;
    prm.trailing_bits = 1;
    prm.doc_count = 30;
    const auto inst = draw_instance(Family::two_pattern, prm, 3);
    const auto scheme = SumScheme::singletons(30);
    for (std::uint64_t r = 0; r < inst.query_count(); ++r) {
        const auto q = inst.query_at(r);
        const auto expect = eval_query(inst, q);
        const auto ans = answer_with_sums(scheme, inst, q);
        ASSERT_EQ(ans.status, AnswerStatus::answered);
        EXPECT_EQ(ans.selected.size(), expect.size());
        const auto fs = formal_sum(scheme, ans.selected);
        ASSERT_EQ(fs.size(), expect.size());
        for (std::size_t i = 0; i < fs.size(); ++i) {
            EXPECT_EQ(fs[i].first, expect[i]);
            EXPECT_EQ(fs[i].second, 1u);
        }
    }
}

TEST(Answer, CannotSubtract) {
    const auto scheme = scheme_of(3, {{1, 2}});
    EXPECT_EQ(answer_with_sums(scheme, DocSet{1}).status, AnswerStatus::no_cover);
    EXPECT_EQ(answer_with_sums(scheme, DocSet{1, 2}).status, AnswerStatus::answered);
}

TEST(Answer, ExactQuerySum) {
    const auto scheme = scheme_of(6, {{0, 2, 5}, {0}, {2}, {5}});
    const auto ans = answer_with_sums(scheme, DocSet{0, 2, 5});
    ASSERT_EQ(ans.status, AnswerStatus::answered);
    EXPECT_EQ(ans.selected, (std::vector<std::size_t>{0}));
    EXPECT_EQ(ans.coefficients, (std::vector<std::uint32_t>{1}));
}

TEST(Answer, CapAndCoefficients) {
    const auto singles = SumScheme::singletons(6);
    EXPECT_EQ(answer_with_sums(singles, DocSet{0, 1, 2, 3, 4}, 3).status, AnswerStatus::cap_exceeded);
    EXPECT_EQ(answer_with_sums(singles, DocSet{0, 1, 2}, 3).status, AnswerStatus::answered);
    EXPECT_EQ(answer_with_sums(singles, DocSet{}, 0).status, AnswerStatus::answered);
    auto doubled = scheme_of(2, {{0, 1}});
    doubled.sums[0].coeffs = {2, 1};
    EXPECT_EQ(answer_with_sums(doubled, DocSet{0, 1}).status, AnswerStatus::no_cover);
}

TEST(Answer, ExactCoverNeedsBacktracking) {
    // {0,1} first would strand 2; the only cover is {0} + {1,2}.
    const auto scheme = scheme_of(3, {{0, 1}, {0}, {1, 2}});
    const auto ans = answer_with_sums(scheme, DocSet{0, 1, 2});
    ASSERT_EQ(ans.status, AnswerStatus::answered);
    auto sel = ans.selected;
    std::sort(sel.begin(), sel.end());
    EXPECT_EQ(sel, (std::vector<std::size_t>{1, 2}));
}

TEST(Answer, FaithfulnessUnderMax) {
    auto scheme = scheme_of(2, {{0, 1}, {0}});
    scheme.weights = {5, 5};
    const std::size_t both[] = {0}, single[] = {1};
    EXPECT_EQ(evaluate<MaxNat>(scheme, both), evaluate<MaxNat>(scheme, single));
    const auto ans = answer_with_sums(scheme, DocSet{0});
    ASSERT_EQ(ans.status, AnswerStatus::answered);
    EXPECT_EQ(ans.selected, (std::vector<std::size_t>{1}));
    EXPECT_EQ(answer_with_sums(scheme_of(2, {{0, 1}}), DocSet{0}).status, AnswerStatus::no_cover);
}

TEST(Evaluate, AddNat) {
    auto scheme = scheme_of(3, {{0, 1}, {2}});
    scheme.weights = {2, 3, 7};
    const std::size_t all[] = {0, 1};
    EXPECT_EQ(evaluate<AddNat>(scheme, all), 12u);
    EXPECT_EQ(evaluate<MaxNat>(scheme, all), 7u);
}

TEST(Audit, PartialAgreementStaysBelowLimit) {
    // Three documents agree on characters 1 and 2 only: one usable query.
    const auto inst = crafted({{1, 0, 0, 1, 0, 1, 0}, {1, 0, 1, 0, 1, 0, 1}, {1, 0, 0, 0, 1, 1, 0}}, 3, 3);
    const auto scheme = scheme_of(3, {{0, 1, 2}, {0}, {1}, {2}});
    const auto audit = audit_crowded(scheme, inst, 3, 3, std::nullopt);
    EXPECT_EQ(audit.entries[0].usable, 1u);
    EXPECT_TRUE(audit.entries[0].crowded);
    EXPECT_FALSE(audit.entries[0].flagged);
    EXPECT_LE(audit.max_usable, 4u);
    EXPECT_TRUE(audit.flagged.empty());
    EXPECT_FALSE(audit.certified);
    for (std::size_t i = 1; i < 4; ++i) {
        EXPECT_FALSE(audit.entries[i].crowded);
        EXPECT_FALSE(audit.entries[i].flagged);
    }
}

TEST(Audit, NoCommonQuery) {
    const auto inst = crafted({{1, 1, 1, 1, 1, 1, 1}, {1, 0, 0, 0, 0, 0, 0}}, 2, 2);
    const auto audit = audit_crowded(scheme_of(2, {{0, 1}}), inst, 2, 2, std::nullopt);
    EXPECT_EQ(audit.entries[0].usable, 0u);
}

TEST(Audit, IdenticalDocumentsAreFlaggedAndUncertified) {
    const std::vector<std::uint32_t> same = {1, 0, 1, 1, 0, 0, 1};
    const auto inst = crafted({same, same, same}, 2, 3);
    const auto scheme = scheme_of(3, {{0, 1, 2}});
    const auto pre = max_docs_sharing_patterns(inst, 2);
    EXPECT_EQ(pre.max_shared, 3u);
    const auto audit = audit_crowded(scheme, inst, 3, 2, pre);
    EXPECT_EQ(audit.entries[0].usable, 21u);
    EXPECT_TRUE(audit.entries[0].flagged);
    EXPECT_EQ(audit.flagged, (std::vector<std::uint64_t>{0}));
    EXPECT_FALSE(audit.certified);
}

TEST(Audit, CertifiedWhenPreconditionHolds) {
    const auto inst = crafted({{1, 0, 0, 1, 0, 1, 0}, {1, 0, 1, 0, 1, 0, 1}, {0, 1, 0, 0, 1, 1, 0}}, 3, 3);
    const auto pre = max_docs_sharing_patterns(inst, 3);
    ASSERT_LT(pre.max_shared, 3u);
    const auto audit = audit_crowded(scheme_of(3, {{0, 1, 2}, {0, 1}}), inst, 3, 3, pre);
    EXPECT_TRUE(audit.certified);
    EXPECT_TRUE(audit.flagged.empty());
    std::ostringstream csv;
    write_audit_csv(csv, audit);
    EXPECT_EQ(csv.str(), "sum_id,size,usable_queries,flagged\n0,3,0,0\n1,2,1,0\n");
}

TEST(CountInequalities, Examples) {
    EXPECT_TRUE(check_count_inequalities(6, 2, 6, 3, 1000, 1).eq_count_ok);
    EXPECT_FALSE(check_count_inequalities(7, 2, 6, 3, 1000, 1).eq_count_ok);
    EXPECT_FALSE(check_count_inequalities(6, 1, 2, 3, 48, 3).eq_count2_ok);
    EXPECT_TRUE(check_count_inequalities(6, 1, 2, 3, 49, 3).eq_count2_ok);
    EXPECT_EQ(least_doc_count(1, 2, 3), 49u);
    const auto D = least_doc_count(2, 6, 1);
    EXPECT_EQ(D, 193u);
    const auto both = check_count_inequalities(6, 2, 6, 3, D, 1);
    EXPECT_TRUE(both.eq_count_ok);
    EXPECT_TRUE(both.eq_count2_ok);
}

TEST(SchemeIO, RoundTripAndErrors) {
    const auto scheme = scheme_of(5, {{0, 3}, {4}, {1, 2, 3}});
    std::ostringstream out;
    write_scheme(out, scheme);
    EXPECT_EQ(out.str(), "sum 0 docs 0,3\nsum 1 docs 4\nsum 2 docs 1,2,3\n");
    std::istringstream in(out.str());
    const auto back = read_scheme(in, 5);
    ASSERT_EQ(back.sums.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(back.sums[i].docs, scheme.sums[i].docs);
        EXPECT_EQ(back.sums[i].id, scheme.sums[i].id);
    }
    std::istringstream bad_id("sum 0 docs 0,9\n");
    EXPECT_THROW(read_scheme(bad_id, 5), FormatError);
    std::istringstream bad_kw("sum 0 ids 0\n");
    EXPECT_THROW(read_scheme(bad_kw, 5), FormatError);
    std::istringstream bad_tok("sum 0 docs 0,x\n");
    EXPECT_THROW(read_scheme(bad_tok, 5), FormatError);
}
