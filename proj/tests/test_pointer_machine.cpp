#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "exact_bound.hpp"
#include "oracles.hpp"
#include "pmlab/errors.hpp"
#include "pmlab/pointer_machine.hpp"
#include "pmlab/random.hpp"

using namespace pmlab;

namespace {

// root 0 -> 1 -> 2 -> 3, element e stored at node i is 100 + i.
PMGraph path_graph(std::uint32_t n) {
    PMGraph g;
    for (std::uint32_t i = 0; i < n; ++i) {
        PMNode node;
        node.elem = 100 + i;
        if (i + 1 < n) node.out.push_back(i + 1);
        g.nodes.push_back(node);
    }
    return g;
}

}  // namespace

TEST(PMGraph, Validate) {
    auto g = path_graph(3);
    EXPECT_NO_THROW(g.validate());
    EXPECT_EQ(g.space(), 3u);
    g.nodes[0].out = {1, 2, 0};
    EXPECT_THROW(g.validate(), ParameterError);
    g = path_graph(3);
    g.nodes[2].out = {7};
    EXPECT_THROW(g.validate(), ParameterError);
    g = path_graph(3);
    g.root = 3;
    EXPECT_THROW(g.validate(), ParameterError);
}

TEST(Trace, FullPath) {
    const auto g = path_graph(4);
    const auto res = validate_trace(g, {1, {0, 1, 2, 3}, {103}}, {103});
    EXPECT_TRUE(res.ok);
    EXPECT_EQ(res.time, 4u);
    EXPECT_TRUE(res.missing.empty());
}

TEST(Trace, MissingElement) {
    const auto g = path_graph(4);
    const auto res = validate_trace(g, {1, {0, 1}, {}}, {103, 100, 103});
    EXPECT_FALSE(res.ok);
    EXPECT_EQ(res.missing, (std::vector<ElemId>{103}));
    EXPECT_EQ(res.time, 2u);
}

TEST(Trace, MalformedStepIdentified) {
    const auto g = path_graph(4);
    try {
        validate_trace(g, {1, {0, 2}, {}}, {});
        FAIL();
    } catch (const TraceError& e) {
        EXPECT_EQ(e.index(), 1u);
    }
    try {
        validate_trace(g, {1, {1, 2}, {}}, {});
        FAIL();
    } catch (const TraceError& e) {
        EXPECT_EQ(e.index(), 0u);
    }
    EXPECT_THROW(validate_trace(g, {1, {0, 9}, {}}, {}), TraceError);
    EXPECT_NO_THROW(validate_trace(g, {1, {0, 1, 0, 1, 2}, {}}, {}));
}

TEST(Trace, BrokenPermutationsRejected) {
    // Binary tree with 7 nodes in heap order.
    PMGraph g;
    for (std::uint32_t i = 0; i < 7; ++i) {
        PMNode node;
        node.elem = i;
        for (auto c : {2 * i + 1, 2 * i + 2})
            if (c < 7) node.out.push_back(c);
        g.nodes.push_back(node);
    }
    std::vector<NodeId> order = {0, 1, 2, 3, 4, 5, 6};
    std::uint64_t valid = 0, rejected = 0;
    do {
        bool connected = order[0] == 0;
        for (std::size_t i = 1; i < order.size() && connected; ++i) {
            const NodeId parent = (order[i] - 1) / 2;
            connected = std::find(order.begin(), order.begin() + static_cast<long>(i), parent) != order.begin() + static_cast<long>(i);
        }
        const Trace t{0, order, {}};
        if (connected) {
            const auto res = validate_trace(g, t, {0, 1, 2, 3, 4, 5, 6});
            EXPECT_TRUE(res.ok);
            EXPECT_EQ(res.time, 7u);
            ++valid;
        } else {
            EXPECT_THROW(validate_trace(g, t, {}), TraceError);
            ++rejected;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    EXPECT_EQ(valid + rejected, 5040u);
    EXPECT_EQ(valid, 80u);
}

TEST(GraphIO, RoundTrip) {
    auto g = path_graph(3);
    g.nodes[1].elem.reset();
    g.nodes[0].out.push_back(2);
    const std::vector<Trace> traces = {{5, {0, 2}, {}}, {6, {0, 1, 2}, {}}};
    std::stringstream ss;
    write_graph(ss, g, traces);
    EXPECT_EQ(ss.str(), "root 0\nnode 0 elem 100 1 2\nnode 1 2\nnode 2 elem 102\ntrace 5 0 2\ntrace 6 0 1 2\n");
    std::vector<Trace> back;
    const auto h = read_graph(ss, &back);
    ASSERT_EQ(h.nodes.size(), 3u);
    EXPECT_EQ(h.nodes[0].out, (std::vector<NodeId>{1, 2}));
    EXPECT_FALSE(h.nodes[1].elem);
    EXPECT_EQ(*h.nodes[2].elem, 102u);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].visited, (std::vector<NodeId>{0, 1, 2}));
    EXPECT_EQ(back[0].query, 5u);
}

TEST(GraphIO, Errors) {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_graph(in);
    };
    EXPECT_THROW(parse("node 0\n"), FormatError);
    EXPECT_THROW(parse("root 0\nnode 1\n"), FormatError);
    EXPECT_THROW(parse("root 0\nnode 0 x\n"), FormatError);
    EXPECT_THROW(parse("root 0\nnode 0 1 1 1\nnode 1\n"), FormatError);
    EXPECT_THROW(parse("root 0\nedge 0 1\n"), FormatError);
    EXPECT_NO_THROW(parse("# comment\nroot 0\nnode 0\n"));
}

TEST(Partition, PathExample) {
    const auto t = BinaryTree::path(9, {0, 3, 5, 8});
    const auto pieces = partition_marked_tree(t, 2);
    ASSERT_EQ(pieces.size(), 2u);
    EXPECT_EQ(pieces[0].marked, 2u);
    EXPECT_EQ(pieces[1].marked, 2u);
    EXPECT_EQ(pieces[1].top, 0u);
    EXPECT_TRUE(oracle::is_partition(t, pieces));
}

TEST(Partition, AllMarkedBetaOne) {
    const auto t = BinaryTree::random(200, 1, 1, 4);
    const auto pieces = partition_marked_tree(t, 1);
    EXPECT_TRUE(oracle::is_partition(t, pieces));
    for (const auto& p : pieces) {
        EXPECT_GE(p.marked, 1u);
        EXPECT_LE(p.marked, 2u);
    }
}

TEST(Partition, FewMarksGiveOnePiece) {
    const auto t = BinaryTree::path(10, {4});
    const auto pieces = partition_marked_tree(t, 3);
    ASSERT_EQ(pieces.size(), 1u);
    EXPECT_EQ(pieces[0].nodes.size(), 10u);
    EXPECT_EQ(pieces[0].marked, 1u);
    EXPECT_THROW(partition_marked_tree(t, 0), ParameterError);
}

TEST(Partition, RandomTreesKeepBounds) {
    Rng rng(2026);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::uint32_t>(1 + rng.below(10000));
        const std::uint64_t num = rng.below(11);
        const std::uint64_t beta = std::uint64_t{1} << (1 + rng.below(3));
        const auto t = BinaryTree::random(n, num, 10, rng.next());
        const auto pieces = partition_marked_tree(t, beta);
        ASSERT_TRUE(oracle::is_partition(t, pieces));
        const std::uint64_t marks = t.marked_count();
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
            EXPECT_GE(pieces[i].marked, beta);
            EXPECT_LE(pieces[i].marked, 2 * beta);
        }
        EXPECT_EQ(pieces.back().top, t.root);
        if (marks >= beta) {
            EXPECT_GE(pieces.size(), marks / (2 * beta));
            EXPECT_LE(pieces.size(), (marks + beta - 1) / beta + 1);
        }
    }
}

TEST(BinaryTree, RandomShape) {
    const auto t = BinaryTree::random(500, 1, 3, 9);
    EXPECT_EQ(t.size(), 500u);
    std::uint64_t roots = 0;
    for (std::uint32_t v = 0; v < 500; ++v) {
        roots += t.parent[v] == BinaryTree::kNone;
        for (auto c : {t.left[v], t.right[v]})
            if (c != BinaryTree::kNone) {
                EXPECT_EQ(t.parent[c], v);
            }
    }
    EXPECT_EQ(roots, 1u);
    EXPECT_NEAR(static_cast<double>(t.marked_count()), 500.0 / 3, 40);
    EXPECT_THROW(BinaryTree::random(0, 1, 2, 1), ParameterError);
    EXPECT_THROW(BinaryTree::random(5, 3, 2, 1), ParameterError);
}

TEST(Chazelle, Instantiation) {
    const auto c = chazelle_bound(1000, 7, 1, 1, 1);
    EXPECT_NEAR(c.value(), 7.0 * 1000 / 4, 1e-9);
    const auto d = chazelle_bound(2000, 7, 1, 1, 1);
    EXPECT_NEAR(d.value() / c.value(), 2.0, 1e-12);
    EXPECT_THROW(chazelle_bound(1000, 0, 1, 1), ParameterError);
    EXPECT_THROW(chazelle_bound(1000, 7, 0, 1), ParameterError);
    EXPECT_THROW(chazelle_bound(1000, 7, 1, 0), ParameterError);
}

TEST(Chazelle, Monotone) {
    const auto base = chazelle_bound(1e5, 30, 4, 3, 2);
    EXPECT_GT(chazelle_bound(2e5, 30, 4, 3, 2).value(), base.value());
    EXPECT_GT(chazelle_bound(1e5, 60, 4, 3, 2).value(), base.value());
    EXPECT_LT(chazelle_bound(1e5, 30, 8, 3, 2).value(), base.value());
    // Fixed navigation budget alpha*beta = 12: raising beta lowers the value.
    EXPECT_LT(chazelle_bound(1e5, 30, 4, 4, 3).value(), chazelle_bound(1e5, 30, 4, 3, 4).value());
    EXPECT_LT(chazelle_bound(1e5, 30, 4, 6, 2).value(), chazelle_bound(1e5, 30, 4, 4, 3).value());
}

TEST(Chazelle, ExactRationalAgreement) {
    struct Case {
        std::uint64_t q, t, ell, beta, alpha;
    };
    for (const Case& k : {Case{124992, 34, 8, 6, 1}, Case{124992, 32, 3, 6, 1}, Case{1000000007, 12345, 17, 40, 3},
                          Case{12, 8, 3, 40, 1}}) {
        const auto cert = chazelle_bound(static_cast<double>(k.q), static_cast<double>(k.t), k.ell, k.beta, k.alpha);
        const double exact = exact::log2_of(exact::chazelle(k.q, k.t, k.ell, k.beta, k.alpha));
        EXPECT_NEAR(std::exp2(cert.log2_value - exact), 1.0, 1e-9);
    }
}

TEST(Afshani, Values) {
    EXPECT_DOUBLE_EQ(afshani_bound(1, 1, 0, true).value(), 1.0);
    const auto a = afshani_bound(40, 0.25, 3, true);
    EXPECT_NEAR(a.value(), 40 * 4 / 8.0, 1e-12);
    EXPECT_NEAR(afshani_bound(40, 0.125, 3, true).value() / a.value(), 2.0, 1e-12);
    EXPECT_TRUE(a.search_overhead_attested);
    EXPECT_FALSE(afshani_bound(40, 0.25, 3, false).search_overhead_attested);
    const auto u = afshani_bound(40, 0, 3, true);
    EXPECT_TRUE(u.unbounded);
    EXPECT_TRUE(std::isinf(u.value()));
    EXPECT_THROW(afshani_bound(40, 1.5, 3, true), ParameterError);
    EXPECT_THROW(afshani_bound(40, -0.1, 3, true), ParameterError);
    BoundConstants k;
    k.c_beta = 2;
    EXPECT_NEAR(afshani_bound(40, 0.25, 3, true, k).value(), 40 * 4 / 64.0, 1e-12);
}

TEST(Certificate, RoundTripAndRecompute) {
    BoundConstants k;
    k.c = 0.5;
    k.c_cat = 3;
    for (const auto& cert : {chazelle_bound(124992, 34, 8, 6, 1, k), afshani_bound(12, 0.3, 2, true, k),
                             afshani_bound(12, 0, 2, false)}) {
        std::stringstream ss;
        write_certificate(ss, cert);
        const auto back = read_certificate(ss);
        EXPECT_EQ(back.kind, cert.kind);
        EXPECT_EQ(back.beta, cert.beta);
        EXPECT_EQ(back.ell, cert.ell);
        EXPECT_EQ(back.unbounded, cert.unbounded);
        EXPECT_EQ(back.search_overhead_attested, cert.search_overhead_attested);
        EXPECT_DOUBLE_EQ(back.constants.c_cat, cert.constants.c_cat);
        EXPECT_DOUBLE_EQ(back.log2_value, cert.log2_value);
        EXPECT_DOUBLE_EQ(recompute_log2(back), cert.log2_value);
    }
    std::istringstream bad("kind=other\n");
    EXPECT_THROW(read_certificate(bad), FormatError);
    std::istringstream missing("kind=chazelle\n");
    EXPECT_THROW(read_certificate(missing), FormatError);
}
