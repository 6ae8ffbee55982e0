#pragma once

// Pointer-machine cost model, marked-tree partition, and the two framework
// lower-bound calculators.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmlab {

using NodeId = std::uint32_t;
using ElemId = std::uint64_t;

struct PMNode {
    std::optional<ElemId> elem;
    std::vector<NodeId> out;  // at most two
};

struct PMGraph {
    std::vector<PMNode> nodes;
    NodeId root = 0;

    std::size_t space() const { return nodes.size(); }
    // ParameterError on outdegree above two, dangling edges, or a bad root.
    void validate() const;
};

struct Trace {
    std::uint64_t query = 0;
    std::vector<NodeId> visited;
    std::vector<ElemId> outputs_claimed;
};

struct TraceResult {
    std::uint64_t time = 0;
    bool ok = false;
    std::vector<ElemId> missing;  // sorted
};

class TraceError : public std::runtime_error {
public:
    TraceError(std::size_t index, const std::string& what)
        : std::runtime_error("trace step " + std::to_string(index) + ": " + what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// Throws TraceError at the first step that is not the root (step 0), not a
// node, or not reachable by one edge from an earlier step.
TraceResult validate_trace(const PMGraph& graph, const Trace& trace,
                           const std::vector<ElemId>& required);

// Line format: "root <id>", "node <id> [elem <eid>] [<to> [<to>]]",
// "trace <qid> <id>...".  Nodes must appear with ids 0, 1, 2, ...
PMGraph read_graph(std::istream& in, std::vector<Trace>* traces = nullptr);
void write_graph(std::ostream& out, const PMGraph& graph, const std::vector<Trace>& traces = {});

// ---------------------------------------------------------------------------

struct BinaryTree {
    static constexpr std::uint32_t kNone = UINT32_MAX;

    std::vector<std::uint32_t> left, right, parent;
    std::vector<bool> marked;
    std::uint32_t root = 0;

    std::size_t size() const { return left.size(); }
    std::uint64_t marked_count() const;
    // Random shape with n nodes; each node marked with probability
    // mark_num / mark_den.
    static BinaryTree random(std::uint32_t n, std::uint64_t mark_num, std::uint64_t mark_den,
                             std::uint64_t seed);
    static BinaryTree path(std::uint32_t n, const std::vector<std::uint32_t>& marked_nodes);
};

struct TreePiece {
    std::uint32_t top = 0;              // the piece's root node
    std::vector<std::uint32_t> nodes;   // sorted
    std::uint64_t marked = 0;
};

// Bottom-up greedy: a node closes a piece once the marked nodes gathered
// from it and its children's open remainders reach beta.  Every piece other
// than the one holding the tree root has between beta and 2 beta - 1 marked
// nodes.  The root piece is last.  Throws ParameterError for beta = 0.
std::vector<TreePiece> partition_marked_tree(const BinaryTree& tree, std::uint64_t beta);

// ---------------------------------------------------------------------------

enum class BoundKind { chazelle, afshani };

struct BoundConstants {
    double c = 1;      // leading constant
    double c_cat = 4;  // base of the reachable-set count c_cat^(alpha beta)
    double c_beta = 1; // exponent constant in 2^(-c_beta beta)
};

struct BoundCertificate {
    BoundKind kind = BoundKind::chazelle;
    // chazelle
    double q_count = 0;
    double t = 0;
    std::uint64_t ell = 0;
    std::uint64_t beta = 0;
    std::uint64_t alpha = 1;
    // afshani
    double v = 0;
    bool search_overhead_attested = false;  // caller vouches t >= g(n)

    BoundConstants constants;
    bool unbounded = false;  // afshani with v = 0
    double log2_value = 0;

    double value() const;
};

// c t q / (beta ell) / (c_cat^(alpha beta) C(alpha beta, beta)), in log space.
BoundCertificate chazelle_bound(double q_count, double t, std::uint64_t ell, std::uint64_t beta,
                                std::uint64_t alpha = 1, const BoundConstants& k = {});

// c t / v 2^(-c_beta beta).  v = 0 yields an unbounded certificate.
BoundCertificate afshani_bound(double t, double v, std::uint64_t beta, bool attested_search_overhead,
                               const BoundConstants& k = {});

// Recomputes log2_value from the certificate's inputs.
double recompute_log2(const BoundCertificate& cert);

void write_certificate(std::ostream& out, const BoundCertificate& cert);
BoundCertificate read_certificate(std::istream& in);

}  // namespace pmlab
