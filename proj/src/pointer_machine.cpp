#include "pmlab/pointer_machine.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "pmlab/combinatorics.hpp"
#include "pmlab/errors.hpp"
#include "pmlab/random.hpp"

namespace pmlab {

void PMGraph::validate() const {
    if (nodes.empty()) throw ParameterError("graph has no nodes");
    if (root >= nodes.size()) throw ParameterError("root is not a node");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].out.size() > 2) throw ParameterError("node " + std::to_string(i) + " has outdegree above two");
        for (auto to : nodes[i].out)
            if (to >= nodes.size()) throw ParameterError("node " + std::to_string(i) + " has a dangling edge");
    }
}

TraceResult validate_trace(const PMGraph& graph, const Trace& trace,
                           const std::vector<ElemId>& required) {
    std::vector<bool> reachable(graph.nodes.size(), false), seen(graph.nodes.size(), false);
    std::vector<ElemId> found;
    for (std::size_t i = 0; i < trace.visited.size(); ++i) {
        const NodeId v = trace.visited[i];
        if (v >= graph.nodes.size()) throw TraceError(i, "unknown node " + std::to_string(v));
        if (i == 0 && v != graph.root) throw TraceError(0, "exploration must start at the root");
        if (i > 0 && !reachable[v] && !seen[v]) throw TraceError(i, "node " + std::to_string(v) + " is not adjacent to the visited prefix");
        seen[v] = true;
        for (auto to : graph.nodes[v].out) reachable[to] = true;
        if (graph.nodes[v].elem) found.push_back(*graph.nodes[v].elem);
    }
    std::sort(found.begin(), found.end());
    TraceResult res;
    res.time = trace.visited.size();
    for (auto e : required)
        if (!std::binary_search(found.begin(), found.end(), e)) res.missing.push_back(e);
    std::sort(res.missing.begin(), res.missing.end());
    res.missing.erase(std::unique(res.missing.begin(), res.missing.end()), res.missing.end());
    res.ok = res.missing.empty();
    return res;
}

PMGraph read_graph(std::istream& in, std::vector<Trace>* traces) {
    PMGraph g;
    bool have_root = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') continue;
        if (word == "root") {
            if (!(ls >> g.root)) throw FormatError(lineno, "root needs a node id");
            have_root = true;
        } else if (word == "node") {
            std::uint64_t id;
            if (!(ls >> id) || id != g.nodes.size()) throw FormatError(lineno, "node ids must be 0, 1, 2, ...");
            PMNode node;
            std::string tok;
            while (ls >> tok) {
                if (tok == "elem") {
                    ElemId e;
                    if (!(ls >> e)) throw FormatError(lineno, "elem needs an id");
                    node.elem = e;
                    continue;
                }
                try {
                    std::size_t used = 0;
                    const unsigned long to = std::stoul(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                    node.out.push_back(static_cast<NodeId>(to));
                } catch (const std::logic_error&) {
                    throw FormatError(lineno, "bad edge target '" + tok + "'");
                }
            }
            g.nodes.push_back(std::move(node));
        } else if (word == "trace") {
            Trace t;
            if (!(ls >> t.query)) throw FormatError(lineno, "trace needs a query id");
            NodeId v;
            while (ls >> v) t.visited.push_back(v);
            if (!ls.eof()) throw FormatError(lineno, "bad node id in trace");
            if (traces) traces->push_back(std::move(t));
        } else {
            throw FormatError(lineno, "unknown record '" + word + "'");
        }
    }
    if (!have_root) throw FormatError(lineno, "missing root record");
    try {
        g.validate();
    } catch (const ParameterError& e) {
        throw FormatError(lineno, e.what());
    }
    return g;
}

void write_graph(std::ostream& out, const PMGraph& graph, const std::vector<Trace>& traces) {
    out << "root " << graph.root << '\n';
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        out << "node " << i;
        if (graph.nodes[i].elem) out << " elem " << *graph.nodes[i].elem;
        for (auto to : graph.nodes[i].out) out << ' ' << to;
        out << '\n';
    }
    for (const auto& t : traces) {
        out << "trace " << t.query;
        for (auto v : t.visited) out << ' ' << v;
        out << '\n';
    }
}

// ---------------------------------------------------------------------------

std::uint64_t BinaryTree::marked_count() const {
    return static_cast<std::uint64_t>(std::count(marked.begin(), marked.end(), true));
}

BinaryTree BinaryTree::random(std::uint32_t n, std::uint64_t mark_num, std::uint64_t mark_den,
                              std::uint64_t seed) {
    if (n == 0) throw ParameterError("tree needs at least one node");
    if (mark_den == 0 || mark_num > mark_den) throw ParameterError("marking probability must lie in [0, 1]");
    Rng rng(seed);
    BinaryTree t;
    t.left.assign(n, kNone);
    t.right.assign(n, kNone);
    t.parent.assign(n, kNone);
    t.marked.assign(n, false);
    std::vector<std::pair<std::uint32_t, bool>> slots{{0, false}, {0, true}};
    for (std::uint32_t v = 1; v < n; ++v) {
        const std::size_t k = rng.below(slots.size());
        const auto [u, right] = slots[k];
        slots[k] = slots.back();
        slots.pop_back();
        (right ? t.right : t.left)[u] = v;
        t.parent[v] = u;
        slots.push_back({v, false});
        slots.push_back({v, true});
    }
    for (std::uint32_t v = 0; v < n; ++v) t.marked[v] = rng.below(mark_den) < mark_num;
    return t;
}

BinaryTree BinaryTree::path(std::uint32_t n, const std::vector<std::uint32_t>& marked_nodes) {
    if (n == 0) throw ParameterError("tree needs at least one node");
    BinaryTree t;
    t.left.assign(n, kNone);
    t.right.assign(n, kNone);
    t.parent.assign(n, kNone);
    t.marked.assign(n, false);
    for (std::uint32_t v = 0; v + 1 < n; ++v) {
        t.left[v] = v + 1;
        t.parent[v + 1] = v;
    }
    for (auto v : marked_nodes) {
        if (v >= n) throw ParameterError("marked node outside the tree");
        t.marked[v] = true;
    }
    return t;
}

std::vector<TreePiece> partition_marked_tree(const BinaryTree& tree, std::uint64_t beta) {
    if (beta == 0) throw ParameterError("beta must be positive");
    const std::size_t n = tree.size();
    if (n == 0) return {};

    std::vector<std::uint32_t> order{tree.root};
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto c : {tree.left[order[i]], tree.right[order[i]]})
            if (c != BinaryTree::kNone) order.push_back(c);
    if (order.size() != n) throw ParameterError("tree is not connected from its root");

    std::vector<std::uint64_t> open(n, 0);
    std::vector<bool> assigned(n, false);
    std::vector<TreePiece> pieces;

    auto collect = [&](std::uint32_t top, std::uint64_t marked) {
        TreePiece piece;
        piece.top = top;
        piece.marked = marked;
        std::vector<std::uint32_t> stack{top};
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            assigned[v] = true;
            piece.nodes.push_back(v);
            for (auto c : {tree.left[v], tree.right[v]})
                if (c != BinaryTree::kNone && !assigned[c]) stack.push_back(c);
        }
        std::sort(piece.nodes.begin(), piece.nodes.end());
        pieces.push_back(std::move(piece));
    };

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::uint32_t v = *it;
        std::uint64_t acc = tree.marked[v] ? 1 : 0;
        for (auto c : {tree.left[v], tree.right[v]})
            if (c != BinaryTree::kNone) acc += open[c];
        if (acc >= beta) {
            collect(v, acc);
            acc = 0;
        }
        open[v] = acc;
    }
    if (!assigned[tree.root]) collect(tree.root, open[tree.root]);
    return pieces;
}

// ---------------------------------------------------------------------------

namespace {

double compute_log2(const BoundCertificate& c) {
    const BoundConstants& k = c.constants;
    if (c.kind == BoundKind::chazelle) {
        const double nav = static_cast<double>(c.alpha) * static_cast<double>(c.beta);
        return std::log2(k.c) + std::log2(c.t) + std::log2(c.q_count) -
               std::log2(static_cast<double>(c.beta)) - std::log2(static_cast<double>(c.ell)) -
               nav * std::log2(k.c_cat) - log2_binomial(nav, static_cast<double>(c.beta));
    }
    if (c.v == 0) return std::numeric_limits<double>::infinity();
    return std::log2(k.c) + std::log2(c.t) - std::log2(c.v) - k.c_beta * static_cast<double>(c.beta);
}

}  // namespace

double BoundCertificate::value() const {
    return unbounded ? std::numeric_limits<double>::infinity() : std::exp2(log2_value);
}

double recompute_log2(const BoundCertificate& cert) { return compute_log2(cert); }

BoundCertificate chazelle_bound(double q_count, double t, std::uint64_t ell, std::uint64_t beta,
                                std::uint64_t alpha, const BoundConstants& k) {
    if (!(t >= 1)) throw ParameterError("t must be at least 1");
    if (!(q_count >= 1)) throw ParameterError("query count must be at least 1");
    if (beta < 1 || ell < 1 || alpha < 1) throw ParameterError("beta, ell and alpha must be at least 1");
    if (!(k.c > 0) || !(k.c_cat > 0)) throw ParameterError("constants must be positive");
    BoundCertificate c;
    c.kind = BoundKind::chazelle;
    c.q_count = q_count;
    c.t = t;
    c.ell = ell;
    c.beta = beta;
    c.alpha = alpha;
    c.constants = k;
    c.log2_value = compute_log2(c);
    return c;
}

BoundCertificate afshani_bound(double t, double v, std::uint64_t beta, bool attested_search_overhead,
                               const BoundConstants& k) {
    if (!(t > 0)) throw ParameterError("t must be positive");
    if (!(v >= 0 && v <= 1)) throw ParameterError("v must lie in [0, 1]");
    if (!(k.c > 0)) throw ParameterError("constants must be positive");
    BoundCertificate c;
    c.kind = BoundKind::afshani;
    c.t = t;
    c.v = v;
    c.beta = beta;
    c.search_overhead_attested = attested_search_overhead;
    c.constants = k;
    c.unbounded = v == 0;
    c.log2_value = compute_log2(c);
    return c;
}

void write_certificate(std::ostream& out, const BoundCertificate& c) {
    std::ostringstream os;
    os.precision(17);
    os << "kind=" << (c.kind == BoundKind::chazelle ? "chazelle" : "afshani") << '\n'
       << "q_count=" << c.q_count << '\n'
       << "t=" << c.t << '\n'
       << "ell=" << c.ell << '\n'
       << "beta=" << c.beta << '\n'
       << "alpha=" << c.alpha << '\n'
       << "v=" << c.v << '\n'
       << "t_ge_g_attested=" << (c.search_overhead_attested ? 1 : 0) << '\n'
       << "c=" << c.constants.c << '\n'
       << "c_cat=" << c.constants.c_cat << '\n'
       << "c_beta=" << c.constants.c_beta << '\n'
       << "unbounded=" << (c.unbounded ? 1 : 0) << '\n'
       << "log2_value=" << c.log2_value << '\n'
       << "value=" << c.value() << '\n';
    out << os.str();
}

BoundCertificate read_certificate(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError(lineno, "expected key=value");
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto get = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw FormatError(lineno, std::string("missing key ") + key);
        return it->second;
    };
    auto num = [&](const char* key) {
        const std::string& s = get(key);
        if (s == "inf") return std::numeric_limits<double>::infinity();
        try {
            return std::stod(s);
        } catch (const std::logic_error&) {
            throw FormatError(lineno, std::string("bad number for ") + key);
        }
    };
    auto nat = [&](const char* key) {
        try {
            return static_cast<std::uint64_t>(std::stoull(get(key)));
        } catch (const std::logic_error&) {
            throw FormatError(lineno, std::string("bad natural for ") + key);
        }
    };
    BoundCertificate c;
    const std::string& kind = get("kind");
    if (kind == "chazelle")
        c.kind = BoundKind::chazelle;
    else if (kind == "afshani")
        c.kind = BoundKind::afshani;
    else
        throw FormatError(lineno, "unknown certificate kind " + kind);
    c.q_count = num("q_count");
    c.t = num("t");
    c.ell = nat("ell");
    c.beta = nat("beta");
    c.alpha = nat("alpha");
    c.v = num("v");
    c.search_overhead_attested = nat("t_ge_g_attested") != 0;
    c.constants.c = num("c");
    c.constants.c_cat = num("c_cat");
    c.constants.c_beta = num("c_beta");
    c.unbounded = nat("unbounded") != 0;
    c.log2_value = num("log2_value");
    return c;
}

}  // namespace pmlab
