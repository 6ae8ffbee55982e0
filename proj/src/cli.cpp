#include "pmlab/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "pmlab/combinatorics.hpp"
#include "pmlab/errors.hpp"
#include "pmlab/gapped.hpp"
#include "pmlab/harness.hpp"
#include "pmlab/instance_io.hpp"
#include "pmlab/pointer_machine.hpp"
#include "pmlab/semigroup.hpp"
#include "pmlab/two_pattern.hpp"
#include "pmlab/verify.hpp"
#include "pmlab/wildcard.hpp"

namespace pmlab {

namespace {

struct Options {
    std::string params;
    std::string in;
    std::string out;
    std::optional<std::uint64_t> seed;
};

// Typed access to --params; every key must be consumed.
class ParamBag {
public:
    explicit ParamBag(const std::string& text) {
        for (auto& [k, v] : parse_param_list(text))
            if (!values_.emplace(k, v).second) throw ParameterError("duplicate parameter " + k);
    }

    template <class T>
    T get(const std::string& key, T fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        T value{};
        const std::string& s = it->second;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw ParameterError("bad value '" + s + "' for " + key);
        values_.erase(it);
        return value;
    }

    std::string text(const std::string& key, const std::string& fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::string v = it->second;
        values_.erase(it);
        return v;
    }

    void finish() const {
        if (!values_.empty()) throw ParameterError("unknown parameter " + values_.begin()->first);
    }

private:
    std::map<std::string, std::string> values_;
};

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

int status(bool pass) { return pass ? kExitPass : kExitPropertyFailure; }

std::string need_input(const Options& o) {
    if (o.in.empty()) throw ParameterError("--in is required");
    return o.in;
}

// ---------------------------------------------------------------------------

int cmd_gen(const std::string& family, const Options& o, bool describe_only, std::ostream& out) {
    ParamList params = parse_param_list(o.params);
    if (o.seed) {
        std::erase_if(params, [](const auto& kv) { return kv.first == "seed"; });
        params.emplace_back("seed", std::to_string(*o.seed));
    }
    if (describe_only) {
        std::ostringstream os;
        if (family == "2p" || family == "fp" || family == "2fp" || family == "si") {
            const Params2P p = params_2p(params);
            const ParamSummary s = pmlab::describe(family == "si" ? Family::two_pattern : parse_family(family), p);
            os << "n=" << s.n << "\nquery_count=" << s.query_count << "\nquery_count_nominal=" << s.query_count_nominal
               << "\nm_neg=" << s.m_neg << "\nexpected_output=" << s.expected_output
               << "\nmin_output_threshold=" << s.min_output_threshold << '\n';
        } else if (family == "wci-query") {
            const ParamsWciQuery p = params_wci_query(params);
            p.validate();
            os << "ell=" << p.ell() << "\nr=" << p.r() << "\nell_prime=" << p.ell_prime() << "\nbeta=" << p.beta()
               << "\nwindow=" << p.width() << "\npattern_family=" << binomial(p.m, p.kappa) << '\n';
        } else if (family == "wci-space") {
            const ParamsWciSpace p = params_wci_space(params);
            p.validate();
            os << "query_count=" << p.query_count() << "\nmatch_probability=" << p.match_probability() << '\n';
        } else if (family == "gpi") {
            const ParamsGpi p = params_gpi(params);
            p.validate();
            os << "D=" << p.text_length() << "\ndictionary_size=" << GpiDictionary(p).size()
               << "\ntext_family=" << GpiTextFamily(p).size() << "\nwindow=" << adjacency_window(p.p, p.gamma)
               << "\noutput_scale=" << output_scale(p) << '\n';
        }
        Sink sink(o.out, out);
        sink.stream() << os.str();
        return kExitPass;
    }
    const InstanceFile f = generate_from_header(family, params);
    Sink sink(o.out, out);
    sink.stream() << emit_instance(f);
    return kExitPass;
}

// ---------------------------------------------------------------------------

std::vector<Pattern2P> mc_target(Family family, unsigned sigma, unsigned p, const std::string& kind, unsigned ell) {
    const Alphabet2P a(sigma);
    const BitString zeros{0, p};
    if (kind == "pattern") {
        if (family == Family::two_forbidden) return {Pattern2P::negative(a.negative_a_begin())};
        return {Pattern2P::positive(1, zeros)};
    }
    if (kind == "query") {
        switch (family) {
            case Family::two_pattern: return {Pattern2P::positive(1, zeros), Pattern2P::positive(2, zeros)};
            case Family::forbidden_pattern: return {Pattern2P::positive(1, zeros), Pattern2P::negative(a.negative_a_begin())};
            case Family::two_forbidden:
                return {Pattern2P::negative(a.negative_a_begin()), Pattern2P::negative(a.negative_b_begin())};
        }
    }
    if (kind == "tuple") {
        if (family == Family::two_forbidden) throw ParameterError("tuples need positive patterns");
        if (ell > a.positive_count()) throw ParameterError("tuple arity exceeds the characters");
        std::vector<Pattern2P> t;
        for (unsigned i = 1; i <= ell; ++i) t.push_back(Pattern2P::positive(i, zeros));
        return t;
    }
    throw ParameterError("target must be pattern, query or tuple");
}

int cmd_verify(const std::string& check, const Options& o, const std::vector<std::uint64_t>& require,
               std::ostream& out) {
    ParamBag bag(o.params);
    const std::uint64_t seed = o.seed.value_or(bag.get<std::uint64_t>("seed", 0));
    Sink sink(o.out, out);
    std::ostream& os = sink.stream();

    if (check == "eq-int") {
        const auto sigma = bag.get<unsigned>("sigma", 6), p = bag.get<unsigned>("p", 3), ell = bag.get<unsigned>("ell", 8);
        const auto beta = bag.get<std::uint64_t>("beta", 6), D = bag.get<std::uint64_t>("D", 4096);
        bag.finish();
        const EqIntReport r = check_eq_int(sigma, p, ell, beta, D);
        os << report_line("eq-int", true, r.log2_lhs, r.log2_bound, r.holds) << " constant=" << r.constant << '\n';
        return status(r.holds);
    }
    if (check == "count-ineq") {
        const auto sigma = bag.get<unsigned>("sigma", 6), p = bag.get<unsigned>("p", 2), ell = bag.get<unsigned>("ell", 8);
        const auto beta = bag.get<std::uint64_t>("beta", 6), D = bag.get<std::uint64_t>("D", 4096);
        const auto q_time = bag.get<std::uint64_t>("q_time", 1);
        bag.finish();
        const CountInequalities r = check_count_inequalities(sigma, p, beta, ell, D, q_time);
        os << report_line("count-ineq-sigma", true, 2.0 * sigma, static_cast<double>(p) * beta, r.eq_count_ok) << '\n'
           << report_line("count-ineq-qtime", true, static_cast<double>(q_time),
                          static_cast<double>(D) / (2.0 * std::ldexp(1.0, 2 * static_cast<int>(p)) * beta), r.eq_count2_ok)
           << " least_D=" << least_doc_count(p, beta, q_time) << '\n';
        return status(r.eq_count_ok && r.eq_count2_ok);
    }
    if (check == "gpi-count") {
        const ParamsGpi prm = params_gpi(parse_param_list(o.params));
        prm.validate();
        const GpiDictionary dict(prm);
        const GpiTextFamily texts(prm);
        std::uint64_t mismatches = 0, lo = UINT64_MAX, hi = 0;
        for (std::uint64_t r = 0; r < texts.size(); ++r) {
            const GpiText t = texts.at(r);
            std::uint64_t brute = 0;
            dict.for_each([&](std::uint64_t, const GappedPattern& pat) { brute += match_gapped(t, pat); });
            const std::uint64_t exact = count_matches_exact(t, prm);
            mismatches += brute != exact;
            lo = std::min(lo, exact);
            hi = std::max(hi, exact);
        }
        os << report_line("gpi-count", true, static_cast<double>(mismatches), 0, mismatches == 0)
           << " texts=" << texts.size() << " min=" << lo << " max=" << hi << " scale=" << output_scale(prm) << '\n';
        return status(mismatches == 0);
    }
    if (check == "gpi-common") {
        ParamsGpi prm;
        prm.p = bag.get<unsigned>("p", 2);
        prm.kappa = bag.get<unsigned>("kappa", 1);
        prm.blocks = bag.get<std::uint32_t>("blocks", 3);
        prm.gamma = bag.get<std::uint32_t>("gamma", 3);
        const auto beta_max = bag.get<std::uint32_t>("beta", 4);
        bag.finish();
        prm.validate();
        const GpiDictionary dict(prm);
        const GpiTextFamily texts(prm);
        if (dict.size() > 64) throw FamilyTooLarge("dictionary too large for subset enumeration");
        std::vector<GappedPattern> all;
        dict.for_each([&](std::uint64_t, const GappedPattern& pat) { all.push_back(pat); });
        std::uint64_t violations = 0, subsets = 0;
        for (std::uint32_t b = 1; b <= beta_max && b <= all.size(); ++b) {
            const std::uint64_t bound = common_text_bound(prm, b);
            for_each_combination(static_cast<std::uint32_t>(all.size()), b, [&](const std::vector<std::uint32_t>& pick) {
                std::vector<GappedPattern> chosen;
                for (auto i : pick) chosen.push_back(all[i]);
                std::uint64_t n = 0;
                for (std::uint64_t r = 0; r < texts.size(); ++r) n += text_matches_all(texts.at(r), chosen);
                violations += n > bound;
                ++subsets;
            });
        }
        os << report_line("gpi-common", true, static_cast<double>(violations), 0, violations == 0)
           << " subsets=" << subsets << '\n';
        return status(violations == 0);
    }
    if (check == "mc-rate") {
        const Family family = parse_family(bag.text("family", "2p"));
        const auto sigma = bag.get<unsigned>("sigma", 6), p = bag.get<unsigned>("p", 3);
        const auto ell = bag.get<unsigned>("ell", 3);
        const std::string kind = bag.text("target", "pattern");
        const auto trials = bag.get<std::uint64_t>("trials", 100000);
        bag.finish();
        const auto target = mc_target(family, sigma, p, kind, ell);
        const McReport r = mc_match_rate(family, sigma, p, target, trials, seed);
        const bool pass = std::fabs(r.z_score) <= 4;
        os << report_line("mc-rate", false, r.estimate, r.analytic, pass) << " z=" << r.z_score
           << " trials=" << r.trials << '\n';
        return status(pass);
    }
    if (check == "trace") {
        bag.finish();
        std::ifstream in(need_input(o));
        if (!in) throw std::runtime_error("cannot open " + o.in);
        std::vector<Trace> traces;
        const PMGraph g = read_graph(in, &traces);
        bool all_ok = true;
        for (const auto& t : traces) {
            try {
                const TraceResult r = validate_trace(g, t, require);
                os << report_line("trace", true, static_cast<double>(r.time), static_cast<double>(g.space()), r.ok)
                   << " query=" << t.query << " missing=" << r.missing.size() << '\n';
                all_ok &= r.ok;
            } catch (const TraceError& e) {
                os << report_line("trace", true, static_cast<double>(e.index()), 0, false) << " query=" << t.query
                   << " malformed_at=" << e.index() << '\n';
                all_ok = false;
            }
        }
        return status(all_ok);
    }

    // Checks on an instance file.
    const InstanceFile f = read_instance_file(need_input(o));
    if (check == "min-output") {
        bag.finish();
        if (f.family == "gpi") {
            const MinOutputReport r = min_query_output(to_gpi_params(f));
            os << report_line("min-output", true, static_cast<double>(r.value), 0, true) << " argmin=" << r.argmin_rank << '\n';
            return kExitPass;
        }
        const Instance2P inst = to_instance_2p(f);
        const MinOutputReport r = min_query_output(inst);
        const double threshold = min_output_threshold(inst);
        const bool pass = static_cast<double>(r.value) >= threshold;
        os << report_line("min-output", true, static_cast<double>(r.value), threshold, pass) << " argmin=" << r.argmin_rank << '\n';
        return status(pass);
    }
    if (check == "max-sharing") {
        const Instance2P inst = to_instance_2p(f);
        const auto ell = bag.get<unsigned>("ell", inst.params.ell);
        bag.finish();
        const IntersectionReport r = max_docs_sharing_patterns(inst, ell);
        os << report_line("max-sharing", true, static_cast<double>(r.max_shared), static_cast<double>(inst.params.beta), r.bound_ok)
           << " ell=" << ell << '\n';
        return status(r.bound_ok);
    }
    if (check == "wci-spread") {
        const auto samples = bag.get<std::uint64_t>("samples", 2000);
        bag.finish();
        const WciInstance inst = to_wci_instance(f);
        const WciSpreadReport s = check_support_spread(inst);
        const WciPatternLoadReport l = check_pattern_load(inst);
        const WciCapReport c = check_intersection_cap(inst, samples, seed);
        const auto beta = std::get<ParamsWciQuery>(inst.params).beta();
        os << report_line("wci-spread", true, static_cast<double>(s.max_window_load), static_cast<double>(beta), s.ok) << '\n'
           << report_line("wci-load", true, static_cast<double>(l.min_matches), static_cast<double>(l.required), l.ok) << '\n'
           << report_line("wci-cap", c.exhaustive, static_cast<double>(c.max_common), static_cast<double>(c.cap), c.ok)
           << " samples=" << c.samples << '\n';
        return status(s.ok && l.ok && c.ok);
    }
    if (check == "wci-pairs") {
        const auto trials = bag.get<std::uint64_t>("trials", 100000);
        bag.finish();
        const WciInstance inst = to_wci_instance(f);
        const WciPairReport r = check_pair_sharing(inst);
        const auto& prm = std::get<ParamsWciSpace>(inst.params);
        WciPattern q;
        q.cells.assign(prm.m, 0);
        for (std::uint32_t i = 0; i < prm.kappa; ++i) q.cells[i] = kWildcard;
        const McReport mc = mc_wci_match_rate(prm.sigma, q, trials, seed);
        const bool mc_ok = std::fabs(mc.z_score) <= 4;
        os << report_line("wci-pairs", true, static_cast<double>(r.max_shared), static_cast<double>(prm.beta), r.ok)
           << " pairs=" << r.pairs << '\n'
           << report_line("wci-mc", false, mc.estimate, mc.analytic, mc_ok) << " z=" << mc.z_score << '\n';
        return status(r.ok && mc_ok);
    }
    throw ParameterError("unknown check " + check);
}

// ---------------------------------------------------------------------------

int cmd_bound(const std::string& kind, const Options& o, std::ostream& out) {
    ParamBag bag(o.params);
    BoundConstants k;
    k.c = bag.get<double>("c", 1);
    k.c_cat = bag.get<double>("c_cat", 4);
    k.c_beta = bag.get<double>("c_beta", 1);
    BoundCertificate cert;
    if (kind == "chazelle") {
        const auto q = bag.get<double>("q", 1), t = bag.get<double>("t", 1);
        const auto ell = bag.get<std::uint64_t>("ell", 1), beta = bag.get<std::uint64_t>("beta", 1);
        const auto alpha = bag.get<std::uint64_t>("alpha", 1);
        bag.finish();
        cert = chazelle_bound(q, t, ell, beta, alpha, k);
    } else {
        const auto t = bag.get<double>("t", 1), v = bag.get<double>("v", 1);
        const auto beta = bag.get<std::uint64_t>("beta", 0);
        const auto attested = bag.get<unsigned>("attested", 0);
        bag.finish();
        cert = afshani_bound(t, v, beta, attested != 0, k);
    }
    Sink sink(o.out, out);
    write_certificate(sink.stream(), cert);
    return kExitPass;
}

int cmd_bench(const Options& o, const std::string& structure, std::uint64_t queries,
              const std::vector<std::uint64_t>& faults, std::ostream& out, std::ostream& err) {
    ParamBag bag(o.params);
    const InstanceFile f = read_instance_file(need_input(o));
    const StructureKind kind = parse_structure(structure);
    const std::uint64_t seed = o.seed.value_or(0);
    BenchConfig cfg;
    cfg.alpha = bag.get<std::uint64_t>("alpha", 1);

    std::optional<Instance2P> inst;
    std::unique_ptr<ReferenceStructure> s;
    if (f.family == "gpi") {
        cfg.ell = bag.get<std::uint64_t>("ell", 1);
        cfg.beta = bag.get<std::uint64_t>("beta", 1);
        s = build_structure(kind, to_gpi_params(f));
    } else {
        inst = to_instance_2p(f);
        cfg.ell = bag.get<std::uint64_t>("ell", inst->params.ell);
        cfg.beta = bag.get<std::uint64_t>("beta", inst->params.beta);
        s = build_structure(kind, *inst);
    }
    bag.finish();
    for (auto r : faults) s->inject_fault(r);
    const auto ranks = sample_ranks(s->query_count(), queries, seed);
    try {
        Sink sink(o.out, out);
        run_benchmark(*s, ranks, cfg, &sink.stream());
    } catch (const BenchMismatch& e) {
        err << "cross-check failed: query " << e.rank() << '\n';
        return kExitPropertyFailure;
    }
    return kExitPass;
}

int cmd_audit(const Options& o, const std::string& scheme_path, std::ostream& out) {
    ParamBag bag(o.params);
    const Instance2P inst = to_instance_2p(read_instance_file(need_input(o)));
    const auto beta = bag.get<std::uint64_t>("beta", inst.params.beta);
    const auto ell = bag.get<unsigned>("ell", inst.params.ell);
    bag.finish();
    SumScheme scheme;
    if (scheme_path.empty()) {
        scheme = SumScheme::singletons(inst.docs.size());
    } else {
        std::ifstream in(scheme_path);
        if (!in) throw std::runtime_error("cannot open " + scheme_path);
        scheme = read_scheme(in, inst.docs.size());
    }
    const IntersectionReport pre = max_docs_sharing_patterns(inst, ell);
    const CrowdedAudit audit = audit_crowded(scheme, inst, beta, ell, pre);
    Sink sink(o.out, out);
    write_audit_csv(sink.stream(), audit);
    const bool pass = audit.certified && audit.flagged.empty();
    sink.stream() << "#footer max_shared=" << pre.max_shared << "\n#footer certified=" << (audit.certified ? 1 : 0)
                  << "\n#footer max_usable=" << audit.max_usable << "\n#footer ell_squared=" << std::uint64_t{ell} * ell
                  << "\n#footer flagged=" << audit.flagged.size() << '\n';
    return status(pass);
}

BinaryTree tree_from_graph(const PMGraph& g) {
    BinaryTree t;
    const std::size_t n = g.nodes.size();
    t.left.assign(n, BinaryTree::kNone);
    t.right.assign(n, BinaryTree::kNone);
    t.parent.assign(n, BinaryTree::kNone);
    t.marked.assign(n, false);
    t.root = g.root;
    for (std::size_t v = 0; v < n; ++v) {
        t.marked[v] = g.nodes[v].elem.has_value();
        for (std::size_t k = 0; k < g.nodes[v].out.size(); ++k) {
            const NodeId c = g.nodes[v].out[k];
            if (t.parent[c] != BinaryTree::kNone || c == g.root) throw ParameterError("graph is not a tree");
            t.parent[c] = static_cast<std::uint32_t>(v);
            (k == 0 ? t.left : t.right)[v] = c;
        }
    }
    return t;
}

int cmd_partition(const Options& o, std::ostream& out) {
    ParamBag bag(o.params);
    const auto beta = bag.get<std::uint64_t>("beta", 2);
    BinaryTree tree;
    if (o.in.empty()) {
        const auto n = bag.get<std::uint32_t>("n", 1000);
        const auto num = bag.get<std::uint64_t>("mark_num", 1), den = bag.get<std::uint64_t>("mark_den", 4);
        tree = BinaryTree::random(n, num, den, o.seed.value_or(0));
    } else {
        std::ifstream in(o.in);
        if (!in) throw std::runtime_error("cannot open " + o.in);
        tree = tree_from_graph(read_graph(in));
    }
    bag.finish();
    const auto pieces = partition_marked_tree(tree, beta);
    const std::uint64_t t = tree.marked_count();
    bool ok = true;
    std::size_t covered = 0;
    Sink sink(o.out, out);
    for (const auto& p : pieces) {
        const bool root_piece = std::binary_search(p.nodes.begin(), p.nodes.end(), tree.root);
        if (!root_piece && (p.marked < beta || p.marked > 2 * beta)) ok = false;
        covered += p.nodes.size();
        sink.stream() << "piece top=" << p.top << " nodes=" << p.nodes.size() << " marked=" << p.marked << '\n';
    }
    const std::uint64_t lo = t / (2 * beta), hi = (t + beta - 1) / beta + 1;
    ok = ok && covered == tree.size() && pieces.size() >= lo && pieces.size() <= hi;
    sink.stream() << report_line("partition-tree", true, static_cast<double>(pieces.size()), static_cast<double>(hi), ok)
                  << " marked=" << t << '\n';
    return status(ok);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"pmlab: hard instances, property checks and bound certificates for pattern-matching indexing"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--params", o.params, "comma-separated key=value parameters");
        sub->add_option("--in", o.in, "input file");
        sub->add_option("--out", o.out, "output file (default: stdout)");
        sub->add_option("--seed", o.seed, "64-bit seed");
    };

    std::string family, check, bound_kind, structure = "naive", scheme_path;
    bool describe = false;
    std::uint64_t queries = 1000;
    std::vector<std::uint64_t> faults, require;

    auto* gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("family", family, "2p|fp|2fp|si|wci-query|wci-space|gpi")
        ->required()
        ->check(CLI::IsMember({"2p", "fp", "2fp", "si", "wci-query", "wci-space", "gpi"}));
    gen->add_flag("--describe", describe, "print derived quantities instead of generating");
    common(gen);

    auto* verify = app.add_subcommand("verify", "run one property check");
    verify->add_option("check", check,
                       "eq-int|count-ineq|min-output|max-sharing|mc-rate|gpi-count|gpi-common|wci-spread|wci-pairs|trace")
        ->required()
        ->check(CLI::IsMember({"eq-int", "count-ineq", "min-output", "max-sharing", "mc-rate", "gpi-count",
                               "gpi-common", "wci-spread", "wci-pairs", "trace"}));
    verify->add_option("--require", require, "element ids every trace must reach")->delimiter(',');
    common(verify);

    auto* bound = app.add_subcommand("bound", "emit a lower-bound certificate");
    bound->add_option("kind", bound_kind, "chazelle|afshani")->required()->check(CLI::IsMember({"chazelle", "afshani"}));
    common(bound);

    auto* bench = app.add_subcommand("bench", "benchmark a reference structure");
    bench->add_option("--structure", structure, "naive|inverted|full");
    bench->add_option("--queries", queries, "number of sampled queries");
    bench->add_option("--inject-fault", faults, "corrupt the answer to these query ranks")->delimiter(',');
    common(bench);

    auto* audit = app.add_subcommand("audit-sg", "crowded-sum audit of a semi-group scheme");
    audit->add_option("--scheme", scheme_path, "scheme file (default: singletons)");
    common(audit);

    auto* partition = app.add_subcommand("partition-tree", "partition a marked binary tree");
    common(partition);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(family, o, describe, out);
        if (verify->parsed()) return cmd_verify(check, o, require, out);
        if (bound->parsed()) return cmd_bound(bound_kind, o, out);
        if (bench->parsed()) return cmd_bench(o, structure, queries, faults, out, err);
        if (audit->parsed()) return cmd_audit(o, scheme_path, out);
        if (partition->parsed()) return cmd_partition(o, out);
    } catch (const GenerationFailure& e) {
        err << e.what() << '\n';
        return kExitPropertyFailure;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace pmlab
