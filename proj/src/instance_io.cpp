#include "pmlab/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "pmlab/errors.hpp"

namespace pmlab {

namespace {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParameterError("bad value '" + text + "' for parameter " + key);
    return value;
}

// Consumes known keys; leftovers are reported as unknown.
class ParamReader {
public:
    explicit ParamReader(const ParamList& params) {
        for (const auto& [k, v] : params)
            if (!values_.emplace(k, v).second) throw ParameterError("duplicate parameter " + k);
    }

    template <class T>
    void read(const std::string& key, T& out) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        out = parse_number<T>(key, it->second);
        values_.erase(it);
    }

    void ignore(const std::string& key) { values_.erase(key); }

    void finish() const {
        if (!values_.empty()) throw ParameterError("unknown parameter " + values_.begin()->first);
    }

private:
    std::map<std::string, std::string> values_;
};

template <class T>
void put(ParamList& list, const char* key, T value) {
    if constexpr (std::is_floating_point_v<T>)
        list.emplace_back(key, format_double(value));
    else
        list.emplace_back(key, std::to_string(value));
}

ParamList list_of(const Params2P& p) {
    ParamList l;
    put(l, "sigma", p.sigma_bits);
    put(l, "p", p.trailing_bits);
    put(l, "D", p.doc_count);
    put(l, "ell", p.ell);
    put(l, "beta", p.beta);
    put(l, "seed", p.seed);
    put(l, "max_attempts", p.max_attempts);
    return l;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

std::string symbols_text(const std::vector<std::uint32_t>& cells, std::uint32_t sigma) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (sigma > 10 && i > 0) s += ',';
        if (cells[i] == kWildcard)
            s += '*';
        else if (sigma > 10)
            s += std::to_string(cells[i]);
        else
            s += static_cast<char>('0' + cells[i]);
    }
    return s;
}

std::vector<std::uint32_t> parse_symbols(const std::string& text, std::uint32_t sigma, std::size_t line) {
    std::vector<std::uint32_t> cells;
    auto cell = [&](const std::string& tok) -> std::uint32_t {
        if (tok == "*") return kWildcard;
        std::uint32_t v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v >= sigma)
            throw FormatError(line, "bad symbol '" + tok + "'");
        return v;
    };
    if (sigma > 10) {
        for (const auto& tok : split(text, ',')) cells.push_back(cell(tok));
    } else {
        for (char ch : text) cells.push_back(cell(std::string(1, ch)));
    }
    return cells;
}

std::string hex_payloads(const Doc2P& d) {
    if (d.payloads.empty()) return "-";
    static const char* digits = "0123456789abcdef";
    const unsigned width = (d.sigma_bits + 3) / 4;
    std::string s;
    for (auto x : d.payloads)
        for (unsigned i = width; i-- > 0;) s += digits[(x >> (4 * i)) & 0xF];
    return s;
}

}  // namespace

const std::string& InstanceFile::param(const std::string& key) const {
    for (const auto& [k, v] : params)
        if (k == key) return v;
    throw FormatError(0, "missing parameter " + key);
}

InstanceFile parse_instance(std::istream& in) {
    InstanceFile f;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false, have_queries = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (!have_header) {
            int version = 0;
            if (word != "PMLAB" || !(ls >> version >> f.family)) throw FormatError(lineno, "expected 'PMLAB <version> <family>'");
            if (version != kFormatVersion) throw FormatError(lineno, "unsupported format version " + std::to_string(version));
            have_header = true;
            continue;
        }
        std::string rest;
        std::getline(ls >> std::ws, rest);
        if (word == "param" || word == "stagelog") {
            const auto eq = rest.find('=');
            if (eq == std::string::npos || eq == 0) throw FormatError(lineno, "expected key=value");
            const std::string key = rest.substr(0, eq), value = rest.substr(eq + 1);
            if (word == "param") {
                if (!f.docs.empty() || have_queries) throw FormatError(lineno, "param after documents");
                f.params.emplace_back(key, value);
            } else {
                std::uint64_t v = 0;
                const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
                if (res.ec != std::errc() || res.ptr != value.data() + value.size())
                    throw FormatError(lineno, "stagelog values are naturals");
                f.stage_log.emplace_back(key, v);
            }
        } else if (word == "doc" || word == "set") {
            if (have_queries) throw FormatError(lineno, "record after the query section");
            if (f.docs.empty()) f.record = word;
            if (word != f.record) throw FormatError(lineno, "mixed record kinds");
            const auto sp = rest.find(' ');
            if (sp == std::string::npos) throw FormatError(lineno, "record needs an id and a payload");
            if (rest.substr(0, sp) != std::to_string(f.docs.size())) throw FormatError(lineno, "record ids must be 0, 1, 2, ...");
            f.docs.push_back(rest.substr(sp + 1));
        } else if (word == "queries") {
            if (have_queries) throw FormatError(lineno, "duplicate query section");
            if (rest == "implicit")
                f.explicit_queries = false;
            else if (rest == "explicit")
                f.explicit_queries = true;
            else
                throw FormatError(lineno, "queries must be implicit or explicit");
            have_queries = true;
        } else if (word == "query") {
            if (!f.explicit_queries) throw FormatError(lineno, "query line outside an explicit query section");
            f.queries.push_back(rest);
        } else {
            throw FormatError(lineno, "unknown record '" + word + "'");
        }
    }
    if (!have_header) throw FormatError(lineno, "empty instance file");
    if (!have_queries) throw FormatError(lineno, "missing query section");
    return f;
}

InstanceFile parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

std::string emit_instance(const InstanceFile& f) {
    std::ostringstream os;
    os << "PMLAB " << kFormatVersion << ' ' << f.family << '\n';
    for (const auto& [k, v] : f.params) os << "param " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < f.docs.size(); ++i) os << f.record << ' ' << i << ' ' << f.docs[i] << '\n';
    os << "queries " << (f.explicit_queries ? "explicit" : "implicit") << '\n';
    for (const auto& q : f.queries) os << "query " << q << '\n';
    for (const auto& [k, v] : f.stage_log) os << "stagelog " << k << '=' << v << '\n';
    return os.str();
}

InstanceFile read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_instance(in);
}

void write_instance_file(const std::string& path, const InstanceFile& file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << emit_instance(file);
    if (!out) throw std::runtime_error("write failed for " + path);
}

ParamList parse_param_list(const std::string& text) {
    ParamList out;
    if (text.empty()) return out;
    for (const auto& item : split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw ParameterError("expected key=value, got '" + item + "'");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

Params2P params_2p(const ParamList& params) {
    Params2P p;
    ParamReader r(params);
    r.read("sigma", p.sigma_bits);
    r.read("p", p.trailing_bits);
    r.read("D", p.doc_count);
    r.read("ell", p.ell);
    r.read("beta", p.beta);
    r.read("seed", p.seed);
    r.read("max_attempts", p.max_attempts);
    r.finish();
    return p;
}

ParamsWciQuery params_wci_query(const ParamList& params) {
    ParamsWciQuery p;
    ParamReader r(params);
    r.read("m", p.m);
    r.read("kappa", p.kappa);
    r.read("c", p.beta_constant);
    r.read("r", p.r_override);
    r.read("beta", p.beta_override);
    r.read("upper", p.upper_factor);
    r.read("seed", p.seed);
    r.read("max_attempts", p.max_attempts);
    r.finish();
    return p;
}

ParamsWciSpace params_wci_space(const ParamList& params) {
    ParamsWciSpace p;
    ParamReader r(params);
    r.read("sigma", p.sigma);
    r.read("m", p.m);
    r.read("kappa", p.kappa);
    r.read("docs", p.doc_count);
    r.read("beta", p.beta);
    r.read("epsilon", p.epsilon);
    r.read("seed", p.seed);
    r.finish();
    return p;
}

ParamsGpi params_gpi(const ParamList& params) {
    ParamsGpi p;
    ParamReader r(params);
    r.read("p", p.p);
    r.read("kappa", p.kappa);
    r.read("gamma", p.gamma);
    r.read("blocks", p.blocks);
    r.ignore("seed");
    r.finish();
    return p;
}

InstanceFile to_file(const Instance2P& inst) {
    InstanceFile f;
    f.family = std::string(family_name(inst.family));
    f.params = list_of(inst.params);
    for (const auto& d : inst.docs) {
        std::string line = hex_payloads(d);
        if (d.second_part) {
            line += " neg ";
            if (d.second_part->empty()) line += '-';
            for (std::size_t i = 0; i < d.second_part->size(); ++i)
                line += (i ? "," : "") + std::to_string((*d.second_part)[i]);
        }
        f.docs.push_back(std::move(line));
    }
    f.stage_log = {{"attempt", inst.attempt}, {"m_neg", inst.m_neg}};
    return f;
}

Instance2P to_instance_2p(const InstanceFile& f) {
    Instance2P inst;
    inst.family = parse_family(f.family);
    inst.params = params_2p(f.params);
    inst.params.validate();
    const unsigned sigma = inst.params.sigma_bits;
    inst.m_neg = inst.family == Family::two_pattern ? 0 : negative_part_size(sigma, inst.params.trailing_bits);
    const Alphabet2P a(sigma);
    const unsigned width = (sigma + 3) / 4;
    for (std::size_t i = 0; i < f.docs.size(); ++i) {
        std::istringstream ls(f.docs[i]);
        std::string payload, neg, list;
        ls >> payload;
        Doc2P d;
        d.sigma_bits = sigma;
        if (inst.family == Family::two_forbidden) {
            if (payload != "-") throw FormatError(0, "record " + std::to_string(i) + ": 2fp documents have no payloads");
        } else {
            if (payload.size() != std::size_t{width} * a.positive_count()) throw FormatError(0, "record " + std::to_string(i) + ": payload length mismatch");
            for (std::size_t c = 0; c < a.positive_count(); ++c) {
                std::uint32_t x = 0;
                const char* b = payload.data() + c * width;
                const auto res = std::from_chars(b, b + width, x, 16);
                if (res.ec != std::errc() || res.ptr != b + width || x >= a.size())
                    throw FormatError(0, "record " + std::to_string(i) + ": bad payload digits");
                d.payloads.push_back(x);
            }
        }
        if (ls >> neg) {
            if (neg != "neg" || !(ls >> list)) throw FormatError(0, "record " + std::to_string(i) + ": expected 'neg <symbols>'");
            std::vector<std::uint32_t> part;
            if (list != "-")
                for (const auto& tok : split(list, ','))
                    part.push_back(parse_number<std::uint32_t>("neg", tok));
            d.second_part = std::move(part);
        }
        if (d.second_part.has_value() != (inst.family != Family::two_pattern))
            throw FormatError(0, "record " + std::to_string(i) + ": negative part does not fit the family");
        inst.docs.push_back(std::move(d));
    }
    if (inst.docs.size() != inst.params.doc_count) throw FormatError(0, "document count differs from D");
    for (const auto& [k, v] : f.stage_log)
        if (k == "attempt") inst.attempt = static_cast<std::uint32_t>(v);
    return inst;
}

InstanceFile to_file(const WciInstance& inst) {
    InstanceFile f;
    f.family = std::string(wci_kind_name(inst.kind));
    if (const auto* q = std::get_if<ParamsWciQuery>(&inst.params)) {
        put(f.params, "m", q->m);
        put(f.params, "kappa", q->kappa);
        put(f.params, "c", q->beta_constant);
        put(f.params, "r", q->r_override);
        put(f.params, "beta", q->beta_override);
        put(f.params, "upper", q->upper_factor);
        put(f.params, "seed", q->seed);
        put(f.params, "max_attempts", q->max_attempts);
    } else {
        const auto& s = std::get<ParamsWciSpace>(inst.params);
        put(f.params, "sigma", s.sigma);
        put(f.params, "m", s.m);
        put(f.params, "kappa", s.kappa);
        put(f.params, "docs", s.doc_count);
        put(f.params, "beta", s.beta);
        put(f.params, "epsilon", s.epsilon);
        put(f.params, "seed", s.seed);
    }
    const std::uint32_t sigma = inst.alphabet_size();
    for (const auto& d : inst.docs) f.docs.push_back(symbols_text(d.symbols, sigma));
    f.explicit_queries = true;
    for (const auto& p : inst.patterns) f.queries.push_back(symbols_text(p.cells, sigma));
    f.stage_log = inst.stage_log;
    return f;
}

WciInstance to_wci_instance(const InstanceFile& f) {
    WciInstance inst;
    if (f.family == "wci-query") {
        inst.kind = WciKind::query_lb;
        inst.params = params_wci_query(f.params);
    } else if (f.family == "wci-space") {
        inst.kind = WciKind::space_lb;
        inst.params = params_wci_space(f.params);
    } else {
        throw FormatError(0, "not a wild-card instance: " + f.family);
    }
    const std::uint32_t sigma = inst.alphabet_size(), m = inst.m();
    for (std::size_t i = 0; i < f.docs.size(); ++i) {
        WciDoc d;
        d.symbols = parse_symbols(f.docs[i], sigma, i);
        for (auto x : d.symbols)
            if (x == kWildcard) throw FormatError(0, "record " + std::to_string(i) + ": documents cannot hold wild cards");
        if (d.symbols.size() != m) throw FormatError(0, "record " + std::to_string(i) + ": document length differs from m");
        inst.docs.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < f.queries.size(); ++i) {
        WciPattern p;
        p.cells = parse_symbols(f.queries[i], sigma, i);
        if (p.cells.size() != m) throw FormatError(0, "record " + std::to_string(i) + ": query length differs from m");
        inst.patterns.push_back(std::move(p));
    }
    inst.stage_log = f.stage_log;
    return inst;
}

InstanceFile to_file(const SIReduction& red, const Params2P& source) {
    InstanceFile f;
    f.family = "si";
    f.params = list_of(source);
    f.record = "set";
    for (const auto& s : red.si.sets) {
        std::string line;
        for (std::size_t i = 0; i < s.size(); ++i) line += (i ? "," : "") + std::to_string(s[i]);
        f.docs.push_back(line.empty() ? "-" : line);
    }
    f.stage_log = {{"universe", red.si.universe_size}};
    return f;
}

SIInstance to_si_instance(const InstanceFile& f) {
    if (f.family != "si") throw FormatError(0, "not an si instance: " + f.family);
    const Params2P p = params_2p(f.params);
    SIInstance si;
    si.universe_size = p.doc_count;
    for (std::size_t i = 0; i < f.docs.size(); ++i) {
        DocSet s;
        if (f.docs[i] != "-")
            for (const auto& tok : split(f.docs[i], ',')) s.push_back(parse_number<DocId>("set", tok));
        si.sets.push_back(std::move(s));
    }
    return si;
}

InstanceFile to_file(const ParamsGpi& params) {
    params.validate();
    InstanceFile f;
    f.family = "gpi";
    put(f.params, "p", params.p);
    put(f.params, "kappa", params.kappa);
    put(f.params, "gamma", params.gamma);
    put(f.params, "blocks", params.blocks);
    const GpiDictionary dict(params);
    dict.for_each([&](std::uint64_t, const GappedPattern& pat) { f.docs.push_back(pat.to_string()); });
    return f;
}

ParamsGpi to_gpi_params(const InstanceFile& f) {
    if (f.family != "gpi") throw FormatError(0, "not a gpi instance: " + f.family);
    return params_gpi(f.params);
}

InstanceFile generate_from_header(const std::string& family, const ParamList& params) {
    if (family == "2p" || family == "fp" || family == "2fp")
        return to_file(generate(parse_family(family), params_2p(params)));
    if (family == "si") {
        const Params2P p = params_2p(params);
        InstanceFile f = to_file(reduce_to_si(generate_2p(p)), p);
        return f;
    }
    if (family == "wci-query") return to_file(generate_wci_query_hard(params_wci_query(params)));
    if (family == "wci-space") return to_file(generate_wci_space_hard(params_wci_space(params)));
    if (family == "gpi") {
        InstanceFile f = to_file(params_gpi(params));
        for (const auto& [k, v] : params)
            if (k == "seed") f.params.emplace_back(k, v);
        return f;
    }
    throw ParameterError("unknown family " + family);
}

bool regenerates_identically(const InstanceFile& file) {
    return emit_instance(generate_from_header(file.family, file.params)) == emit_instance(file);
}

}  // namespace pmlab
