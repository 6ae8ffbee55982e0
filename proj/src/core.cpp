#include "pmlab/core.hpp"

#include <algorithm>
#include <stdexcept>

#include "pmlab/errors.hpp"

namespace pmlab {

std::string_view family_name(Family f) {
    switch (f) {
        case Family::two_pattern: return "2p";
        case Family::forbidden_pattern: return "fp";
        case Family::two_forbidden: return "2fp";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "2p") return Family::two_pattern;
    if (name == "fp") return Family::forbidden_pattern;
    if (name == "2fp") return Family::two_forbidden;
    throw ParameterError("unknown two-pattern family '" + std::string(name) + "'");
}

Alphabet2P::Alphabet2P(unsigned bits) : sigma_bits(bits) {
    if (bits < 1 || bits > 24) throw ParameterError("sigma_bits must lie in [1, 24]");
}

BitString BitString::parse(std::string_view text) {
    if (text.size() > 32) throw ParameterError("bit string longer than 32 bits");
    BitString out;
    for (char ch : text) {
        if (ch != '0' && ch != '1') throw ParameterError("bit string must be over {0,1}");
        out.bits = (out.bits << 1) | static_cast<std::uint32_t>(ch == '1');
    }
    out.length = static_cast<unsigned>(text.size());
    return out;
}

std::string BitString::to_string() const {
    std::string s(length, '0');
    for (unsigned i = 0; i < length; ++i)
        if ((bits >> (length - 1 - i)) & 1u) s[i] = '1';
    return s;
}

BitString BitString::prefix(unsigned p) const {
    if (p > length) throw ParameterError("prefix longer than bit string");
    return {p == 0 ? 0u : bits >> (length - p), p};
}

BitString Doc2P::payload(std::uint32_t character) const {
    if (character < 1 || character > payloads.size())
        throw std::out_of_range("character " + std::to_string(character) +
                                " has no payload in this document");
    return {payloads[character - 1], sigma_bits};
}

std::vector<std::uint32_t> Doc2P::render_characters() const {
    std::vector<std::uint32_t> out;
    out.reserve(3 * payloads.size() + 2 * (second_part ? second_part->size() : 0));
    for (std::size_t i = 0; i < payloads.size(); ++i) {
        out.push_back(0);
        out.push_back(static_cast<std::uint32_t>(i + 1));
        out.push_back(payloads[i]);
    }
    if (second_part) {
        for (auto s : *second_part) {
            out.push_back(0);
            out.push_back(s);
        }
    }
    return out;
}

std::string Doc2P::render_text() const {
    std::string out;
    for (std::size_t i = 0; i < payloads.size(); ++i) {
        if (!out.empty()) out += ' ';
        out += '#' + std::to_string(i + 1) + ':' +
               BitString{payloads[i], sigma_bits}.to_string();
    }
    if (second_part) {
        for (auto s : *second_part) {
            if (!out.empty()) out += ' ';
            out += '#' + std::to_string(s);
        }
    }
    return out;
}

bool match_positive(const Doc2P& doc, const Pattern2P& pat) {
    if (pat.polarity != Polarity::positive)
        throw ParameterError("match_positive called with a negative pattern");
    if (pat.trailing.length > doc.sigma_bits)
        throw ParameterError("trailing bits longer than sigma");
    const BitString payload = doc.payload(pat.initial);
    return payload.prefix(pat.trailing.length) == pat.trailing;
}

bool match_negative(const Doc2P& doc, const Pattern2P& pat) {
    if (pat.polarity != Polarity::negative)
        throw ParameterError("match_negative called with a positive pattern");
    if (!doc.second_part)
        throw ParameterError("negative pattern evaluated on a document without a negative part");
    return !std::binary_search(doc.second_part->begin(), doc.second_part->end(), pat.initial);
}

bool match_pattern(const Doc2P& doc, const Pattern2P& pat) {
    return pat.polarity == Polarity::positive ? match_positive(doc, pat)
                                              : match_negative(doc, pat);
}

namespace {

void require_positive(const Alphabet2P& a, unsigned p, const Pattern2P& pat) {
    if (pat.polarity != Polarity::positive) throw ParameterError("expected a positive pattern");
    if (!a.is_positive_char(pat.initial))
        throw ParameterError("positive initial character out of range");
    if (pat.trailing.length != p) throw ParameterError("positive pattern must have p trailing bits");
}

void require_negative(std::uint32_t begin, std::uint32_t size, const Pattern2P& pat) {
    if (pat.polarity != Polarity::negative) throw ParameterError("expected a negative pattern");
    if (pat.initial < begin || pat.initial >= begin + size)
        throw ParameterError("negative symbol outside its part alphabet");
    if (pat.trailing.length != 0) throw ParameterError("negative pattern has trailing bits");
}

}  // namespace

void validate_query(Family family, unsigned sigma_bits, unsigned p, const Query2P& q) {
    const Alphabet2P a(sigma_bits);
    if (p > sigma_bits) throw ParameterError("p must not exceed sigma");
    switch (family) {
        case Family::two_pattern:
            require_positive(a, p, q.first);
            require_positive(a, p, q.second);
            if (q.first.initial == q.second.initial)
                throw ParameterError("2P query needs distinct initial characters");
            break;
        case Family::forbidden_pattern:
            require_positive(a, p, q.first);
            require_negative(a.negative_a_begin(), a.negative_part_size(), q.second);
            break;
        case Family::two_forbidden:
            require_negative(a.negative_a_begin(), a.negative_part_size(), q.first);
            require_negative(a.negative_b_begin(), a.negative_part_size(), q.second);
            break;
    }
}

bool match_query(const Doc2P& doc, const Query2P& q) {
    return match_pattern(doc, q.first) && match_pattern(doc, q.second);
}

DocSet eval_query(std::span<const Doc2P> docs, const Query2P& q) {
    DocSet out;
    for (std::size_t i = 0; i < docs.size(); ++i)
        if (match_query(docs[i], q)) out.push_back(static_cast<DocId>(i));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::uint32_t symbol_from_char(char ch) {
    if (ch >= '0' && ch <= '9') return static_cast<std::uint32_t>(ch - '0');
    if (ch >= 'a' && ch <= 'z') return static_cast<std::uint32_t>(ch - 'a' + 10);
    throw ParameterError(std::string("bad WCI symbol '") + ch + "'");
}

char char_from_symbol(std::uint32_t s) {
    if (s < 10) return static_cast<char>('0' + s);
    if (s < 36) return static_cast<char>('a' + (s - 10));
    throw ParameterError("WCI symbol too large for text form");
}

}  // namespace

WciDoc WciDoc::parse(std::string_view text) {
    WciDoc d;
    d.symbols.reserve(text.size());
    for (char ch : text) d.symbols.push_back(symbol_from_char(ch));
    return d;
}

std::string WciDoc::to_string() const {
    std::string s;
    for (auto x : symbols) s += char_from_symbol(x);
    return s;
}

WciPattern WciPattern::parse(std::string_view text) {
    WciPattern pat;
    pat.cells.reserve(text.size());
    for (char ch : text) pat.cells.push_back(ch == '*' ? kWildcard : symbol_from_char(ch));
    return pat;
}

std::string WciPattern::to_string() const {
    std::string s;
    for (auto x : cells) s += x == kWildcard ? '*' : char_from_symbol(x);
    return s;
}

std::size_t WciPattern::wildcard_count() const {
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), kWildcard));
}

bool match_wildcard(const WciDoc& doc, const WciPattern& pat) {
    if (doc.symbols.size() != pat.cells.size())
        throw ParameterError("document and pattern lengths differ");
    for (std::size_t i = 0; i < pat.cells.size(); ++i)
        if (pat.cells[i] != kWildcard && pat.cells[i] != doc.symbols[i]) return false;
    return true;
}

// ---------------------------------------------------------------------------

namespace {

void check_blocks(const std::vector<std::uint32_t>& v, unsigned p, const char* what) {
    if (p < 1 || p > 24) throw ParameterError("block length p must lie in [1, 24]");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] >= (std::uint32_t{1} << p))
            throw ParameterError(std::string(what) + " value exceeds p bits");
        if (i > 0 && v[i] <= v[i - 1])
            throw ParameterError(std::string(what) + " must be strictly increasing");
    }
}

std::string bits_of(std::uint32_t v, unsigned p) { return BitString{v, p}.to_string(); }

}  // namespace

GappedPattern::GappedPattern(std::vector<std::uint32_t> subpatterns, unsigned p,
                             std::uint32_t gap_high)
    : subs_(std::move(subpatterns)), p_(p), gap_(gap_high) {
    if (subs_.empty()) throw ParameterError("gapped pattern needs at least one subpattern");
    check_blocks(subs_, p_, "subpatterns");
}

std::string GappedPattern::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < subs_.size(); ++i) {
        if (i > 0) s += "{0," + std::to_string(gap_) + "}";
        s += bits_of(subs_[i], p_);
    }
    return s;
}

GpiText::GpiText(std::vector<std::uint32_t> blocks, unsigned p)
    : blocks_(std::move(blocks)), p_(p) {
    check_blocks(blocks_, p_, "blocks");
}

std::string GpiText::render() const {
    std::string s;
    for (auto b : blocks_) s += '#' + bits_of(b, p_);
    return s;
}

std::uint64_t block_gap(std::size_t a, std::size_t b, unsigned p) {
    return static_cast<std::uint64_t>(b - a - 1) * (p + 1) + 1;
}

bool match_gapped(const GpiText& text, const GappedPattern& pat) {
    if (text.p() != pat.p()) return false;
    const auto& blocks = text.blocks();
    std::size_t prev = 0;
    for (std::size_t i = 0; i < pat.subpatterns().size(); ++i) {
        auto it = std::lower_bound(blocks.begin(), blocks.end(), pat.subpatterns()[i]);
        if (it == blocks.end() || *it != pat.subpatterns()[i]) return false;
        const auto at = static_cast<std::size_t>(it - blocks.begin());
        if (i > 0) {
            if (at <= prev) return false;
            if (block_gap(prev, at, pat.p()) > pat.gap_high()) return false;
        }
        prev = at;
    }
    return true;
}

// ---------------------------------------------------------------------------

std::uint64_t SIInstance::total_size() const {
    std::uint64_t n = 0;
    for (const auto& s : sets) n += s.size();
    return n;
}

DocSet set_intersection(const SIInstance& si, std::size_t i, std::size_t j) {
    if (i >= si.sets.size() || j >= si.sets.size())
        throw std::out_of_range("set index out of range");
    if (i == j) throw ParameterError("set_intersection needs distinct indices");
    DocSet out;
    std::set_intersection(si.sets[i].begin(), si.sets[i].end(), si.sets[j].begin(),
                          si.sets[j].end(), std::back_inserter(out));
    return out;
}

}  // namespace pmlab
