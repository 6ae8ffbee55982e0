#pragma once

// Documents, patterns and queries for the four problem families, together
// with the brute-force matchers that every other module treats as ground
// truth.  All types are immutable values once built; matchers are pure.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pmlab {

using DocId = std::uint32_t;
using DocSet = std::vector<DocId>;  // sorted, distinct

// ---------------------------------------------------------------------------
// Two-pattern families (2P, FP, 2FP)
// ---------------------------------------------------------------------------

enum class Family { two_pattern, forbidden_pattern, two_forbidden };

std::string_view family_name(Family f);  // "2p", "fp", "2fp"
Family parse_family(std::string_view name);

enum class Polarity { positive, negative };

// Alphabet of 2^sigma characters; character 0 is the delimiter '#'.
// The negative-part alphabets used by FP/2FP sit above it:
//   part A = [2^sigma, 2^(sigma+1))         (FP, and the first 2FP part)
//   part B = [2^(sigma+1), 2^(sigma+1)+2^sigma)   (second 2FP part)
struct Alphabet2P {
    unsigned sigma_bits;

    explicit Alphabet2P(unsigned sigma_bits);

    std::uint32_t size() const noexcept { return std::uint32_t{1} << sigma_bits; }
    std::uint32_t positive_count() const noexcept { return size() - 1; }
    std::uint32_t negative_a_begin() const noexcept { return size(); }
    std::uint32_t negative_b_begin() const noexcept { return 2 * size(); }
    std::uint32_t negative_part_size() const noexcept { return size(); }

    bool is_positive_char(std::uint32_t c) const noexcept { return c >= 1 && c < size(); }
    bool is_negative_char(std::uint32_t c) const noexcept {
        return c >= negative_a_begin() && c < negative_b_begin() + size();
    }
};

// Up to 32 bits, most significant bit first: "101" is {0b101, 3}.
struct BitString {
    std::uint32_t bits = 0;
    unsigned length = 0;

    static BitString parse(std::string_view text);
    std::string to_string() const;
    // The first `p` bits of this string.
    BitString prefix(unsigned p) const;

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;
};

struct Doc2P {
    unsigned sigma_bits = 0;
    // payloads[i - 1] holds the sigma random bits of part i (character i).
    // Empty for 2FP documents, which have no positive part.
    std::vector<std::uint32_t> payloads;
    // Sorted distinct negative-alphabet symbols present in the document.
    std::optional<std::vector<std::uint32_t>> second_part;

    BitString payload(std::uint32_t character) const;

    // Literal character sequence: '#'(0), i, payload per part, then '#', s
    // for every negative symbol.  3(2^sigma - 1) characters for 2P docs.
    std::vector<std::uint32_t> render_characters() const;
    // Human-readable form, e.g. "#1:101 #2:010 #3:111".
    std::string render_text() const;
};

struct Pattern2P {
    std::uint32_t initial = 1;
    BitString trailing;
    Polarity polarity = Polarity::positive;

    static Pattern2P positive(std::uint32_t initial, BitString trailing) {
        return {initial, trailing, Polarity::positive};
    }
    static Pattern2P negative(std::uint32_t symbol) { return {symbol, {}, Polarity::negative}; }

    friend bool operator==(const Pattern2P&, const Pattern2P&) = default;
};

struct Query2P {
    Pattern2P first;
    Pattern2P second;

    friend bool operator==(const Query2P&, const Query2P&) = default;
};

// True iff pat.trailing is the prefix of the payload of pat.initial.
// Throws std::out_of_range for an initial character outside [1, 2^sigma).
bool match_positive(const Doc2P& doc, const Pattern2P& pat);

// True iff pat.initial does not occur in the document's negative part.
// Throws ParameterError when the document has no negative part.
bool match_negative(const Doc2P& doc, const Pattern2P& pat);

bool match_pattern(const Doc2P& doc, const Pattern2P& pat);

// Throws ParameterError unless q is a legal query of `family` with p
// trailing bits on every positive pattern.
void validate_query(Family family, unsigned sigma_bits, unsigned p, const Query2P& q);

bool match_query(const Doc2P& doc, const Query2P& q);

// Brute force over all documents.
DocSet eval_query(std::span<const Doc2P> docs, const Query2P& q);

// ---------------------------------------------------------------------------
// Wild-card indexing
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kWildcard = UINT32_MAX;

struct WciDoc {
    std::vector<std::uint32_t> symbols;

    // Symbols as digits/letters ('0'-'9', 'a'-'z').
    static WciDoc parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const WciDoc&, const WciDoc&) = default;
    friend auto operator<=>(const WciDoc&, const WciDoc&) = default;
};

struct WciPattern {
    std::vector<std::uint32_t> cells;  // kWildcard marks '*'

    static WciPattern parse(std::string_view text);
    std::string to_string() const;
    std::size_t wildcard_count() const;

    friend bool operator==(const WciPattern&, const WciPattern&) = default;
    friend auto operator<=>(const WciPattern&, const WciPattern&) = default;
};

// Throws ParameterError on length mismatch.
bool match_wildcard(const WciDoc& doc, const WciPattern& pat);

// ---------------------------------------------------------------------------
// Gapped patterns
// ---------------------------------------------------------------------------

// p_1 {0,gap} p_2 {0,gap} ... p_{k+1}; subpatterns are p-bit strings kept
// strictly increasing.
class GappedPattern {
public:
    GappedPattern(std::vector<std::uint32_t> subpatterns, unsigned p, std::uint32_t gap_high);

    const std::vector<std::uint32_t>& subpatterns() const noexcept { return subs_; }
    unsigned p() const noexcept { return p_; }
    std::uint32_t gap_low() const noexcept { return 0; }
    std::uint32_t gap_high() const noexcept { return gap_; }
    std::size_t kappa() const noexcept { return subs_.size() - 1; }

    std::string to_string() const;

private:
    std::vector<std::uint32_t> subs_;
    unsigned p_;
    std::uint32_t gap_;
};

// Concatenation of blocks '#'+b, blocks strictly increasing.
class GpiText {
public:
    GpiText(std::vector<std::uint32_t> blocks, unsigned p);

    const std::vector<std::uint32_t>& blocks() const noexcept { return blocks_; }
    unsigned p() const noexcept { return p_; }
    std::size_t length() const noexcept { return blocks_.size() * (p_ + 1); }

    // "#00#01#10"
    std::string render() const;

private:
    std::vector<std::uint32_t> blocks_;
    unsigned p_;
};

// Number of characters strictly between the end of block a's bits and the
// start of block b's bits (a < b): (b - a - 1)(p + 1) + 1.
//
//   #  b_a  #  b_{a+1}  #  b_b
//      ^^^  ^^^^^^^^^^^^^       <- gap for b = a + 2 is (p+1) + 1
std::uint64_t block_gap(std::size_t a, std::size_t b, unsigned p);

bool match_gapped(const GpiText& text, const GappedPattern& pat);

// ---------------------------------------------------------------------------
// Set intersection
// ---------------------------------------------------------------------------

struct SIInstance {
    std::vector<DocSet> sets;
    std::uint32_t universe_size = 0;

    std::uint64_t total_size() const;
};

// Throws std::out_of_range for a bad index, ParameterError when i == j.
DocSet set_intersection(const SIInstance& si, std::size_t i, std::size_t j);

}  // namespace pmlab
