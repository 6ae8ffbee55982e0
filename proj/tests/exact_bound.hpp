#pragma once

// Exact-rational form of the chazelle certificate with default constants,
// q t / (beta ell 4^(alpha beta) C(alpha beta, beta)).

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace exact {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_rational chazelle(std::uint64_t q, std::uint64_t t, std::uint64_t ell, std::uint64_t beta,
                             std::uint64_t alpha) {
    const std::uint64_t nav = alpha * beta;
    cpp_int binom = 1;
    for (std::uint64_t i = 0; i < beta; ++i) binom = binom * (nav - i) / (i + 1);
    cpp_int four = 1;
    for (std::uint64_t i = 0; i < nav; ++i) four *= 4;
    return cpp_rational(cpp_int(t) * q, cpp_int(beta) * ell * four * binom);
}

inline double log2_of(const cpp_rational& r) {
    // Split off powers of two so the double conversion never overflows.
    cpp_int num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
    const auto shift_n = static_cast<long>(boost::multiprecision::msb(num));
    const auto shift_d = static_cast<long>(boost::multiprecision::msb(den));
    const long keep = 60;
    const long sn = std::max(0L, shift_n - keep), sd = std::max(0L, shift_d - keep);
    num >>= sn;
    den >>= sd;
    return std::log2(num.convert_to<double>()) - std::log2(den.convert_to<double>()) + static_cast<double>(sn - sd);
}

}  // namespace exact
