#pragma once
// oracles.hpp - independent pi computations used to cross-check the
// golden-ratio series: Machin-type arctangent identities in powers of phi,
// a Viete-type nested-radical product, the classic base-16 BBP series with
// isolated hex-digit extraction, and the slow Madhava-Gregory-Leibniz
// arctangent series.

#include "phipi/bigreal.hpp"
#include "phipi/q5.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace phipi {

// pi as an integer combination of arctangents of 1/phi^n. The three
// identities:
//   v1: 4 atan(1/phi)   + 4 atan(1/phi^3)
//   v2: 8 atan(1/phi^2) + 4 atan(1/phi^6)
//   v3: 12 atan(1/phi^3) + 4 atan(1/phi^5)
enum class MachinVariant { v1 = 1, v2 = 2, v3 = 3 };

struct MachinTerm {
    long coefficient;
    unsigned long phi_power;
};

inline std::vector<MachinTerm> machin_terms(MachinVariant v) {
    switch (v) {
        case MachinVariant::v1: return {{4, 1}, {4, 3}};
        case MachinVariant::v2: return {{8, 2}, {4, 6}};
        case MachinVariant::v3: return {{12, 3}, {4, 5}};
    }
    throw std::invalid_argument("machin_terms: unknown variant");
}

// Alternating arctangent series sum (-1)^k x^(2k+1)/(2k+1) for |x| < 1,
// truncated with the first omitted term folded into the error bound.
inline BigReal arctan_series(const BigReal& x, long digits) {
    Dyadic abs_up = dy_add(dy_abs(x.center()), x.err);
    if (dy_cmp(abs_up, Dyadic{1, 0}) >= 0)
        throw std::domain_error("arctan_series: |x| must be < 1");

    long w = prec_for_digits(digits);
    long target_e = -((digits * 3322 + 999) / 1000) - 2; // <= 10^-digits / 4
    Dyadic target{1, target_e};

    BigReal x2 = mul(x, x, w);
    BigReal power = x;
    BigReal sum = BigReal::exact(0);
    for (long k = 0;; ++k) {
        BigReal term = div(power, BigReal::exact(2 * k + 1), w);
        Dyadic tmag = dy_round_up(dy_add(dy_abs(term.center()), term.err));
        if (k > 0 && dy_cmp(tmag, target) <= 0) {
            sum.add_error(tmag); // alternating remainder <= first omitted term
            break;
        }
        sum = (k % 2 == 0) ? add(sum, term, w) : sub(sum, term, w);
        power = mul(power, x2, w);
        if (k > 100'000'000)
            throw std::runtime_error("arctan_series: failed to converge");
    }
    return sum;
}

inline BigReal pi_machin(MachinVariant v, long digits) {
    long w = prec_for_digits(digits + 2);
    BigReal acc = BigReal::exact(0);
    for (const MachinTerm& t : machin_terms(v)) {
        BigReal arg = to_bigreal(inverse(q5_pow(phi(), t.phi_power)), w);
        BigReal at = arctan_series(arg, digits + 2);
        acc = add(acc, mul(BigReal::exact(t.coefficient), at, w), w);
    }
    return acc;
}

// Viete-type product (5/phi) * prod 2/a_j with a_1 = sqrt(2+sqrt(2+phi))
// and a_{j+1} = sqrt(2+a_j). Prefixes increase toward pi from below. The
// product carries no proven remainder bound, so the ball only accounts
// for rounding; the distance of the deepest radical from 2 is reported as
// an empirical truncation diagnostic.
struct VieteResult {
    BigReal value;
    Dyadic truncation_diag; // upper bound of |2 - a_factors|
};

inline VieteResult pi_viete_phi(long factors, long precision_bits) {
    if (factors < 1) throw std::invalid_argument("pi_viete_phi: factors must be >= 1");
    if (precision_bits < 8) throw std::invalid_argument("pi_viete_phi: precision too small");
    long w = precision_bits;
    BigReal two = BigReal::exact(2);
    BigReal phib = to_bigreal(phi(), w);
    BigReal radical = sqrt(add(two, phib, w), w); // seed sqrt(2+phi), not itself a factor
    BigReal prod = div(BigReal::exact(5), phib, w);
    for (long j = 0; j < factors; ++j) {
        radical = sqrt(add(two, radical, w), w);
        prod = mul(prod, div(two, radical, w), w);
    }
    Dyadic diag = dy_round_up(dy_add(dy_abs(dy_sub(Dyadic{1, 1}, radical.center())), radical.err));
    return VieteResult{std::move(prod), diag};
}

// Geometric tail of the base-16 BBP series: 6 * 16^-K / (1 - 1/16).
inline Dyadic bbp16_tail_up(long blocks) {
    return dy_div_up(Dyadic{32, -4 * blocks}, Dyadic{5, 0});
}

// Partial sum of the first `blocks` BBP terms; rounding error only.
inline BigReal pi_bbp16_blocks(long blocks, long prec) {
    BigReal sum = BigReal::exact(0);
    for (long k = 0; k < blocks; ++k) {
        BigReal inner = div(BigReal::exact(4), BigReal::exact(8 * k + 1), prec);
        inner = sub(inner, div(BigReal::exact(2), BigReal::exact(8 * k + 4), prec), prec);
        inner = sub(inner, div(BigReal::exact(1), BigReal::exact(8 * k + 5), prec), prec);
        inner = sub(inner, div(BigReal::exact(1), BigReal::exact(8 * k + 6), prec), prec);
        BigReal term = mul(BigReal::exact_dyadic(1, -4 * k), inner, prec);
        sum = add(sum, term, prec);
    }
    return sum;
}

// Classic base-16 BBP series with the geometric tail bound folded in.
inline BigReal pi_bbp16(long digits) {
    if (digits < 1) throw std::invalid_argument("pi_bbp16: digits must be >= 1");
    long w = prec_for_digits(digits);
    // (32/5) * 16^-K < 10^-digits / 2
    long K = (digits * 3322 / 1000 + 8) / 4 + 2;
    BigReal sum = pi_bbp16_blocks(K, w);
    sum.add_error(bbp16_tail_up(K));
    return sum;
}

// Madhava-Gregory-Leibniz oracle: pi = 5 * atan(sqrt(3-phi)/phi), evaluated
// as 5 * sum (-1)^k (sqrt r)^(2k+1)/(2k+1) with r the exact series ratio.
// At ~0.277 digits per term this is the slow oracle; capped at 10^4 terms.
inline constexpr long kMglTermCap = 10'000;

inline long mgl_terms_for_digits(long digits) {
    long terms = static_cast<long>(static_cast<double>(digits) / 0.2774) + 3;
    return terms;
}

inline BigReal pi_mgl(long terms) {
    if (terms < 1) throw std::invalid_argument("pi_mgl: terms must be >= 1");
    if (terms > kMglTermCap)
        throw std::invalid_argument("pi_mgl: slow oracle capped at 10000 terms");
    long digits_est = static_cast<long>(static_cast<double>(terms) * 0.278) + 30;
    long w = prec_for_digits(digits_est);

    BigReal x = sqrt(to_bigreal(ratio_r(), w), w); // sqrt(3-phi)/phi
    BigReal x2 = mul(x, x, w);
    BigReal power = x;
    BigReal sum = BigReal::exact(0);
    for (long k = 0; k < terms; ++k) {
        BigReal term = div(power, BigReal::exact(2 * k + 1), w);
        sum = (k % 2 == 0) ? add(sum, term, w) : sub(sum, term, w);
        power = mul(power, x2, w);
    }
    // alternating remainder: first omitted term
    BigReal omitted = div(power, BigReal::exact(2 * terms + 1), w);
    sum.add_error(dy_round_up(dy_add(dy_abs(omitted.center()), omitted.err)));
    return mul(BigReal::exact(5), sum, w);
}

// ---------------------------------------------------------------------------
// Isolated hexadecimal digit extraction from the BBP formula.
// ---------------------------------------------------------------------------
struct HexDigit {
    int value = 0;            // 0..15
    bool near_boundary = false; // fractional part within 2^-16 of a digit edge
    double fraction = 0.0;    // frac(16^position * pi), diagnostic
};

namespace detail {

// 16^e mod m in 64-bit arithmetic; m stays below 2^23 at desk scale so
// products fit comfortably.
inline std::uint64_t powmod16(std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    std::uint64_t base = 16 % m;
    while (e > 0) {
        if (e & 1) result = result * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return result;
}

inline double bbp_series_frac(unsigned long position, unsigned long j) {
    double s = 0.0;
    for (unsigned long k = 0; k <= position; ++k) {
        std::uint64_t mod = 8 * k + j;
        s += static_cast<double>(powmod16(position - k, mod)) / static_cast<double>(mod);
        s -= std::floor(s);
    }
    for (unsigned long k = position + 1; k <= position + 8; ++k) {
        s += std::pow(16.0, static_cast<double>(position) - static_cast<double>(k)) /
             static_cast<double>(8 * k + j);
    }
    return s;
}

} // namespace detail

inline HexDigit bbp16_hex_digit(unsigned long position) {
    if (position > 1'000'000ul)
        throw std::domain_error("bbp16_hex_digit: position beyond the desk-scale cap");
    double x = 4.0 * detail::bbp_series_frac(position, 1) -
               2.0 * detail::bbp_series_frac(position, 4) -
               detail::bbp_series_frac(position, 5) -
               detail::bbp_series_frac(position, 6);
    double frac = x - std::floor(x);
    double scaled = 16.0 * frac;
    int digit = static_cast<int>(scaled);
    if (digit > 15) digit = 15;
    double dist = std::min(scaled - digit, digit + 1 - scaled) / 16.0;
    HexDigit out;
    out.value = digit;
    out.near_boundary = dist < std::ldexp(1.0, -16);
    out.fraction = frac;
    return out;
}

} // namespace phipi
