#pragma once
// bigreal.hpp - arbitrary-precision reals with a rigorous absolute error
// bound (ball arithmetic).
//
// A BigReal is a dyadic center m*2^e plus a nonnegative dyadic radius.
// The invariant maintained by every operation: the exact target quantity
// lies in [center - err, center + err]. Radii are only ever rounded
// upward, centers are rounded to the caller's working precision with the
// rounding error folded into the radius.

#include "phipi/rational.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace phipi {

// Bit length of |m|; 0 for m == 0.
inline long bit_length(const mpz_class& m) {
    if (m == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

// ---------------------------------------------------------------------------
// Dyadic: m * 2^e with exact integer mantissa. Used both for radii
// (m >= 0 by convention) and for exact interval endpoints (m signed).
// ---------------------------------------------------------------------------
struct Dyadic {
    mpz_class m;
    long e = 0;

    bool is_zero() const { return m == 0; }
    int sign() const { return sgn(m); }
};

inline Dyadic dy_zero() { return Dyadic{0, 0}; }

inline Dyadic dy_neg(const Dyadic& a) { return Dyadic{-a.m, a.e}; }

inline Dyadic dy_abs(const Dyadic& a) { return Dyadic{abs(a.m), a.e}; }

// Exact sum; aligns exponents.
inline Dyadic dy_add(const Dyadic& a, const Dyadic& b) {
    if (a.m == 0) return b;
    if (b.m == 0) return a;
    long e = std::min(a.e, b.e);
    mpz_class m = (a.m << static_cast<unsigned long>(a.e - e)) +
                  (b.m << static_cast<unsigned long>(b.e - e));
    return Dyadic{std::move(m), e};
}

inline Dyadic dy_sub(const Dyadic& a, const Dyadic& b) { return dy_add(a, dy_neg(b)); }

// Exact product.
inline Dyadic dy_mul(const Dyadic& a, const Dyadic& b) {
    return Dyadic{mpz_class(a.m * b.m), a.e + b.e};
}

// sign of a - b.
inline int dy_cmp(const Dyadic& a, const Dyadic& b) { return dy_sub(a, b).sign(); }

// Shrink the mantissa to at most `bits` bits, rounding the magnitude up.
// Requires m >= 0 (radius use).
inline Dyadic dy_round_up(Dyadic a, long bits = 32) {
    assert(a.m >= 0);
    long len = bit_length(a.m);
    if (len <= bits) return a;
    long s = len - bits;
    mpz_class low = a.m & ((mpz_class(1) << static_cast<unsigned long>(s)) - 1);
    a.m >>= static_cast<unsigned long>(s);
    if (low != 0) a.m += 1;
    a.e += s;
    return a;
}

// Shrink the mantissa, rounding the magnitude down. Requires m >= 0.
inline Dyadic dy_round_down(Dyadic a, long bits = 32) {
    assert(a.m >= 0);
    long len = bit_length(a.m);
    if (len <= bits) return a;
    long s = len - bits;
    a.m >>= static_cast<unsigned long>(s);
    a.e += s;
    return a;
}

// Integer square root with certificate s^2 <= n < (s+1)^2.
// Newton iteration from a double seed, precision doubling by nature of the
// iteration, explicit fix-up at the end.
inline mpz_class newton_isqrt(const mpz_class& n) {
    if (n < 0) throw std::domain_error("newton_isqrt: negative input");
    if (n == 0) return 0;
    long bits = bit_length(n);

    // Seed from the top mantissa bits through a double sqrt.
    long shift = bits > 94 ? bits - 94 : 0;
    if (shift % 2 != 0) ++shift;
    double top = mpz_class(n >> static_cast<unsigned long>(shift)).get_d();
    mpz_class x(std::sqrt(top) + 2.0);
    x <<= static_cast<unsigned long>(shift / 2);
    x += 2; // keep the iterate at or above the true root

    for (;;) {
        mpz_class y = (x + n / x) >> 1;
        if (y >= x) break;
        x = std::move(y);
    }
    while (x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;

    // Certificate: must hold by construction.
    if (!(x * x <= n && (x + 1) * (x + 1) > n))
        throw std::logic_error("newton_isqrt: certificate failed");
    return x;
}

// Upper bound of a/b with a small mantissa. a >= 0, b > 0.
inline Dyadic dy_div_up(const Dyadic& a, const Dyadic& b) {
    assert(a.m >= 0 && b.m > 0);
    if (a.m == 0) return dy_zero();
    long t = 64 + bit_length(b.m);
    mpz_class q = (a.m << static_cast<unsigned long>(t)) / b.m + 1;
    return dy_round_up(Dyadic{std::move(q), a.e - b.e - t});
}

// Upper bound of sqrt(a). a >= 0.
inline Dyadic dy_sqrt_up(const Dyadic& a) {
    assert(a.m >= 0);
    if (a.m == 0) return dy_zero();
    long len = bit_length(a.m);
    long t = len < 130 ? 130 - len : 0;
    if ((a.e - t) % 2 != 0) ++t;
    mpz_class s = newton_isqrt(mpz_class(a.m << static_cast<unsigned long>(t))) + 1;
    return dy_round_up(Dyadic{std::move(s), (a.e - t) / 2});
}

// Lower bound of sqrt(a). a >= 0.
inline Dyadic dy_sqrt_down(const Dyadic& a) {
    assert(a.m >= 0);
    if (a.m == 0) return dy_zero();
    long len = bit_length(a.m);
    long t = len < 130 ? 130 - len : 0;
    if ((a.e - t) % 2 != 0) ++t;
    mpz_class s = newton_isqrt(mpz_class(a.m << static_cast<unsigned long>(t)));
    return dy_round_down(Dyadic{std::move(s), (a.e - t) / 2});
}

// log10 of |a| as a double, -inf for zero. Only used for diagnostics.
inline double dy_log10_abs(const Dyadic& a) {
    if (a.m == 0) return -std::numeric_limits<double>::infinity();
    signed long int ex = 0;
    double d = mpz_get_d_2exp(&ex, a.m.get_mpz_t());
    return std::log10(std::fabs(d)) + (static_cast<double>(ex) + static_cast<double>(a.e)) * std::log10(2.0);
}

// Scientific-notation rendering for diagnostics, e.g. "4.7810e-1001".
inline std::string dy_to_sci(const Dyadic& a, int sig_digits = 5) {
    if (a.m == 0) return "0";
    double l = dy_log10_abs(a);
    double frac = l - std::floor(l);
    long exp10 = static_cast<long>(std::floor(l));
    double mant = std::pow(10.0, frac);
    if (mant >= 10.0) { mant /= 10.0; ++exp10; }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.*fe%+ld", a.m < 0 ? "-" : "", sig_digits - 1, mant, exp10);
    return buf;
}

// ---------------------------------------------------------------------------
// BigReal
// ---------------------------------------------------------------------------
class BigReal {
public:
    mpz_class man;   // center mantissa
    long exp = 0;    // center = man * 2^exp
    Dyadic err;      // absolute error radius, m >= 0

    BigReal() : man(0), exp(0), err(dy_zero()) {}

    static BigReal exact(long v) { return exact(mpz_class(v)); }

    static BigReal exact(mpz_class v) {
        BigReal r;
        r.man = std::move(v);
        r.exp = 0;
        r.normalize_center();
        return r;
    }

    static BigReal exact_dyadic(mpz_class m, long e) {
        BigReal r;
        r.man = std::move(m);
        r.exp = e;
        r.normalize_center();
        return r;
    }

    // Center within one ulp of num/den at `prec` bits; exact when the
    // denominator is a power of two.
    static BigReal from_rational(const Rational& q, long prec);

    bool is_exact() const { return err.m == 0; }

    Dyadic center() const { return Dyadic{man, exp}; }
    Dyadic lower() const { return dy_sub(center(), err); }
    Dyadic upper() const { return dy_add(center(), err); }

    // |center| rounded up to a small mantissa.
    Dyadic abs_center_up() const { return dy_round_up(Dyadic{abs(man), exp}); }

    // exp + bitlen(man): position of the leading center bit.
    long top_bit() const { return exp + bit_length(man); }

    void add_error(const Dyadic& d) {
        assert(d.m >= 0);
        err = dy_round_up(dy_add(err, d));
    }

    // Round the center to `prec` bits (nearest, ties away from zero) and
    // fold the rounding error into the radius.
    void round_center(long prec) {
        long len = bit_length(man);
        if (len <= prec) { normalize_center(); return; }
        long s = len - prec;
        bool neg = man < 0;
        mpz_class a = abs(man);
        a += mpz_class(1) << static_cast<unsigned long>(s - 1);
        a >>= static_cast<unsigned long>(s);
        man = neg ? mpz_class(-a) : a;
        exp += s;
        add_error(Dyadic{1, exp - 1});
        normalize_center();
    }

    void normalize_center() {
        if (man == 0) { exp = 0; return; }
        auto tz = mpz_scan1(man.get_mpz_t(), 0);
        if (tz > 0) {
            man >>= tz;
            exp += static_cast<long>(tz);
        }
    }
};

inline BigReal from_rational_impl(const Rational& q, long prec) {
    const mpz_class& n = q.num();
    const mpz_class& d = q.den();
    if (n == 0) return BigReal::exact(0);
    if (d == 1) return BigReal::exact(n);
    auto tz = mpz_scan1(d.get_mpz_t(), 0);
    if (static_cast<long>(tz) == bit_length(d) - 1) {
        // power-of-two denominator: exact dyadic
        return BigReal::exact_dyadic(n, -static_cast<long>(tz));
    }
    long t = prec + 2 - bit_length(n) + bit_length(d);
    if (t < 0) t = 0;
    mpz_class quo;
    mpz_tdiv_q(quo.get_mpz_t(), mpz_class(n << static_cast<unsigned long>(t)).get_mpz_t(),
               d.get_mpz_t());
    BigReal r = BigReal::exact_dyadic(std::move(quo), -t);
    r.add_error(Dyadic{1, -t});
    r.round_center(prec);
    return r;
}

inline BigReal BigReal::from_rational(const Rational& q, long prec) {
    return from_rational_impl(q, prec);
}

namespace detail {

// Operands whose whole magnitude falls more than prec+96 bits below the
// other operand's leading bit are absorbed into the radius instead of
// being merged exactly; keeps mantissas bounded near the working precision.
inline bool absorbable(const BigReal& small, const BigReal& big, long prec) {
    if (small.man == 0) return false;
    if (big.man == 0) return false;
    return small.top_bit() < big.top_bit() - (prec + 96);
}

inline BigReal absorb(BigReal big, const BigReal& small) {
    big.add_error(small.abs_center_up());
    big.add_error(small.err);
    return big;
}

} // namespace detail

inline BigReal add(const BigReal& x, const BigReal& y, long prec) {
    if (detail::absorbable(y, x, prec)) return detail::absorb(x, y);
    if (detail::absorbable(x, y, prec)) return detail::absorb(y, x);
    Dyadic c = dy_add(x.center(), y.center());
    BigReal r = BigReal::exact_dyadic(std::move(c.m), c.e);
    r.err = dy_round_up(dy_add(x.err, y.err));
    r.round_center(prec);
    return r;
}

inline BigReal neg(BigReal x) {
    x.man = -x.man;
    return x;
}

inline BigReal sub(const BigReal& x, const BigReal& y, long prec) {
    return add(x, neg(y), prec);
}

inline BigReal mul(const BigReal& x, const BigReal& y, long prec) {
    BigReal r = BigReal::exact_dyadic(mpz_class(x.man * y.man), x.exp + y.exp);
    // |xy - x^y^| <= |x^|*ye + |y^|*xe + xe*ye
    Dyadic prop = dy_add(dy_mul(x.abs_center_up(), y.err),
                         dy_add(dy_mul(y.abs_center_up(), x.err), dy_mul(x.err, y.err)));
    r.err = dy_round_up(prop);
    r.round_center(prec);
    return r;
}

inline BigReal div(const BigReal& x, const BigReal& y, long prec) {
    // The divisor interval must exclude zero.
    Dyadic ylo = dy_sub(dy_abs(y.center()), y.err);
    if (ylo.sign() <= 0)
        throw std::domain_error("BigReal div: divisor interval contains zero");

    BigReal r;
    long eq;
    if (x.man == 0) {
        r.man = 0;
        eq = 0;
    } else {
        long t = prec + 2 - bit_length(x.man) + bit_length(y.man);
        if (t < 0) t = 0;
        mpz_class quo;
        mpz_tdiv_q(quo.get_mpz_t(),
                   mpz_class(x.man << static_cast<unsigned long>(t)).get_mpz_t(),
                   y.man.get_mpz_t());
        eq = x.exp - y.exp - t;
        r.man = std::move(quo);
        r.exp = eq;
    }

    // |x/y - x^/y^| <= (xe + |x^/y^|*ye) / (|y^| - ye), and |x^/y^| is
    // bounded by (|q|+1) ulp.
    Dyadic q_abs_up = dy_round_up(Dyadic{abs(r.man) + 1, eq});
    Dyadic num = dy_round_up(dy_add(x.err, dy_mul(q_abs_up, y.err)));
    Dyadic prop = dy_div_up(num, dy_round_down(ylo));
    r.err = prop;
    if (x.man != 0) r.add_error(Dyadic{1, eq}); // truncation of the quotient
    r.round_center(prec);
    return r;
}

inline BigReal sqrt(const BigReal& x, long prec) {
    Dyadic lo = x.lower();
    if (lo.sign() < 0)
        throw std::domain_error("BigReal sqrt: interval extends below zero");
    if (x.man == 0 && x.err.is_zero()) return BigReal::exact(0);
    assert(x.man > 0);

    long t = 2 * (prec + 2) - bit_length(x.man);
    if (t < 0) t = 0;
    if ((x.exp - t) % 2 != 0) ++t;
    mpz_class shifted(x.man << static_cast<unsigned long>(t));
    mpz_class s = newton_isqrt(shifted);
    bool square = (s * s == shifted);
    long es = (x.exp - t) / 2;

    BigReal r;
    r.man = std::move(s);
    r.exp = es;
    r.err = dy_zero();
    if (!x.err.is_zero()) {
        // |sqrt(a) - sqrt(b)| <= |a-b| / sqrt(lower)   when lower >= err
        //                     <= sqrt(|a-b|)           otherwise
        if (!lo.is_zero() && dy_cmp(lo, x.err) >= 0)
            r.err = dy_div_up(x.err, dy_sqrt_down(lo));
        else
            r.err = dy_sqrt_up(x.err);
    }
    if (!square) r.add_error(Dyadic{1, es}); // sqrt(center) in [s, s+1) * 2^es
    r.round_center(prec);
    return r;
}

inline BigReal pow(const BigReal& x, unsigned long n, long prec) {
    if (n == 0) return BigReal::exact(1);
    if (n == 1) return x;
    BigReal acc = BigReal::exact(1);
    BigReal base = x;
    bool acc_used = false;
    while (n > 0) {
        if (n & 1) {
            acc = acc_used ? mul(acc, base, prec) : base;
            acc_used = true;
        }
        n >>= 1;
        if (n > 0) base = mul(base, base, prec);
    }
    return acc;
}

enum class Order { less, greater, overlapping };

inline Order compare(const BigReal& x, const BigReal& y) {
    if (dy_cmp(x.upper(), y.lower()) < 0) return Order::less;
    if (dy_cmp(x.lower(), y.upper()) > 0) return Order::greater;
    return Order::overlapping;
}

inline bool contains_zero(const BigReal& x) {
    return x.lower().sign() <= 0 && x.upper().sign() >= 0;
}

// Working precision for a decimal-digit target: digits * log2(10), rounded
// up, plus 64 guard bits.
inline long prec_for_digits(long digits) {
    return (digits * 3322 + 999) / 1000 + 64;
}

namespace detail {

// round(value * 10^k) to the nearest integer (ties upward), where
// value = m * 2^e exactly. Monotone, so rounding both interval endpoints
// with it certifies a digit string.
inline mpz_class round_scaled(const mpz_class& m, long e, const mpz_class& pow10) {
    mpz_class num = m * pow10;
    if (e >= 0) return mpz_class(num << static_cast<unsigned long>(e));
    mpz_class den = mpz_class(1) << static_cast<unsigned long>(-e);
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * rem >= den) q += 1;
    return q;
}

} // namespace detail

struct Decimal {
    std::string text;            // "" when nothing could be certified
    long fractional_digits = -1; // digits after the point actually printed
    bool certified_at_request = false;
};

// Round-to-nearest decimal rendering with `frac_digits` digits after the
// point, printing only digits implied by the error bound: both interval
// endpoints must round to the same scaled integer. Falls back to fewer
// digits when the bound is too loose.
inline Decimal to_decimal(const BigReal& x, long frac_digits) {
    Decimal out;
    long k = frac_digits;
    if (!x.err.is_zero()) {
        // certifying k digits needs width 2*err <= 10^-k; cap the search
        // (with slack) so absurd requests don't build huge powers of ten
        double space = -dy_log10_abs(x.err) - 0.301;
        long cap = space < 0 ? 0 : static_cast<long>(space) + 2;
        if (cap < k) k = cap;
    }
    Dyadic lo = x.lower(), hi = x.upper();
    for (; k >= 0; --k) {
        mpz_class pow10;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(k));
        mpz_class nlo = detail::round_scaled(lo.m, lo.e, pow10);
        mpz_class nhi = detail::round_scaled(hi.m, hi.e, pow10);
        if (nlo != nhi) continue;

        bool neg = nlo < 0;
        std::string digits = mpz_class(abs(nlo)).get_str();
        if (static_cast<long>(digits.size()) <= k)
            digits.insert(0, static_cast<size_t>(k + 1 - digits.size()), '0');
        std::string text = neg ? "-" : "";
        if (k == 0) {
            text += digits;
        } else {
            text += digits.substr(0, digits.size() - static_cast<size_t>(k));
            text += ".";
            text += digits.substr(digits.size() - static_cast<size_t>(k));
        }
        out.text = std::move(text);
        out.fractional_digits = k;
        out.certified_at_request = (k == frac_digits);
        return out;
    }
    return out;
}

inline double to_double(const BigReal& x) {
    if (x.man == 0) return 0.0;
    signed long int ex = 0;
    double d = mpz_get_d_2exp(&ex, x.man.get_mpz_t());
    return std::ldexp(d, static_cast<int>(ex + x.exp));
}

} // namespace phipi
