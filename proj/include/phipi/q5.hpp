#pragma once
// q5.hpp - exact arithmetic in the quadratic field Q(sqrt5).
//
// Every constant the golden-ratio series needs (phi, 3-phi, phi^2, the
// convergence ratio (3-phi)/phi^2) lives here with zero rounding error.
// An element is a + b*sqrt5 with reduced rational coordinates; that form
// is unique, so equality is a structural check.

#include "phipi/bigreal.hpp"
#include "phipi/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace phipi {

class Q5 {
public:
    Q5() = default;
    Q5(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
    Q5(long a) : a_(a), b_(0) {} // NOLINT: rationals embed

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    friend bool operator==(const Q5& x, const Q5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const Q5& x, const Q5& y) { return !(x == y); }

    Q5 operator-() const { return Q5(-a_, -b_); }

    friend Q5 operator+(const Q5& x, const Q5& y) { return Q5(x.a_ + y.a_, x.b_ + y.b_); }
    friend Q5 operator-(const Q5& x, const Q5& y) { return Q5(x.a_ - y.a_, x.b_ - y.b_); }

    // (a1 + b1 s)(a2 + b2 s) with s^2 = 5
    friend Q5 operator*(const Q5& x, const Q5& y) {
        return Q5(x.a_ * y.a_ + Rational(5) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
    }

    friend Q5 operator/(const Q5& x, const Q5& y) { return x * inverse(y); }

    // 1/(a + b s) = (a - b s)/(a^2 - 5 b^2); the norm is nonzero for any
    // nonzero element because sqrt5 is irrational.
    friend Q5 inverse(const Q5& x) {
        if (x.is_zero()) throw std::domain_error("Q5: inverse of zero");
        Rational norm = x.a_ * x.a_ - Rational(5) * x.b_ * x.b_;
        return Q5(x.a_ / norm, -x.b_ / norm);
    }

private:
    Rational a_; // rational part
    Rational b_; // coefficient of sqrt5
};

inline Q5 q5_pow(const Q5& x, unsigned long n) {
    Q5 acc(1);
    Q5 base = x;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return acc;
}

// The golden ratio (1 + sqrt5)/2.
inline const Q5& phi() {
    static const Q5 v(Rational(1, 2), Rational(1, 2));
    return v;
}

// Convergence ratio of the series family: (3 - phi)/phi^2, computed by
// field operations. Simplifies to 5 - 2*sqrt5.
inline const Q5& ratio_r() {
    static const Q5 v = (Q5(3) - phi()) * inverse(phi() * phi());
    return v;
}

// Exact sign via case analysis on the coordinates; the mixed-sign case
// compares a^2 against 5 b^2 in integers, never in floating point.
inline int sign(const Q5& x) {
    int sa = x.a().sign();
    int sb = x.b().sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rational a2 = x.a() * x.a();
    Rational b25 = Rational(5) * x.b() * x.b();
    if (a2 == b25) return 0; // unreachable for nonzero elements
    return a2 > b25 ? sa : sb;
}

// Ball enclosure of a + b*sqrt5 with relative error at most 2^(1-prec).
// Widens the internal working precision until the coordinate cancellation
// (huge a, b with tiny a + b*sqrt5) is absorbed.
inline BigReal to_bigreal(const Q5& x, long prec) {
    if (prec < 8) throw std::invalid_argument("Q5 to_bigreal: prec must be >= 8");
    if (x.is_zero()) return BigReal::exact(0);
    if (x.is_rational()) return BigReal::from_rational(x.a(), prec);

    for (long work = prec + 8;; work = work * 2 + 16) {
        BigReal av = BigReal::from_rational(x.a(), work);
        BigReal bv = BigReal::from_rational(x.b(), work);
        BigReal s5 = sqrt(BigReal::exact(5), work);
        BigReal res = add(av, mul(bv, s5, work), work);
        if (res.err.is_zero()) return res;
        // need err <= 2^(1-prec) * |x|; demand half of that so the final
        // center rounding stays inside the contract. |center| - err is a
        // lower bound on |x|.
        Dyadic mag_lo = dy_sub(dy_abs(res.center()), res.err);
        if (mag_lo.sign() > 0) {
            Dyadic budget = dy_round_down(Dyadic{mag_lo.m, mag_lo.e - prec});
            if (dy_cmp(res.err, budget) <= 0) {
                res.round_center(prec + 16);
                return res;
            }
        }
    }
}

// Text form "a/b + c/d*sqrt5"; round-trips exactly through q5_from_string.
inline std::string to_string(const Q5& x) {
    std::string s = x.a().num().get_str() + "/" + x.a().den().get_str();
    s += x.b().sign() < 0 ? " - " : " + ";
    Rational babs = x.b().abs();
    s += babs.num().get_str() + "/" + babs.den().get_str() + "*sqrt5";
    return s;
}

inline Q5 q5_from_string(const std::string& text) {
    // grammar: [-]num/den (+|-) num/den*sqrt5
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    auto parse_rat = [&](bool expect_sqrt5) {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
        if (pos == start) throw std::invalid_argument("Q5 parse: expected rational in '" + text + "'");
        Rational r = Rational::from_string(text.substr(start, pos - start));
        if (expect_sqrt5) {
            if (text.compare(pos, 6, "*sqrt5") != 0)
                throw std::invalid_argument("Q5 parse: expected '*sqrt5' in '" + text + "'");
            pos += 6;
        }
        return r;
    };
    Rational a = parse_rat(false);
    skip_ws();
    if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-'))
        throw std::invalid_argument("Q5 parse: expected '+' or '-' in '" + text + "'");
    bool negate = text[pos] == '-';
    ++pos;
    Rational b = parse_rat(true);
    skip_ws();
    if (pos != text.size()) throw std::invalid_argument("Q5 parse: trailing input in '" + text + "'");
    return Q5(std::move(a), negate ? -b : b);
}

} // namespace phipi
