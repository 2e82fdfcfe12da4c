#pragma once
// cyclotomic.hpp - dense integer polynomials, the Moebius function, and
// cyclotomic polynomials built two independent ways (divisor-product
// recursion and Moebius inversion), plus machine checks of the algebraic
// identities the series derivation rests on.

#include "phipi/errors.hpp"

#include <gmpxx.h>

#include <cctype>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace phipi {

// Coefficients ascending by degree, trailing zeros trimmed; the zero
// polynomial is the empty sequence.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPoly zero() { return IntPoly(); }
    static IntPoly one() { return monomial(0, 1); }

    static IntPoly monomial(size_t degree, mpz_class coeff) {
        IntPoly p;
        if (coeff != 0) {
            p.c_.assign(degree + 1, mpz_class(0));
            p.c_[degree] = std::move(coeff);
        }
        return p;
    }

    // x^n - 1
    static IntPoly xn_minus_1(size_t n) {
        IntPoly p;
        p.c_.assign(n + 1, mpz_class(0));
        p.c_[0] = -1;
        p.c_[n] = 1;
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const mpz_class& coeff(size_t i) const {
        static const mpz_class z(0);
        return i < c_.size() ? c_[i] : z;
    }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    mpz_class eval(const mpz_class& x) const {
        mpz_class acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), mpz_class(0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return IntPoly(std::move(c));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), mpz_class(0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return IntPoly(std::move(c));
    }

    std::string to_string() const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<mpz_class> c_;
};

// Exact convolution product.
inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly::zero();
    std::vector<mpz_class> c(a.coeffs().size() + b.coeffs().size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.coeffs().size(); ++i)
        for (size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return IntPoly(std::move(c));
}

inline IntPoly operator*(const IntPoly& a, const IntPoly& b) { return poly_mul(a, b); }

// Exact quotient; throws exactness_violation if b does not divide a over
// the integers. Never truncates silently - a nonzero remainder signals a
// wrong identity upstream.
inline IntPoly poly_divexact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("poly_divexact: division by zero polynomial");
    if (a.is_zero()) return IntPoly::zero();
    if (a.degree() < b.degree())
        throw exactness_violation("poly_divexact: divisor degree exceeds dividend", a.degree());

    std::vector<mpz_class> rem(a.coeffs());
    std::vector<mpz_class> quo(static_cast<size_t>(a.degree() - b.degree()) + 1, mpz_class(0));
    const mpz_class& lead = b.coeffs().back();
    for (size_t k = quo.size(); k-- > 0;) {
        mpz_class& top = rem[k + static_cast<size_t>(b.degree())];
        if (top == 0) continue;
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        if (r != 0)
            throw exactness_violation("poly_divexact: nonzero remainder",
                                      static_cast<long>(k) + b.degree());
        quo[k] = q;
        for (size_t j = 0; j < b.coeffs().size(); ++j)
            rem[k + j] -= q * b.coeffs()[j];
    }
    for (size_t i = 0; i < rem.size(); ++i)
        if (rem[i] != 0)
            throw exactness_violation("poly_divexact: nonzero remainder", static_cast<long>(i));
    return IntPoly(std::move(quo));
}

inline std::vector<unsigned long> divisors(unsigned long n) {
    std::vector<unsigned long> lo, hi;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

inline bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// +1 / -1 on squarefree integers by parity of the prime-factor count,
// 0 when a squared prime divides n.
inline int mobius(unsigned long n) {
    if (n == 0) throw std::domain_error("mobius: n must be positive");
    int factors = 0;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++factors;
    }
    if (n > 1) ++factors;
    return factors % 2 == 0 ? 1 : -1;
}

// Phi_n via Moebius inversion: product of (x^d - 1) over divisors with
// mu(n/d) = +1, divided exactly by the product over mu(n/d) = -1.
inline IntPoly cyclotomic_mobius(unsigned long n) {
    if (n == 0) throw std::domain_error("cyclotomic_mobius: n must be positive");
    IntPoly pos = IntPoly::one();
    IntPoly neg = IntPoly::one();
    for (unsigned long d : divisors(n)) {
        int mu = mobius(n / d);
        if (mu == 1) pos = pos * IntPoly::xn_minus_1(d);
        else if (mu == -1) neg = neg * IntPoly::xn_minus_1(d);
    }
    return poly_divexact(pos, neg);
}

// Phi_n via the divisor product: (x^n - 1) / prod_{d|n, d<n} Phi_d,
// memoized. The cache tolerates concurrent readers and concurrent
// inserts of the same key (same value either way).
inline IntPoly cyclotomic_recursive(unsigned long n) {
    if (n == 0) throw std::domain_error("cyclotomic_recursive: n must be positive");
    static std::map<unsigned long, IntPoly> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    IntPoly prod = IntPoly::one();
    for (unsigned long d : divisors(n))
        if (d < n) prod = prod * cyclotomic_recursive(d);
    IntPoly result = poly_divexact(IntPoly::xn_minus_1(n), prod);
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(n, result);
    return result;
}

// verify_* return a witness (first differing coefficient) instead of a
// bare bool, for test diagnostics.
struct VerifyResult {
    bool pass = false;
    long witness_index = -1; // first differing coefficient, -1 if pass
    std::string detail;
};

inline VerifyResult verify_equal(const IntPoly& got, const IntPoly& want, const std::string& label) {
    long deg = std::max(got.degree(), want.degree());
    for (long i = 0; i <= deg; ++i) {
        if (got.coeff(static_cast<size_t>(i)) != want.coeff(static_cast<size_t>(i))) {
            return VerifyResult{false, i,
                                label + ": coefficient " + std::to_string(i) + " is " +
                                    got.coeff(static_cast<size_t>(i)).get_str() + ", expected " +
                                    want.coeff(static_cast<size_t>(i)).get_str()};
        }
    }
    return VerifyResult{true, -1, label + ": ok"};
}

// prod_{d|n} Phi_d == x^n - 1
inline VerifyResult verify_divisor_product(unsigned long n) {
    IntPoly prod = IntPoly::one();
    for (unsigned long d : divisors(n)) prod = prod * cyclotomic_recursive(d);
    return verify_equal(prod, IntPoly::xn_minus_1(n), "divisor product n=" + std::to_string(n));
}

// (x^2+1) * Phi_1 Phi_2 Phi_p Phi_2p Phi_4p == x^(4p) - 1 for odd primes p.
inline VerifyResult verify_inverse_identity(unsigned long p) {
    if (!is_prime(p) || p == 2)
        throw std::domain_error("verify_inverse_identity: p must be an odd prime");
    IntPoly prod = IntPoly({1, 0, 1}); // x^2 + 1
    for (unsigned long d : {1ul, 2ul, p, 2 * p, 4 * p}) prod = prod * cyclotomic_recursive(d);
    return verify_equal(prod, IntPoly::xn_minus_1(4 * p),
                        "inverse identity p=" + std::to_string(p));
}

// (x^2+1) * sum_{k=0}^{2p-1} (-1)^k x^(2k) == 1 - x^(4p)
inline VerifyResult verify_geometric_identity(unsigned long p) {
    if (p == 0) throw std::domain_error("verify_geometric_identity: p must be positive");
    std::vector<mpz_class> alt(4 * p - 1, mpz_class(0));
    for (unsigned long k = 0; k < 2 * p; ++k) alt[2 * k] = (k % 2 == 0) ? 1 : -1;
    IntPoly lhs = IntPoly({1, 0, 1}) * IntPoly(std::move(alt));
    IntPoly rhs = IntPoly::zero() - IntPoly::xn_minus_1(4 * p);
    return verify_equal(lhs, rhs, "geometric identity p=" + std::to_string(p));
}

// Closed forms for odd prime p against the Moebius construction:
//   Phi_p   = x^(p-1) + ... + x + 1
//   Phi_2p  = x^(p-1) - x^(p-2) + ... - x + 1
//   Phi_4p  = x^(2p-2) - x^(2p-4) + ... - x^2 + 1
inline VerifyResult verify_phi_formulas(unsigned long p) {
    if (!is_prime(p) || p == 2)
        throw std::domain_error("verify_phi_formulas: p must be an odd prime");

    std::vector<mpz_class> all_ones(p, mpz_class(1));
    VerifyResult r = verify_equal(cyclotomic_mobius(p), IntPoly(std::move(all_ones)),
                                  "phi_p closed form p=" + std::to_string(p));
    if (!r.pass) return r;

    std::vector<mpz_class> alt(p, mpz_class(0));
    for (unsigned long j = 0; j < p; ++j) alt[j] = (j % 2 == 0) ? 1 : -1;
    r = verify_equal(cyclotomic_mobius(2 * p), IntPoly(std::move(alt)),
                     "phi_2p closed form p=" + std::to_string(p));
    if (!r.pass) return r;

    std::vector<mpz_class> alt2(2 * p - 1, mpz_class(0));
    for (unsigned long m = 0; m < p; ++m) alt2[2 * m] = (m % 2 == 0) ? 1 : -1;
    return verify_equal(cyclotomic_mobius(4 * p), IntPoly(std::move(alt2)),
                        "phi_4p closed form p=" + std::to_string(p));
}

// --- text form, ascending caret notation: "1 - x^2 + x^4" ---

inline std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        bool neg = c_[i] < 0;
        mpz_class mag = abs(c_[i]);
        if (first) {
            if (neg) s += "-";
            first = false;
        } else {
            s += neg ? " - " : " + ";
        }
        if (i == 0) {
            s += mag.get_str();
        } else {
            if (mag != 1) s += mag.get_str() + "*";
            s += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
    }
    return s;
}

inline IntPoly poly_from_string(const std::string& text) {
    std::vector<mpz_class> coeffs;
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    auto fail = [&](const std::string& why) -> void {
        throw std::invalid_argument("IntPoly parse: " + why + " in '" + text + "'");
    };

    skip_ws();
    if (pos >= text.size()) fail("empty input");
    bool first = true;
    while (pos < text.size()) {
        int sign = 1;
        skip_ws();
        if (!first || text[pos] == '+' || text[pos] == '-') {
            if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-')) fail("expected sign");
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip_ws();
        }
        mpz_class mag(1);
        bool have_digits = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            mag = mpz_class(text.substr(start, pos - start));
            have_digits = true;
            if (pos < text.size() && text[pos] == '*') ++pos;
        }
        size_t degree = 0;
        if (pos < text.size() && text[pos] == 'x') {
            ++pos;
            degree = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (pos == start) fail("expected exponent");
                degree = std::stoul(text.substr(start, pos - start));
            }
        } else if (!have_digits) {
            fail("expected term");
        }
        if (coeffs.size() <= degree) coeffs.resize(degree + 1, mpz_class(0));
        coeffs[degree] += sign * mag;
        first = false;
        skip_ws();
    }
    IntPoly p(std::move(coeffs));
    if (p.is_zero() && text.find('0') == std::string::npos) fail("no terms");
    return p;
}

} // namespace phipi
