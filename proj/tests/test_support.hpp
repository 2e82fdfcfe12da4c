#pragma once
// Shared helpers for the test suites: exact rational/ball comparisons, an
// independent hex-expansion oracle, and random generators.

#include "phipi/phipi.hpp"

#include <gmpxx.h>

#include <random>
#include <stdexcept>
#include <string>

namespace phipi::testing {

inline mpq_class dy_to_mpq(const Dyadic& d) {
    mpq_class q(d.m);
    if (d.e >= 0) {
        mpz_class scale = mpz_class(1) << static_cast<unsigned long>(d.e);
        q *= mpq_class(scale);
    } else {
        mpz_class scale = mpz_class(1) << static_cast<unsigned long>(-d.e);
        q /= mpq_class(scale);
    }
    return q;
}

inline bool ball_contains_mpq(const BigReal& x, const mpq_class& q) {
    return dy_to_mpq(x.lower()) <= q && q <= dy_to_mpq(x.upper());
}

// Independent base conversion: hexadecimal digits of the fractional part
// of a ball enclosing pi, certified by agreeing interval endpoints.
inline std::string hex_fraction_oracle(const BigReal& v, int count) {
    mpq_class lo = dy_to_mpq(v.lower()) - 3;
    mpq_class hi = dy_to_mpq(v.upper()) - 3;
    if (lo < 0 || hi >= 1) throw std::logic_error("hex oracle: value not in [3,4)");
    std::string out;
    for (int i = 0; i < count; ++i) {
        lo *= 16;
        hi *= 16;
        mpz_class dlo, dhi;
        mpz_fdiv_q(dlo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        mpz_fdiv_q(dhi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        if (dlo != dhi) throw std::logic_error("hex oracle: interval too wide at digit " + std::to_string(i));
        out += "0123456789ABCDEF"[dlo.get_ui()];
        lo -= mpq_class(dlo);
        hi -= mpq_class(dlo);
    }
    return out;
}

inline Rational random_rational(std::mt19937& rng, long max_abs = 999) {
    std::uniform_int_distribution<long> num(-max_abs, max_abs);
    std::uniform_int_distribution<long> den(1, max_abs);
    return Rational(num(rng), den(rng));
}

inline Q5 random_q5(std::mt19937& rng, long max_abs = 99) {
    return Q5(random_rational(rng, max_abs), random_rational(rng, max_abs));
}

} // namespace phipi::testing
