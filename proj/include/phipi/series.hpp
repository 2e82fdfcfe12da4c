#pragma once
// series.hpp - the golden-ratio BBP-type series family
//
//   pi = 5 * sum_k x^(4pk+1) * sum_{i<2p} (-1)^i x^(2i) / (4pk+2i+1),
//
// with x = sqrt(3-phi)/phi, so x^2 equals the exact field element
// r = (3-phi)/phi^2 = 5-2*sqrt5. Every evaluation carries a certified
// error bound: rounding error tracked by ball arithmetic, truncation
// covered by a geometric tail bound.

#include "phipi/bigreal.hpp"
#include "phipi/errors.hpp"
#include "phipi/oracles.hpp"
#include "phipi/q5.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace phipi {

struct SeriesSpec {
    unsigned p = 1;
    std::optional<long> decimal_digits; // exactly one of the two targets
    std::optional<long> blocks;
    long precision_bits = 0; // used with the blocks target

    static SeriesSpec for_digits(unsigned p, long digits) {
        if (p < 1) throw std::invalid_argument("SeriesSpec: p must be >= 1");
        if (digits < 1) throw std::invalid_argument("SeriesSpec: digits must be >= 1");
        SeriesSpec s;
        s.p = p;
        s.decimal_digits = digits;
        return s;
    }

    static SeriesSpec for_blocks(unsigned p, long blocks, long precision_bits) {
        if (p < 1) throw std::invalid_argument("SeriesSpec: p must be >= 1");
        if (blocks < 1) throw std::invalid_argument("SeriesSpec: blocks must be >= 1");
        if (precision_bits < 8) throw std::invalid_argument("SeriesSpec: precision too small");
        SeriesSpec s;
        s.p = p;
        s.blocks = blocks;
        s.precision_bits = precision_bits;
        return s;
    }
};

// Upper bound on the sum of all blocks k >= K:
//   tail(p, K) = 10 p sqrt(r) r^(2pK) / (1 - r^(2p)),
// each of the 2p inner terms of a block being at most x^(4pk+1) in
// magnitude. Evaluated with outward rounding.
inline Dyadic tail_bound_up(unsigned p, long K) {
    const long w = 96;
    BigReal r = to_bigreal(ratio_r(), w);
    BigReal sr = sqrt(r, w);
    BigReal num = mul(BigReal::exact(10 * static_cast<long>(p)), sr, w);
    num = mul(num, pow(r, static_cast<unsigned long>(2 * static_cast<long>(p) * K), w), w);
    BigReal den = sub(BigReal::exact(1), pow(r, 2 * p, w), w);
    BigReal q = div(num, den, w);
    Dyadic up = q.upper();
    if (up.sign() < 0) return dy_zero(); // tail is positive; can't happen
    return dy_round_up(up);
}

namespace detail {

// tail < 10^-digits / 2, exactly: m 2^(e+1) 10^digits < 1.
inline bool tail_below_half_ulp(const Dyadic& tail, long digits) {
    if (tail.m == 0) return true;
    long e = tail.e + 1;
    if (e >= 0) return false; // tail >= 2^e * 10^digits >= 1 > target
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class lhs = tail.m * pow10;
    mpz_class rhs = mpz_class(1) << static_cast<unsigned long>(-e);
    return lhs < rhs;
}

} // namespace detail

// Smallest K with tail_bound(p, K) < 10^-digits / 2.
inline long blocks_needed(unsigned p, long decimal_digits) {
    if (p < 1 || decimal_digits < 1)
        throw std::invalid_argument("blocks_needed: p and digits must be >= 1");
    auto ok = [&](long K) { return detail::tail_below_half_ulp(tail_bound_up(p, K), decimal_digits); };
    long hi = 1;
    while (!ok(hi)) hi *= 2;
    long lo = hi / 2; // ok(hi), !ok(lo) when lo >= 1
    while (hi - lo > 1 && lo >= 1) {
        long mid = lo + (hi - lo) / 2;
        if (ok(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

namespace detail {

struct SeriesConstants {
    BigReal r;                 // ball of the exact ratio
    BigReal sqrt_r;            // leading factor x = sqrt(r)
    std::vector<BigReal> rpow; // r^0 .. r^(2p-1), the inner powers
    BigReal r2p;               // per-block multiplier r^(2p)
};

inline SeriesConstants series_constants(unsigned p, long w) {
    SeriesConstants c;
    c.r = to_bigreal(ratio_r(), w);
    c.sqrt_r = sqrt(c.r, w);
    c.rpow.resize(2 * p);
    c.rpow[0] = BigReal::exact(1);
    for (unsigned i = 1; i < 2 * p; ++i) c.rpow[i] = mul(c.rpow[i - 1], c.r, w);
    c.r2p = mul(c.rpow[2 * p - 1], c.r, w);
    return c;
}

// Partial sum over the first `blocks` blocks; the returned ball carries
// rounding error only (no tail). `after_block`, when set, receives the
// scaled partial sum 5 sqrt(r) S after each block.
inline BigReal eval_partial(unsigned p, long blocks, long w,
                            const std::function<void(long, const BigReal&)>& after_block = {}) {
    SeriesConstants c = series_constants(p, w);
    BigReal five = BigReal::exact(5);
    BigReal scale = mul(five, c.sqrt_r, w);
    BigReal running = BigReal::exact(1); // r^(2pk)
    BigReal sum = BigReal::exact(0);
    for (long k = 0; k < blocks; ++k) {
        BigReal inner = BigReal::exact(0);
        for (unsigned i = 0; i < 2 * p; ++i) {
            long denom = 4 * static_cast<long>(p) * k + 2 * static_cast<long>(i) + 1;
            BigReal t = div(c.rpow[i], BigReal::exact(denom), w);
            inner = (i % 2 == 0) ? add(inner, t, w) : sub(inner, t, w);
        }
        BigReal term = mul(running, inner, w);
        sum = add(sum, term, w);
        if (after_block) after_block(k + 1, mul(sum, scale, w));
        if (k + 1 < blocks) running = mul(running, c.r2p, w);
    }
    return mul(sum, scale, w);
}

inline void resolve_target(const SeriesSpec& spec, long& K, long& w) {
    if (spec.decimal_digits.has_value() == spec.blocks.has_value())
        throw std::invalid_argument("SeriesSpec: exactly one of digits/blocks required");
    if (spec.decimal_digits) {
        K = blocks_needed(spec.p, *spec.decimal_digits);
        w = prec_for_digits(*spec.decimal_digits);
    } else {
        K = *spec.blocks;
        w = spec.precision_bits;
    }
}

} // namespace detail

namespace detail {

// Binary splitting over whole blocks with exact arithmetic in Z[sqrt5].
// A range value is (ta + tb sqrt5)/td = sum_{k in [lo,hi)} R^(k-lo) c_k,
// where R = r^(2p) and c_k is the exact inner sum of block k; pa/pb carry
// R^(hi-lo) for the merge step.
struct SplitNode {
    mpz_class ta, tb, td;
    mpz_class pa, pb;
};

using ZPair = std::pair<mpz_class, mpz_class>; // a + b sqrt5, integer coords

inline ZPair zq5_mul(const ZPair& x, const ZPair& y) {
    return {mpz_class(x.first * y.first + 5 * x.second * y.second),
            mpz_class(x.first * y.second + x.second * y.first)};
}

inline SplitNode split_range(unsigned p, long lo, long hi, const std::vector<ZPair>& rpow,
                             const ZPair& big_r) {
    if (hi - lo == 1) {
        SplitNode n;
        n.td = 1;
        std::vector<long> dens(2 * p);
        for (unsigned i = 0; i < 2 * p; ++i) {
            dens[i] = 4 * static_cast<long>(p) * lo + 2 * static_cast<long>(i) + 1;
            n.td *= dens[i];
        }
        n.ta = 0;
        n.tb = 0;
        for (unsigned i = 0; i < 2 * p; ++i) {
            mpz_class weight = n.td / dens[i];
            if (i % 2 == 0) {
                n.ta += rpow[i].first * weight;
                n.tb += rpow[i].second * weight;
            } else {
                n.ta -= rpow[i].first * weight;
                n.tb -= rpow[i].second * weight;
            }
        }
        n.pa = big_r.first;
        n.pb = big_r.second;
        return n;
    }
    long mid = lo + (hi - lo) / 2;
    SplitNode l = split_range(p, lo, mid, rpow, big_r);
    SplitNode r = split_range(p, mid, hi, rpow, big_r);
    SplitNode n;
    n.ta = l.ta * r.td + l.td * (l.pa * r.ta + 5 * l.pb * r.tb);
    n.tb = l.tb * r.td + l.td * (l.pa * r.tb + l.pb * r.ta);
    n.td = l.td * r.td;
    n.pa = l.pa * r.pa + 5 * l.pb * r.pb;
    n.pb = l.pa * r.pb + l.pb * r.pa;
    return n;
}

inline BigReal eval_binsplit(unsigned p, long K, long w) {
    std::vector<ZPair> rpow(2 * p);
    rpow[0] = {1, 0};
    const ZPair ratio{5, -2};
    for (unsigned i = 1; i < 2 * p; ++i) rpow[i] = zq5_mul(rpow[i - 1], ratio);
    ZPair big_r = zq5_mul(rpow[2 * p - 1], ratio);

    SplitNode t = split_range(p, 0, K, rpow, big_r);
    Q5 exact_sum(Rational(t.ta, t.td), Rational(t.tb, t.td));
    BigReal sum = to_bigreal(exact_sum, w);
    BigReal scale = mul(BigReal::exact(5), sqrt(to_bigreal(ratio_r(), w), w), w);
    return mul(sum, scale, w);
}

} // namespace detail

enum class EvalStrategy { naive, binary_splitting };

// Main evaluator of the family; the returned interval contains pi (tail
// bound included in the radius). The naive block loop is the reference
// path; binary splitting sums the blocks exactly in Q(sqrt5) and converts
// once, with the same certified bound discipline.
inline BigReal eval_family(const SeriesSpec& spec, EvalStrategy strategy = EvalStrategy::naive) {
    long K = 0, w = 0;
    detail::resolve_target(spec, K, w);
    BigReal s = strategy == EvalStrategy::naive ? detail::eval_partial(spec.p, K, w)
                                                : detail::eval_binsplit(spec.p, K, w);
    s.add_error(tail_bound_up(spec.p, K));
    return s;
}

// Hand-specialized p = 1 evaluator:
//   pi = 5 sum_k x^(4k+1) [ 1/(4k+1) - r/(4k+3) ].
// Mirrors the generic path operation for operation so both produce
// identical mantissas at equal precision and block count.
inline BigReal eval_p1(long digits) {
    if (digits < 1) throw std::invalid_argument("eval_p1: digits must be >= 1");
    long K = blocks_needed(1, digits);
    long w = prec_for_digits(digits);
    detail::SeriesConstants c = detail::series_constants(1, w);
    BigReal five = BigReal::exact(5);
    BigReal scale = mul(five, c.sqrt_r, w);
    BigReal running = BigReal::exact(1);
    BigReal sum = BigReal::exact(0);
    for (long k = 0; k < K; ++k) {
        BigReal t0 = div(c.rpow[0], BigReal::exact(4 * k + 1), w);
        BigReal inner = add(BigReal::exact(0), t0, w);
        BigReal t1 = div(c.rpow[1], BigReal::exact(4 * k + 3), w);
        inner = sub(inner, t1, w);
        BigReal term = mul(running, inner, w);
        sum = add(sum, term, w);
        if (k + 1 < K) running = mul(running, c.r2p, w);
    }
    BigReal s = mul(sum, scale, w);
    s.add_error(tail_bound_up(1, K));
    return s;
}

// Hand-specialized p = 2 evaluator:
//   pi = 5 sum_k x^(8k+1) [ 1/(8k+1) - r/(8k+3) + r^2/(8k+5) - r^3/(8k+7) ].
inline BigReal eval_p2(long digits) {
    if (digits < 1) throw std::invalid_argument("eval_p2: digits must be >= 1");
    long K = blocks_needed(2, digits);
    long w = prec_for_digits(digits);
    detail::SeriesConstants c = detail::series_constants(2, w);
    BigReal five = BigReal::exact(5);
    BigReal scale = mul(five, c.sqrt_r, w);
    BigReal running = BigReal::exact(1);
    BigReal sum = BigReal::exact(0);
    for (long k = 0; k < K; ++k) {
        BigReal t0 = div(c.rpow[0], BigReal::exact(8 * k + 1), w);
        BigReal inner = add(BigReal::exact(0), t0, w);
        BigReal t1 = div(c.rpow[1], BigReal::exact(8 * k + 3), w);
        inner = sub(inner, t1, w);
        BigReal t2 = div(c.rpow[2], BigReal::exact(8 * k + 5), w);
        inner = add(inner, t2, w);
        BigReal t3 = div(c.rpow[3], BigReal::exact(8 * k + 7), w);
        inner = sub(inner, t3, w);
        BigReal term = mul(running, inner, w);
        sum = add(sum, term, w);
        if (k + 1 < K) running = mul(running, c.r2p, w);
    }
    BigReal s = mul(sum, scale, w);
    s.add_error(tail_bound_up(2, K));
    return s;
}

// Alternate form with base y = (3-phi)/(phi+1):
//   pi = 5 sum_k y^(2pk+1/2) sum_{i<2p} (-1)^i y^i / (4pk+2i+1).
// Because phi^2 = phi+1 exactly, y must equal the ratio (3-phi)/phi^2
// before any rounding; that is asserted, then the literal power schedule
// sqrt(y) * y^(2pk) * y^i is evaluated.
inline BigReal eval_alt_form(const SeriesSpec& spec) {
    Q5 y = (Q5(3) - phi()) * inverse(phi() + Q5(1));
    if (!(y == ratio_r()))
        throw exactness_violation("eval_alt_form: (3-phi)/(phi+1) != (3-phi)/phi^2");

    long K = 0, w = 0;
    detail::resolve_target(spec, K, w);
    unsigned p = spec.p;

    BigReal yb = to_bigreal(y, w);
    BigReal sqrt_y = sqrt(yb, w);
    std::vector<BigReal> ypow(2 * p);
    ypow[0] = BigReal::exact(1);
    for (unsigned i = 1; i < 2 * p; ++i) ypow[i] = mul(ypow[i - 1], yb, w);
    BigReal y2p = mul(ypow[2 * p - 1], yb, w);

    BigReal five = BigReal::exact(5);
    BigReal scale = mul(five, sqrt_y, w);
    BigReal running = BigReal::exact(1); // y^(2pk)
    BigReal sum = BigReal::exact(0);
    for (long k = 0; k < K; ++k) {
        BigReal inner = BigReal::exact(0);
        for (unsigned i = 0; i < 2 * p; ++i) {
            long denom = 4 * static_cast<long>(p) * k + 2 * static_cast<long>(i) + 1;
            BigReal t = div(ypow[i], BigReal::exact(denom), w);
            inner = (i % 2 == 0) ? add(inner, t, w) : sub(inner, t, w);
        }
        BigReal term = mul(running, inner, w);
        sum = add(sum, term, w);
        if (k + 1 < K) running = mul(running, y2p, w);
    }
    BigReal s = mul(sum, scale, w);
    s.add_error(tail_bound_up(p, K));
    return s;
}

// Expected digits gained per block: 2p log10(1/r).
inline double theoretical_digits_per_block(unsigned p) {
    double r = to_double(to_bigreal(ratio_r(), 64));
    return 2.0 * static_cast<double>(p) * std::log10(1.0 / r);
}

// ---------------------------------------------------------------------------
// Convergence instrumentation
// ---------------------------------------------------------------------------
struct ConvergencePoint {
    long k = 0;                  // blocks summed so far
    std::string partial_sum;     // decimal value at the probe precision
    std::string abs_error;       // |S_k - pi_ref|, scientific
    double abs_error_log10 = 0.0;
};

struct ConvergenceReport {
    unsigned p = 1;
    long blocks_evaluated = 0;
    long probe_digits = 0;
    std::vector<ConvergencePoint> points;
    std::string tail_bound_at_stop;
    double tail_bound_log10 = 0.0;
    double measured_digits_per_block = 0.0; // between S_1 and S_K

    std::string to_csv() const {
        std::ostringstream os;
        os << "k,partial_sum_probe,abs_error_vs_ref\n";
        for (const auto& pt : points)
            os << pt.k << "," << pt.partial_sum << "," << pt.abs_error << "\n";
        return os.str();
    }

    std::string to_json() const {
        std::ostringstream os;
        os << "{\"schema\":1,\"p\":" << p << ",\"blocks\":" << blocks_evaluated
           << ",\"probe_digits\":" << probe_digits
           << ",\"tail_bound_at_stop\":\"" << tail_bound_at_stop << "\""
           << ",\"measured_digits_per_block\":" << measured_digits_per_block << ",\"points\":[";
        for (size_t i = 0; i < points.size(); ++i) {
            if (i) os << ",";
            os << "{\"k\":" << points[i].k << ",\"partial_sum\":\"" << points[i].partial_sum
               << "\",\"abs_error_vs_ref\":\"" << points[i].abs_error << "\"}";
        }
        os << "]}";
        return os.str();
    }
};

// Measured rate between two recorded block counts.
inline double measured_rate_between(const ConvergenceReport& rep, long k_from, long k_to) {
    const ConvergencePoint* a = nullptr;
    const ConvergencePoint* b = nullptr;
    for (const auto& pt : rep.points) {
        if (pt.k == k_from) a = &pt;
        if (pt.k == k_to) b = &pt;
    }
    if (!a || !b || k_to <= k_from)
        throw std::invalid_argument("measured_rate_between: block counts not in report");
    return (a->abs_error_log10 - b->abs_error_log10) / static_cast<double>(k_to - k_from);
}

// Evaluates `blocks` blocks recording each partial sum and its true error
// against the Machin oracle at higher precision.
inline ConvergenceReport convergence_scan(unsigned p, long blocks, long probe_digits) {
    if (blocks < 2) throw std::invalid_argument("convergence_scan: blocks must be >= 2");
    if (probe_digits < 1) throw std::invalid_argument("convergence_scan: probe digits must be >= 1");

    long ref_digits = static_cast<long>(theoretical_digits_per_block(p) *
                                        static_cast<double>(blocks)) + 40;
    long w = prec_for_digits(ref_digits);
    BigReal ref = pi_machin(MachinVariant::v1, ref_digits);

    ConvergenceReport rep;
    rep.p = p;
    rep.blocks_evaluated = blocks;
    rep.probe_digits = probe_digits;
    rep.points.reserve(static_cast<size_t>(blocks));

    std::optional<BigReal> prev;
    detail::eval_partial(p, blocks, w, [&](long k, const BigReal& partial) {
        if (prev && compare(*prev, partial) != Order::less)
            throw std::logic_error("convergence_scan: partial sums not strictly increasing");
        prev = partial;
        Dyadic diff = dy_round_up(dy_abs(dy_sub(partial.center(), ref.center())));
        ConvergencePoint pt;
        pt.k = k;
        pt.partial_sum = to_decimal(partial, probe_digits).text;
        pt.abs_error = dy_to_sci(diff);
        pt.abs_error_log10 = dy_log10_abs(diff);
        rep.points.push_back(std::move(pt));
    });

    Dyadic tail = tail_bound_up(p, blocks);
    rep.tail_bound_at_stop = dy_to_sci(tail);
    rep.tail_bound_log10 = dy_log10_abs(tail);
    rep.measured_digits_per_block =
        (rep.points.front().abs_error_log10 - rep.points.back().abs_error_log10) /
        static_cast<double>(blocks - 1);
    return rep;
}

} // namespace phipi
