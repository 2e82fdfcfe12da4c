// phipi - compute pi through the golden-ratio BBP-type series family and
// its cross-check oracles, run the exact identity verification suites,
// and benchmark convergence.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure,
//             3 certified-digit shortfall.

#include "phipi/phipi.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using nlohmann::json;
using namespace phipi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailure = 2;
constexpr int kExitShortfall = 3;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
}

// Reports honor PHIPI_REPORT_DIR for relative output paths.
std::filesystem::path resolve_report_path(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute()) return p;
    if (const char* dir = std::getenv("PHIPI_REPORT_DIR")) return std::filesystem::path(dir) / p;
    return p;
}

int emit(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    auto full = resolve_report_path(output_path);
    std::ofstream out(full);
    if (!out) {
        std::cerr << "error: cannot write " << full.string() << "\n";
        return kExitUsage;
    }
    out << payload;
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compute
// ---------------------------------------------------------------------------
struct ComputeOptions {
    std::string formula;
    long p = 0;          // 0 = not given
    long digits = 0;     // 0 = not given
    long blocks = 0;     // 0 = not given
    long factors = 0;    // viete
    long terms = 0;      // mgl
    long precision_bits = 256;
    long guard_digits = 6; // extra internal digits so boundary cases certify
    std::string strategy = "naive"; // family evaluation path
    std::string format = "text";
    std::string output;
};

struct ComputeResult {
    BigReal value;
    std::string count_label; // blocks / terms / factors
    long count = 0;
    std::optional<Dyadic> viete_diag;
};

bool formula_uses_p(const std::string& f) { return f == "family" || f == "alt"; }

bool formula_uses_digits(const std::string& f) {
    return f == "family" || f == "alt" || f == "p1" || f == "p2" || f == "machin1" ||
           f == "machin2" || f == "machin3" || f == "bbp16" || f == "mgl";
}

ComputeResult run_formula(const ComputeOptions& opt, long digits_target) {
    const std::string& f = opt.formula;
    if (f == "family" || f == "alt") {
        SeriesSpec spec = opt.blocks > 0
                              ? SeriesSpec::for_blocks(static_cast<unsigned>(opt.p), opt.blocks,
                                                       opt.precision_bits)
                              : SeriesSpec::for_digits(static_cast<unsigned>(opt.p), digits_target);
        long K = opt.blocks > 0 ? opt.blocks : blocks_needed(static_cast<unsigned>(opt.p), digits_target);
        EvalStrategy strategy = opt.strategy == "binsplit" ? EvalStrategy::binary_splitting
                                                           : EvalStrategy::naive;
        BigReal v = f == "family" ? eval_family(spec, strategy) : eval_alt_form(spec);
        return ComputeResult{std::move(v), "blocks", K, std::nullopt};
    }
    if (f == "p1") return {eval_p1(digits_target), "blocks", blocks_needed(1, digits_target), std::nullopt};
    if (f == "p2") return {eval_p2(digits_target), "blocks", blocks_needed(2, digits_target), std::nullopt};
    if (f == "machin1") return {pi_machin(MachinVariant::v1, digits_target), "digits", digits_target, std::nullopt};
    if (f == "machin2") return {pi_machin(MachinVariant::v2, digits_target), "digits", digits_target, std::nullopt};
    if (f == "machin3") return {pi_machin(MachinVariant::v3, digits_target), "digits", digits_target, std::nullopt};
    if (f == "bbp16") return {pi_bbp16(digits_target), "digits", digits_target, std::nullopt};
    if (f == "mgl") {
        long terms = opt.terms > 0 ? opt.terms
                                   : std::min(mgl_terms_for_digits(digits_target), kMglTermCap);
        return {pi_mgl(terms), "terms", terms, std::nullopt};
    }
    if (f == "viete") {
        VieteResult v = pi_viete_phi(opt.factors, opt.precision_bits);
        ComputeResult r{std::move(v.value), "factors", opt.factors, std::nullopt};
        r.viete_diag = v.truncation_diag;
        return r;
    }
    throw std::invalid_argument("unknown formula '" + f + "'");
}

int cmd_compute(const ComputeOptions& opt) {
    // flag consistency
    if (formula_uses_p(opt.formula)) {
        if (opt.p < 1) return usage_error("--formula " + opt.formula + " requires --p >= 1");
    } else if (opt.p != 0) {
        return usage_error("--formula " + opt.formula + " does not take --p");
    }
    if (opt.formula == "viete") {
        if (opt.factors < 1) return usage_error("viete requires --factors >= 1");
        if (opt.digits > 0 || opt.blocks > 0)
            return usage_error("viete takes --factors, not --digits/--blocks");
    } else if (opt.formula == "mgl") {
        if ((opt.digits > 0) == (opt.terms > 0))
            return usage_error("mgl requires exactly one of --digits/--terms");
        if (opt.terms > kMglTermCap || (opt.digits > 0 && mgl_terms_for_digits(opt.digits) > kMglTermCap))
            return usage_error("mgl is the slow oracle, capped at 10000 terms (~2770 digits)");
    } else if (formula_uses_p(opt.formula)) {
        if ((opt.digits > 0) == (opt.blocks > 0))
            return usage_error("exactly one of --digits/--blocks required");
    } else {
        if (opt.digits < 1) return usage_error("--formula " + opt.formula + " requires --digits");
        if (opt.blocks > 0) return usage_error("--formula " + opt.formula + " does not take --blocks");
    }

    if (opt.guard_digits < 0) return usage_error("--guard-digits must be nonnegative");
    if (opt.strategy != "naive" && opt.formula != "family")
        return usage_error("--strategy applies to --formula family only");

    auto t0 = Clock::now();
    // Small internal margin so a decimal near a rounding boundary still
    // certifies at the requested length.
    long digits_target = opt.digits > 0 ? opt.digits + opt.guard_digits : 0;
    ComputeResult res = run_formula(opt, digits_target);
    double wall = elapsed_ms(t0);

    long requested = opt.digits > 0 ? opt.digits : 1'000'000;
    Decimal dec = to_decimal(res.value, requested);
    bool shortfall = opt.digits > 0 && dec.fractional_digits < opt.digits;
    std::string err_str = res.value.err.is_zero() ? "0" : dy_to_sci(res.value.err);

    std::string payload;
    if (opt.format == "json") {
        json j;
        j["schema"] = 1;
        j["formula"] = opt.formula;
        if (opt.p > 0) j["p"] = opt.p;
        if (opt.digits > 0) j["digits_requested"] = opt.digits;
        j["pi"] = dec.text;
        j["certified_digits"] = dec.fractional_digits;
        j["err_bound"] = err_str;
        j[res.count_label] = res.count;
        if (res.viete_diag)
            j["truncation_diag"] = dy_to_sci(*res.viete_diag);
        j["wall_ms"] = wall;
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "formula = " << opt.formula;
        if (opt.p > 0) os << " (p=" << opt.p << ")";
        os << "\n";
        os << "pi = " << dec.text << "\n";
        os << "certified_digits = " << dec.fractional_digits << "\n";
        os << "err_bound <= " << err_str << "\n";
        os << res.count_label << " = " << res.count << "\n";
        if (res.viete_diag)
            os << "truncation_diag = " << dy_to_sci(*res.viete_diag)
               << " (prefix value, convergence not certified)\n";
        os << "wall_ms = " << wall << "\n";
        payload = os.str();
    }
    int rc = emit(payload, opt.output);
    if (rc != kExitOk) return rc;
    if (shortfall) {
        std::cerr << "error: bound too loose, certified " << dec.fractional_digits << " of "
                  << opt.digits << " requested digits\n";
        return kExitShortfall;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------
struct CheckRow {
    std::string name;
    bool pass = false;
    std::string detail;
};

void run_field_checks(std::vector<CheckRow>& rows) {
    const Q5 one(1);
    Q5 ph = phi();
    rows.push_back({"phi^2 = phi + 1", ph * ph == ph + one, to_string(ph * ph)});
    rows.push_back({"(3-phi)/phi^2 = 5 - 2*sqrt5",
                    ratio_r() == Q5(Rational(5), Rational(-2)), to_string(ratio_r())});
    Q5 alt = (Q5(3) - ph) * inverse(ph + one);
    rows.push_back({"(3-phi)/(phi+1) = 5 - 2*sqrt5", alt == ratio_r(), to_string(alt)});
    // cos(pi/5) = phi/2, sin^2(pi/5) = (3-phi)/4: cos^2 + sin^2 = 1 exactly
    Q5 half(Rational(1, 2), Rational(0));
    Q5 quarter(Rational(1, 4), Rational(0));
    Q5 closure = (ph * half) * (ph * half) + (Q5(3) - ph) * quarter;
    rows.push_back({"cos^2 + sin^2 = 1 in Q(sqrt5)", closure == one, to_string(closure)});
}

int cmd_verify(long n_max, long prime_max, long p_max, bool inject_fault,
               const std::string& format, const std::string& output) {
    std::vector<CheckRow> rows;
    run_field_checks(rows);

    {
        bool all = true;
        std::string detail;
        for (long p = 1; p <= p_max && all; ++p) {
            VerifyResult vr = verify_geometric_identity(static_cast<unsigned long>(p));
            if (!vr.pass) { all = false; detail = vr.detail; }
        }
        rows.push_back({"geometric identity p=1.." + std::to_string(p_max), all, detail});
    }
    {
        bool all = true;
        std::string detail;
        for (long n = 1; n <= n_max && all; ++n) {
            VerifyResult vr = verify_divisor_product(static_cast<unsigned long>(n));
            if (!vr.pass) { all = false; detail = vr.detail; }
        }
        rows.push_back({"divisor product n=1.." + std::to_string(n_max), all, detail});
    }
    {
        bool all = true;
        std::string detail;
        for (long p = 3; p <= prime_max; p += 2) {
            if (!is_prime(static_cast<unsigned long>(p))) continue;
            VerifyResult vr = verify_inverse_identity(static_cast<unsigned long>(p));
            if (!vr.pass) { all = false; detail = vr.detail; break; }
        }
        rows.push_back({"inverse identity odd primes <= " + std::to_string(prime_max), all, detail});
    }
    {
        bool all = true;
        std::string detail;
        for (long p = 3; p <= prime_max; p += 2) {
            if (!is_prime(static_cast<unsigned long>(p))) continue;
            VerifyResult vr = verify_phi_formulas(static_cast<unsigned long>(p));
            if (!vr.pass) { all = false; detail = vr.detail; break; }
        }
        rows.push_back({"closed forms odd primes <= " + std::to_string(prime_max), all, detail});
    }
    {
        bool all = true;
        std::string detail;
        for (long n = 1; n <= n_max; ++n) {
            VerifyResult vr = verify_equal(cyclotomic_mobius(static_cast<unsigned long>(n)),
                                           cyclotomic_recursive(static_cast<unsigned long>(n)),
                                           "dual construction n=" + std::to_string(n));
            if (!vr.pass) { all = false; detail = vr.detail; break; }
        }
        rows.push_back({"dual cyclotomic constructions n=1.." + std::to_string(n_max), all, detail});
    }

    if (inject_fault) {
        // negative control: corrupt one coefficient and require the
        // comparison machinery to flag it with a witness
        IntPoly prod = IntPoly::one();
        for (unsigned long d : divisors(12)) {
            IntPoly f = cyclotomic_recursive(d);
            if (d == 12) {
                auto cs = f.coeffs();
                cs[1] += 1;
                f = IntPoly(cs);
            }
            prod = prod * f;
        }
        VerifyResult vr = verify_equal(prod, IntPoly::xn_minus_1(12), "injected fault n=12");
        rows.push_back({"self-test: injected fault detected", false,
                        vr.pass ? "fault was NOT detected" : vr.detail});
    }

    bool all_pass = true;
    for (const auto& r : rows)
        if (!r.pass) all_pass = false;

    std::string payload;
    if (format == "json") {
        json j;
        j["schema"] = 1;
        j["all_pass"] = all_pass;
        j["checks"] = json::array();
        for (const auto& r : rows) {
            json c;
            c["name"] = r.name;
            c["pass"] = r.pass;
            if (!r.detail.empty()) c["detail"] = r.detail;
            j["checks"].push_back(c);
        }
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        for (const auto& r : rows) {
            os << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
            if (!r.pass && !r.detail.empty()) os << "  [" << r.detail << "]";
            os << "\n";
        }
        os << (all_pass ? "all checks passed" : "verification FAILED") << "\n";
        payload = os.str();
    }
    int rc = emit(payload, output);
    if (rc != kExitOk) return rc;
    return all_pass ? kExitOk : kExitVerifyFailure;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------
int cmd_bench(const std::vector<long>& p_set, long scan_blocks, long digits_goal,
              const std::string& strategy, const std::string& format, const std::string& output) {
    if (scan_blocks < 2) return usage_error("--blocks must be >= 2");
    if (digits_goal < 1) return usage_error("--digits must be >= 1");
    for (long p : p_set)
        if (p < 1) return usage_error("p values must be >= 1");

    struct Row {
        long p;
        long blocks;
        double measured;
        double theory;
        double wall_ms;
    };
    EvalStrategy strat = strategy == "binsplit" ? EvalStrategy::binary_splitting
                                                 : EvalStrategy::naive;
    std::vector<Row> table;
    for (long p : p_set) {
        ConvergenceReport rep = convergence_scan(static_cast<unsigned>(p), scan_blocks, 30);
        // wall time: producing digits_goal certified digits with the chosen
        // evaluation strategy
        auto t0 = Clock::now();
        BigReal v = eval_family(SeriesSpec::for_digits(static_cast<unsigned>(p), digits_goal), strat);
        double wall = elapsed_ms(t0);
        (void)v;
        table.push_back(Row{p, blocks_needed(static_cast<unsigned>(p), digits_goal),
                            rep.measured_digits_per_block,
                            theoretical_digits_per_block(static_cast<unsigned>(p)), wall});
    }

    std::string payload;
    if (format == "json") {
        json j;
        j["schema"] = 1;
        j["scan_blocks"] = scan_blocks;
        j["digits_goal"] = digits_goal;
        j["rows"] = json::array();
        for (const auto& r : table) {
            json row;
            row["p"] = r.p;
            row["blocks"] = r.blocks;
            row["digits_per_block_measured"] = r.measured;
            row["digits_per_block_theory"] = r.theory;
            row["wall_ms"] = r.wall_ms;
            j["rows"].push_back(row);
        }
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "p,blocks,digits_per_block_measured,digits_per_block_theory,wall_ms\n";
        for (const auto& r : table) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%ld,%ld,%.6f,%.6f,%.3f\n", r.p, r.blocks, r.measured,
                          r.theory, r.wall_ms);
            os << buf;
        }
        payload = os.str();
    }
    return emit(payload, output);
}

// ---------------------------------------------------------------------------
// digits
// ---------------------------------------------------------------------------
int cmd_digits(long start, long count, const std::vector<long>& explicit_positions) {
    std::vector<unsigned long> positions;
    if (!explicit_positions.empty()) {
        for (long p : explicit_positions) {
            if (p < 0) return usage_error("positions must be nonnegative");
            positions.push_back(static_cast<unsigned long>(p));
        }
    } else {
        if (start < 0 || count < 0) return usage_error("--start/--count must be nonnegative");
        for (long i = 0; i < count; ++i) positions.push_back(static_cast<unsigned long>(start + i));
    }
    for (unsigned long p : positions)
        if (p > 1'000'000ul) return usage_error("position beyond the desk-scale cap of 10^6");

    std::ostringstream os;
    for (size_t i = 0; i < positions.size(); ++i) {
        HexDigit d = bbp16_hex_digit(positions[i]);
        if (i) os << " ";
        os << "0123456789ABCDEF"[d.value];
        if (d.near_boundary)
            std::cerr << "note: position " << positions[i]
                      << " lands within 2^-16 of a digit boundary\n";
    }
    std::string s = os.str();
    if (!s.empty()) s += "\n";
    std::cout << s;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pi from the golden ratio: BBP-type series family, oracles, and identity checks"};
    app.require_subcommand(1);

    ComputeOptions copt;
    auto* compute = app.add_subcommand("compute", "compute pi by a chosen formula");
    compute->add_option("--formula", copt.formula, "family|p1|p2|alt|machin1|machin2|machin3|viete|mgl|bbp16")
        ->required();
    compute->add_option("--p", copt.p, "family parameter (family/alt only)");
    compute->add_option("--digits", copt.digits, "target certified decimal digits");
    compute->add_option("--blocks", copt.blocks, "evaluate a fixed number of blocks (family/alt)");
    compute->add_option("--factors", copt.factors, "product factors (viete only)");
    compute->add_option("--terms", copt.terms, "series terms (mgl only)");
    compute->add_option("--precision-bits", copt.precision_bits, "working precision for blocks/viete modes");
    compute->add_option("--guard-digits", copt.guard_digits, "extra internal digits beyond the request (default 6)");
    compute->add_option("--strategy", copt.strategy, "family evaluation path: naive|binsplit")
        ->check(CLI::IsMember({"naive", "binsplit"}));
    compute->add_option("--format", copt.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    compute->add_option("--output", copt.output, "write the report to a file");

    long n_max = 200, prime_max = 97, p_max = 64;
    bool inject_fault = false;
    std::string vformat = "text", voutput;
    auto* verify = app.add_subcommand("verify", "machine-verify the exact algebraic identities");
    verify->add_option("--n-max", n_max, "divisor-product / dual-construction range (default 200)");
    verify->add_option("--prime-max", prime_max, "odd-prime identity range (default 97)");
    verify->add_option("--p-max", p_max, "geometric identity range (default 64)");
    verify->add_flag("--inject-fault", inject_fault, "negative control: corrupt one coefficient");
    verify->add_option("--format", vformat, "text|json")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--output", voutput, "write the report to a file");

    std::vector<long> p_set{1, 2, 3};
    long bench_blocks = 400, bench_digits = 1000;
    std::string bstrategy = "naive", bformat = "csv", boutput;
    auto* bench = app.add_subcommand("bench", "convergence benchmark (CSV/JSON report)");
    bench->add_option("--p-set", p_set, "family parameters to benchmark")->delimiter(',');
    bench->add_option("--blocks", bench_blocks, "blocks per convergence scan (default 400)");
    bench->add_option("--digits", bench_digits, "digit goal for the blocks column (default 1000)");
    bench->add_option("--strategy", bstrategy, "evaluation path timed for wall_ms: naive|binsplit")
        ->check(CLI::IsMember({"naive", "binsplit"}));
    bench->add_option("--format", bformat, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--output", boutput, "write the report to a file");

    long dstart = 0, dcount = 1;
    std::vector<long> dpositions;
    auto* digits = app.add_subcommand("digits", "isolated hexadecimal digits of pi");
    digits->add_option("--start", dstart, "first fractional hex position (default 0)");
    digits->add_option("--count", dcount, "number of consecutive digits (default 1)");
    digits->add_option("--positions", dpositions, "explicit positions")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (compute->parsed()) return cmd_compute(copt);
        if (verify->parsed()) return cmd_verify(n_max, prime_max, p_max, inject_fault, vformat, voutput);
        if (bench->parsed()) return cmd_bench(p_set, bench_blocks, bench_digits, bstrategy, bformat, boutput);
        if (digits->parsed()) return cmd_digits(dstart, dcount, dpositions);
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    } catch (const std::domain_error& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
