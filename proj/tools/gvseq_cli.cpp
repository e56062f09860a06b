// Command-line front end: parses a recurrence specification (JSON on stdin
// or from --input) and runs the analyses. Exit codes: 0 success, 2 parse
// error, 3 precondition violation, 4 scientific finding (path mismatch,
// theorem violation, failed certificate), 5 precision exhaustion.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gvseq/gvseq.hpp"
#include "gvseq/spec_io.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitFinding = 4;
constexpr int kExitPrecision = 5;

int exit_code_for(gvseq::Errc code) {
    switch (code) {
        case gvseq::Errc::ParseError:
            return kExitParse;
        case gvseq::Errc::PathMismatch:
        case gvseq::Errc::CertificateFailure:
            return kExitFinding;
        case gvseq::Errc::PrecisionExhausted:
            return kExitPrecision;
        default:
            return kExitPrecondition;
    }
}

struct Options {
    std::string input = "-";
    std::string format = "table";
    unsigned long n_max = 10;
    unsigned long n = 1;
    std::string precision = "1e-30";
    bool require_nondegenerate = false;
    bool timing = false;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) gvseq::raise(gvseq::Errc::ParseError, "cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

gvseq::BigRat parse_precision(const std::string& text) {
    auto v = gvseq::parse_rational(text);
    if (!v || *v <= 0) gvseq::raise(gvseq::Errc::ParseError, "invalid precision: " + text);
    return *v;
}

void require_nondegenerate_poly(const gvseq::Poly& f) {
    auto verdict = gvseq::nondegeneracy_check(f);
    if (!verdict.non_degenerate()) {
        std::string detail = verdict.status == gvseq::NondegeneracyVerdict::Status::ZeroRoot
                                 ? "zero root"
                                 : "root-of-unity ratio of order " + std::to_string(*verdict.witness);
        gvseq::raise(gvseq::Errc::DegenerateInput, "recurrence is degenerate (" + detail + ")");
    }
}

void emit(const std::string& text) { std::cout << text; }

void attach_timing(gvseq::OutputJson& j, const Options& opt,
                   std::chrono::steady_clock::time_point start) {
    if (!opt.timing) return;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    j["timing_ms"] = ms.count();
}

int run_analyze(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    auto spec = gvseq::parse_spec_json(read_input(opt.input));
    auto rec = gvseq::to_recurrence(spec);
    const auto precision = parse_precision(opt.precision);
    auto analysis = gvseq::analyze(rec.char_poly, precision);
    if (opt.require_nondegenerate && !analysis.verdict.non_degenerate()) {
        std::cerr << "error: degenerate recurrence (" << gvseq::verdict_status_name(analysis.verdict)
                  << ")\n";
        return kExitPrecondition;
    }
    if (opt.format == "json") {
        auto j = gvseq::analysis_json(spec, analysis, precision);
        attach_timing(j, opt, start);
        emit(gvseq::render_json(j));
    } else if (opt.format == "csv") {
        emit(gvseq::analyze_csv(analysis));
    } else {
        emit(gvseq::analyze_table(analysis));
    }
    return 0;
}

int run_impulse(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    auto spec = gvseq::parse_spec_json(read_input(opt.input));
    auto rec = gvseq::to_recurrence(spec);
    auto table = gvseq::impulse_basis(rec.char_poly).table(opt.n_max);
    if (opt.format == "json") {
        auto j = gvseq::impulse_json(spec, table, opt.n_max);
        attach_timing(j, opt, start);
        emit(gvseq::render_json(j));
    } else if (opt.format == "csv") {
        emit(gvseq::impulse_csv(table, opt.n_max));
    } else {
        emit(gvseq::impulse_table(table, opt.n_max));
    }
    return 0;
}

int run_gvdet(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    auto spec = gvseq::parse_spec_json(read_input(opt.input));
    auto rec = gvseq::to_recurrence(spec);
    if (rec.order() < 2)
        gvseq::raise(gvseq::Errc::InvalidArgument, "gvdet needs a recurrence of order >= 2");
    require_nondegenerate_poly(rec.char_poly);
    const auto precision = parse_precision(opt.precision);
    gvseq::ClosedFormEvaluator evaluator(rec.char_poly);
    std::vector<gvseq::GvResult> rows;
    bool mismatch = false;
    for (unsigned long n = 0; n <= opt.n_max; ++n) {
        rows.push_back(evaluator.result(n, precision));
        mismatch = mismatch || rows.back().agreement == gvseq::Agreement::Mismatch;
    }
    if (opt.format == "json") {
        auto j = gvseq::gvdet_json(spec, rows, opt.n_max, precision);
        attach_timing(j, opt, start);
        emit(gvseq::render_json(j));
    } else if (opt.format == "csv") {
        emit(gvseq::gvdet_csv(rows));
    } else {
        emit(gvseq::gvdet_table(rows));
    }
    return mismatch ? kExitFinding : 0;
}

int run_verify(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    auto spec = gvseq::parse_spec_json(read_input(opt.input));
    auto rec = gvseq::to_recurrence(spec);
    if (rec.order() < 2)
        gvseq::raise(gvseq::Errc::InvalidArgument, "verify needs a recurrence of order >= 2");
    require_nondegenerate_poly(rec.char_poly);
    const auto precision = parse_precision(opt.precision);
    auto rep = gvseq::verify_theorem(rec, opt.n_max, precision);
    if (opt.format == "json") {
        auto j = gvseq::verify_json(spec, rep, precision);
        attach_timing(j, opt, start);
        emit(gvseq::render_json(j));
    } else if (opt.format == "csv") {
        emit(gvseq::verify_csv(rep));
    } else {
        emit(gvseq::verify_table(rep));
    }
    // A theorem violation for a sequence whose prefix check is clean is a
    // reportable finding; prefix violations alone are ordinary results.
    if (rep.is_divisibility_prefix && !rep.theorem_violations.empty()) return kExitFinding;
    return 0;
}

int run_certify(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    auto spec = gvseq::parse_spec_json(read_input(opt.input));
    auto rec = gvseq::to_recurrence(spec);
    if (rec.order() < 2)
        gvseq::raise(gvseq::Errc::InvalidArgument, "certify needs a recurrence of order >= 2");
    require_nondegenerate_poly(rec.char_poly);
    auto cert = gvseq::cramer_certificate(rec, opt.n);
    auto s_n = gvseq::term(rec, opt.n);
    if (opt.format == "json") {
        auto j = gvseq::certify_json(spec, cert, s_n);
        attach_timing(j, opt, start);
        emit(gvseq::render_json(j));
    } else if (opt.format == "csv") {
        emit(gvseq::certify_csv(cert, s_n));
    } else {
        emit(gvseq::certify_table(cert, s_n));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Vandermonde determinants for linear recurrences"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd, bool with_nmax, bool with_n) {
        cmd->add_option("--input", opt.input, "input file with the recurrence JSON ('-' for stdin)");
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        cmd->add_option("--precision", opt.precision,
                        "target width for certified intervals (rational, e.g. 1/1000 or 1e-30)");
        cmd->add_flag("--timing", opt.timing, "include timing_ms in JSON output");
        if (with_nmax) cmd->add_option("--n-max", opt.n_max, "largest index n to evaluate");
        if (with_n) cmd->add_option("--n", opt.n, "index n");
    };

    auto* analyze = app.add_subcommand("analyze", "structure and nondegeneracy of the recurrence");
    add_common(analyze, false, false);
    analyze->add_flag("--require-nondegenerate", opt.require_nondegenerate,
                      "exit with status 3 when the recurrence is degenerate");

    auto* impulse = app.add_subcommand("impulse", "impulse-sequence terms X^(k)_n");
    add_common(impulse, true, false);

    auto* gvdet = app.add_subcommand("gvdet", "determinant D(n) by exact and closed-form paths");
    add_common(gvdet, true, false);

    auto* verify = app.add_subcommand("verify", "divisibility prefix check and S_n | D(n) verification");
    add_common(verify, true, false);

    auto* certify = app.add_subcommand("certify", "Cramer-rule certificate at one index");
    add_common(certify, false, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParse;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(opt);
        if (app.got_subcommand(impulse)) return run_impulse(opt);
        if (app.got_subcommand(gvdet)) return run_gvdet(opt);
        if (app.got_subcommand(verify)) return run_verify(opt);
        if (app.got_subcommand(certify)) return run_certify(opt);
    } catch (const gvseq::Error& e) {
        std::cerr << "error (" << gvseq::errc_name(e.code()) << "): " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPrecondition;
    }
    return 0;
}
