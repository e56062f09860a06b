// Acceptance suite: runs every release criterion end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.
//
// Criterion 10 drives the installed CLI binary; set GVSEQ_CLI_BIN and
// GVSEQ_GOLDEN_DIR (ctest does this automatically).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gvseq/gvseq.hpp"
#include "gvseq/spec_io.hpp"
#include "oracles.hpp"

using namespace gvseq;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

// ---- corpus ------------------------------------------------------------

// Monic integer nondegenerate polynomials, degrees 2..6, coefficients in
// [-5, 5], with a mix of squarefree and repeated-root inputs. Deterministic.
std::vector<Poly> build_corpus() {
    std::vector<Poly> corpus;
    auto admit = [&](const Poly& f) {
        if (f.degree() < 2 || f.degree() > 6) return;
        for (const auto& c : f.coeffs())
            if (rat_abs(c) > 5 || !is_integer(c)) return;
        if (f.coeff(0) == 0) return;
        for (const auto& seen : corpus)
            if (seen == f) return;
        if (!nondegeneracy_check(f).non_degenerate()) return;
        corpus.push_back(f);
    };

    // repeated-root candidates (expanded products stay within the bound)
    const Poly x_m1 = Poly::from_ints({-1, 1});
    const Poly x_p1 = Poly::from_ints({1, 1});
    const Poly x_m2 = Poly::from_ints({-2, 1});
    const Poly x_p2 = Poly::from_ints({2, 1});
    const Poly fib = Poly::from_ints({-1, -1, 1});
    const Poly fib2 = Poly::from_ints({-1, 1, 1});    // x^2 + x - 1
    const Poly plastic = Poly::from_ints({-1, -1, 0, 1});

    admit(poly_pow(x_m2, 2));
    admit(poly_pow(x_p2, 2));
    admit(poly_pow(x_m1, 2));
    admit(poly_pow(x_m1, 3));
    admit(poly_pow(x_p1, 3));
    admit(poly_pow(x_m1, 2) * x_p2);
    admit(poly_pow(x_m1, 2) * x_m2);
    admit(poly_pow(x_p1, 2) * x_m2);
    admit(poly_pow(x_m2, 2) * x_p1);
    admit(poly_pow(x_m1, 2) * poly_pow(x_p2, 2));
    admit(poly_pow(fib, 2));
    admit(poly_pow(fib2, 2));
    admit(poly_pow(fib, 2) * x_m2);
    admit(poly_pow(fib, 3));
    admit(poly_pow(plastic, 2));
    admit(poly_pow(x_m1, 2) * fib);
    admit(poly_pow(x_m1, 2) * plastic);
    admit(poly_pow(x_m1, 3) * fib);

    std::mt19937 rng(20240817);
    int attempts = 0;
    while (corpus.size() < 34 && attempts < 4000) {
        ++attempts;
        int deg = static_cast<int>(oracles::rand_in(rng, 2, 6));
        Poly f = oracles::random_monic_poly(rng, deg, -5, 5);
        admit(f);
    }
    return corpus;
}

std::vector<LinearRecurrence> divisibility_corpus() {
    return {
        new_recurrence(Poly::from_ints({-1, -1, 1}), {BigRat(0), BigRat(1)}),
        new_recurrence(Poly::from_ints({2, -3, 1}), {BigRat(0), BigRat(1)}),
        new_recurrence(Poly::from_ints({1, -2, -2, 1}), {BigRat(0), BigRat(1), BigRat(1)}),
    };
}

// ---- criteria ----------------------------------------------------------

void criterion_identity_suite(const std::vector<Poly>& corpus) {
    const auto start = std::chrono::steady_clock::now();
    const BigRat tol = pow10_inv(6);
    bool has_multiplicities = false;
    bool degrees[7] = {};
    for (const Poly& f : corpus) {
        degrees[f.degree()] = true;
        for (const auto& [g, e] : yun_squarefree(f).factors) has_multiplicities |= e > 1;
        ClosedFormEvaluator evaluator(f);
        for (unsigned long n = 0; n <= 25; ++n) {
            GvResult res = evaluator.result(n, tol);
            if (res.closed_form.is_exact()) {
                expect(res.agreement == Agreement::Exact,
                       "exact paths disagree for " + f.to_string() + " at n=" + std::to_string(n));
            } else {
                expect(res.agreement == Agreement::IntervalContains,
                       "interval misses D for " + f.to_string() + " at n=" + std::to_string(n));
                expect(res.closed_form.interval.width() < tol,
                       "interval too wide for " + f.to_string() + " at n=" + std::to_string(n));
                expect(is_integer(res.d_exact), "non-integer determinant");
            }
        }
    }
    expect(corpus.size() >= 30, "corpus has fewer than 30 polynomials");
    expect(has_multiplicities, "corpus lacks repeated-root inputs");
    for (int d = 2; d <= 6; ++d) expect(degrees[d], "corpus lacks degree " + std::to_string(d));
    const double secs =
        std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - start)
            .count();
    expect(secs < 60.0, "identity suite exceeded 60 s (" + std::to_string(secs) + ")");
}

void criterion_known_closed_forms() {
    const Poly fib = Poly::from_ints({-1, -1, 1});
    auto f = oracles::fibonacci_upto(50);
    for (unsigned long n = 0; n <= 50; ++n)
        expect(gv_det_exact(fib, n) == BigRat(f[n], 1), "fibonacci D(n) != F_n at n=" + std::to_string(n));

    const Poly mers = Poly::from_ints({2, -3, 1});
    for (unsigned long n = 0; n <= 40; ++n)
        expect(gv_det_exact(mers, n) == BigRat(oracles::mersenne(n), 1),
               "mersenne D(n) != 2^n - 1 at n=" + std::to_string(n));

    const Poly dbl = Poly::from_ints({4, -4, 1});
    for (unsigned long n = 0; n <= 40; ++n)
        expect(gv_det_exact(dbl, n) == BigRat(oracles::doubled_ramp(n), 1),
               "double-root D(n) != n 2^(n-1) at n=" + std::to_string(n));
}

void criterion_theorem_suite() {
    for (const auto& rec : divisibility_corpus()) {
        DivisibilityReport rep = verify_theorem(rec, 100, pow10_inv(12));
        expect(rep.is_divisibility_prefix, "prefix check failed for " + rec.char_poly.to_string());
        expect(rep.theorem_violations.empty(), "S_n | D(n) failed for " + rec.char_poly.to_string());
        expect(rep.theorem_results.size() == 101, "missing theorem rows");
    }
}

void criterion_cramer_certificates() {
    for (const auto& rec : divisibility_corpus()) {
        for (unsigned long n = 1; n <= 30; ++n) {
            CramerCertificate cert = cramer_certificate(rec, n);
            expect(cert.numerator_det == cert.d_value, "numerator != D(n)");
            expect(cert.column_divisibility, "column divisibility failed");
            expect(divides_int(to_integer(term(rec, n)), to_integer(cert.numerator_det)),
                   "S_n does not divide the numerator");
        }
    }
}

void criterion_flowe_harris() {
    std::mt19937 rng(424242);
    int cases = 0;
    while (cases < 200) {
        std::vector<WeightedNode> nodes;
        unsigned total = 0;
        unsigned target = static_cast<unsigned>(oracles::rand_in(rng, 1, 6));
        while (total < target) {
            long num = oracles::rand_in(rng, -5, 5);
            if (num == 0) continue;
            BigRat value(num, oracles::rand_in(rng, 1, 4));
            bool dup = false;
            for (const auto& nd : nodes) dup = dup || nd.value == value;
            if (dup) continue;
            unsigned m = static_cast<unsigned>(oracles::rand_in(rng, 1, 3));
            m = std::min(m, target - total);
            nodes.push_back({value, m});
            total += m;
        }
        expect(flowe_harris(nodes) == bareiss_det(flowe_harris_matrix(nodes)),
               "formula and determinant disagree");
        ++cases;
    }
}

void criterion_w_ratio(const std::vector<Poly>& corpus) {
    const BigRat tol = pow10_inv(6);
    for (const Poly& f : corpus) {
        for (unsigned long n = 1; n <= 10; ++n) {
            Interval ratio = confluent_ratio(f, n, tol);
            expect(ratio.width() < tol, "ratio interval too wide for " + f.to_string());
            expect(ratio.contains(gv_det_exact(f, n)),
                   "ratio misses D for " + f.to_string() + " at n=" + std::to_string(n));
        }
    }
}

void criterion_decomposition() {
    std::mt19937 rng(77103);
    int cases = 0;
    while (cases < 100) {
        int deg = static_cast<int>(oracles::rand_in(rng, 1, 6));
        Poly f = oracles::random_monic_poly(rng, deg, -9, 9);
        if (f.coeff(0) == 0) continue;
        std::vector<BigRat> init;
        for (int i = 0; i < deg; ++i) init.emplace_back(oracles::rand_in(rng, -9, 9));
        LinearRecurrence rec = new_recurrence(f, init);
        auto coeffs = decompose(rec);
        auto table = impulse_basis(f).table(30);
        auto expected = terms_upto(rec, 30);
        for (unsigned long n = 0; n <= 30; ++n) {
            BigRat sum(0);
            for (std::size_t k = 0; k < coeffs.size(); ++k) sum += coeffs[k] * table[k][n];
            expect(sum == expected[n], "impulse reconstruction failed");
        }
        ++cases;
    }
    auto lucas = decompose(new_recurrence(Poly::from_ints({-1, -1, 1}), {BigRat(2), BigRat(1)}));
    expect(lucas.size() == 2 && lucas[0] == 2 && lucas[1] == 1, "lucas coefficients are not (2, 1)");
}

void criterion_nondegeneracy() {
    using S = NondegeneracyVerdict::Status;
    auto check = [](std::initializer_list<long> coeffs, S status, std::optional<unsigned long> k) {
        auto v = nondegeneracy_check(Poly::from_ints(coeffs));
        expect(v.status == status && v.witness == k, "unexpected verdict");
    };
    check({-1, 0, 1}, S::UnityRatio, 2);
    check({1, 0, 1}, S::UnityRatio, 2);
    check({-1, -1, 1}, S::NonDegenerate, std::nullopt);
    check({4, -4, 1}, S::NonDegenerate, std::nullopt);
    check({0, -1, 1}, S::ZeroRoot, std::nullopt);
}

void criterion_trivial_anchors(const std::vector<Poly>& corpus) {
    for (const Poly& f : corpus) {
        expect(gv_det_exact(f, 1) == 1, "D(1) != 1 for " + f.to_string());
        expect(gv_det_exact(f, 0) == 0, "D(0) != 0 for " + f.to_string());
    }
}

// ---- criterion 10: CLI golden files -------------------------------------

std::string run_command(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    expect(pipe != nullptr, "cannot start: " + cmd);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    expect(status == 0, "command failed (" + std::to_string(status) + "): " + cmd);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    expect(f.good(), "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void criterion_cli_golden() {
    const char* cli = std::getenv("GVSEQ_CLI_BIN");
    const char* golden = std::getenv("GVSEQ_GOLDEN_DIR");
    expect(cli != nullptr, "GVSEQ_CLI_BIN is not set");
    expect(golden != nullptr, "GVSEQ_GOLDEN_DIR is not set");
    const std::string gd(golden);
    for (const std::string name : {"fibonacci", "mersenne", "fibonacci_square"}) {
        const std::string input = gd + "/inputs/" + name + ".json";
        const std::string gvdet_cmd =
            std::string(cli) + " gvdet --input " + input + " --n-max 10 --format json";
        const std::string verify_cmd =
            std::string(cli) + " verify --input " + input + " --n-max 20 --format json";

        std::string gv1 = run_command(gvdet_cmd);
        std::string gv2 = run_command(gvdet_cmd);
        expect(gv1 == gv2, "gvdet output is not byte-stable for " + name);
        expect(gv1 == slurp(gd + "/" + name + ".gvdet.json"), "gvdet differs from golden for " + name);

        std::string vf1 = run_command(verify_cmd);
        std::string vf2 = run_command(verify_cmd);
        expect(vf1 == vf2, "verify output is not byte-stable for " + name);
        expect(vf1 == slurp(gd + "/" + name + ".verify.json"), "verify differs from golden for " + name);
    }
}

}  // namespace

int main() {
    const std::vector<Poly> corpus = build_corpus();
    std::cout << "corpus: " << corpus.size() << " nondegenerate polynomials\n";

    struct Criterion {
        int id;
        const char* label;
        std::function<void()> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "dual-path determinant identity over the corpus, n in [0, 25]",
         [&] { criterion_identity_suite(corpus); }},
        {2, "known closed forms (F_n to 50; 2^n - 1 and n 2^(n-1) to 40)", criterion_known_closed_forms},
        {3, "S_n | D(n) with clean prefix to N = 100 for the three sequences", criterion_theorem_suite},
        {4, "Cramer certificates for n in [1, 30]", criterion_cramer_certificates},
        {5, "Flowe-Harris formula vs block determinant, 200 random configurations",
         criterion_flowe_harris},
        {6, "det W(n) / det W(1) brackets D(n) within 1e-6, n in [1, 10]",
         [&] { criterion_w_ratio(corpus); }},
        {7, "impulse decomposition round-trip, 100 random recurrences", criterion_decomposition},
        {8, "nondegeneracy detection verdicts", criterion_nondegeneracy},
        {9, "trivial anchors D(1) = 1 and D(0) = 0 over the corpus",
         [&] { criterion_trivial_anchors(corpus); }},
        {10, "CLI gvdet/verify JSON byte-stable and equal to golden files", criterion_cli_golden},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        try {
            c.fn();
            std::cout << "PASS  criterion " << c.id << ": " << c.label << '\n';
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL  criterion " << c.id << ": " << c.label << " -- " << e.what() << '\n';
        }
    }
    if (failures != 0) std::cout << failures << " criterion(s) failed\n";
    return failures == 0 ? 0 : 1;
}
