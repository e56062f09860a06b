#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gvseq/divisibility.hpp"
#include "gvseq/recurrence.hpp"
#include "gvseq/roots.hpp"
#include "gvseq/vandermonde.hpp"

namespace gvseq {

using OutputJson = nlohmann::ordered_json;

// Raw, as-parsed recurrence description: coefficients ascending by degree,
// each an integer or "p/q" string. Kept textual so inputs stay float-free.
struct RecurrenceSpec {
    std::vector<std::string> char_poly;
    std::vector<std::string> init;
    std::optional<std::string> name;
};

namespace detail {

inline std::vector<std::string> parse_string_array(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key)) raise(Errc::ParseError, "missing field \"" + key + "\"");
    const auto& arr = j.at(key);
    if (!arr.is_array() || arr.empty()) raise(Errc::ParseError, "field \"" + key + "\" must be a non-empty array");
    std::vector<std::string> out;
    for (const auto& v : arr) {
        if (v.is_string())
            out.push_back(v.get<std::string>());
        else if (v.is_number_integer())
            out.push_back(std::to_string(v.get<long long>()));
        else
            raise(Errc::ParseError, "field \"" + key + "\" entries must be integers or rational strings");
    }
    return out;
}

inline BigRat parse_rational_or_raise(const std::string& s, const std::string& what) {
    auto v = parse_rational(s);
    if (!v) raise(Errc::ParseError, "cannot parse " + what + " \"" + s + "\" as a rational");
    return *v;
}

}  // namespace detail

// Parses the single-object input format. JSON syntax errors carry the byte
// position reported by the parser.
inline RecurrenceSpec parse_spec_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(Errc::ParseError, "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object()) raise(Errc::ParseError, "input must be a JSON object");
    RecurrenceSpec spec;
    spec.char_poly = detail::parse_string_array(j, "char_poly");
    spec.init = detail::parse_string_array(j, "init");
    if (j.contains("name")) {
        if (!j.at("name").is_string()) raise(Errc::ParseError, "field \"name\" must be a string");
        spec.name = j.at("name").get<std::string>();
    }
    return spec;
}

inline Poly poly_from_strings(const std::vector<std::string>& coeffs) {
    std::vector<BigRat> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.push_back(detail::parse_rational_or_raise(s, "coefficient"));
    return Poly(std::move(c));
}

inline LinearRecurrence to_recurrence(const RecurrenceSpec& spec) {
    Poly f = poly_from_strings(spec.char_poly);
    std::vector<BigRat> init;
    init.reserve(spec.init.size());
    for (const auto& s : spec.init) init.push_back(detail::parse_rational_or_raise(s, "initial term"));
    return new_recurrence(std::move(f), std::move(init));
}

// Outward rounding to at most `digits` significant decimal digits, for
// display only. The rounded interval still encloses the original.
inline Interval display_round(const Interval& iv, unsigned digits = 40) {
    if (iv.is_point()) return iv;
    const BigRat m = iv.mag_upper();
    if (m == 0) return iv;
    const long e10 = (mag_bits(m) * 30103L) / 100000L;  // log10(2) scaling
    const long k = static_cast<long>(digits) - 1 - e10;
    BigRat g = k >= 0 ? BigRat(1, int_pow(BigInt(10), static_cast<unsigned long>(k)))
                      : BigRat(int_pow(BigInt(10), static_cast<unsigned long>(-k)), 1);
    BigRat lo = BigRat(floor_div(rat_num(iv.lo) * rat_den(g), rat_den(iv.lo) * rat_num(g)), 1) * g;
    BigRat hi = -(BigRat(floor_div(rat_num(-iv.hi) * rat_den(g), rat_den(iv.hi) * rat_num(g)), 1) * g);
    return {lo, hi};
}

inline OutputJson cf_value_json(const CfValue& v) {
    if (v.is_exact()) return rat_to_string(*v.exact);
    Interval shown = display_round(v.interval);
    return OutputJson{{"lo", rat_to_string(shown.lo)}, {"hi", rat_to_string(shown.hi)}};
}

inline OutputJson spec_echo_json(const RecurrenceSpec& spec) {
    OutputJson in;
    in["char_poly"] = OutputJson::array();
    for (const auto& s : spec.char_poly)
        in["char_poly"].push_back(rat_to_string(detail::parse_rational_or_raise(s, "coefficient")));
    in["init"] = OutputJson::array();
    for (const auto& s : spec.init)
        in["init"].push_back(rat_to_string(detail::parse_rational_or_raise(s, "initial term")));
    if (spec.name) in["name"] = *spec.name;
    return in;
}

// Everything the analyze command reports.
struct Analysis {
    unsigned long order = 0;
    SquarefreeDecomposition sqf;
    unsigned long distinct_roots = 0;
    unsigned long n_exponent = 0;
    NondegeneracyVerdict verdict;
    RootStructure roots;
};

inline Analysis analyze(const Poly& char_poly, const BigRat& precision) {
    if (char_poly.degree() < 1) raise(Errc::InvalidArgument, "analyze needs degree >= 1");
    Analysis a;
    a.order = static_cast<unsigned long>(char_poly.degree());
    a.sqf = yun_squarefree(char_poly);
    a.distinct_roots = a.sqf.distinct_roots();
    for (const auto& [g, e] : a.sqf.factors)
        a.n_exponent += static_cast<unsigned long>(g.degree()) * binom2(e);
    a.verdict = nondegeneracy_check(char_poly);
    a.roots = isolate_roots(char_poly, precision);
    return a;
}

inline std::string verdict_status_name(const NondegeneracyVerdict& v) {
    switch (v.status) {
        case NondegeneracyVerdict::Status::NonDegenerate: return "non_degenerate";
        case NondegeneracyVerdict::Status::ZeroRoot: return "zero_root";
        case NondegeneracyVerdict::Status::UnityRatio: return "unity_ratio";
    }
    return "unknown";
}

inline OutputJson analysis_json(const RecurrenceSpec& spec, const Analysis& a, const BigRat& precision) {
    OutputJson j;
    j["command"] = "analyze";
    j["input"] = spec_echo_json(spec);
    j["parameters"] = {{"precision", rat_to_string(precision)}};
    j["order"] = a.order;
    j["squarefree_factors"] = OutputJson::array();
    for (const auto& [g, e] : a.sqf.factors) {
        OutputJson fj;
        fj["factor"] = OutputJson::array();
        for (const auto& c : g.coeffs()) fj["factor"].push_back(rat_to_string(c));
        fj["multiplicity"] = e;
        j["squarefree_factors"].push_back(std::move(fj));
    }
    j["distinct_roots"] = a.distinct_roots;
    j["multiplicities"] = OutputJson::array();
    for (const auto& b : a.roots.boxes) j["multiplicities"].push_back(b.multiplicity);
    j["n_exponent"] = a.n_exponent;
    j["nondegeneracy"] = OutputJson{{"status", verdict_status_name(a.verdict)}};
    if (a.verdict.witness) j["nondegeneracy"]["order_k"] = *a.verdict.witness;
    j["roots"] = OutputJson::array();
    for (const auto& b : a.roots.boxes) {
        j["roots"].push_back(OutputJson{{"re", rat_to_string(b.re)},
                                        {"im", rat_to_string(b.im)},
                                        {"radius", rat_to_string(b.radius)},
                                        {"multiplicity", b.multiplicity}});
    }
    return j;
}

inline OutputJson gvdet_json(const RecurrenceSpec& spec, const std::vector<GvResult>& rows,
                             unsigned long n_max, const BigRat& precision) {
    OutputJson j;
    j["command"] = "gvdet";
    j["input"] = spec_echo_json(spec);
    j["parameters"] = {{"n_max", n_max}, {"precision", rat_to_string(precision)}};
    j["results"] = OutputJson::array();
    j["violations"] = OutputJson::array();
    for (const auto& r : rows) {
        j["results"].push_back(OutputJson{{"n", r.n},
                                          {"d_exact", rat_to_string(r.d_exact)},
                                          {"closed_form", cf_value_json(r.closed_form)},
                                          {"agreement", agreement_name(r.agreement)}});
        if (r.agreement == Agreement::Mismatch) j["violations"].push_back(r.n);
    }
    return j;
}

inline OutputJson verify_json(const RecurrenceSpec& spec, const DivisibilityReport& rep,
                              const BigRat& precision) {
    OutputJson j;
    j["command"] = "verify";
    j["input"] = spec_echo_json(spec);
    j["parameters"] = {{"n_max", rep.checked_up_to}, {"precision", rat_to_string(precision)}};
    OutputJson prefix;
    prefix["checked_up_to"] = rep.checked_up_to;
    prefix["is_divisibility_prefix"] = rep.is_divisibility_prefix;
    prefix["violations"] = OutputJson::array();
    for (const auto& v : rep.def_violations)
        prefix["violations"].push_back(OutputJson{{"n", v.n}, {"m", v.m}});
    j["prefix"] = std::move(prefix);
    j["results"] = OutputJson::array();
    for (const auto& row : rep.theorem_results)
        j["results"].push_back(OutputJson{{"n", row.n},
                                          {"s_n", rat_to_string(row.s_n)},
                                          {"d_n", rat_to_string(row.d_n)},
                                          {"divides", row.divides}});
    j["theorem_violations"] = rep.theorem_violations;
    return j;
}

inline OutputJson certify_json(const RecurrenceSpec& spec, const CramerCertificate& cert,
                               const BigRat& s_n) {
    OutputJson j;
    j["command"] = "certify";
    j["input"] = spec_echo_json(spec);
    j["parameters"] = {{"n", cert.n}};
    j["certificate"] = OutputJson{{"n", cert.n},
                                  {"numerator_det", rat_to_string(cert.numerator_det)},
                                  {"d_value", rat_to_string(cert.d_value)},
                                  {"s_n", rat_to_string(s_n)},
                                  {"column_divisibility", cert.column_divisibility},
                                  {"divides_numerator",
                                   divides_int(to_integer(s_n), to_integer(cert.numerator_det))}};
    return j;
}

inline OutputJson impulse_json(const RecurrenceSpec& spec, const std::vector<std::vector<BigRat>>& table,
                               unsigned long n_max) {
    OutputJson j;
    j["command"] = "impulse";
    j["input"] = spec_echo_json(spec);
    j["parameters"] = {{"n_max", n_max}};
    j["results"] = OutputJson::array();
    for (unsigned long n = 0; n <= n_max; ++n) {
        OutputJson row;
        row["n"] = n;
        row["terms"] = OutputJson::array();
        for (const auto& seq : table) row["terms"].push_back(rat_to_string(seq[n]));
        j["results"].push_back(std::move(row));
    }
    return j;
}

inline std::string render_json(const OutputJson& j) { return j.dump(2) + "\n"; }

// ---- CSV renderers ----------------------------------------------------

inline std::string csv_bool(bool b) { return b ? "true" : "false"; }

inline std::string gvdet_csv(const std::vector<GvResult>& rows) {
    std::ostringstream os;
    os << "n,d_exact,closed_form_lo,closed_form_hi,agreement\n";
    for (const auto& r : rows) {
        Interval shown = display_round(r.closed_form.as_interval());
        os << r.n << ',' << rat_to_string(r.d_exact) << ',' << rat_to_string(shown.lo) << ','
           << rat_to_string(shown.hi) << ',' << agreement_name(r.agreement) << '\n';
    }
    return os.str();
}

inline std::string verify_csv(const DivisibilityReport& rep) {
    std::ostringstream os;
    os << "n,S_n,D_n,divides\n";
    for (const auto& row : rep.theorem_results)
        os << row.n << ',' << rat_to_string(row.s_n) << ',' << rat_to_string(row.d_n) << ','
           << csv_bool(row.divides) << '\n';
    return os.str();
}

inline std::string impulse_csv(const std::vector<std::vector<BigRat>>& table, unsigned long n_max) {
    std::ostringstream os;
    os << "n";
    for (std::size_t k = 0; k < table.size(); ++k) os << ",X" << k;
    os << '\n';
    for (unsigned long n = 0; n <= n_max; ++n) {
        os << n;
        for (const auto& seq : table) os << ',' << rat_to_string(seq[n]);
        os << '\n';
    }
    return os.str();
}

inline std::string analyze_csv(const Analysis& a) {
    std::ostringstream os;
    os << "re,im,radius,multiplicity\n";
    for (const auto& b : a.roots.boxes)
        os << rat_to_string(b.re) << ',' << rat_to_string(b.im) << ',' << rat_to_string(b.radius) << ','
           << b.multiplicity << '\n';
    return os.str();
}

inline std::string certify_csv(const CramerCertificate& cert, const BigRat& s_n) {
    std::ostringstream os;
    os << "n,numerator_det,d_value,s_n,column_divisibility\n";
    os << cert.n << ',' << rat_to_string(cert.numerator_det) << ',' << rat_to_string(cert.d_value) << ','
       << rat_to_string(s_n) << ',' << csv_bool(cert.column_divisibility) << '\n';
    return os.str();
}

// ---- plain-text tables -------------------------------------------------

inline std::string gvdet_table(const std::vector<GvResult>& rows) {
    std::ostringstream os;
    os << "n\td_exact\tclosed_form\tagreement\n";
    for (const auto& r : rows) {
        std::string cf = r.closed_form.is_exact() ? rat_to_string(*r.closed_form.exact)
                                                  : display_round(r.closed_form.interval).to_string();
        os << r.n << '\t' << rat_to_string(r.d_exact) << '\t' << cf << '\t' << agreement_name(r.agreement)
           << '\n';
    }
    return os.str();
}

inline std::string verify_table(const DivisibilityReport& rep) {
    std::ostringstream os;
    os << "prefix check to N = " << rep.checked_up_to << ": "
       << (rep.is_divisibility_prefix ? "clean" : "violations found") << '\n';
    for (const auto& v : rep.def_violations) {
        if (v.n == v.m && v.n <= 1)
            os << "  initial condition failed at S_" << v.n << '\n';
        else
            os << "  S_" << v.n << " does not divide S_" << v.m * v.n << '\n';
    }
    os << "n\tS_n\tD_n\tdivides\n";
    for (const auto& row : rep.theorem_results)
        os << row.n << '\t' << rat_to_string(row.s_n) << '\t' << rat_to_string(row.d_n) << '\t'
           << csv_bool(row.divides) << '\n';
    if (!rep.theorem_violations.empty()) {
        os << "theorem violations at n =";
        for (auto n : rep.theorem_violations) os << ' ' << n;
        os << '\n';
    }
    return os.str();
}

inline std::string analyze_table(const Analysis& a) {
    std::ostringstream os;
    os << "order           " << a.order << '\n';
    os << "squarefree      ";
    for (std::size_t i = 0; i < a.sqf.factors.size(); ++i) {
        if (i) os << "  *  ";
        os << '(' << a.sqf.factors[i].factor.to_string() << ")^" << a.sqf.factors[i].multiplicity;
    }
    os << '\n';
    os << "distinct_roots  " << a.distinct_roots << '\n';
    os << "n_exponent      " << a.n_exponent << '\n';
    os << "nondegeneracy   " << verdict_status_name(a.verdict);
    if (a.verdict.witness) os << " (k = " << *a.verdict.witness << ')';
    os << '\n';
    os << "roots (re, im, radius, multiplicity):\n";
    for (const auto& b : a.roots.boxes)
        os << "  " << rat_to_string(b.re) << ", " << rat_to_string(b.im) << ", " << rat_to_string(b.radius)
           << ", " << b.multiplicity << '\n';
    return os.str();
}

inline std::string impulse_table(const std::vector<std::vector<BigRat>>& table, unsigned long n_max) {
    std::ostringstream os;
    os << "n";
    for (std::size_t k = 0; k < table.size(); ++k) os << "\tX^(" << k << ")";
    os << '\n';
    for (unsigned long n = 0; n <= n_max; ++n) {
        os << n;
        for (const auto& seq : table) os << '\t' << rat_to_string(seq[n]);
        os << '\n';
    }
    return os.str();
}

inline std::string certify_table(const CramerCertificate& cert, const BigRat& s_n) {
    std::ostringstream os;
    os << "n                    " << cert.n << '\n';
    os << "numerator_det        " << rat_to_string(cert.numerator_det) << '\n';
    os << "d_value              " << rat_to_string(cert.d_value) << '\n';
    os << "s_n                  " << rat_to_string(s_n) << '\n';
    os << "column_divisibility  " << csv_bool(cert.column_divisibility) << '\n';
    os << "divides_numerator    "
       << csv_bool(divides_int(to_integer(s_n), to_integer(cert.numerator_det))) << '\n';
    return os.str();
}

}  // namespace gvseq
