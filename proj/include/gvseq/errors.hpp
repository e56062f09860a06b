#pragma once

#include <stdexcept>
#include <string>

namespace gvseq {

// Failure categories surfaced by the library. The CLI maps these onto
// process exit codes; see tools/gvseq_cli.cpp and README.md.
enum class Errc {
    InvalidArgument,
    DivideByZero,
    NotMonic,
    ZeroRoot,
    LengthMismatch,
    NonIntegralSequence,
    NotSquarefree,
    DuplicateNode,
    ZeroNode,
    DegenerateInput,
    PrecisionExhausted,
    CertificateFailure,
    PathMismatch,
    ParseError,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidArgument: return "invalid_argument";
        case Errc::DivideByZero: return "divide_by_zero";
        case Errc::NotMonic: return "not_monic";
        case Errc::ZeroRoot: return "zero_root";
        case Errc::LengthMismatch: return "length_mismatch";
        case Errc::NonIntegralSequence: return "non_integral_sequence";
        case Errc::NotSquarefree: return "not_squarefree";
        case Errc::DuplicateNode: return "duplicate_node";
        case Errc::ZeroNode: return "zero_node";
        case Errc::DegenerateInput: return "degenerate_input";
        case Errc::PrecisionExhausted: return "precision_exhausted";
        case Errc::CertificateFailure: return "certificate_failure";
        case Errc::PathMismatch: return "path_mismatch";
        case Errc::ParseError: return "parse_error";
    }
    return "unknown";
}

}  // namespace gvseq
