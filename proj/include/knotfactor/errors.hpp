#pragma once

// Structured error taxonomy for the whole pipeline.
//
// Every failure the library can report carries one of the kinds below.
// Kinds are grouped into three classes which map onto process exit codes:
//
//   input error (exit 1)      : the caller handed us something malformed
//                               or out of range.
//   hypothesis violation (2)  : the input was well formed but breaks a
//                               mathematical precondition of the pipeline
//                               (trivial or multi-component summand, bad
//                               marker geometry, a surface that fails to
//                               normalize, a bundle residue that should
//                               not exist for prime summands).
//   internal violation (3)    : a structural invariant the construction
//                               guarantees was found broken.  Always a bug.

#include <stdexcept>
#include <string>

namespace knotfactor {

enum class ErrorKind {
    // input errors
    MalformedToken,
    InvalidIncidence,
    IndexOutOfRange,
    TooLarge,
    NotStandard,
    NotNormal,
    Mismatch,
    ChartMissing,
    // hypothesis violations
    TrivialSummand,
    MultiComponentSummand,
    ConstructionFailed,
    HypothesisViolated,
    NonDiscBundleResidue,
    // internal invariant violations
    FiberMismatch,
    NotCertified,
    BundleNotDiscs,
    NoPath,
    BoundViolated,
};

inline const char* error_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::MalformedToken: return "MalformedToken";
        case ErrorKind::InvalidIncidence: return "InvalidIncidence";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::NotStandard: return "NotStandard";
        case ErrorKind::NotNormal: return "NotNormal";
        case ErrorKind::Mismatch: return "Mismatch";
        case ErrorKind::ChartMissing: return "ChartMissing";
        case ErrorKind::TrivialSummand: return "TrivialSummand";
        case ErrorKind::MultiComponentSummand: return "MultiComponentSummand";
        case ErrorKind::ConstructionFailed: return "ConstructionFailed";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::NonDiscBundleResidue: return "NonDiscBundleResidue";
        case ErrorKind::FiberMismatch: return "FiberMismatch";
        case ErrorKind::NotCertified: return "NotCertified";
        case ErrorKind::BundleNotDiscs: return "BundleNotDiscs";
        case ErrorKind::NoPath: return "NoPath";
        case ErrorKind::BoundViolated: return "BoundViolated";
    }
    return "Unknown";
}

inline int error_exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::MalformedToken:
        case ErrorKind::InvalidIncidence:
        case ErrorKind::IndexOutOfRange:
        case ErrorKind::TooLarge:
        case ErrorKind::NotStandard:
        case ErrorKind::NotNormal:
        case ErrorKind::Mismatch:
        case ErrorKind::ChartMissing:
            return 1;
        case ErrorKind::TrivialSummand:
        case ErrorKind::MultiComponentSummand:
        case ErrorKind::ConstructionFailed:
        case ErrorKind::HypothesisViolated:
        case ErrorKind::NonDiscBundleResidue:
            return 2;
        case ErrorKind::FiberMismatch:
        case ErrorKind::NotCertified:
        case ErrorKind::BundleNotDiscs:
        case ErrorKind::NoPath:
        case ErrorKind::BoundViolated:
            return 3;
    }
    return 3;
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return error_exit_code(kind_); }
    const char* name() const { return error_name(kind_); }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
    throw Error(kind, detail);
}

// Internal invariant check.  Never compiled out: a violation means the
// construction itself is wrong and must surface in Release builds too.
// Reported as std::logic_error so the CLI maps it to the internal-failure
// exit code without naming a specific pipeline stage.
inline void check(bool ok, const std::string& detail) {
    if (!ok) throw std::logic_error("internal invariant violated: " + detail);
}

}  // namespace knotfactor
