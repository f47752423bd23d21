#pragma once

#include <stdexcept>
#include <string>

namespace regperc {

enum class ErrorCode {
    // graph
    OddProduct,
    DegreeTooLarge,
    RejectionLimit,
    KTooLarge,
    // spectral
    TooLarge,
    NotSymmetric,
    EmptySpectrum,
    // level sets
    LengthMismatch,
    NoTransition,
    TooFewPoints,
    // gaussian wave
    DomainError,
    NotPSD,
    // percolation model
    DegenerateKernel,
    NoConvergence,
    TruncationTooTight,
    BracketFailure,
    // plotting / io
    MissingColumn,
    EmptyData,
    BadInput,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

    // Validation errors map to CLI exit 1, numerical failures to exit 2.
    bool is_numerical() const {
        switch (code_) {
            case ErrorCode::RejectionLimit:
            case ErrorCode::NotPSD:
            case ErrorCode::NoConvergence:
            case ErrorCode::TruncationTooTight:
            case ErrorCode::BracketFailure:
            case ErrorCode::NoTransition:
            case ErrorCode::DegenerateKernel:
                return true;
            default:
                return false;
        }
    }

  private:
    ErrorCode code_;
};

} // namespace regperc
