#pragma once

#include <stdexcept>
#include <string>

namespace ansatzlab {

/// Error categories used across the library. The CLI maps these to exit codes.
enum class ErrorKind {
    IndexOutOfRange,
    MissingAngle,
    ArityMismatch,
    NotUnitary,
    DimensionTooLarge,
    DimensionMismatch,
    InvalidSpec,
    ParseError,
    UnsupportedGate,
    UnsupportedFamily,
    NotAlternatingRxCx,
    NotInvertible,
    CapExceeded,
    InvalidColumn,
    EmptyGraph,
    EmptyMatrix,
    PenaltyTooSmall,
    TooManyQubits,
    InconsistentArity,
    IoError,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::MissingAngle: return "MissingAngle";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnsupportedGate: return "UnsupportedGate";
        case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
        case ErrorKind::NotAlternatingRxCx: return "NotAlternatingRxCx";
        case ErrorKind::NotInvertible: return "NotInvertible";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::InvalidColumn: return "InvalidColumn";
        case ErrorKind::EmptyGraph: return "EmptyGraph";
        case ErrorKind::EmptyMatrix: return "EmptyMatrix";
        case ErrorKind::PenaltyTooSmall: return "PenaltyTooSmall";
        case ErrorKind::TooManyQubits: return "TooManyQubits";
        case ErrorKind::InconsistentArity: return "InconsistentArity";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ansatzlab
