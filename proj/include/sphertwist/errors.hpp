#pragma once

#include <stdexcept>
#include <string>

namespace sphertwist {

enum class ErrorKind {
    FieldMismatch,
    ShapeError,
    DivisionByZero,
    NonAssociative,
    BadUnit,
    InfiniteDimensional,
    MalformedRelation,
    UnsupportedCharacteristic,
    NotAnIdeal,
    NotSplit,
    AlgebraMismatch,
    NotASubmodule,
    NotSelfInjective,
    NotProgenerator,
    NotSurjective,
    CapExceeded,
    ShapeMismatch,
    NotConcentrated,
    NotAChainMap,
    AuditFailed,
    ParseError,
    SchemaError,
    InvalidArgument,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::BadUnit: return "BadUnit";
    case ErrorKind::InfiniteDimensional: return "InfiniteDimensional";
    case ErrorKind::MalformedRelation: return "MalformedRelation";
    case ErrorKind::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotASubmodule: return "NotASubmodule";
    case ErrorKind::NotSelfInjective: return "NotSelfInjective";
    case ErrorKind::NotProgenerator: return "NotProgenerator";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotConcentrated: return "NotConcentrated";
    case ErrorKind::NotAChainMap: return "NotAChainMap";
    case ErrorKind::AuditFailed: return "AuditFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
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

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

} // namespace sphertwist
