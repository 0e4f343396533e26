#pragma once

#include <stdexcept>
#include <string>

namespace polyhom {

/* Base class for all errors raised by the library. */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error("shape mismatch: " + msg) {}
};

struct UnknownGenerator : Error {
    explicit UnknownGenerator(const std::string& name) : Error("unknown generator: " + name) {}
};

struct LevelOutOfRange : Error {
    explicit LevelOutOfRange(const std::string& msg) : Error("level out of range: " + msg) {}
};

struct NotComposable : Error {
    explicit NotComposable(const std::string& msg) : Error("not composable: " + msg) {}
};

struct InvalidTerm : Error {
    explicit InvalidTerm(const std::string& msg) : Error("invalid term: " + msg) {}
};

struct ValidationFailure : Error {
    explicit ValidationFailure(const std::string& msg) : Error("validation failure: " + msg) {}
};

struct DDNotZero : Error {
    explicit DDNotZero(const std::string& msg) : Error("d*d not zero: " + msg) {}
};

struct CommutationFailure : Error {
    explicit CommutationFailure(const std::string& msg) : Error("chain map does not commute: " + msg) {}
};

struct NaturalityFailure : Error {
    explicit NaturalityFailure(const std::string& msg) : Error("naturality square fails: " + msg) {}
};

struct DimensionUnsupported : Error {
    explicit DimensionUnsupported(const std::string& msg) : Error("dimension unsupported: " + msg) {}
};

struct CapExceeded : Error {
    explicit CapExceeded(const std::string& msg) : Error("enumeration cap exceeded: " + msg) {}
};

struct OracleFailure : Error {
    explicit OracleFailure(const std::string& msg) : Error("oracle validation failed: " + msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

struct EntryLimitExceeded : Error {
    explicit EntryLimitExceeded(const std::string& msg) : Error("integer entry limit exceeded: " + msg) {}
};

}  // namespace polyhom
