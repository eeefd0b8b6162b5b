#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpdde {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Byte range [start, end) into the source text of a parse. */
struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    bool operator==(const SourceSpan&) const = default;
};

struct ParseError : Error {
    SourceSpan span;
    std::vector<std::string> expected;
    ParseError(std::string msg, SourceSpan s, std::vector<std::string> exp = {})
        : Error(std::move(msg)), span(s), expected(std::move(exp)) {}
};

struct OutOfRangeVariable : ParseError {
    int index;
    OutOfRangeVariable(std::string msg, SourceSpan s, int idx)
        : ParseError(std::move(msg), s), index(idx) {}
};

/* A transcendental argument outside the admissible class. The parser
   attaches a span; programmatic construction leaves it at {0,0}. */
struct InadmissibleArgument : ParseError {
    using ParseError::ParseError;
    explicit InadmissibleArgument(std::string msg)
        : ParseError(std::move(msg), SourceSpan{}) {}
};

struct MissingSymbol : Error {
    std::string symbol;
    explicit MissingSymbol(const std::string& name)
        : Error("no value or model for opaque symbol '" + name + "'"), symbol(name) {}
};

struct OpaqueDerivative : Error {
    std::string symbol;
    int var;
    OpaqueDerivative(const std::string& name, int v)
        : Error("cannot differentiate opaque symbol '" + name + "' in z" + std::to_string(v)),
          symbol(name), var(v) {}
};

struct UnknownSymbolShift : Error {
    std::string symbol;
    UnknownSymbolShift(const std::string& name, const std::string& shift)
        : Error("shift " + shift + " of opaque symbol '" + name +
                "' is not derivable from its registered rules"),
          symbol(name) {}
};

/* Raised by the exact normal form when the input leaves the decidable
   class (inexact scalar, symbol inside a transcendental argument, or a
   deferred symbol shift). Callers fall back to numeric verification. */
struct ExactModeUnsupported : Error {
    using Error::Error;
};

struct InvalidFamily : Error {
    std::vector<std::string> failures;
    InvalidFamily(std::string msg, std::vector<std::string> fails)
        : Error(std::move(msg)), failures(std::move(fails)) {}
};

struct ParamShape : Error {
    using Error::Error;
};

struct ClassifierMismatch : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace fpdde
