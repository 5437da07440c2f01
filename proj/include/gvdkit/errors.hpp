#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gvdkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroInversion : public Error {
public:
    ZeroInversion() : Error("attempt to invert zero") {}
};

class ContextMismatch : public Error {
public:
    explicit ContextMismatch(const std::string& what) : Error("context mismatch: " + what) {}
};

class ZeroPolynomial : public Error {
public:
    explicit ZeroPolynomial(const std::string& op) : Error(op + ": polynomial is zero") {}
};

class VariableEscape : public Error {
public:
    explicit VariableEscape(const std::string& var)
        : Error("variable '" + var + "' does not exist in the target context") {}
};

class ZeroDivisorArg : public Error {
public:
    ZeroDivisorArg() : Error("colon/saturation by the zero polynomial") {}
};

class UnknownVertex : public Error {
public:
    explicit UnknownVertex(const std::string& v) : Error("unknown vertex '" + v + "'") {}
};

class NotSquarefree : public Error {
public:
    explicit NotSquarefree(const std::string& g) : Error("generator is not a squarefree monomial: " + g) {}
};

class NotMonomial : public Error {
public:
    explicit NotMonomial(const std::string& g) : Error("generator is not a monomial: " + g) {}
};

class VoidComplex : public Error {
public:
    VoidComplex() : Error("operation undefined on the void complex") {}
};

class BadParameter : public Error {
public:
    explicit BadParameter(const std::string& what) : Error("bad parameter: " + what) {}
};

class StrategyDisagreement : public Error {
public:
    explicit StrategyDisagreement(const std::string& what)
        : Error("order-compatible strategies disagree: " + what) {}
};

class NotHomogeneous : public Error {
public:
    NotHomogeneous() : Error("ideal is not homogeneous") {}
};

class NoGVDCertificate : public Error {
public:
    NoGVDCertificate() : Error("ideal has no geometric vertex decomposition certificate") {}
};

class ScalarSearchExhausted : public Error {
public:
    explicit ScalarSearchExhausted(std::size_t attempts)
        : Error("no regular scalar combination found after " + std::to_string(attempts) + " attempts"),
          attempts_(attempts) {}
    std::size_t attempts() const noexcept { return attempts_; }

private:
    std::size_t attempts_;
};

class HypothesisFailed : public Error {
public:
    explicit HypothesisFailed(std::string which) : Error("hypothesis failed: " + which), which_(std::move(which)) {}
    const std::string& which() const noexcept { return which_; }

private:
    std::string which_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace gvdkit
