#ifndef GDBLOW_ERRORS_HPP
#define GDBLOW_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gdblow {

// Base class for all toolkit errors. Every documented failure path uses a
// distinct message prefix so callers (and scripts) can dispatch on it.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid physical input (non-positive density/pressure, bad gamma, ...).
// Messages start with "domain error:".
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error("domain error: " + what) {}
};

// Expression text rejected by the parser. `offset` is the byte offset of the
// offending token; `expected` describes what would have been accepted there.
// Messages start with "parse error:".
struct ParseError : Error {
    std::size_t offset;
    std::string expected;
    ParseError(std::size_t off, const std::string& expect, const std::string& what)
        : Error("parse error: at byte " + std::to_string(off) + ": " + what +
                (expect.empty() ? "" : " (expected " + expect + ")")),
          offset(off),
          expected(expect) {}
};

// Expression evaluation hit a domain fault (ln of a non-positive value,
// division by zero, ...). Carries the evaluation point and the offending
// subexpression. Messages start with "eval error:".
struct EvalError : Error {
    double x;
    std::string subexpr;
    EvalError(double x_, const std::string& sub, const std::string& what)
        : Error("eval error: at x=" + std::to_string(x_) + " in '" + sub + "': " + what),
          x(x_),
          subexpr(sub) {}
};

// Scenario file / CLI configuration problem. Messages start with "config error:".
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

// Finite-volume run lost positivity; reported, never silently clipped.
// Messages start with "breakdown:".
struct BreakdownError : Error {
    double t;
    int cell;
    BreakdownError(double t_, int cell_, const std::string& what)
        : Error("breakdown: " + what + " (cell " + std::to_string(cell_) + ", t=" +
                std::to_string(t_) + ")"),
          t(t_),
          cell(cell_) {}
};

}  // namespace gdblow

#endif  // GDBLOW_ERRORS_HPP
