#ifndef GDBLOW_EXPR_HPP
#define GDBLOW_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>

#include "gdblow/errors.hpp"

namespace gdblow::dsl {

// Value/derivative pair propagated through the AST (forward-mode
// differentiation). Derivatives are exact to floating-point rounding.
struct Dual {
    double v = 0.0;
    double d = 0.0;
};

enum class Op {
    number,
    var,   // the single variable x
    neg,
    add,
    sub,
    mul,
    div,
    pow,
    exp,
    ln,
    sqrt,
    sin,
    cos,
    tanh,
    abs,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Immutable AST node; trees are shared freely across threads.
struct Node {
    Op op;
    double value = 0.0;  // for Op::number
    NodePtr a;
    NodePtr b;
};

// A parsed expression in one variable x over +, -, *, /, ^ and the functions
// exp, ln, sqrt, sin, cos, tanh, abs. See the grammar in the README.
class Expr {
  public:
    Expr() = default;

    // Throws ParseError (with byte offset and expected-token set) on bad input.
    static Expr parse(std::string_view text);

    double eval(double x) const;

    // Value and exact first derivative at x. Throws EvalError on domain
    // faults (ln/sqrt of a negative value, division by zero, non-integer
    // power of a non-positive base, non-finite result).
    Dual eval_d(double x) const;

    // Round-trips: parse(str()) is structurally identical to *this.
    std::string str() const;

    bool empty() const { return root_ == nullptr; }
    const NodePtr& root() const { return root_; }

    explicit Expr(NodePtr root) : root_(std::move(root)) {}

  private:
    NodePtr root_;
};

bool structurally_equal(const Expr& lhs, const Expr& rhs);

}  // namespace gdblow::dsl

#endif  // GDBLOW_EXPR_HPP
