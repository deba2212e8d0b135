#include "gdblow/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace gdblow::dsl {

namespace {

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    return std::make_shared<Node>(Node{op, 0.0, std::move(a), std::move(b)});
}

NodePtr make_number(double v) { return std::make_shared<Node>(Node{Op::number, v, nullptr, nullptr}); }

// ---------------------------------------------------------------------------
// Parser: recursive descent over
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?            (right-associative)
//   atom   := NUMBER | 'x' | IDENT '(' expr ')' | '(' expr ')'
// so that -x^2 reads as -(x^2) and 2^-3 is legal.
// ---------------------------------------------------------------------------

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& context) {
        skip_ws();
        if (!accept(c))
            throw ParseError(pos, std::string("'") + c + "'",
                             "unexpected " + describe_here() + " in " + context);
    }

    std::string describe_here() {
        skip_ws();
        if (pos >= text.size()) return "end of input";
        return std::string("'") + text[pos] + "'";
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        while (true) {
            if (accept('+'))
                lhs = make(Op::add, lhs, parse_term());
            else if (accept('-'))
                lhs = make(Op::sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        while (true) {
            if (accept('*'))
                lhs = make(Op::mul, lhs, parse_factor());
            else if (accept('/'))
                lhs = make(Op::div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    NodePtr parse_factor() {
        if (accept('-')) return make(Op::neg, parse_factor());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (accept('^')) return make(Op::pow, base, parse_factor());
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos >= text.size())
            throw ParseError(pos, "number, 'x', function or '('", "unexpected end of input");
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr();
            expect(')', "parenthesized expression");
            return inner;
        }
        throw ParseError(pos, "number, 'x', function or '('", "unexpected " + describe_here());
    }

    NodePtr parse_number() {
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            std::size_t e = pos + 1;
            if (e < text.size() && (text[e] == '+' || text[e] == '-')) ++e;
            if (e < text.size() && std::isdigit(static_cast<unsigned char>(text[e]))) {
                pos = e;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            }
        }
        const std::string tok(text.substr(start, pos - start));
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == nullptr || *end != '\0' || end == tok.c_str())
            throw ParseError(start, "numeric literal", "malformed number '" + tok + "'");
        return make_number(v);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        const std::string_view name = text.substr(start, pos - start);
        if (peek() == '(') {
            Op op;
            if (name == "exp")
                op = Op::exp;
            else if (name == "ln")
                op = Op::ln;
            else if (name == "sqrt")
                op = Op::sqrt;
            else if (name == "sin")
                op = Op::sin;
            else if (name == "cos")
                op = Op::cos;
            else if (name == "tanh")
                op = Op::tanh;
            else if (name == "abs")
                op = Op::abs;
            else
                throw ParseError(start, "exp, ln, sqrt, sin, cos, tanh or abs",
                                 "unknown function '" + std::string(name) + "'");
            expect('(', "function application");
            NodePtr arg = parse_expr();
            expect(')', "function application");
            return make(op, arg);
        }
        if (name == "x") return make(Op::var);
        throw ParseError(start, "'x'", "unknown identifier '" + std::string(name) + "'");
    }
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

std::string node_str(const NodePtr& n);

[[noreturn]] void eval_fail(const NodePtr& n, double x, const std::string& what) {
    throw EvalError(x, node_str(n), what);
}

// Power with real exponent: a non-integer (or varying) exponent requires a
// positive base; an exactly-integer constant exponent falls back to integer
// power semantics so expressions like x^2 work for any x.
Dual eval_pow(const NodePtr& n, Dual base, Dual expo, double x) {
    const bool integer_exponent =
        expo.d == 0.0 && std::nearbyint(expo.v) == expo.v && std::abs(expo.v) < 1e9;
    if (base.v > 0.0) {
        const double v = std::pow(base.v, expo.v);
        const double d = v * (expo.d * std::log(base.v) + expo.v * base.d / base.v);
        return {v, d};
    }
    if (!integer_exponent)
        eval_fail(n, x, "non-integer power of a non-positive base");
    const long long k = static_cast<long long>(expo.v);
    if (base.v == 0.0 && k < 0) eval_fail(n, x, "zero raised to a negative power");
    const double v = std::pow(base.v, expo.v);
    const double d = (k == 0) ? 0.0 : expo.v * std::pow(base.v, expo.v - 1.0) * base.d;
    return {v, d};
}

Dual eval_node(const NodePtr& n, double x) {
    switch (n->op) {
        case Op::number: return {n->value, 0.0};
        case Op::var: return {x, 1.0};
        case Op::neg: {
            Dual a = eval_node(n->a, x);
            return {-a.v, -a.d};
        }
        case Op::add: {
            Dual a = eval_node(n->a, x), b = eval_node(n->b, x);
            return {a.v + b.v, a.d + b.d};
        }
        case Op::sub: {
            Dual a = eval_node(n->a, x), b = eval_node(n->b, x);
            return {a.v - b.v, a.d - b.d};
        }
        case Op::mul: {
            Dual a = eval_node(n->a, x), b = eval_node(n->b, x);
            return {a.v * b.v, a.d * b.v + a.v * b.d};
        }
        case Op::div: {
            Dual a = eval_node(n->a, x), b = eval_node(n->b, x);
            if (b.v == 0.0) eval_fail(n, x, "division by zero");
            return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
        }
        case Op::pow: return eval_pow(n, eval_node(n->a, x), eval_node(n->b, x), x);
        case Op::exp: {
            Dual a = eval_node(n->a, x);
            const double v = std::exp(a.v);
            return {v, v * a.d};
        }
        case Op::ln: {
            Dual a = eval_node(n->a, x);
            if (!(a.v > 0.0)) eval_fail(n, x, "ln of a non-positive value");
            return {std::log(a.v), a.d / a.v};
        }
        case Op::sqrt: {
            Dual a = eval_node(n->a, x);
            if (a.v < 0.0) eval_fail(n, x, "sqrt of a negative value");
            if (a.v == 0.0) {
                if (a.d != 0.0) eval_fail(n, x, "sqrt derivative singular at zero argument");
                return {0.0, 0.0};
            }
            const double v = std::sqrt(a.v);
            return {v, a.d / (2.0 * v)};
        }
        case Op::sin: {
            Dual a = eval_node(n->a, x);
            return {std::sin(a.v), std::cos(a.v) * a.d};
        }
        case Op::cos: {
            Dual a = eval_node(n->a, x);
            return {std::cos(a.v), -std::sin(a.v) * a.d};
        }
        case Op::tanh: {
            Dual a = eval_node(n->a, x);
            const double t = std::tanh(a.v);
            return {t, (1.0 - t * t) * a.d};
        }
        case Op::abs: {
            // derivative sign(a) with sign(0) = 0 (measure-zero point)
            Dual a = eval_node(n->a, x);
            const double s = (a.v > 0.0) ? 1.0 : (a.v < 0.0 ? -1.0 : 0.0);
            return {std::abs(a.v), s * a.d};
        }
    }
    eval_fail(n, x, "corrupt expression node");
}

// ---------------------------------------------------------------------------
// Serialization: precedence-aware printing so parse(str(e)) == e structurally.
// ---------------------------------------------------------------------------

int precedence(Op op) {
    switch (op) {
        case Op::add:
        case Op::sub: return 1;
        case Op::mul:
        case Op::div: return 2;
        case Op::neg: return 3;
        case Op::pow: return 4;
        default: return 5;  // atoms and function applications
    }
}

void print_node(std::ostringstream& out, const NodePtr& n, int parent_prec, bool right_side);

void print_binary(std::ostringstream& out, const NodePtr& n, const char* sym) {
    const int prec = precedence(n->op);
    // - and / are left-associative: the right child needs parens at equal
    //   precedence; ^ is right-associative: the left child does.
    const bool right_assoc = n->op == Op::pow;
    print_node(out, n->a, right_assoc ? prec + 1 : prec, false);
    out << sym;
    print_node(out, n->b, right_assoc ? prec : prec + 1, true);
}

void print_node(std::ostringstream& out, const NodePtr& n, int parent_prec, bool /*right_side*/) {
    const int prec = precedence(n->op);
    const bool parens = prec < parent_prec;
    if (parens) out << '(';
    switch (n->op) {
        case Op::number: {
            std::ostringstream num;
            num.precision(17);
            num << n->value;
            std::string s = num.str();
            if (n->value < 0.0) {
                // negative literals print as unary minus so reparsing is exact
                out << "(" << s << ")";
            } else {
                out << s;
            }
            break;
        }
        case Op::var: out << 'x'; break;
        case Op::neg:
            out << '-';
            print_node(out, n->a, precedence(Op::neg), false);
            break;
        case Op::add: print_binary(out, n, " + "); break;
        case Op::sub: print_binary(out, n, " - "); break;
        case Op::mul: print_binary(out, n, "*"); break;
        case Op::div: print_binary(out, n, "/"); break;
        case Op::pow: print_binary(out, n, "^"); break;
        case Op::exp: out << "exp("; print_node(out, n->a, 0, false); out << ')'; break;
        case Op::ln: out << "ln("; print_node(out, n->a, 0, false); out << ')'; break;
        case Op::sqrt: out << "sqrt("; print_node(out, n->a, 0, false); out << ')'; break;
        case Op::sin: out << "sin("; print_node(out, n->a, 0, false); out << ')'; break;
        case Op::cos: out << "cos("; print_node(out, n->a, 0, false); out << ')'; break;
        case Op::tanh: out << "tanh("; print_node(out, n->a, 0, false); out << ')'; break;
        case Op::abs: out << "abs("; print_node(out, n->a, 0, false); out << ')'; break;
    }
    if (parens) out << ')';
}

std::string node_str(const NodePtr& n) {
    std::ostringstream out;
    print_node(out, n, 0, false);
    return out.str();
}

bool nodes_equal(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op) return false;
    if (a->op == Op::number && a->value != b->value) return false;
    return nodes_equal(a->a, b->a) && nodes_equal(a->b, b->b);
}

}  // namespace

Expr Expr::parse(std::string_view text) {
    Parser p{text};
    NodePtr root = p.parse_expr();
    if (!p.eof())
        throw ParseError(p.pos, "end of input or operator", "trailing " + p.describe_here());
    return Expr(std::move(root));
}

double Expr::eval(double x) const { return eval_d(x).v; }

Dual Expr::eval_d(double x) const {
    if (!root_) throw EvalError(x, "", "empty expression");
    Dual r = eval_node(root_, x);
    if (!std::isfinite(r.v) || !std::isfinite(r.d))
        throw EvalError(x, node_str(root_), "non-finite result");
    return r;
}

std::string Expr::str() const {
    if (!root_) return "";
    return node_str(root_);
}

bool structurally_equal(const Expr& lhs, const Expr& rhs) {
    return nodes_equal(lhs.root(), rhs.root());
}

}  // namespace gdblow::dsl
