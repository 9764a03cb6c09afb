#include "affsurf/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace affsurf {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Kind;
using Fn = Expr::Fn;

NodePtr make_node(Expr::Node n) { return std::make_shared<const Expr::Node>(std::move(n)); }

struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, at + 1); // 1-based offsets
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) { ++pos; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            skip_ws();
            std::size_t at = pos;
            if (eat('+')) lhs = make_node({Kind::Add, 0, 0, Fn::Sin, lhs, parse_term(), at + 1});
            else if (eat('-')) lhs = make_node({Kind::Sub, 0, 0, Fn::Sin, lhs, parse_term(), at + 1});
            else return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            skip_ws();
            std::size_t at = pos;
            if (eat('*')) lhs = make_node({Kind::Mul, 0, 0, Fn::Sin, lhs, parse_factor(), at + 1});
            else if (eat('/')) lhs = make_node({Kind::Div, 0, 0, Fn::Sin, lhs, parse_factor(), at + 1});
            else return lhs;
        }
    }

    NodePtr parse_factor() {
        skip_ws();
        std::size_t at = pos;
        if (eat('-'))
            return make_node({Kind::Neg, 0, 0, Fn::Sin, parse_factor(), nullptr, at + 1});
        NodePtr base = parse_atom();
        skip_ws();
        if (eat('^')) {
            std::size_t exp_at = pos;
            int e = parse_exponent(exp_at);
            return make_node({Kind::Pow, 0, e, Fn::Sin, base, nullptr, exp_at + 1});
        }
        return base;
    }

    int parse_exponent(std::size_t& exp_at) {
        skip_ws();
        exp_at = pos;
        std::size_t p = pos;
        if (p < src.size() && (src[p] == '+' || src[p] == '-')) ++p;
        std::size_t digits_begin = p;
        while (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) ++p;
        if (p == digits_begin) fail("expected integer exponent", pos);
        // A trailing '.' or exponent marker means a non-integer literal.
        if (p < src.size() && (src[p] == '.' || src[p] == 'e' || src[p] == 'E'))
            fail("non-integer exponent", pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(src.data() + pos, src.data() + p, value);
        if (ec != std::errc() || ptr != src.data() + p)
            fail("exponent out of range", pos);
        pos = p;
        return value;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of input", pos);
        const char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return parse_number();
        if (c == '(') {
            std::size_t open = pos;
            ++pos;
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("unclosed parenthesis (opened at offset " +
                                std::to_string(open + 1) + ")", pos);
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_identifier();
        fail(std::string("unexpected character '") + c + "'", pos);
    }

    NodePtr parse_number() {
        std::size_t start = pos;
        std::size_t p = pos;
        while (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) ++p;
        if (p < src.size() && src[p] == '.') {
            ++p;
            while (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) ++p;
        }
        if (p < src.size() && (src[p] == 'e' || src[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < src.size() && (src[q] == '+' || src[q] == '-')) ++q;
            if (q < src.size() && std::isdigit(static_cast<unsigned char>(src[q]))) {
                ++q;
                while (q < src.size() && std::isdigit(static_cast<unsigned char>(src[q]))) ++q;
                p = q;
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + p, value);
        if (ec != std::errc() || ptr != src.data() + p)
            fail("invalid number literal", start);
        pos = p;
        return make_node({Kind::Number, value, 0, Fn::Sin, nullptr, nullptr, start + 1});
    }

    NodePtr parse_identifier() {
        std::size_t start = pos;
        while (pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos]))) ++pos;
        std::string_view name = src.substr(start, pos - start);
        if (name == "u") return make_node({Kind::VarU, 0, 0, Fn::Sin, nullptr, nullptr, start + 1});
        if (name == "v") return make_node({Kind::VarV, 0, 0, Fn::Sin, nullptr, nullptr, start + 1});
        Fn fn;
        if (name == "sin") fn = Fn::Sin;
        else if (name == "cos") fn = Fn::Cos;
        else if (name == "sinh") fn = Fn::Sinh;
        else if (name == "cosh") fn = Fn::Cosh;
        else if (name == "exp") fn = Fn::Exp;
        else if (name == "log") fn = Fn::Log;
        else if (name == "sqrt") fn = Fn::Sqrt;
        else fail("unknown identifier '" + std::string(name) + "'", start);
        if (!eat('(')) fail("expected '(' after function name", pos);
        NodePtr arg = parse_expr();
        if (!eat(')')) fail("unclosed parenthesis", pos);
        return make_node({Kind::Fn, 0, 0, fn, arg, nullptr, start + 1});
    }
};

const char* fn_name(Fn f) {
    switch (f) {
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
        case Fn::Sinh: return "sinh";
        case Fn::Cosh: return "cosh";
        case Fn::Exp: return "exp";
        case Fn::Log: return "log";
        case Fn::Sqrt: return "sqrt";
    }
    return "?";
}

// Precedence levels for printing: + - (1), * / (2), unary - (3), ^ (4), atom (5).
int node_prec(const Expr::Node* n) {
    switch (n->kind) {
        case Kind::Add: case Kind::Sub: return 1;
        case Kind::Mul: case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

void print_node(const Expr::Node* n, std::string& out, int parent_prec, bool right_assoc_side) {
    const int prec = node_prec(n);
    const bool parens = prec < parent_prec || (prec == parent_prec && right_assoc_side);
    if (parens) out += '(';
    switch (n->kind) {
        case Kind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n->number);
            out += buf;
            break;
        }
        case Kind::VarU: out += 'u'; break;
        case Kind::VarV: out += 'v'; break;
        case Kind::Add:
            print_node(n->a.get(), out, 1, false); out += '+';
            print_node(n->b.get(), out, 1, true);
            break;
        case Kind::Sub:
            print_node(n->a.get(), out, 1, false); out += '-';
            print_node(n->b.get(), out, 1, true);
            break;
        case Kind::Mul:
            print_node(n->a.get(), out, 2, false); out += '*';
            print_node(n->b.get(), out, 2, true);
            break;
        case Kind::Div:
            print_node(n->a.get(), out, 2, false); out += '/';
            print_node(n->b.get(), out, 2, true);
            break;
        case Kind::Neg:
            out += '-';
            print_node(n->a.get(), out, 3, true);
            break;
        case Kind::Pow:
            print_node(n->a.get(), out, 5, false);
            out += '^';
            out += std::to_string(n->exponent);
            break;
        case Kind::Fn:
            out += fn_name(n->fn);
            out += '(';
            print_node(n->a.get(), out, 0, false);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

Jet eval_node(const Expr::Node* n, double u, double v, int order) {
    switch (n->kind) {
        case Kind::Number: return Jet::constant(n->number, order);
        case Kind::VarU: return Jet::variable_u(u, order);
        case Kind::VarV: return Jet::variable_v(v, order);
        case Kind::Add: return eval_node(n->a.get(), u, v, order) + eval_node(n->b.get(), u, v, order);
        case Kind::Sub: return eval_node(n->a.get(), u, v, order) - eval_node(n->b.get(), u, v, order);
        case Kind::Mul: return eval_node(n->a.get(), u, v, order) * eval_node(n->b.get(), u, v, order);
        case Kind::Neg: return -eval_node(n->a.get(), u, v, order);
        case Kind::Div: {
            Jet num = eval_node(n->a.get(), u, v, order);
            Jet den = eval_node(n->b.get(), u, v, order);
            try {
                return num / den;
            } catch (const DomainError& e) {
                throw DomainError("division by zero", n->offset);
            }
        }
        case Kind::Pow:
            return pow_int(eval_node(n->a.get(), u, v, order), n->exponent);
        case Kind::Fn: {
            Jet arg = eval_node(n->a.get(), u, v, order);
            try {
                switch (n->fn) {
                    case Fn::Sin: return sin(arg);
                    case Fn::Cos: return cos(arg);
                    case Fn::Sinh: return sinh(arg);
                    case Fn::Cosh: return cosh(arg);
                    case Fn::Exp: return exp(arg);
                    case Fn::Log: return log(arg);
                    case Fn::Sqrt: return sqrt(arg);
                }
            } catch (const DomainError& e) {
                throw DomainError(std::string(fn_name(n->fn)) + " domain error", n->offset);
            }
            throw ArgumentError("unreachable");
        }
    }
    throw ArgumentError("corrupt expression node");
}

bool depends_on(const Expr::Node* n, Kind var) {
    if (!n) return false;
    if (n->kind == var) return true;
    return depends_on(n->a.get(), var) || depends_on(n->b.get(), var);
}

bool nodes_equal(const Expr::Node* a, const Expr::Node* b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::Number: return a->number == b->number;
        case Kind::Pow: if (a->exponent != b->exponent) return false; break;
        case Kind::Fn: if (a->fn != b->fn) return false; break;
        default: break;
    }
    return nodes_equal(a->a.get(), b->a.get()) && nodes_equal(a->b.get(), b->b.get());
}

} // namespace

Expr Expr::parse(std::string_view source) {
    Parser p{source};
    NodePtr root = p.parse_expr();
    p.skip_ws();
    if (p.pos != source.size())
        p.fail("unexpected trailing input", p.pos);
    Expr e;
    e.root_ = std::move(root);
    return e;
}

std::string Expr::to_string() const {
    if (!root_) return {};
    std::string out;
    print_node(root_.get(), out, 0, false);
    return out;
}

Jet Expr::eval(double u, double v, int order) const {
    if (!root_) throw ArgumentError("evaluating an empty expression");
    if (order < 0 || order > Jet::kMaxOrder)
        throw ArgumentError("derivative order must be in [0, 4]");
    return eval_node(root_.get(), u, v, order);
}

bool Expr::depends_on_u() const { return depends_on(root_.get(), Kind::VarU); }
bool Expr::depends_on_v() const { return depends_on(root_.get(), Kind::VarV); }

bool tree_equal(const Expr& a, const Expr& b) { return nodes_equal(a.root(), b.root()); }

} // namespace affsurf
