#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "affsurf/jet.hpp"

namespace affsurf {

// Parsed scalar expression in the variables u and v.
//
// Grammar (whitespace insignificant, '^' exponents are integer literals):
//   expr   := term  (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := "-" factor | atom ("^" int)?
//   atom   := number | "u" | "v" | fn "(" expr ")" | "(" expr ")"
//   fn     := sin | cos | sinh | cosh | exp | log | sqrt
// Precedence: ^  >  unary -  >  * /  >  + -, left-associative.
class Expr {
public:
    enum class Kind { Number, VarU, VarV, Add, Sub, Mul, Div, Pow, Neg, Fn };
    enum class Fn { Sin, Cos, Sinh, Cosh, Exp, Log, Sqrt };

    struct Node {
        Kind kind;
        double number = 0.0;       // Kind::Number
        int exponent = 0;          // Kind::Pow
        Fn fn = Fn::Sin;           // Kind::Fn
        std::shared_ptr<const Node> a, b;
        std::size_t offset = 0;    // 1-based byte offset in the source
    };

    Expr() = default;

    // Throws ParseError (with 1-based byte offset) on bad input.
    static Expr parse(std::string_view source);

    bool empty() const { return root_ == nullptr; }
    const Node* root() const { return root_.get(); }

    // Canonical text form; parse(to_string()) reproduces the tree.
    std::string to_string() const;

    // Value and exact mixed partials up to `order` at (u, v).
    // Throws DomainError (naming the offending node's offset) when evaluation
    // leaves a function's domain.
    Jet eval(double u, double v, int order = Jet::kMaxOrder) const;

    double value(double u, double v) const { return eval(u, v, 0).value(); }

    bool depends_on_u() const;
    bool depends_on_v() const;

private:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

// Structural equality of expression trees.
bool tree_equal(const Expr& a, const Expr& b);

} // namespace affsurf
