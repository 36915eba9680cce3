#ifndef PARASUSY_EXPRLANG_HPP
#define PARASUSY_EXPRLANG_HPP

// Coefficient-function mini-language.
//
//   expr     := term   { ("+" | "-") term }
//   term     := unary  { ("*" | "/") unary }
//   unary    := "-" unary | power
//   power    := primary [ "^" exponent ]
//   exponent := INTEGER | "(" INTEGER ")"
//   primary  := INTEGER | DECIMAL | "n" | "(" expr ")"
//
// INTEGER is a run of digits, DECIMAL is digits "." digits. The only variable
// is n. Evaluation is exact over the rationals.

#include "parasusy/rational.hpp"

#include <cctype>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace parasusy {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : std::runtime_error("at offset " + std::to_string(offset) + ": " + message)
        , offset_(offset)
        , reason_(message)
    {
    }

    std::size_t offset() const noexcept { return offset_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t offset_;
    std::string reason_;
};

class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& message, std::int64_t n)
        : std::runtime_error(message + " at n = " + std::to_string(n))
        , n_(n)
    {
    }

    std::int64_t n() const noexcept { return n_; }

private:
    std::int64_t n_;
};

enum class NodeKind { Integer, Decimal, Variable, Negate, Add, Subtract, Multiply, Divide, Power };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind;
    Rational literal;            // Integer, Decimal
    std::uint32_t exponent = 0;  // Power
    ExprNodePtr lhs;             // Negate operand, binary lhs, Power base
    ExprNodePtr rhs;             // binary rhs
};

namespace detail {

inline bool structurally_equal(const ExprNodePtr& a, const ExprNodePtr& b)
{
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case NodeKind::Integer:
    case NodeKind::Decimal:
        return a->literal == b->literal;
    case NodeKind::Variable:
        return true;
    case NodeKind::Negate:
        return structurally_equal(a->lhs, b->lhs);
    case NodeKind::Power:
        return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
    default:
        return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
    }
}

inline Rational power(Rational base, std::uint32_t exponent)
{
    Rational result = 1;
    while (exponent > 0) {
        if (exponent & 1u) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

inline std::string decimal_string(const Rational& value)
{
    Integer num = numerator_of(value);
    Integer den = denominator_of(value);
    const bool negative = num < 0;
    if (negative) num = -num;
    Integer scale = 1;
    int digits = 0;
    while ((num * scale) % den != 0) {
        scale *= 10;
        ++digits;
        if (digits > 64) throw std::logic_error("decimal literal is not a finite decimal");
    }
    const std::string scaled = Integer(num * scale / den).str();
    std::string text;
    if (digits == 0) {
        text = scaled + ".0";
    } else {
        std::string padded = std::string(scaled.size() <= static_cast<std::size_t>(digits)
                                              ? digits + 1 - scaled.size()
                                              : 0,
                                          '0')
                             + scaled;
        text = padded.substr(0, padded.size() - digits) + "." + padded.substr(padded.size() - digits);
    }
    return negative ? "-" + text : text;
}

inline Rational evaluate_node(const ExprNode& node, std::int64_t n)
{
    switch (node.kind) {
    case NodeKind::Integer:
    case NodeKind::Decimal:
        return node.literal;
    case NodeKind::Variable:
        return Rational(n);
    case NodeKind::Negate:
        return -evaluate_node(*node.lhs, n);
    case NodeKind::Add:
        return evaluate_node(*node.lhs, n) + evaluate_node(*node.rhs, n);
    case NodeKind::Subtract:
        return evaluate_node(*node.lhs, n) - evaluate_node(*node.rhs, n);
    case NodeKind::Multiply:
        return evaluate_node(*node.lhs, n) * evaluate_node(*node.rhs, n);
    case NodeKind::Divide: {
        const Rational den = evaluate_node(*node.rhs, n);
        if (den == 0) throw EvaluationError("division by zero", n);
        return evaluate_node(*node.lhs, n) / den;
    }
    case NodeKind::Power:
        return power(evaluate_node(*node.lhs, n), node.exponent);
    }
    throw std::logic_error("unreachable expression node");
}

inline std::string print_node(const ExprNode& node)
{
    switch (node.kind) {
    case NodeKind::Integer:
        return numerator_of(node.literal).str();
    case NodeKind::Decimal:
        return decimal_string(node.literal);
    case NodeKind::Variable:
        return "n";
    case NodeKind::Negate:
        return "(-" + print_node(*node.lhs) + ")";
    case NodeKind::Power:
        return "(" + print_node(*node.lhs) + "^" + std::to_string(node.exponent) + ")";
    default:
        break;
    }
    const char* op = node.kind == NodeKind::Add        ? " + "
                     : node.kind == NodeKind::Subtract ? " - "
                     : node.kind == NodeKind::Multiply ? " * "
                                                       : " / ";
    return "(" + print_node(*node.lhs) + op + print_node(*node.rhs) + ")";
}

} // namespace detail

/// Immutable expression in the single variable n.
class Expression {
public:
    Expression() : Expression(integer(0)) {}

    static Expression integer(const Integer& value)
    {
        return Expression(std::make_shared<const ExprNode>(ExprNode{NodeKind::Integer, Rational(value)}));
    }
    static Expression integer(std::int64_t value) { return integer(Integer(value)); }
    /// Finite-decimal literal; value must be expressible as k / 10^m.
    static Expression decimal(const Rational& value)
    {
        (void)detail::decimal_string(value);
        return Expression(std::make_shared<const ExprNode>(ExprNode{NodeKind::Decimal, value}));
    }
    static Expression variable()
    {
        return Expression(std::make_shared<const ExprNode>(ExprNode{NodeKind::Variable, Rational(0)}));
    }
    static Expression negate(const Expression& e)
    {
        return Expression(std::make_shared<const ExprNode>(ExprNode{NodeKind::Negate, 0, 0, e.root_}));
    }
    static Expression binary(NodeKind kind, const Expression& lhs, const Expression& rhs)
    {
        return Expression(std::make_shared<const ExprNode>(ExprNode{kind, 0, 0, lhs.root_, rhs.root_}));
    }
    static Expression power(const Expression& base, std::uint32_t exponent)
    {
        return Expression(
            std::make_shared<const ExprNode>(ExprNode{NodeKind::Power, 0, exponent, base.root_}));
    }

    Rational evaluate(std::int64_t n) const { return detail::evaluate_node(*root_, n); }

    /// Fully parenthesized; parse(to_string()) is structurally identical.
    std::string to_string() const { return detail::print_node(*root_); }

    const ExprNode& root() const { return *root_; }

    friend bool operator==(const Expression& a, const Expression& b)
    {
        return detail::structurally_equal(a.root_, b.root_);
    }

private:
    explicit Expression(ExprNodePtr root) : root_(std::move(root)) {}

    ExprNodePtr root_;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expression parse()
    {
        skip_space();
        if (pos_ == text_.size()) throw ParseError(0, "empty expression");
        Expression e = parse_sum();
        skip_space();
        if (pos_ != text_.size())
            throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expression parse_sum()
    {
        Expression lhs = parse_product();
        for (;;) {
            if (accept('+'))
                lhs = Expression::binary(NodeKind::Add, lhs, parse_product());
            else if (accept('-'))
                lhs = Expression::binary(NodeKind::Subtract, lhs, parse_product());
            else
                return lhs;
        }
    }

    Expression parse_product()
    {
        Expression lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = Expression::binary(NodeKind::Multiply, lhs, parse_unary());
            else if (accept('/'))
                lhs = Expression::binary(NodeKind::Divide, lhs, parse_unary());
            else
                return lhs;
        }
    }

    Expression parse_unary()
    {
        if (accept('-')) return Expression::negate(parse_unary());
        return parse_power();
    }

    Expression parse_power()
    {
        Expression base = parse_primary();
        if (!accept('^')) return base;
        const std::uint32_t exponent = parse_exponent();
        if (peek() == '^') throw ParseError(pos_, "chained exponent; use parentheses");
        return Expression::power(base, exponent);
    }

    std::uint32_t parse_exponent()
    {
        skip_space();
        const bool parenthesized = accept('(');
        skip_space();
        const std::size_t start = pos_;
        if (peek() == '-') throw ParseError(pos_, "negative exponent");
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError(start, "exponent must be a nonnegative integer literal");
        Integer value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        if (pos_ < text_.size() && text_[pos_] == '.')
            throw ParseError(start, "exponent must be a nonnegative integer literal");
        if (value > 4096) throw ParseError(start, "exponent too large");
        if (parenthesized && !accept(')')) {
            skip_space();
            throw ParseError(pos_, "exponent must be a nonnegative integer literal");
        }
        return value.convert_to<std::uint32_t>();
    }

    Expression parse_primary()
    {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            const std::size_t open = pos_;
            ++pos_;
            Expression inner = parse_sum();
            if (!accept(')')) {
                skip_space();
                throw ParseError(pos_, "expected ')' to close '(' at offset " + std::to_string(open));
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size()
                   && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name != "n") throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
            return Expression::variable();
        }
        throw ParseError(pos_, std::string("unexpected '") + c + "'");
    }

    Expression parse_number()
    {
        const std::size_t start = pos_;
        Integer whole = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            whole = whole * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            Integer scale = 1;
            bool digits = false;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                whole = whole * 10 + (text_[pos_] - '0');
                scale *= 10;
                ++pos_;
                digits = true;
            }
            if (!digits) throw ParseError(start, "malformed decimal literal");
            return Expression::decimal(Rational(whole, scale));
        }
        return Expression::integer(whole);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Expression parse_expression(std::string_view text) { return detail::Parser(text).parse(); }

/// Convenience: evaluate straight from text.
inline Rational evaluate(const Expression& e, std::int64_t n) { return e.evaluate(n); }

} // namespace parasusy

#endif // PARASUSY_EXPRLANG_HPP
