#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "theta_operator.hpp"

namespace cyode {

/// Parse failure with a 0-based character position.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/// Expression tree over integers, the parameter symbol, theta, and
/// + - * / ^ with parentheses.
struct OperatorExpression {
    enum class Kind { integer, parameter, theta, add, sub, mul, div, pow, neg };
    Kind kind;
    Integer value;       // integer literal, or the exponent of pow
    std::unique_ptr<OperatorExpression> lhs;
    std::unique_ptr<OperatorExpression> rhs;
};

namespace parser_detail {

struct Token {
    enum class Kind { integer, ident, op, lparen, rparen, end };
    Kind kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Kind::integer, src.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Token::Kind::ident, src.substr(i, j - i), i});
            i = j;
            continue;
        }
        switch (c) {
            case '+': case '-': case '*': case '/': case '^':
                out.push_back({Token::Kind::op, std::string(1, c), i});
                break;
            case '(':
                out.push_back({Token::Kind::lparen, "(", i});
                break;
            case ')':
                out.push_back({Token::Kind::rparen, ")", i});
                break;
            default:
                throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
        }
        ++i;
    }
    out.push_back({Token::Kind::end, "", src.size()});
    return out;
}

using ExprPtr = std::unique_ptr<OperatorExpression>;

inline ExprPtr node(OperatorExpression::Kind k) {
    auto e = std::make_unique<OperatorExpression>();
    e->kind = k;
    return e;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::string param)
        : toks_(std::move(tokens)), param_(std::move(param)) {}

    ExprPtr parse() {
        auto e = expr();
        if (cur().kind != Token::Kind::end)
            throw ParseError("trailing input '" + cur().text + "'", cur().pos);
        return e;
    }

  private:
    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }
    bool is_op(const char* s) const {
        return cur().kind == Token::Kind::op && cur().text == s;
    }

    ExprPtr expr() {
        auto lhs = term();
        while (is_op("+") || is_op("-")) {
            const bool add = cur().text == "+";
            advance();
            auto e = node(add ? OperatorExpression::Kind::add : OperatorExpression::Kind::sub);
            e->lhs = std::move(lhs);
            e->rhs = term();
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr term() {
        auto lhs = factor();
        while (is_op("*") || is_op("/")) {
            const bool mul = cur().text == "*";
            advance();
            auto e = node(mul ? OperatorExpression::Kind::mul : OperatorExpression::Kind::div);
            e->lhs = std::move(lhs);
            e->rhs = factor();
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr factor() {
        if (is_op("-")) {
            advance();
            auto e = node(OperatorExpression::Kind::neg);
            e->lhs = factor();
            return e;
        }
        if (is_op("+")) {
            advance();
            return factor();
        }
        return power();
    }

    ExprPtr power() {
        auto base = atom();
        while (is_op("^")) {
            advance();
            auto e = node(OperatorExpression::Kind::pow);
            e->value = exponent();
            e->lhs = std::move(base);
            base = std::move(e);
        }
        return base;
    }

    Integer exponent() {
        bool negative = false;
        bool parens = false;
        if (cur().kind == Token::Kind::lparen) {
            parens = true;
            advance();
        }
        if (is_op("-")) {
            negative = true;
            advance();
        } else if (is_op("+")) {
            advance();
        }
        if (cur().kind != Token::Kind::integer)
            throw ParseError("exponent must be an integer literal", cur().pos);
        Integer v(cur().text);
        advance();
        if (parens) {
            if (cur().kind != Token::Kind::rparen)
                throw ParseError("expected ')' after exponent", cur().pos);
            advance();
        }
        return negative ? Integer(-v) : v;
    }

    ExprPtr atom() {
        const Token& t = cur();
        switch (t.kind) {
            case Token::Kind::integer: {
                auto e = node(OperatorExpression::Kind::integer);
                e->value = Integer(t.text);
                advance();
                return e;
            }
            case Token::Kind::ident: {
                if (t.text == "theta") {
                    advance();
                    return node(OperatorExpression::Kind::theta);
                }
                if (t.text == param_) {
                    advance();
                    return node(OperatorExpression::Kind::parameter);
                }
                throw ParseError("unknown symbol '" + t.text + "' (expected 'theta' or '" +
                                     param_ + "')",
                                 t.pos);
            }
            case Token::Kind::lparen: {
                advance();
                auto e = expr();
                if (cur().kind != Token::Kind::rparen)
                    throw ParseError("expected ')'", cur().pos);
                advance();
                return e;
            }
            default:
                throw ParseError("expected a value, found '" + t.text + "'", t.pos);
        }
    }

    std::vector<Token> toks_;
    std::string param_;
    std::size_t pos_ = 0;
};

using OpValue = ThetaPoly<Rational>;

inline RationalFunction<Rational> rf_const(long n) {
    return RationalFunction<Rational>(Rational(n));
}

inline OpValue evaluate(const OperatorExpression& e) {
    using K = OperatorExpression::Kind;
    switch (e.kind) {
        case K::integer:
            return OpValue(RationalFunction<Rational>(Rational(e.value)));
        case K::parameter: {
            DensePolynomial<Rational> t(std::vector<Rational>{Rational(0), Rational(1)});
            return OpValue(RationalFunction<Rational>(std::move(t), Rational(0)));
        }
        case K::theta:
            return OpValue(std::vector<RationalFunction<Rational>>{rf_const(0), rf_const(1)});
        case K::add:
            return evaluate(*e.lhs) + evaluate(*e.rhs);
        case K::sub:
            return evaluate(*e.lhs) - evaluate(*e.rhs);
        case K::neg:
            return -evaluate(*e.lhs);
        case K::mul:
            return compose(evaluate(*e.lhs), evaluate(*e.rhs));
        case K::div: {
            const auto num = evaluate(*e.lhs);
            const auto den = evaluate(*e.rhs);
            if (den.order() > 0)
                throw std::domain_error("division by a theta-containing expression");
            if (den.is_zero()) throw std::domain_error("division by zero");
            return num.scaled(den.coeffs()[0].inverse());
        }
        case K::pow: {
            const auto base = evaluate(*e.lhs);
            if (base.order() <= 0) {
                // theta-free: any integer exponent
                const auto c = base.is_zero() ? rf_const(0) : base.coeffs()[0];
                if (e.value < 0 && c.is_zero())
                    throw std::domain_error("zero to a negative power");
                long k = static_cast<long>(e.value.get_si());
                RationalFunction<Rational> acc = rf_const(1);
                const auto b = e.value < 0 ? c.inverse() : c;
                for (long i = 0; i < (k < 0 ? -k : k); ++i) acc = acc * b;
                return OpValue(acc);
            }
            if (e.value < 0)
                throw std::domain_error("negative power of a theta-containing expression");
            OpValue acc(rf_const(1));
            for (Integer i = 0; i < e.value; ++i) acc = compose(acc, base);
            return acc;
        }
    }
    throw std::logic_error("evaluate: unreachable");
}

} // namespace parser_detail

inline std::unique_ptr<OperatorExpression> parse_expression(const std::string& text,
                                                            const std::string& param = "t") {
    parser_detail::Parser p(parser_detail::tokenize(text), param);
    return p.parse();
}

/// Parses and normalizes to sum (rational function) * theta^i, then
/// monicizes.  The result must have order >= 1.
inline ThetaOperator parse_operator(const std::string& text, const std::string& param = "t") {
    const auto ast = parse_expression(text, param);
    auto value = parser_detail::evaluate(*ast);
    if (value.order() < 1)
        throw std::domain_error(
            "expression is theta-free after normalization (order >= 1 required); note that "
            "multiplication expands theta*g = g*theta + theta(g), e.g. theta*" +
            param + " - " + param + "*theta = " + param);
    return ThetaOperator(std::move(value));
}

/// Parses a theta-free expression into a rational function of the parameter.
inline RationalFunction<Rational> parse_rational_function(const std::string& text,
                                                          const std::string& param = "t") {
    const auto ast = parse_expression(text, param);
    auto value = parser_detail::evaluate(*ast);
    if (value.order() > 0)
        throw std::domain_error("expected a theta-free expression");
    if (value.is_zero()) return parser_detail::rf_const(0);
    return value.coeffs()[0];
}

// ---------------------------------------------------------------------------
// printing (inverse of the grammar above)

inline std::string to_string(const Rational& x) { return x.str(); }

inline std::string poly_to_string(const DensePolynomial<Rational>& p, const std::string& param) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long d = p.degree(); d >= 0; --d) {
        const Rational c = p.coeff(static_cast<std::size_t>(d), Rational(0));
        if (c.is_zero()) continue;
        const bool first = out.empty();
        const bool negative = c.sign() < 0;
        const Rational mag = negative ? -c : c;
        if (!first) out += negative ? " - " : " + ";
        else if (negative) out += "-";
        const bool unit_coeff = mag == Rational(1) && d != 0;
        if (!unit_coeff) out += mag.str();
        if (d > 0) {
            if (!unit_coeff) out += "*";
            out += param;
            if (d > 1) out += "^" + std::to_string(d);
        }
    }
    return out;
}

inline std::string ratfun_to_string(const RationalFunction<Rational>& f,
                                    const std::string& param) {
    if (f.is_zero()) return "0";
    const std::string num = poly_to_string(f.numerator(), param);
    if (f.denominator().degree() == 0) return num;
    return "(" + num + ")/(" + poly_to_string(f.denominator(), param) + ")";
}

/// Prints sum c_i theta^i so that parse_operator reads back the same
/// normalized operator.
inline std::string op_to_string(const ThetaPoly<Rational>& op, const std::string& param) {
    if (op.is_zero()) return "0";
    std::string out;
    for (long i = op.order(); i >= 0; --i) {
        const auto& c = op.coeffs()[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        const bool is_one = c == c.one();
        if (i == 0) {
            out += "(" + ratfun_to_string(c, param) + ")";
            continue;
        }
        if (!is_one) out += "(" + ratfun_to_string(c, param) + ")*";
        out += "theta";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

inline std::string op_to_string(const ThetaOperator& op, const std::string& param) {
    return op_to_string(op.monic_poly(), param);
}

inline std::string series_to_string(const TruncatedSeries<Rational>& f, const std::string& param,
                                    std::size_t max_terms = 12) {
    std::string out;
    std::size_t shown = 0;
    for (std::size_t k = 0; k < f.order() && shown < max_terms; ++k) {
        const auto& c = f.coeff(k);
        if (c.is_zero()) continue;
        if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
        else if (c.sign() < 0) out += "-";
        const Rational mag = c.sign() < 0 ? -c : c;
        const bool unit = mag == Rational(1) && k > 0;
        if (!unit) out += mag.str();
        if (k > 0) {
            if (!unit) out += "*";
            out += param;
            if (k > 1) out += "^" + std::to_string(k);
        }
        ++shown;
    }
    if (out.empty()) out = "0";
    out += " + O(" + param + "^" + std::to_string(f.order()) + ")";
    return out;
}

} // namespace cyode
